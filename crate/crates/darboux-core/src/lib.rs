//! Exact algebra for invariant algebraic curves of planar quadratic vector
//! fields.
//!
//! The crate is built around sparse multivariate polynomials with
//! arbitrary-precision rational coefficients. On top of that substrate it
//! provides:
//!
//! * Lie derivatives, cofactor extraction, and certificate verification for
//!   polynomial vector fields ([`vecfield`]),
//! * exact kernel computation for invariant-curve ansatz systems, including
//!   quasi-homogeneous support filtering and family elimination
//!   ([`matrix`], [`ansatz`], [`discovery`], [`eliminate`]),
//! * univariate polynomial machinery over Q, Z, and prime fields, with
//!   square-free decomposition and factorization ([`unipoly`], [`modp`],
//!   [`factor`]),
//! * number-field arithmetic and factorization over algebraic extensions
//!   ([`numberfield`]),
//! * geometric genus of plane curves via resolution of singularities
//!   ([`genus`]).
//!
//! Everything here is `no_std` + `alloc`: all operations are pure functions
//! over immutable values and are freely shareable across threads. IO, file
//! formats, and floating-point plotting live in the companion CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod ansatz;
pub mod context;
pub mod discovery;
pub mod eliminate;
pub mod error;
pub mod factor;
pub mod genus;
pub mod matrix;
pub mod modp;
pub mod monomial;
pub mod numberfield;
pub mod parse;
pub mod poly;
pub mod print;
pub mod probe;
pub mod unipoly;
pub mod vecfield;

pub use context::VariableContext;
pub use error::Error;
pub use monomial::Monomial;
pub use poly::{Binding, Polynomial};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (the normalization `num_rational::Ratio` maintains).
pub type Rat = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

use num_traits::{One, Zero};

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// `b^e` by binary exponentiation.
pub fn rat_pow(b: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    let mut base = b.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// `b^e` for integers by binary exponentiation.
pub fn int_pow(b: &Int, e: u32) -> Int {
    let mut acc = Int::one();
    let mut base = b.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// True iff the rational is the zero value.
pub fn rat_is_zero(r: &Rat) -> bool {
    r.is_zero()
}
