//! Crate-wide error type. Failures that are expected outcomes of a
//! computation (a curve not being invariant, a kernel being empty) are data,
//! not errors; this enum covers genuine contract violations and detected
//! input corruption.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two operands reference different variable contexts.
    ContextMismatch,
    /// A variable name absent from the context.
    UnknownVariable(String),
    /// A point or exponent vector whose length disagrees with the context.
    ArityMismatch { expected: usize, got: usize },
    /// Division by the zero polynomial.
    DivisionByZero,
    /// Exact division failed; carries the exponents of the first term of the
    /// dividend not divisible by the divisor's leading term.
    NotDivisible { term: Vec<u32> },
    /// quasi_weight on a polynomial whose terms carry different weights;
    /// carries two witness weights.
    NotHomogeneous { first: i64, second: i64 },
    /// quasi_weight on the zero polynomial.
    ZeroPolynomial,
    /// The Lie derivative of g is not a polynomial multiple of g.
    NotInvariant,
    /// X(g)/g exists but has state degree > deg(X) - 1, which cannot happen
    /// for well-formed quadratic fields; signals corrupted input.
    CofactorDegreeViolation { degree: u32 },
    /// A vector field declared quadratic has state degree > 2.
    NotQuadratic { degree: u32 },
    /// Curve for genus computation is not square-free.
    NotSquareFree,
    /// Blowup recursion exceeded the configured depth cap.
    DepthExceeded { cap: u32 },
    /// Resolution produced a negative genus, which cannot happen for an
    /// irreducible curve; carries the computed value.
    ReducibleSuspected { genus: i64 },
    /// Interpolation grid too small for the polynomial degree of the matrix
    /// entries.
    InterpolationGridTooSmall { needed: usize, got: usize },
    /// Univariate factorization degree cap exceeded.
    FactorDegreeCap { degree: usize, cap: usize },
    /// A modulus expected to be irreducible over Q failed the check.
    ReducibleModulus,
    /// Repair found no invariant curve at the stated degree: either the
    /// degree or the system transcription itself is wrong.
    NoCurveFound,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ContextMismatch => write!(f, "operands belong to different variable contexts"),
            Error::UnknownVariable(name) => write!(f, "unknown variable `{name}`"),
            Error::ArityMismatch { expected, got } => {
                write!(f, "arity mismatch: expected {expected}, got {got}")
            }
            Error::DivisionByZero => write!(f, "division by the zero polynomial"),
            Error::NotDivisible { term } => {
                write!(f, "not divisible: obstructing term with exponents {term:?}")
            }
            Error::NotHomogeneous { first, second } => write!(
                f,
                "not quasi-homogeneous: weights {first} and {second} both occur"
            ),
            Error::ZeroPolynomial => write!(f, "zero polynomial has no quasi-weight"),
            Error::NotInvariant => write!(f, "curve is not invariant: X(g) is not a multiple of g"),
            Error::CofactorDegreeViolation { degree } => write!(
                f,
                "cofactor has state degree {degree} > 1: input field is malformed"
            ),
            Error::NotQuadratic { degree } => {
                write!(f, "vector field has state degree {degree} > 2")
            }
            Error::NotSquareFree => write!(f, "curve is not square-free"),
            Error::DepthExceeded { cap } => {
                write!(f, "blowup depth exceeded the cap of {cap}")
            }
            Error::ReducibleSuspected { genus } => write!(
                f,
                "resolution yields negative genus {genus}: curve is likely reducible"
            ),
            Error::InterpolationGridTooSmall { needed, got } => {
                write!(f, "interpolation grid too small: need {needed} points, got {got}")
            }
            Error::FactorDegreeCap { degree, cap } => {
                write!(f, "factorization degree {degree} exceeds cap {cap}")
            }
            Error::ReducibleModulus => write!(f, "modulus is reducible over the rationals"),
            Error::NoCurveFound => write!(
                f,
                "no invariant curve exists at the stated degree and cofactor"
            ),
        }
    }
}
