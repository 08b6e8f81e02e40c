//! Dense univariate polynomials over an exact field, plus an integer
//! companion type. These back resultant computation, factorization, and
//! number-field arithmetic; the multivariate type stays sparse and separate.

use alloc::vec;
use alloc::vec::Vec;

use core::fmt::Debug;

use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

/// Exact field operations used by the univariate algorithms. Division is
/// total away from zero; `inv` must panic only on zero, which callers rule
/// out.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
}

impl Field for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Rat as Zero>::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!<Rat as Zero>::is_zero(self), "inverse of zero");
        self.recip()
    }
}

/// coeffs[i] is the coefficient of x^i; no trailing zeros, so the zero
/// polynomial is the empty vector and degree is None.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly<F: Field> {
    pub coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly {
            coeffs: vec![F::one()],
        }
    }

    pub fn constant(c: F) -> Self {
        let mut p = UniPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn x() -> Self {
        UniPoly {
            coeffs: vec![F::zero(), F::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<F>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    /// c * x^k.
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Coefficient of x^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    /// Leading coefficient; panics on the zero polynomial.
    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().expect("lc of zero polynomial")
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&other.coeff(i)));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).sub(&other.coeff(i)));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiplies by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let lc_inv = divisor.lc().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].mul(&lc_inv);
            for j in 0..dd {
                rem[i - dd + j] = rem[i - dd + j].sub(&q.mul(&divisor.coeffs[j]));
            }
            rem[i] = F::zero();
            quot[i - dd] = q;
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().inv())
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) with g = s*self + t*other, g monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = Self::one();
        let mut s1 = Self::zero();
        let mut t0 = Self::zero();
        let mut t1 = Self::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (Self::zero(), Self::zero(), Self::zero());
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let mut acc = F::zero();
            // i * c by repeated addition keeps the trait surface minimal;
            // i is a small machine integer.
            for _ in 0..i {
                acc = acc.add(c);
            }
            coeffs.push(acc);
        }
        Self::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// f(x + a), by Horner: fold in one coefficient, multiply by (x + a).
    pub fn compose_shift(&self, a: &F) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            // acc = acc * (x + a) + c
            let shifted = acc.shift_up(1).add(&acc.scale(a));
            acc = shifted.add(&Self::constant(c.clone()));
        }
        acc
    }

    /// f(c * x).
    pub fn compose_scale(&self, c: &F) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut power = F::one();
        for a in &self.coeffs {
            coeffs.push(a.mul(&power));
            power = power.mul(c);
        }
        Self::from_coeffs(coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Resultant by the Euclidean remainder sequence with the standard
    /// degree/leading-coefficient bookkeeping.
    pub fn resultant(&self, other: &Self) -> F {
        let mut a = self.clone();
        let mut b = other.clone();
        if a.is_zero() || b.is_zero() {
            // Res(f, 0) = 0 unless both are nonzero constants by convention;
            // the degenerate constant cases below cover deg 0.
            return F::zero();
        }
        let mut acc = F::one();
        let mut sign_flip = false;
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            if db == 0 {
                // Res(a, const) = const^deg(a).
                let mut p = F::one();
                for _ in 0..da {
                    p = p.mul(&b.lc());
                }
                acc = acc.mul(&p);
                break;
            }
            if da < db {
                if da % 2 == 1 && db % 2 == 1 {
                    sign_flip = !sign_flip;
                }
                core::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return F::zero();
            }
            let dr = r.degree().unwrap();
            // Res(a,b) = lc(b)^(da - dr) * (-1)^(da*db) * Res(b, r)
            let mut p = F::one();
            for _ in 0..(da - dr) {
                p = p.mul(&b.lc());
            }
            acc = acc.mul(&p);
            if da % 2 == 1 && db % 2 == 1 {
                sign_flip = !sign_flip;
            }
            a = b;
            b = r;
        }
        if sign_flip {
            acc.neg()
        } else {
            acc
        }
    }
}

/// Yun square-free decomposition over any exact field of characteristic
/// zero: returns (unit, parts) with f = unit * prod part_i ^ mult_i, parts
/// monic, square-free, pairwise coprime. The rational specialization in
/// the factorization module is faster; this generic one serves extension
/// fields.
pub fn square_free_decomposition<F: Field>(f: &UniPoly<F>) -> (F, Vec<(UniPoly<F>, u32)>) {
    assert!(!f.is_zero(), "square-free decomposition of zero");
    let unit = f.lc();
    let f = f.monic();
    if f.degree() == Some(0) {
        return (unit, Vec::new());
    }
    let df = f.derivative();
    let g = f.gcd(&df);
    let mut parts = Vec::new();
    if g.degree() == Some(0) {
        parts.push((f, 1));
        return (unit, parts);
    }
    let exact = |a: &UniPoly<F>, b: &UniPoly<F>| {
        let (q, r) = a.div_rem(b);
        debug_assert!(r.is_zero(), "division expected to be exact");
        q
    };
    let mut c = exact(&f, &g);
    let mut d = exact(&df, &g).sub(&c.derivative());
    let mut i = 1u32;
    while c.degree() != Some(0) {
        let p = c.gcd(&d);
        if p.degree() != Some(0) {
            parts.push((p.clone(), i));
        }
        c = exact(&c, &p);
        d = exact(&d, &p).sub(&c.derivative());
        i += 1;
    }
    (unit, parts)
}

/// Lagrange interpolation through distinct sample points.
pub fn interpolate<F: Field>(points: &[(F, F)]) -> UniPoly<F> {
    let mut acc = UniPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UniPoly::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            // (x - xj) / (xi - xj)
            let denom = xi.sub(xj);
            assert!(!denom.is_zero(), "interpolation nodes must be distinct");
            let inv = denom.inv();
            let lin = UniPoly::from_coeffs(vec![xj.neg().mul(&inv), inv]);
            basis = basis.mul(&lin);
        }
        acc = acc.add(&basis);
    }
    acc
}

/// Integer-coefficient polynomial; same layout conventions as UniPoly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPolZ {
    pub coeffs: Vec<Int>,
}

impl UPolZ {
    pub fn zero() -> Self {
        UPolZ { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<Int>) -> Self {
        let mut p = UPolZ { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn lc(&self) -> Int {
        self.coeffs.last().cloned().expect("lc of zero polynomial")
    }

    /// Clears denominators: returns (d, p) with d > 0 minimal such that
    /// d * rational = p over Z.
    pub fn from_rational(f: &UniPoly<Rat>) -> (Int, UPolZ) {
        use num_integer::Integer;
        let mut lcm = Int::one();
        for c in &f.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let coeffs = f
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        (lcm, UPolZ::from_coeffs(coeffs))
    }

    pub fn to_rational(&self) -> UniPoly<Rat> {
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - other.coeff(i));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        UPolZ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPolZ {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> Int {
        use num_integer::Integer;
        let mut g = Int::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        UPolZ {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Exact division; returns None when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd && !self.is_zero() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Int::zero(); rem.len() - dd];
        let lc = divisor.lc();
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&rem[i], &lc);
            if !r.is_zero() {
                return None;
            }
            for j in 0..dd {
                let delta = &q * &divisor.coeffs[j];
                rem[i - dd + j] -= delta;
            }
            rem[i] = Int::zero();
            quot[i - dd] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Int::from(i as u64))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Max absolute coefficient value.
    pub fn height(&self) -> Int {
        let mut h = Int::zero();
        for c in &self.coeffs {
            let a = c.abs();
            if a > h {
                h = a;
            }
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn qp(coeffs: &[(i64, i64)]) -> UniPoly<Rat> {
        UniPoly::from_coeffs(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    fn zp(coeffs: &[i64]) -> UPolZ {
        UPolZ::from_coeffs(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let f = qp(&[(-1, 1), (0, 1), (1, 1)]);
        let g = qp(&[(-1, 1), (1, 1)]);
        let (q, r) = f.div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(q, qp(&[(1, 1), (1, 1)]));
        let h = qp(&[(1, 1), (1, 1)]); // x + 1
        assert_eq!(f.gcd(&h), h.monic());
    }

    #[test]
    fn ext_gcd_bezout_identity() {
        let f = qp(&[(-2, 1), (0, 1), (1, 1)]); // x^2 - 2
        let g = qp(&[(1, 1), (1, 1)]); // x + 1
        let (d, s, t) = f.ext_gcd(&g);
        assert_eq!(d, UniPoly::one());
        let lhs = s.mul(&f).add(&t.mul(&g));
        assert_eq!(lhs, UniPoly::one());
    }

    #[test]
    fn resultant_matches_root_product() {
        // f = (x-1)(x-2), g = (x-3)(x+1):
        // Res = prod over roots ri of f of g(ri) = g(1)*g(2) = (-4)*(-3) = 12
        let f = qp(&[(2, 1), (-3, 1), (1, 1)]);
        let g = qp(&[(-3, 1), (-2, 1), (1, 1)]);
        assert_eq!(f.resultant(&g), rat_int(12));
        // Shared root makes it vanish.
        let h = qp(&[(-1, 1), (1, 1)]); // x - 1
        assert_eq!(f.resultant(&h), rat_int(0));
        // Antisymmetry up to the degree sign.
        assert_eq!(g.resultant(&f), rat_int(12));
    }

    #[test]
    fn resultant_against_sylvester_oracle() {
        // Res(f, g) for f = 2x^3 - x + 4, g = x^2 + 3x - 1, computed from
        // the 5x5 Sylvester determinant by hand-expansion once and frozen.
        let f = qp(&[(4, 1), (-1, 1), (0, 1), (2, 1)]);
        let g = qp(&[(-1, 1), (3, 1), (1, 1)]);
        // det [[2,0,-1,4,0],[0,2,0,-1,4],[1,3,-1,0,0],[0,1,3,-1,0],[0,0,1,3,-1]]
        assert_eq!(f.resultant(&g), rat_int(-243));
    }

    #[test]
    fn composition_shift_and_scale() {
        // f = x^2 + 1; f(x + 2) = x^2 + 4x + 5; f(3x) = 9x^2 + 1.
        let f = qp(&[(1, 1), (0, 1), (1, 1)]);
        assert_eq!(f.compose_shift(&rat_int(2)), qp(&[(5, 1), (4, 1), (1, 1)]));
        assert_eq!(f.compose_scale(&rat_int(3)), qp(&[(1, 1), (0, 1), (9, 1)]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = qp(&[(1, 2), (-3, 1), (0, 1), (5, 1)]);
        let pts: Vec<(Rat, Rat)> = (-2..=1)
            .map(|i| {
                let x = rat_int(i);
                let y = f.eval(&x);
                (x, y)
            })
            .collect();
        assert_eq!(interpolate(&pts), f);
    }

    #[test]
    fn integer_primitives() {
        let f = zp(&[-6, 0, 9]); // 3(3x^2 - 2)
        assert_eq!(f.content(), Int::from(3));
        assert_eq!(f.primitive(), zp(&[-2, 0, 3]));
        let g = zp(&[6, 0, -9]);
        // Primitive normalizes the sign to a positive leading coefficient.
        assert_eq!(g.primitive(), zp(&[-2, 0, 3]));
        let prod = f.mul(&g);
        assert_eq!(prod.div_exact(&f), Some(g.clone()));
        assert_eq!(prod.div_exact(&zp(&[1, 1])), None);
    }

    #[test]
    fn rational_clearing_round_trip() {
        let f = qp(&[(1, 6), (-2, 3), (1, 1)]);
        let (d, z) = UPolZ::from_rational(&f);
        assert_eq!(d, Int::from(6));
        assert_eq!(z, zp(&[1, -4, 6]));
        assert_eq!(
            z.to_rational(),
            f.scale(&Rat::from_integer(Int::from(6)))
        );
    }
}
