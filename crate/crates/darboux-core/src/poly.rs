//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Terms are kept in a map ordered by graded lex; no stored coefficient is
//! zero, so two polynomials are equal iff their term maps are identical and
//! the zero polynomial has an empty map. All values are immutable after
//! construction and freely shareable between threads.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::context::{same_context, Ctx};
use crate::error::Error;
use crate::monomial::Monomial;
use crate::{rat_pow, Rat};

/// What a variable is replaced by during substitution.
#[derive(Debug, Clone)]
pub enum Binding {
    Rational(Rat),
    Poly(Polynomial),
}

#[derive(Debug, Clone)]
pub struct Polynomial {
    ctx: Ctx,
    terms: BTreeMap<Monomial, Rat>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ctx: &Ctx) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Ctx, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ctx.arity()), c);
        }
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, Rat::one())
    }

    /// The variable with the given index.
    pub fn variable(ctx: &Ctx, var: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(ctx.arity(), var), Rat::one());
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// The variable with the given name.
    pub fn var_named(ctx: &Ctx, name: &str) -> Result<Self, Error> {
        Ok(Self::variable(ctx, ctx.require(name)?))
    }

    /// Single term c * m. Zero c yields the zero polynomial.
    pub fn term(ctx: &Ctx, m: Monomial, c: Rat) -> Result<Self, Error> {
        if m.arity() != ctx.arity() {
            return Err(Error::ArityMismatch {
                expected: ctx.arity(),
                got: m.arity(),
            });
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Ok(Polynomial {
            ctx: ctx.clone(),
            terms,
        })
    }

    /// Builds from (monomial, coefficient) pairs; repeated monomials are
    /// summed, zero results dropped.
    pub fn from_terms<I>(ctx: &Ctx, iter: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut terms: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, c) in iter {
            if m.arity() != ctx.arity() {
                return Err(Error::ArityMismatch {
                    expected: ctx.arity(),
                    got: m.arity(),
                });
            }
            if c.is_zero() {
                continue;
            }
            match terms.get_mut(&m) {
                Some(acc) => {
                    *acc += c;
                    if acc.is_zero() {
                        terms.remove(&m);
                    }
                }
                None => {
                    terms.insert(m, c);
                }
            }
        }
        Ok(Polynomial {
            ctx: ctx.clone(),
            terms,
        })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order (canonical print order).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    /// Coefficient of the monomial, zero if absent.
    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Greatest term in graded-lex order. None for the zero polynomial.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Total degree; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Degree in the given variable subset; None for the zero polynomial.
    pub fn degree_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(vars)).max()
    }

    /// True iff the polynomial is a constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The constant coefficient.
    pub fn constant_coeff(&self) -> Rat {
        self.coeff(&Monomial::one(self.ctx.arity()))
    }

    fn require_same_ctx(&self, other: &Polynomial) -> Result<(), Error> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Coefficient-wise sum. Errors on context mismatch.
    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.require_same_ctx(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(acc) => {
                    *acc += c;
                    if acc.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.checked_add(&other.neg_ref())
    }

    /// Distributive product. Errors on context mismatch.
    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.require_same_ctx(other)?;
        let mut terms: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match terms.get_mut(&m) {
                    Some(acc) => {
                        *acc += c;
                        if acc.is_zero() {
                            terms.remove(&m);
                        }
                    }
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn neg_ref(&self) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    /// Scales by a rational.
    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Multiplies by a single monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// `self^e` by binary exponentiation.
    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ctx);
        let mut base = self.clone();
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

    /// Formal partial derivative with respect to the variable index.
    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial, Error> {
        if var >= self.ctx.arity() {
            return Err(Error::ArityMismatch {
                expected: self.ctx.arity(),
                got: var + 1,
            });
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var] = e - 1;
            terms.insert(Monomial::from_exps(exps), c * Rat::from_integer(e.into()));
        }
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// Partial derivative by variable name.
    pub fn partial_derivative_named(&self, name: &str) -> Result<Polynomial, Error> {
        self.partial_derivative(self.ctx.require(name)?)
    }

    /// Exact division: returns h with self = d * h, or NotDivisible carrying
    /// the first obstructing term. Works by repeated cancellation of the
    /// graded-lex leading term, which is exact over an integral domain.
    pub fn exact_divide(&self, d: &Polynomial) -> Result<Polynomial, Error> {
        self.require_same_ctx(d)?;
        let (dm, dc) = d.leading().ok_or(Error::DivisionByZero)?;
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quo: BTreeMap<Monomial, Rat> = BTreeMap::new();
        while let Some((rm, rc)) = rem.leading() {
            match rm.div(&dm) {
                Some(qm) => {
                    let qc = rc / &dc;
                    let piece = d.mul_monomial(&qm).scale(&qc);
                    quo.insert(qm, qc);
                    rem = &rem - &piece;
                }
                None => {
                    return Err(Error::NotDivisible {
                        term: rm.exps().to_vec(),
                    })
                }
            }
        }
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms: quo,
        })
    }

    /// Simultaneous substitution of the bound variables; the result lives in
    /// the same context.
    pub fn substitute(&self, bindings: &[(usize, Binding)]) -> Result<Polynomial, Error> {
        for (v, b) in bindings {
            if *v >= self.ctx.arity() {
                return Err(Error::ArityMismatch {
                    expected: self.ctx.arity(),
                    got: *v + 1,
                });
            }
            if let Binding::Poly(p) = b {
                if !same_context(&self.ctx, &p.ctx) {
                    return Err(Error::ContextMismatch);
                }
            }
        }
        let mut acc = Polynomial::zero(&self.ctx);
        for (m, c) in &self.terms {
            // Residual monomial over the unbound variables.
            let mut exps = m.exps().to_vec();
            let mut factor = Polynomial::constant(&self.ctx, c.clone());
            for (v, b) in bindings {
                let e = exps[*v];
                if e == 0 {
                    continue;
                }
                exps[*v] = 0;
                match b {
                    Binding::Rational(r) => {
                        factor = factor.scale(&rat_pow(r, e));
                    }
                    Binding::Poly(p) => {
                        factor = &factor * &p.pow(e);
                    }
                }
            }
            let residual = Polynomial::term(&self.ctx, Monomial::from_exps(exps), Rat::one())?;
            acc = &acc + &(&factor * &residual);
        }
        Ok(acc)
    }

    /// Substitution with variables given by name.
    pub fn substitute_named(&self, bindings: &[(&str, Binding)]) -> Result<Polynomial, Error> {
        let mut resolved = Vec::with_capacity(bindings.len());
        for (name, b) in bindings {
            resolved.push((self.ctx.require(name)?, b.clone()));
        }
        self.substitute(&resolved)
    }

    /// Exact evaluation at a full point (one rational per context variable).
    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat, Error> {
        if point.len() != self.ctx.arity() {
            return Err(Error::ArityMismatch {
                expected: self.ctx.arity(),
                got: point.len(),
            });
        }
        // Per-variable power cache up to the maximum exponent in use.
        let arity = self.ctx.arity();
        let mut max_exp = alloc::vec![0u32; arity];
        for m in self.terms.keys() {
            for v in 0..arity {
                max_exp[v] = max_exp[v].max(m.exp(v));
            }
        }
        let mut powers: Vec<Vec<Rat>> = Vec::with_capacity(arity);
        for v in 0..arity {
            let mut col = Vec::with_capacity(max_exp[v] as usize + 1);
            col.push(Rat::one());
            for e in 1..=max_exp[v] {
                let prev = col[(e - 1) as usize].clone();
                col.push(prev * &point[v]);
            }
            powers.push(col);
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in 0..arity {
                let e = m.exp(v);
                if e > 0 {
                    t *= &powers[v][e as usize];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// The common weighted degree of all terms, or NotHomogeneous with two
    /// witness weights. The zero polynomial has no quasi-weight.
    pub fn quasi_weight(&self, weights: &[i64]) -> Result<i64, Error> {
        if weights.len() != self.ctx.arity() {
            return Err(Error::ArityMismatch {
                expected: self.ctx.arity(),
                got: weights.len(),
            });
        }
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.weight(weights),
            None => return Err(Error::ZeroPolynomial),
        };
        for m in it {
            let w = m.weight(weights);
            if w != first {
                return Err(Error::NotHomogeneous { first, second: w });
            }
        }
        Ok(first)
    }

    /// Restriction to the terms of the given weight.
    pub fn weight_component(&self, weights: &[i64], w: i64) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight(weights) == w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Scales so every coefficient is an integer, jointly coprime, with the
    /// graded-lex leading coefficient positive. Returns the scaled polynomial.
    pub fn primitive_integer_form(&self) -> Polynomial {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = crate::Int::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = crate::Int::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        if num_gcd.is_zero() {
            num_gcd = crate::Int::one();
        }
        let mut factor = Rat::new(den_lcm, num_gcd);
        let (_, lead) = self.leading().unwrap();
        if (lead * &factor).is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("context mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("context mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("context mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::VariableContext;
    use crate::{rat, rat_int};

    fn ctx() -> Ctx {
        VariableContext::standard()
    }

    fn var(c: &Ctx, name: &str) -> Polynomial {
        Polynomial::var_named(c, name).unwrap()
    }

    #[test]
    fn add_inverse_and_identity() {
        let c = ctx();
        let y = var(&c, "y");
        let y3 = y.pow(3);
        assert!((&y3 - &y3).is_zero());
        let g = &y3 + &Polynomial::zero(&c);
        assert_eq!(g, y3);
    }

    #[test]
    fn mul_small_cases() {
        let c = ctx();
        let z = var(&c, "z");
        let q = var(&c, "q");
        let y = var(&c, "y");
        // (z - q)(z + q) = z^2 - q^2
        let lhs = &(&z - &q) * &(&z + &q);
        let rhs = &z.pow(2) - &q.pow(2);
        assert_eq!(lhs, rhs);
        // 9y * y^3 = 9y^4
        let lhs = &y.scale(&rat_int(9)) * &y.pow(3);
        assert_eq!(lhs, y.pow(4).scale(&rat_int(9)));
        // (zy + 1) + (zy) = 2zy + 1
        let zy = &z * &y;
        let one = Polynomial::one(&c);
        let lhs = &(&zy + &one) + &zy;
        assert_eq!(lhs, &zy.scale(&rat_int(2)) + &one);
    }

    #[test]
    fn derivative_basics() {
        let c = ctx();
        let y = var(&c, "y");
        let q = var(&c, "q");
        let z = var(&c, "z");
        let y3 = y.pow(3);
        assert_eq!(
            y3.partial_derivative_named("y").unwrap(),
            y.pow(2).scale(&rat_int(3))
        );
        let q2z = &q.pow(2) * &z;
        assert!(q2z.partial_derivative_named("y").unwrap().is_zero());
    }

    #[test]
    fn exact_division() {
        let c = ctx();
        let z = var(&c, "z");
        let q = var(&c, "q");
        let y = var(&c, "y");
        let num = &z.pow(2) - &q.pow(2);
        let den = &z - &q;
        assert_eq!(num.exact_divide(&den).unwrap(), &z + &q);
        let zy1 = &(&z * &y) + &Polynomial::one(&c);
        match zy1.exact_divide(&y) {
            Err(Error::NotDivisible { .. }) => {}
            other => panic!("expected NotDivisible, got {other:?}"),
        }
        assert!(matches!(
            zy1.exact_divide(&Polynomial::zero(&c)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn substitution_and_evaluation() {
        let c = ctx();
        let z = var(&c, "z");
        let q = var(&c, "q");
        let y = var(&c, "y");
        // substitute(q^2 z, q -> 1) = z
        let q2z = &q.pow(2) * &z;
        let s = q2z
            .substitute_named(&[("q", Binding::Rational(rat_int(1)))])
            .unwrap();
        assert_eq!(s, z);
        // identity bindings leave the polynomial unchanged
        let f = &(&z * &y) + &q.pow(3);
        let s = f
            .substitute_named(&[("q", Binding::Poly(q.clone()))])
            .unwrap();
        assert_eq!(s, f);
        // evaluate(zy + 1, z=2, y=3) = 7
        let zy1 = &(&z * &y) + &Polynomial::one(&c);
        let mut pt = alloc::vec![rat_int(0); c.arity()];
        pt[c.index_of("z").unwrap()] = rat_int(2);
        pt[c.index_of("y").unwrap()] = rat_int(3);
        assert_eq!(zy1.evaluate(&pt).unwrap(), rat_int(7));
        // evaluate(0, any) = 0
        assert_eq!(
            Polynomial::zero(&c).evaluate(&pt).unwrap(),
            rat_int(0)
        );
    }

    #[test]
    fn substitution_commutes_with_evaluation() {
        let c = ctx();
        let z = var(&c, "z");
        let q = var(&c, "q");
        let y = var(&c, "y");
        // f = y^3 - 9/26 q^2 z + q z y
        let f = &(&y.pow(3) - &(&q.pow(2) * &z).scale(&rat(9, 26))) + &(&(&q * &z) * &y);
        let g = f
            .substitute_named(&[("q", Binding::Rational(rat_int(3)))])
            .unwrap();
        let mut pt = alloc::vec![rat_int(0); c.arity()];
        pt[c.index_of("z").unwrap()] = rat_int(1);
        pt[c.index_of("y").unwrap()] = rat_int(1);
        let lhs = g.evaluate(&pt).unwrap();
        pt[c.index_of("q").unwrap()] = rat_int(3);
        let rhs = f.evaluate(&pt).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn quasi_weight_cases() {
        let c = ctx();
        let z = var(&c, "z");
        let q = var(&c, "q");
        let y = var(&c, "y");
        // weights z: -1, y: 1, q: 2, rest 0
        let w: alloc::vec::Vec<i64> = alloc::vec![-1, 1, 2, 0, 0, 0];
        // y^3 + q^2 z - 12/13 y^2 q z is quasi-homogeneous of weight 3
        let f = &(&y.pow(3) + &(&q.pow(2) * &z))
            - &(&(&y.pow(2) * &q) * &z).scale(&rat(12, 13));
        assert_eq!(f.quasi_weight(&w).unwrap(), 3);
        // y + z is not
        let g = &y + &z;
        assert!(matches!(
            g.quasi_weight(&w),
            Err(Error::NotHomogeneous { .. })
        ));
        // constants have weight 0
        let k = Polynomial::constant(&c, rat_int(5));
        assert_eq!(k.quasi_weight(&w).unwrap(), 0);
        // zero polynomial is an error
        assert!(matches!(
            Polynomial::zero(&c).quasi_weight(&w),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn primitive_integer_form_normalizes() {
        let c = ctx();
        let z = var(&c, "z");
        let y = var(&c, "y");
        // -3/4 y + 9/2 z scales to 6z - y... leading term is y (same degree,
        // y later in order than z, so z^1 y^0 vs z^0 y^1: z wins lex).
        let f = &y.scale(&rat(-3, 4)) + &z.scale(&rat(9, 2));
        let g = f.primitive_integer_form();
        let zm = Monomial::var(c.arity(), c.index_of("z").unwrap());
        let ym = Monomial::var(c.arity(), c.index_of("y").unwrap());
        assert_eq!(g.coeff(&zm), rat_int(6));
        assert_eq!(g.coeff(&ym), rat_int(-1));
    }
}
