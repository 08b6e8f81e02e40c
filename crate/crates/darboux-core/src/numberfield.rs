//! Number fields Q[t]/(m) with exact element arithmetic, factorization of
//! univariate polynomials over them (by norms and rational factorization),
//! and collapse of a tower K(beta)/K/Q to a single primitive extension.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::factor::{factor_q, gcd_q};
use crate::unipoly::{interpolate, square_free_decomposition, Field, UniPoly};
use crate::Rat;

/// A number field Q[t]/(m), m monic irreducible over Q. The degree-1
/// modulus t represents Q itself, so rational points and algebraic points
/// share one code path.
#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: UniPoly<Rat>,
}

pub type Nf = Arc<NumberField>;

impl NumberField {
    /// Checked constructor: verifies the modulus is irreducible over Q.
    pub fn new(modulus: UniPoly<Rat>) -> Result<Nf, Error> {
        let modulus = modulus.monic();
        let deg = modulus.degree().unwrap_or(0);
        if deg == 0 {
            return Err(Error::ReducibleModulus);
        }
        if deg > 1 {
            let (_, factors) = factor_q(&modulus, deg)?;
            if factors.len() != 1 || factors[0].1 != 1 {
                return Err(Error::ReducibleModulus);
            }
        }
        Ok(Arc::new(NumberField { modulus }))
    }

    /// Constructor for moduli already known irreducible (e.g. factors
    /// returned by the rational factorization); skips the recheck.
    pub fn new_unchecked(modulus: UniPoly<Rat>) -> Nf {
        let modulus = modulus.monic();
        debug_assert!(modulus.degree().map(|d| d >= 1).unwrap_or(false));
        Arc::new(NumberField { modulus })
    }

    /// The rational field, encoded as Q[t]/(t).
    pub fn rationals() -> Nf {
        Arc::new(NumberField {
            modulus: UniPoly::x(),
        })
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("valid modulus")
    }

    pub fn modulus(&self) -> &UniPoly<Rat> {
        &self.modulus
    }
}

fn same_field(a: &Nf, b: &Nf) -> bool {
    Arc::ptr_eq(a, b) || a.modulus == b.modulus
}

/// An element of a number field. Elements created by the nullary trait
/// constructors carry no field binding (rational constants); arithmetic
/// unifies bindings on contact, so one zero works in every field.
#[derive(Debug, Clone)]
pub struct NfElem {
    field: Option<Nf>,
    rep: UniPoly<Rat>,
}

impl NfElem {
    pub fn from_rat(r: Rat) -> NfElem {
        NfElem {
            field: None,
            rep: UniPoly::constant(r),
        }
    }

    pub fn from_poly(field: &Nf, rep: UniPoly<Rat>) -> NfElem {
        NfElem {
            field: Some(field.clone()),
            rep: rep.rem(&field.modulus),
        }
    }

    /// The class of t, the field generator.
    pub fn generator(field: &Nf) -> NfElem {
        Self::from_poly(field, UniPoly::x())
    }

    pub fn field(&self) -> Option<&Nf> {
        self.field.as_ref()
    }

    pub fn rep(&self) -> &UniPoly<Rat> {
        &self.rep
    }

    /// The rational value when the element is a rational constant (always
    /// for unbound elements and over a degree-1 field, where the generator
    /// itself is a rational number).
    pub fn to_rat(&self) -> Option<Rat> {
        match &self.field {
            None => Some(self.rep.coeff(0)),
            Some(f) if f.degree() == 1 => {
                // t = -c where modulus = t + c.
                let root = -f.modulus.coeff(0);
                Some(self.rep.eval(&root))
            }
            Some(_) => {
                if self.rep.degree().map(|d| d == 0).unwrap_or(true) {
                    Some(self.rep.coeff(0))
                } else {
                    None
                }
            }
        }
    }

    /// Binds an unbound constant to a concrete field (no-op when bound).
    pub fn bind(&self, field: &Nf) -> NfElem {
        match &self.field {
            Some(f) => {
                assert!(same_field(f, field), "element bound to a different field");
                self.clone()
            }
            None => NfElem::from_poly(field, self.rep.clone()),
        }
    }

    fn unified_field(&self, other: &NfElem) -> Option<Nf> {
        match (&self.field, &other.field) {
            (Some(a), Some(b)) => {
                assert!(same_field(a, b), "elements of different fields");
                Some(a.clone())
            }
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        }
    }

    /// Applies the field homomorphism sending the generator to `image`
    /// (a root of this element's modulus in the target field).
    pub fn embed(&self, image: &NfElem) -> NfElem {
        let mut acc = NfElem::zero();
        for c in self.rep.coeffs.iter().rev() {
            acc = acc.mul(image).add(&NfElem::from_rat(c.clone()));
        }
        acc
    }
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        match (&self.field, &other.field) {
            (Some(a), Some(b)) => same_field(a, b) && self.rep == other.rep,
            _ => self.rep == other.rep,
        }
    }
}

impl Field for NfElem {
    fn zero() -> Self {
        NfElem {
            field: None,
            rep: UniPoly::zero(),
        }
    }

    fn one() -> Self {
        NfElem {
            field: None,
            rep: UniPoly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        NfElem {
            field: self.unified_field(other),
            rep: self.rep.add(&other.rep),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        NfElem {
            field: self.unified_field(other),
            rep: self.rep.sub(&other.rep),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let field = self.unified_field(other);
        let rep = match &field {
            Some(f) => self.rep.mul(&other.rep).rem(&f.modulus),
            None => self.rep.mul(&other.rep),
        };
        NfElem { field, rep }
    }

    fn neg(&self) -> Self {
        NfElem {
            field: self.field.clone(),
            rep: self.rep.neg(),
        }
    }

    fn inv(&self) -> Self {
        assert!(!self.rep.is_zero(), "inverse of zero");
        match &self.field {
            None => NfElem {
                field: None,
                rep: UniPoly::constant(self.rep.coeff(0).recip()),
            },
            Some(f) => {
                // Extended Euclid: s * rep + t * modulus = 1.
                let (g, s, _) = self.rep.ext_gcd(&f.modulus);
                assert_eq!(
                    g.degree(),
                    Some(0),
                    "irreducible modulus guarantees invertibility"
                );
                // g is monic, hence exactly 1.
                NfElem::from_poly(f, s)
            }
        }
    }
}

/// Norm of f from K[x] down to Q[x]: the product of the conjugates of f,
/// computed as Res_t(m(t), f(x, t)) by evaluation and interpolation. The
/// monic modulus makes specialization commute with the resultant.
pub fn norm_poly(field: &Nf, f: &UniPoly<NfElem>) -> UniPoly<Rat> {
    let d = field.degree();
    let deg_f = f.degree().expect("norm of zero polynomial");
    let samples = d * deg_f + 1;
    let mut points = Vec::with_capacity(samples);
    let mut x = 0i64;
    while points.len() < samples {
        let xv = NfElem::from_rat(Rat::from_integer(x.into()));
        let value = f.eval(&xv).bind(field);
        let r = field.modulus.resultant(&value.rep);
        points.push((Rat::from_integer(x.into()), r));
        x = if x > 0 { -x } else { -x + 1 };
    }
    interpolate(&points)
}

/// Substitutes x -> x - s*alpha in f (alpha the field generator).
fn shift_by_generator(field: &Nf, f: &UniPoly<NfElem>, s: i64) -> UniPoly<NfElem> {
    let alpha = NfElem::generator(field);
    let shift = alpha.mul(&NfElem::from_rat(Rat::from_integer((-s).into())));
    f.compose_shift(&shift)
}

/// Irreducible factorization over a number field by Trager's method.
/// Returns (unit, factors) with f = unit * prod factor^mult, factors monic.
/// The cap bounds the rational factorization degree (norms have degree
/// [K:Q] * deg f).
pub fn factor_nf(
    field: &Nf,
    f: &UniPoly<NfElem>,
    cap: usize,
) -> Result<(NfElem, Vec<(UniPoly<NfElem>, u32)>), Error> {
    assert!(!f.is_zero(), "factorization of zero");
    let (unit, parts) = square_free_decomposition(f);
    let mut factors = Vec::new();
    for (part, mult) in parts {
        if part.degree() == Some(1) {
            factors.push((part, mult));
            continue;
        }
        for g in factor_squarefree_nf(field, &part, cap)? {
            factors.push((g, mult));
        }
    }
    Ok((unit, factors))
}

fn factor_squarefree_nf(
    field: &Nf,
    f: &UniPoly<NfElem>,
    cap: usize,
) -> Result<Vec<UniPoly<NfElem>>, Error> {
    // Find a shift making the norm square-free; only finitely many shifts
    // collide conjugate roots, so the scan terminates.
    let mut s = 0i64;
    let (shift, norm) = loop {
        let shifted = shift_by_generator(field, f, s);
        let n = norm_poly(field, &shifted);
        if gcd_q(&n, &n.derivative()).degree() == Some(0) {
            break (s, n);
        }
        s = if s >= 0 { -(s + 1) } else { -s };
    };
    let (_, rational_factors) = factor_q(&norm, cap)?;
    if rational_factors.len() == 1 {
        return Ok(vec![f.monic()]);
    }
    let shifted = shift_by_generator(field, f, shift);
    let alpha = NfElem::generator(field);
    let back = alpha.mul(&NfElem::from_rat(Rat::from_integer(shift.into())));
    let mut out = Vec::new();
    for (g, _) in rational_factors {
        // Lift the rational factor into K[x] and take a gcd with the
        // shifted polynomial; shift back to get a factor of f.
        let g_k = UniPoly::from_coeffs(
            g.to_rational()
                .coeffs
                .iter()
                .map(|c| NfElem::from_rat(c.clone()))
                .collect(),
        );
        let h = shifted.gcd(&g_k);
        if h.degree().map(|d| d >= 1).unwrap_or(false) {
            out.push(h.compose_shift(&back).monic());
        }
    }
    debug_assert_eq!(
        out.iter().filter_map(|h| h.degree()).sum::<usize>(),
        f.degree().unwrap(),
        "factors must multiply back to f"
    );
    Ok(out)
}

/// Roots of f lying in the field itself (from the linear factors), with
/// multiplicities.
pub fn roots_nf(
    field: &Nf,
    f: &UniPoly<NfElem>,
    cap: usize,
) -> Result<Vec<(NfElem, u32)>, Error> {
    let (_, factors) = factor_nf(field, f, cap)?;
    let mut roots = Vec::new();
    for (g, m) in factors {
        if g.degree() == Some(1) {
            // monic: x + c -> root -c
            roots.push((g.coeff(0).neg().bind(field), m));
        }
    }
    Ok(roots)
}

/// Result of collapsing K(beta)/K/Q to a primitive extension Q(gamma).
pub struct Extension {
    /// The collapsed field L = Q[s]/(minimal polynomial of gamma).
    pub field: Nf,
    /// Image of the old generator alpha in L.
    pub alpha: NfElem,
    /// Image of the adjoined root beta in L.
    pub beta: NfElem,
}

/// Adjoins a root of mu (irreducible over K) to K = Q(alpha) and returns
/// the collapsed primitive extension. Degree-1 mu needs no extension: the
/// root is already in K.
pub fn extend_field(field: &Nf, mu: &UniPoly<NfElem>) -> Result<Extension, Error> {
    let mu = mu.monic();
    let e = mu.degree().expect("nonzero minimal polynomial");
    assert!(e >= 1, "minimal polynomial must have positive degree");
    if e == 1 {
        return Ok(Extension {
            field: field.clone(),
            alpha: NfElem::generator(field),
            beta: mu.coeff(0).neg().bind(field),
        });
    }
    let d = field.degree();
    if d == 1 {
        // Base is Q: the new field is Q[t]/mu directly.
        let modulus = UniPoly::from_coeffs(
            (0..=e)
                .map(|i| mu.coeff(i).to_rat().expect("coefficients over Q"))
                .collect(),
        );
        let l = NumberField::new_unchecked(modulus);
        let alpha_rat = NfElem::generator(field).to_rat().expect("degree-1 field");
        return Ok(Extension {
            field: l.clone(),
            alpha: NfElem::from_rat(alpha_rat).bind(&l),
            beta: NfElem::generator(&l),
        });
    }
    // gamma = beta + k * alpha for the first k whose characteristic
    // polynomial (the norm of mu shifted by k*alpha) is square-free; that
    // polynomial is then the minimal polynomial of gamma and has degree
    // d*e, so gamma is primitive.
    let mut k = 1i64;
    let (k, n) = loop {
        let shifted = shift_by_generator(field, &mu, k);
        let n = norm_poly(field, &shifted);
        debug_assert_eq!(n.degree(), Some(d * e));
        if gcd_q(&n, &n.derivative()).degree() == Some(0) {
            break (k, n.monic());
        }
        k = if k > 0 { -k } else { -k + 1 };
    };
    let l = NumberField::new_unchecked(n);
    let gamma = NfElem::generator(&l);
    // Recover alpha in L as the unique common root of the old modulus and
    // mu(gamma - k t) viewed over L; the square-free choice of k makes the
    // gcd linear.
    let m_alpha_l = UniPoly::from_coeffs(
        field
            .modulus
            .coeffs
            .iter()
            .map(|c| NfElem::from_rat(c.clone()).bind(&l))
            .collect(),
    );
    // B(t) = sum_i c_i(t) * (gamma - k t)^i where c_i are the rational
    // representations of mu's coefficients in alpha.
    let t_poly: UniPoly<NfElem> = UniPoly::x();
    let lin = UniPoly::constant(gamma.clone())
        .sub(&t_poly.scale(&NfElem::from_rat(Rat::from_integer(k.into()))));
    let mut b = UniPoly::zero();
    for (i, c) in mu.coeffs.iter().enumerate() {
        let c_of_t = UniPoly::from_coeffs(
            c.bind(field)
                .rep
                .coeffs
                .iter()
                .map(|r| NfElem::from_rat(r.clone()).bind(&l))
                .collect(),
        );
        b = b.add(&c_of_t.mul(&lin.pow(i as u32)));
    }
    let g = m_alpha_l.gcd(&b);
    assert_eq!(
        g.degree(),
        Some(1),
        "primitive-element gcd must be linear for a square-free norm"
    );
    let alpha = g.coeff(0).neg().bind(&l);
    let beta = gamma.sub(&alpha.mul(&NfElem::from_rat(Rat::from_integer(k.into()))));
    Ok(Extension {
        field: l,
        alpha,
        beta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn qpoly(coeffs: &[i64]) -> UniPoly<Rat> {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn sqrt2_field() -> Nf {
        NumberField::new(qpoly(&[-2, 0, 1])).unwrap()
    }

    #[test]
    fn constructor_rejects_reducible() {
        assert!(NumberField::new(qpoly(&[-1, 0, 1])).is_err()); // t^2 - 1
        assert!(NumberField::new(qpoly(&[-2, 0, 1])).is_ok()); // t^2 - 2
    }

    #[test]
    fn arithmetic_in_quadratic_field() {
        let k = sqrt2_field();
        let a = NfElem::generator(&k); // sqrt(2)
        let one = NfElem::one();
        // (1 + a)(1 - a) = 1 - 2 = -1
        let prod = one.add(&a).mul(&one.sub(&a));
        assert_eq!(prod, NfElem::from_rat(rat_int(-1)).bind(&k));
        // a * a = 2
        assert_eq!(a.mul(&a).to_rat(), Some(rat_int(2)));
        // inv(a) = a/2
        let half_a = a.mul(&NfElem::from_rat(rat(1, 2)));
        assert_eq!(a.inv(), half_a);
        assert_eq!(a.mul(&a.inv()).to_rat(), Some(rat_int(1)));
    }

    #[test]
    fn rational_field_is_degree_one() {
        let q = NumberField::rationals();
        assert_eq!(q.degree(), 1);
        let x = NfElem::from_poly(&q, qpoly(&[0, 1]));
        // t = 0 in Q[t]/(t).
        assert_eq!(x.to_rat(), Some(rat_int(0)));
        let c = NfElem::from_rat(rat(3, 7)).bind(&q);
        assert_eq!(c.to_rat(), Some(rat(3, 7)));
    }

    #[test]
    fn norms_multiply_conjugates() {
        let k = sqrt2_field();
        // f = x - a: norm = (x - sqrt2)(x + sqrt2) = x^2 - 2.
        let f = UniPoly::from_coeffs(vec![NfElem::generator(&k).neg(), NfElem::one()]);
        assert_eq!(norm_poly(&k, &f), qpoly(&[-2, 0, 1]));
    }

    #[test]
    fn factor_splits_square_root() {
        let k = sqrt2_field();
        // x^2 - 2 over Q(sqrt2) = (x - a)(x + a).
        let f = UniPoly::from_coeffs(vec![
            NfElem::from_rat(rat_int(-2)),
            NfElem::zero(),
            NfElem::one(),
        ]);
        let (_, factors) = factor_nf(&k, &f, 40).unwrap();
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
        let roots = roots_nf(&k, &f, 40).unwrap();
        let a = NfElem::generator(&k);
        assert!(roots.iter().any(|(r, _)| *r == a));
        assert!(roots.iter().any(|(r, _)| *r == a.neg()));
    }

    #[test]
    fn factor_keeps_inert_polynomials() {
        let k = sqrt2_field();
        // x^2 + 1 stays irreducible over Q(sqrt2).
        let f = UniPoly::from_coeffs(vec![
            NfElem::from_rat(rat_int(1)),
            NfElem::zero(),
            NfElem::one(),
        ]);
        let (_, factors) = factor_nf(&k, &f, 40).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0.degree(), Some(2));
    }

    #[test]
    fn factor_partial_split() {
        let k = sqrt2_field();
        // x^4 - 10x^2 + 1 = (x^2 - 2*sqrt2*x - 1)(x^2 + 2*sqrt2*x - 1)
        // over Q(sqrt2).
        let f = UniPoly::from_coeffs(vec![
            NfElem::from_rat(rat_int(1)),
            NfElem::zero(),
            NfElem::from_rat(rat_int(-10)),
            NfElem::zero(),
            NfElem::one(),
        ]);
        let (_, factors) = factor_nf(&k, &f, 40).unwrap();
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|(g, _)| g.degree() == Some(2)));
        let a = NfElem::generator(&k);
        let two_a = a.mul(&NfElem::from_rat(rat_int(2)));
        let expect1 = UniPoly::from_coeffs(vec![
            NfElem::from_rat(rat_int(-1)),
            two_a.neg(),
            NfElem::one(),
        ]);
        let expect2 = UniPoly::from_coeffs(vec![
            NfElem::from_rat(rat_int(-1)),
            two_a,
            NfElem::one(),
        ]);
        assert!(factors.iter().any(|(g, _)| *g == expect1));
        assert!(factors.iter().any(|(g, _)| *g == expect2));
    }

    #[test]
    fn tower_collapse_sqrt2_sqrt3() {
        let k = sqrt2_field();
        // Adjoin sqrt(3): mu = t^2 - 3 over K.
        let mu = UniPoly::from_coeffs(vec![
            NfElem::from_rat(rat_int(-3)),
            NfElem::zero(),
            NfElem::one(),
        ]);
        let ext = extend_field(&k, &mu).unwrap();
        assert_eq!(ext.field.degree(), 4);
        // alpha^2 = 2, beta^2 = 3 inside L.
        assert_eq!(ext.alpha.mul(&ext.alpha).to_rat(), Some(rat_int(2)));
        assert_eq!(ext.beta.mul(&ext.beta).to_rat(), Some(rat_int(3)));
        // gamma = beta + k*alpha generates; modulus is the classic
        // x^4 - 10x^2 + 1 for k = 1.
        assert_eq!(ext.field.modulus(), &qpoly(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn degree_one_extension_stays_put() {
        let k = sqrt2_field();
        let a = NfElem::generator(&k);
        // mu = t - (alpha + 1)
        let mu = UniPoly::from_coeffs(vec![
            a.add(&NfElem::one()).neg(),
            NfElem::one(),
        ]);
        let ext = extend_field(&k, &mu).unwrap();
        assert_eq!(ext.field.degree(), 2);
        assert_eq!(ext.beta, a.add(&NfElem::one()));
    }

    #[test]
    fn extension_from_rationals() {
        let q = NumberField::rationals();
        let mu = UniPoly::from_coeffs(vec![
            NfElem::from_rat(rat_int(-5)),
            NfElem::zero(),
            NfElem::one(),
        ]);
        let ext = extend_field(&q, &mu).unwrap();
        assert_eq!(ext.field.degree(), 2);
        assert_eq!(ext.beta.mul(&ext.beta).to_rat(), Some(rat_int(5)));
    }

    #[test]
    fn embedding_moves_elements_along() {
        let k = sqrt2_field();
        let mu = UniPoly::from_coeffs(vec![
            NfElem::from_rat(rat_int(-3)),
            NfElem::zero(),
            NfElem::one(),
        ]);
        let ext = extend_field(&k, &mu).unwrap();
        // Map 1 + 2*sqrt2 from K into L via alpha's image.
        let e = NfElem::one().add(&NfElem::generator(&k).mul(&NfElem::from_rat(rat_int(2))));
        let im = e.embed(&ext.alpha);
        let expect = NfElem::one()
            .bind(&ext.field)
            .add(&ext.alpha.mul(&NfElem::from_rat(rat_int(2))));
        assert_eq!(im, expect);
    }
}
