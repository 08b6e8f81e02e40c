//! Ansatz support enumeration and the invariance linear system.
//!
//! An ansatz fixes a finite monomial support for the unknown curve g; the
//! condition X(g) - K g = 0 is linear in the coefficients of g, giving an
//! exact matrix whose right nullspace is the space of invariant curves
//! supported on the ansatz.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::context::Ctx;
use crate::error::Error;
use crate::matrix::ExactMatrix;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::vecfield::PolyVectorField;
use crate::Rat;

/// Quasi-homogeneity filter: keep only monomials of the target weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QhFilter {
    /// One weight per context variable.
    pub weights: Vec<i64>,
    pub target: i64,
}

/// Degree box for the unknown curve: state degree at most n, each listed
/// parameter capped individually, all other variables excluded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzSpec {
    pub state_vars: (usize, usize),
    pub max_state_degree: u32,
    /// (variable index, max exponent) for each participating parameter.
    pub param_caps: Vec<(usize, u32)>,
    pub qh: Option<QhFilter>,
}

impl AnsatzSpec {
    pub fn new(state_vars: (usize, usize), n: u32) -> Self {
        AnsatzSpec {
            state_vars,
            max_state_degree: n,
            param_caps: Vec::new(),
            qh: None,
        }
    }

    pub fn with_param(mut self, var: usize, cap: u32) -> Self {
        self.param_caps.push((var, cap));
        self
    }

    pub fn with_qh(mut self, weights: Vec<i64>, target: i64) -> Self {
        self.qh = Some(QhFilter { weights, target });
        self
    }
}

/// All monomials in the degree box (passing the weight filter when set), in
/// descending graded-lex order. Deterministic.
pub fn enumerate_support(spec: &AnsatzSpec, ctx: &Ctx) -> Vec<Monomial> {
    let arity = ctx.arity();
    let (sv1, sv2) = spec.state_vars;
    let n = spec.max_state_degree;
    // Cartesian product over parameter exponent ranges, built iteratively.
    let mut param_choices: Vec<Vec<u32>> = vec![Vec::new()];
    for &(_, cap) in &spec.param_caps {
        let mut next = Vec::with_capacity(param_choices.len() * (cap as usize + 1));
        for prefix in &param_choices {
            for e in 0..=cap {
                let mut ext = prefix.clone();
                ext.push(e);
                next.push(ext);
            }
        }
        param_choices = next;
    }
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=(n - i) {
            for choice in &param_choices {
                let mut exps = vec![0u32; arity];
                exps[sv1] = i;
                exps[sv2] = j;
                for (k, &(var, _)) in spec.param_caps.iter().enumerate() {
                    exps[var] = choice[k];
                }
                let m = Monomial::from_exps(exps);
                if let Some(qh) = &spec.qh {
                    if m.weight(&qh.weights) != qh.target {
                        continue;
                    }
                }
                out.push(m);
            }
        }
    }
    out.sort();
    out.reverse();
    out
}

/// Matrix M with M . coeffs = 0 iff X(g) - K g = 0 identically, where g
/// ranges over the ansatz support. Rows are labeled by the constraint
/// monomials (the union of supports of the column images), columns by the
/// ansatz monomials, both in descending graded-lex order.
pub fn build_linear_system(
    x: &PolyVectorField,
    k: &Polynomial,
    spec: &AnsatzSpec,
) -> Result<ExactMatrix, Error> {
    let ctx = x.ctx().clone();
    let support = enumerate_support(spec, &ctx);
    // Image of each basis monomial under g -> X(g) - K g.
    let mut images: Vec<Polynomial> = Vec::with_capacity(support.len());
    for m in &support {
        let gm = Polynomial::term(&ctx, m.clone(), Rat::from_integer(1.into()))?;
        let xg = x.lie_derivative(&gm)?;
        images.push(&xg - &(k * &gm));
    }
    // Constraint monomials: union of image supports, descending.
    let mut rows: Vec<Monomial> = Vec::new();
    {
        let mut set: alloc::collections::BTreeSet<Monomial> = alloc::collections::BTreeSet::new();
        for im in &images {
            for (m, _) in im.terms() {
                set.insert(m.clone());
            }
        }
        rows.extend(set.into_iter());
        rows.reverse();
    }
    let mut mat = ExactMatrix::zero(rows.len(), support.len());
    for (c, im) in images.iter().enumerate() {
        for (m, coeff) in im.terms() {
            let r = rows.binary_search_by(|probe| m.cmp(probe)).expect("row exists");
            if !coeff.is_zero() {
                mat.set(r, c, coeff.clone());
            }
        }
    }
    mat.row_labels = rows;
    mat.col_labels = support;
    Ok(mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::VariableContext;
    use crate::vecfield::{pure_q_normal_form, scalar_cofactor};
    use crate::{rat, rat_int};

    fn ctx() -> Ctx {
        VariableContext::standard()
    }

    /// Weights (z, y, q, p, a, x) = (-1, 1, 2, 2, 0, 0).
    fn weights(c: &Ctx) -> Vec<i64> {
        let mut w = vec![0i64; c.arity()];
        w[c.index_of("z").unwrap()] = -1;
        w[c.index_of("y").unwrap()] = 1;
        w[c.index_of("q").unwrap()] = 2;
        w[c.index_of("p").unwrap()] = 2;
        w
    }

    #[test]
    fn degree_one_support() {
        let c = ctx();
        let z = c.index_of("z").unwrap();
        let y = c.index_of("y").unwrap();
        let spec = AnsatzSpec::new((z, y), 1);
        let sup = enumerate_support(&spec, &c);
        // Descending graded-lex: z, y, 1.
        assert_eq!(sup.len(), 3);
        assert_eq!(sup[0], Monomial::var(c.arity(), z));
        assert_eq!(sup[1], Monomial::var(c.arity(), y));
        assert_eq!(sup[2], Monomial::one(c.arity()));
    }

    #[test]
    fn degree_zero_support_is_unit() {
        let c = ctx();
        let spec = AnsatzSpec::new((0, 1), 0);
        let sup = enumerate_support(&spec, &c);
        assert_eq!(sup, vec![Monomial::one(c.arity())]);
    }

    /// The quasi-homogeneous degree-9 support for the weight-3 class with
    /// q-degree at most 6 has exactly 24 monomials (independent hand count
    /// of the solutions of j - i + 2k = 3, i + j <= 9, k <= 6), and includes
    /// the printed curve's extremes y^3, q^2 z, and q^6 z^9.
    #[test]
    fn degree_nine_weight_three_support() {
        let c = ctx();
        let z = c.index_of("z").unwrap();
        let y = c.index_of("y").unwrap();
        let q = c.index_of("q").unwrap();
        let spec = AnsatzSpec::new((z, y), 9)
            .with_param(q, 6)
            .with_qh(weights(&c), 3);
        let sup = enumerate_support(&spec, &c);
        assert_eq!(sup.len(), 24);
        let mk = |ze: u32, ye: u32, qe: u32| {
            let mut e = vec![0u32; c.arity()];
            e[z] = ze;
            e[y] = ye;
            e[q] = qe;
            Monomial::from_exps(e)
        };
        assert!(sup.contains(&mk(0, 3, 0))); // y^3
        assert!(sup.contains(&mk(1, 0, 2))); // q^2 z
        assert!(sup.contains(&mk(9, 0, 6))); // q^6 z^9
        // Every member has weight 3.
        let w = weights(&c);
        assert!(sup.iter().all(|m| m.weight(&w) == 3));
        // Descending order.
        for pair in sup.windows(2) {
            assert!(pair[0] > pair[1]);
        }
    }

    #[test]
    fn zero_field_zero_cofactor_gives_zero_matrix() {
        let c = ctx();
        let z = c.index_of("z").unwrap();
        let y = c.index_of("y").unwrap();
        let x = PolyVectorField::new(
            Polynomial::zero(&c),
            Polynomial::zero(&c),
            (z, y),
        )
        .unwrap();
        let spec = AnsatzSpec::new((z, y), 2);
        let mat = build_linear_system(&x, &Polynomial::zero(&c), &spec).unwrap();
        assert_eq!(mat.rows(), 0);
        assert_eq!(mat.cols(), 6);
        // Everything is invariant: kernel is full.
        assert_eq!(mat.kernel_basis().len(), 6);
    }

    #[test]
    fn column_count_matches_support() {
        let c = ctx();
        let z = c.index_of("z").unwrap();
        let y = c.index_of("y").unwrap();
        let q = c.index_of("q").unwrap();
        let x = pure_q_normal_form(&c, &rat(-8, 13), &rat(-24, 169))
            .unwrap()
            .expand()
            .unwrap();
        let k = scalar_cofactor(&c, "y", 9).unwrap();
        let spec = AnsatzSpec::new((z, y), 9)
            .with_param(q, 6)
            .with_qh(weights(&c), 3);
        let mat = build_linear_system(&x, &k, &spec).unwrap();
        assert_eq!(mat.cols(), 24);
        assert!(mat.rows() > 0);
        // The image of g under X(g) - 9y g raises weight by 1: every
        // constraint monomial has weight 4.
        let w = weights(&c);
        assert!(mat.row_labels.iter().all(|m| m.weight(&w) == 4));
        let _ = rat_int(0);
    }
}
