//! Monomials: exponent vectors ordered by graded lexicographic comparison.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Exponent vector; length equals the arity of the owning context.
/// The ordering is graded lex: total degree first, then lexicographic with
/// earlier variables weighing more.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// The constant monomial 1.
    pub fn one(arity: usize) -> Self {
        Monomial { exps: vec![0; arity] }
    }

    /// The single variable with index `var`.
    pub fn var(arity: usize, var: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[var] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Total degree: sum of all exponents.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Degree restricted to the given variable indices.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&v| self.exps[v]).sum()
    }

    /// Weighted degree under integer variable weights.
    pub fn weight(&self, weights: &[i64]) -> i64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial {
                exps: self
                    .exps
                    .iter()
                    .zip(&other.exps)
                    .map(|(a, b)| a - b)
                    .collect(),
            })
        } else {
            None
        }
    }

    /// Raises every exponent by the factor.
    pub fn pow(&self, e: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|a| a * e).collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => self.exps.cmp(&other.exps),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e.to_vec())
    }

    #[test]
    fn graded_lex_order() {
        // Degree dominates.
        assert!(m(&[2, 0]) > m(&[0, 1]));
        // Same degree: earlier variable wins.
        assert!(m(&[2, 1]) > m(&[1, 2]));
        assert!(m(&[0, 3]) < m(&[1, 2]));
        // Total order on distinct monomials.
        assert_eq!(m(&[1, 1]).cmp(&m(&[1, 1])), Ordering::Equal);
    }

    #[test]
    fn degree_and_weight() {
        let mono = m(&[3, 1, 2]);
        assert_eq!(mono.degree(), 6);
        assert_eq!(mono.degree_in(&[0, 1]), 4);
        // weights (-1, 1, 2): 3*(-1) + 1*1 + 2*2 = 2
        assert_eq!(mono.weight(&[-1, 1, 2]), 2);
    }

    #[test]
    fn division() {
        let a = m(&[3, 2]);
        let b = m(&[1, 2]);
        assert!(b.divides(&a));
        assert_eq!(a.div(&b), Some(m(&[2, 0])));
        assert_eq!(b.div(&a), None);
        assert_eq!(a.div(&Monomial::one(2)), Some(a.clone()));
    }
}
