//! Exact matrices over the rationals and right-nullspace computation.
//!
//! Two kernel algorithms are provided. `kernel_basis` is the production
//! path: fraction-free Bareiss elimination over integers after clearing row
//! denominators, which keeps intermediate entries as exact minors and avoids
//! rational blowup. `kernel_basis_naive` is the independent reference:
//! textbook Gauss-Jordan over rationals. Both use the same deterministic
//! pivot rule (columns left to right, first row with a nonzero entry), so on
//! any input they produce the same pivot-column split and, after
//! normalization, identical basis vectors; the property suite holds them to
//! that.
//!
//! Basis vectors are normalized to integer entries with content 1 and a
//! positive first nonzero entry.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::monomial::Monomial;
use crate::{Int, Rat};

/// Dense row-major matrix of exact rationals with optional monomial labels
/// (rows: constraint monomials, columns: ansatz monomials).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
    pub row_labels: Vec<Monomial>,
    pub col_labels: Vec<Monomial>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        ExactMatrix {
            rows: r,
            cols: c,
            data,
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    /// Right-nullspace basis via Gauss-Jordan over rationals. Reference
    /// implementation: simple enough to audit by eye, used as the oracle for
    /// the fraction-free path.
    pub fn kernel_basis_naive(&self) -> Vec<Vec<Rat>> {
        let mut a: Vec<Vec<Rat>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut row = 0usize;
        for col in 0..self.cols {
            // First row at or below `row` with a nonzero entry in `col`.
            let Some(p) = (row..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            let inv = {
                let pv = a[row][col].clone();
                Rat::one() / pv
            };
            for c in col..self.cols {
                let v = a[row][c].clone() * &inv;
                a[row][c] = v;
            }
            for r in 0..self.rows {
                if r != row && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in col..self.cols {
                        let v = a[r][c].clone() - a[row][c].clone() * &factor;
                        a[r][c] = v;
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (i, &pc) in pivot_cols.iter().enumerate() {
                // RREF row i: v[pc] + a[i][free] * 1 = 0.
                v[pc] = -a[i][free].clone();
            }
            basis.push(normalize_vector(&v));
        }
        basis
    }

    /// Right-nullspace basis via fraction-free Bareiss elimination.
    /// Deterministic pivoting: columns left to right, first usable row.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        // Clear denominators row by row; row scaling preserves the kernel.
        let mut a: Vec<Vec<Int>> = (0..self.rows)
            .map(|r| {
                let mut lcm = Int::one();
                for c in 0..self.cols {
                    lcm = lcm.lcm(self.get(r, c).denom());
                }
                (0..self.cols)
                    .map(|c| {
                        let q = self.get(r, c);
                        q.numer() * (&lcm / q.denom())
                    })
                    .collect()
            })
            .collect();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut row = 0usize;
        let mut prev_pivot = Int::one();
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            for r in row + 1..self.rows {
                for c in col + 1..self.cols {
                    let num = &a[row][col] * &a[r][c] - &a[r][col] * &a[row][c];
                    let (q, rem) = num.div_rem(&prev_pivot);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    a[r][c] = q;
                }
                a[r][col] = Int::zero();
            }
            prev_pivot = a[row][col].clone();
            pivot_cols.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        // Back-substitution over rationals on the echelon form.
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for i in (0..pivot_cols.len()).rev() {
                let pc = pivot_cols[i];
                if pc > free {
                    continue;
                }
                let mut acc = Rat::zero();
                for c in pc + 1..self.cols {
                    if !a[i][c].is_zero() && !v[c].is_zero() {
                        acc += Rat::from_integer(a[i][c].clone()) * &v[c];
                    }
                }
                v[pc] = -acc / Rat::from_integer(a[i][pc].clone());
            }
            basis.push(normalize_vector(&v));
        }
        basis
    }

    /// Rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        self.cols - self.kernel_basis().len()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.cols {
                    let e = self.get(r, c);
                    if !e.is_zero() && !v[c].is_zero() {
                        acc += e * &v[c];
                    }
                }
                acc
            })
            .collect()
    }
}

/// Scales to integer entries, content 1, positive first nonzero entry.
pub fn normalize_vector(v: &[Rat]) -> Vec<Rat> {
    let mut lcm = Int::one();
    for x in v {
        if !x.is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let mut gcd = Int::zero();
    for x in v {
        if !x.is_zero() {
            gcd = gcd.gcd(&(x.numer() * (&lcm / x.denom())));
        }
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    let mut scale = Rat::new(lcm, gcd);
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if (first * &scale).is_negative() {
            scale = -scale;
        }
    }
    v.iter().map(|x| x * &scale).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_has_empty_kernel() {
        let id = m(&[&[1, 0], &[0, 1]]);
        assert!(id.kernel_basis().is_empty());
        assert!(id.kernel_basis_naive().is_empty());
        assert_eq!(id.rank(), 2);
    }

    #[test]
    fn one_by_two() {
        let a = m(&[&[1, -1]]);
        let k = a.kernel_basis();
        assert_eq!(k, vec![vec![rat_int(1), rat_int(1)]]);
        assert_eq!(a.kernel_basis_naive(), k);
    }

    #[test]
    fn rank_deficient_with_rational_entries() {
        let a = ExactMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3), rat(1, 6)],
            vec![rat(3, 2), rat_int(1), rat(1, 2)],
        ]);
        // Row 2 = 3 * row 1, so rank 1, kernel dim 2.
        let k = a.kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(a.kernel_basis_naive(), k);
        for v in &k {
            let image = a.apply(v);
            assert!(image.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn zero_matrix_kernel_is_full() {
        let a = ExactMatrix::zero(3, 4);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 4);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, if i == j { rat_int(1) } else { rat_int(0) });
            }
        }
    }

    #[test]
    fn normalization_is_primitive_and_positive() {
        let v = vec![rat(-2, 3), rat(4, 9), rat_int(0)];
        let n = normalize_vector(&v);
        assert_eq!(n, vec![rat_int(3), rat_int(-2), rat_int(0)]);
    }

    #[test]
    fn wide_matrix_agreement() {
        // Row 2 minus half of row 1 equals row 3, so the rank is 2.
        let a = m(&[
            &[2, 4, -2, 0, 6],
            &[1, 2, 3, 1, -1],
            &[0, 0, 4, 1, -4],
        ]);
        let k1 = a.kernel_basis();
        let k2 = a.kernel_basis_naive();
        assert_eq!(k1, k2);
        assert_eq!(k1.len(), 3);
        for v in &k1 {
            assert!(a.apply(v).iter().all(|x| x.is_zero()));
        }
    }
}
