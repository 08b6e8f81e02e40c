//! Arithmetic modulo machine-word primes: scalar ops, dense polynomials,
//! root finding, small-prime Berlekamp factorization, CRT, and rational
//! reconstruction. Primes are kept below 2^62 so sums never overflow u64
//! and products fit in u128.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::unipoly::UPolZ;
use crate::{Int, Rat};

/// Deterministic Miller-Rabin, valid for all n < 2^64 with this base set.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        e >>= 1;
    }
    acc
}

/// The k-th prime below 2^62, counting down (k = 0 gives the largest).
pub fn prime_below_62(k: usize) -> u64 {
    let mut n = (1u64 << 62) - 1;
    let mut seen = 0;
    loop {
        if is_prime_u64(n) {
            if seen == k {
                return n;
            }
            seen += 1;
        }
        n -= 2;
    }
}

/// Prime field of a u64 prime p < 2^62.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 62) && is_prime_u64(p), "need a prime < 2^62");
        Fp { p }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod_u64(a, b, self.p)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod_u64(a, e, self.p)
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    /// Reduces a signed big integer into [0, p).
    pub fn reduce_int(&self, a: &Int) -> u64 {
        let m = Int::from(self.p);
        let r = a % &m;
        let r = if r.is_negative() { r + &m } else { r };
        r.to_u64().expect("reduced value fits in u64")
    }

    /// Image of a rational with denominator coprime to p; None otherwise.
    pub fn reduce_rat(&self, a: &Rat) -> Option<u64> {
        let den = self.reduce_int(a.denom());
        if den == 0 {
            return None;
        }
        Some(self.mul(self.reduce_int(a.numer()), self.inv(den)))
    }
}

/// Dense polynomial over Fp; coeffs[i] is the coefficient of x^i, no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyP {
    pub coeffs: Vec<u64>,
    pub fp: Fp,
}

impl PolyP {
    pub fn zero(fp: Fp) -> Self {
        PolyP {
            coeffs: Vec::new(),
            fp,
        }
    }

    pub fn one(fp: Fp) -> Self {
        PolyP {
            coeffs: vec![1],
            fp,
        }
    }

    pub fn x(fp: Fp) -> Self {
        PolyP {
            coeffs: vec![0, 1],
            fp,
        }
    }

    pub fn constant(fp: Fp, c: u64) -> Self {
        let mut p = PolyP {
            coeffs: vec![c % fp.p],
            fp,
        };
        p.trim();
        p
    }

    pub fn from_coeffs(fp: Fp, coeffs: Vec<u64>) -> Self {
        let mut p = PolyP { coeffs, fp };
        for c in &mut p.coeffs {
            *c %= fp.p;
        }
        p.trim();
        p
    }

    /// Reduction of an integer polynomial mod p.
    pub fn from_upolz(fp: Fp, f: &UPolZ) -> Self {
        let coeffs = f.coeffs.iter().map(|c| fp.reduce_int(c)).collect();
        let mut p = PolyP { coeffs, fp };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
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

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn lc(&self) -> u64 {
        *self.coeffs.last().expect("lc of zero polynomial")
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.fp.p, other.fp.p, "mixed moduli");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.fp.add(self.coeff(i), other.coeff(i)))
            .collect();
        let mut p = PolyP {
            coeffs,
            fp: self.fp,
        };
        p.trim();
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.fp.sub(self.coeff(i), other.coeff(i)))
            .collect();
        let mut p = PolyP {
            coeffs,
            fp: self.fp,
        };
        p.trim();
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.fp);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = self.fp.add(coeffs[i + j], self.fp.mul(a, b));
            }
        }
        let mut p = PolyP {
            coeffs,
            fp: self.fp,
        };
        p.trim();
        p
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.fp.p;
        if c == 0 {
            return Self::zero(self.fp);
        }
        PolyP {
            coeffs: self.coeffs.iter().map(|&a| self.fp.mul(a, c)).collect(),
            fp: self.fp,
        }
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        self.same_field(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(self.fp), self.clone());
        }
        let lc_inv = self.fp.inv(divisor.lc());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i] == 0 {
                continue;
            }
            let q = self.fp.mul(rem[i], lc_inv);
            for j in 0..dd {
                let t = self.fp.mul(q, divisor.coeffs[j]);
                rem[i - dd + j] = self.fp.sub(rem[i - dd + j], t);
            }
            rem[i] = 0;
            quot[i - dd] = q;
        }
        let mut qp = PolyP {
            coeffs: quot,
            fp: self.fp,
        };
        qp.trim();
        let mut rp = PolyP {
            coeffs: rem,
            fp: self.fp,
        };
        rp.trim();
        (qp, rp)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.fp.inv(self.lc()))
    }

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

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.fp);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.fp.mul(c, (i as u64) % self.fp.p))
            .collect();
        let mut p = PolyP {
            coeffs,
            fp: self.fp,
        };
        p.trim();
        p
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = self.fp.add(self.fp.mul(acc, x), c);
        }
        acc
    }

    /// self^e mod m by square and multiply.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.fp);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn is_square_free(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let d = self.derivative();
        if d.is_zero() {
            return self.degree() == Some(0);
        }
        self.gcd(&d).degree() == Some(0)
    }
}

/// Small deterministic PRNG for the randomized splitting steps; the fixed
/// seed makes every run reproducible.
pub struct SplitSource {
    state: u64,
}

impl SplitSource {
    pub fn new(seed: u64) -> Self {
        SplitSource { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }
}

/// Distinct roots of f in F_p, ascending. p must be odd.
pub fn roots_mod_p(f: &PolyP) -> Vec<u64> {
    let fp = f.fp;
    assert!(fp.p > 2, "odd prime required");
    if f.is_zero() {
        panic!("roots of the zero polynomial");
    }
    if f.degree() == Some(0) {
        return Vec::new();
    }
    // Keep only the linear-root part: gcd(f, x^p - x).
    let xp = PolyP::x(fp).pow_mod(fp.p, f);
    let lin = f.gcd(&xp.sub(&PolyP::x(fp)));
    let mut roots = Vec::new();
    let mut rng = SplitSource::new(0x5EED_D00D);
    let mut stack = vec![lin];
    while let Some(g) = stack.pop() {
        match g.degree() {
            None | Some(0) => continue,
            Some(1) => {
                // g = x + c (monic): root is -c.
                let g = g.monic();
                roots.push(fp.neg(g.coeff(0)));
                continue;
            }
            _ => {}
        }
        // Random shift splitting: gcd(g, (x+a)^((p-1)/2) - 1) is a proper
        // factor with probability about 1/2.
        let a = rng.next_u64() % fp.p;
        let shifted = PolyP::from_coeffs(fp, vec![a, 1]);
        let h = shifted.pow_mod((fp.p - 1) / 2, &g).sub(&PolyP::one(fp));
        let d = g.gcd(&h);
        match d.degree() {
            Some(k) if k > 0 && k < g.degree().unwrap() => {
                let (q, r) = g.div_rem(&d);
                debug_assert!(r.is_zero());
                stack.push(d);
                stack.push(q);
            }
            _ => stack.push(g),
        }
    }
    roots.sort_unstable();
    roots
}

/// Berlekamp factorization of a square-free monic polynomial over a small
/// prime field; returns monic irreducible factors, ascending by (degree,
/// coefficients). Cost grows with p, so callers keep p small.
pub fn berlekamp_factor(f: &PolyP) -> Vec<PolyP> {
    let fp = f.fp;
    let f = f.monic();
    let n = match f.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => return vec![f],
        Some(n) => n,
    };
    debug_assert!(f.is_square_free(), "Berlekamp needs square-free input");
    // Rows of the Frobenius matrix: x^(p*i) mod f for i = 0..n.
    let xp = PolyP::x(fp).pow_mod(fp.p, &f);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut acc = PolyP::one(fp);
    for _ in 0..n {
        let mut row = vec![0u64; n];
        for (i, &c) in acc.coeffs.iter().enumerate() {
            row[i] = c;
        }
        rows.push(row);
        acc = acc.mul(&xp).rem(&f);
    }
    // Kernel of (Q - I)^T: vectors v with v(x)^p = v(x) mod f. Our rows are
    // images of basis vectors, so we solve v * (Q - I) = 0, i.e. the kernel
    // of the transpose; build the matrix with columns = rows of Q - I.
    let mut mat = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            mat[j][i] = c;
        }
        mat[i][i] = fp.sub(mat[i][i], 1);
    }
    let kernel = kernel_mod_p(fp, &mut mat, n);
    let r = kernel.len();
    if r == 1 {
        return vec![f];
    }
    // Successive refinement by gcd(u, w - c) over all basis vectors and
    // all field constants; complete for the full split when p is small.
    let mut factors = vec![f.clone()];
    'outer: for w in &kernel {
        let wpoly = PolyP::from_coeffs(fp, w.clone());
        if wpoly.degree() == Some(0) || wpoly.is_zero() {
            continue;
        }
        let mut next = Vec::new();
        for u in factors.drain(..) {
            if u.degree() == Some(1) {
                next.push(u);
                continue;
            }
            let mut remaining = u;
            for c in 0..fp.p {
                if remaining.degree() == Some(0) {
                    break;
                }
                let shifted = wpoly.sub(&PolyP::constant(fp, c));
                let d = remaining.gcd(&shifted);
                if let Some(k) = d.degree() {
                    if k > 0 && k < remaining.degree().unwrap() {
                        let (q, rm) = remaining.div_rem(&d);
                        debug_assert!(rm.is_zero());
                        next.push(d);
                        remaining = q;
                    } else if k > 0 && k == remaining.degree().unwrap() {
                        // whole thing; keep scanning other c
                    }
                }
            }
            next.push(remaining);
        }
        factors = next;
        if factors.len() == r {
            break 'outer;
        }
    }
    let mut factors: Vec<PolyP> = factors.into_iter().map(|f| f.monic()).collect();
    factors.sort_by(|a, b| {
        a.coeffs
            .len()
            .cmp(&b.coeffs.len())
            .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
    });
    factors
}

/// Kernel basis of an n x n matrix over F_p (row-major; consumed).
fn kernel_mod_p(fp: Fp, mat: &mut [Vec<u64>], n: usize) -> Vec<Vec<u64>> {
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let mut sel = None;
        for r in row..n {
            if mat[r][col] != 0 {
                sel = Some(r);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        mat.swap(row, sel);
        let inv = fp.inv(mat[row][col]);
        for j in 0..n {
            mat[row][j] = fp.mul(mat[row][j], inv);
        }
        for r in 0..n {
            if r != row && mat[r][col] != 0 {
                let factor = mat[r][col];
                for j in 0..n {
                    let t = fp.mul(factor, mat[row][j]);
                    mat[r][j] = fp.sub(mat[r][j], t);
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: alloc::collections::BTreeSet<usize> =
        pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = fp.neg(mat[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Chinese remainder on big integers: the unique x mod m1*m2 with
/// x = a1 (m1), x = a2 (m2); moduli must be coprime.
pub fn crt_pair(a1: &Int, m1: &Int, a2: &Int, m2: &Int) -> Int {
    use num_integer::Integer;
    let e = m1.extended_gcd(m2);
    debug_assert!(e.gcd.is_one(), "crt moduli must be coprime");
    // x = a1 + m1 * ((a2 - a1) * inv(m1) mod m2)
    let inv = e.x.mod_floor(m2);
    let diff = (a2 - a1).mod_floor(m2);
    let t = (diff * inv).mod_floor(m2);
    a1 + m1 * t
}

/// Rational reconstruction of a mod m: the unique n/d with |n|, d <=
/// sqrt(m/2), gcd(d, m) = 1, n = a*d (mod m), when it exists.
pub fn rational_reconstruct(a: &Int, m: &Int) -> Option<Rat> {
    use num_integer::Integer;
    let a = a.mod_floor(m);
    let bound = (m / Int::from(2)).sqrt();
    let mut r0 = m.clone();
    let mut r1 = a.clone();
    let mut t0 = Int::zero();
    let mut t1 = Int::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        let t = &t0 - &q * &t1;
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if t1.is_zero() {
        return None;
    }
    let (num, den) = if t1.is_negative() {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    if den > bound || !den.gcd(m).is_one() {
        return None;
    }
    // Verify: num = a * den (mod m).
    if (&num - &a * &den).mod_floor(m) != Int::zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn prime_scan_matches_frozen_values() {
        assert_eq!(prime_below_62(0), 4611686018427387847);
        assert_eq!(prime_below_62(1), 4611686018427387817);
        assert_eq!(prime_below_62(2), 4611686018427387787);
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(4611686018427387845));
    }

    #[test]
    fn field_ops_round_trip() {
        let fp = Fp::new(prime_below_62(0));
        let a = 123456789123456789u64;
        assert_eq!(fp.mul(a, fp.inv(a)), 1);
        assert_eq!(fp.add(a, fp.neg(a)), 0);
        assert_eq!(fp.pow(a, fp.p - 1), 1);
    }

    #[test]
    fn roots_of_constructed_product() {
        let fp = Fp::new(prime_below_62(0));
        // (x - 3)(x - 5)(x - 7)(x^2 + 1): the quadratic may or may not
        // split, but 3, 5, 7 must be found. Build the product mod p.
        let mut f = PolyP::one(fp);
        for r in [3u64, 5, 7] {
            f = f.mul(&PolyP::from_coeffs(fp, vec![fp.neg(r), 1]));
        }
        let roots_linear = roots_mod_p(&f);
        assert_eq!(roots_linear, vec![3, 5, 7]);
        // x^3 - 2 has no roots mod this prime (checked against an
        // independent number-theory computation once and frozen).
        let g = PolyP::from_coeffs(fp, vec![fp.neg(2), 0, 0, 1]);
        assert!(roots_mod_p(&g).is_empty());
    }

    #[test]
    fn berlekamp_splits_known_product() {
        let fp = Fp::new(13);
        // f = (x^2 + 1)(x + 2)(x + 4) mod 13. Since 5^2 = -1 mod 13 the
        // quadratic splits as (x + 5)(x + 8), so f is a product of four
        // distinct linears and the factorization must find all of them.
        let x2p1 = PolyP::from_coeffs(fp, vec![1, 0, 1]);
        let f = x2p1
            .mul(&PolyP::from_coeffs(fp, vec![2, 1]))
            .mul(&PolyP::from_coeffs(fp, vec![4, 1]));
        let factors = berlekamp_factor(&f);
        assert_eq!(factors.len(), 4);
        assert!(factors.iter().all(|g| g.degree() == Some(1)));
        let mut prod = PolyP::one(fp);
        for g in &factors {
            prod = prod.mul(g);
        }
        assert_eq!(prod, f.monic());
    }

    #[test]
    fn berlekamp_keeps_true_irreducibles() {
        let fp = Fp::new(7);
        // x^2 + 1 mod 7: -1 is not a QR mod 7, so irreducible.
        let f = PolyP::from_coeffs(fp, vec![1, 0, 1]);
        let factors = berlekamp_factor(&f);
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0], f);
        // (x^2 + 1)(x^2 + x + 3) mod 7 (both irreducible).
        let g = PolyP::from_coeffs(fp, vec![3, 1, 1]);
        let prod = f.mul(&g);
        let factors = berlekamp_factor(&prod);
        assert_eq!(factors.len(), 2);
        assert!(factors.contains(&f));
        assert!(factors.contains(&g));
    }

    #[test]
    fn crt_and_rational_reconstruction() {
        let m1 = Int::from(prime_below_62(0));
        let m2 = Int::from(prime_below_62(1));
        let fp1 = Fp::new(prime_below_62(0));
        let fp2 = Fp::new(prime_below_62(1));
        let target = rat(-227, 9817);
        let a1 = Int::from(fp1.reduce_rat(&target).unwrap());
        let a2 = Int::from(fp2.reduce_rat(&target).unwrap());
        let lifted = crt_pair(&a1, &m1, &a2, &m2);
        let m = &m1 * &m2;
        assert_eq!(rational_reconstruct(&lifted, &m), Some(target));
    }

    #[test]
    fn reconstruction_rejects_garbage() {
        // A residue with no small rational preimage mod a single prime of
        // this size would need numerator and denominator near sqrt(p);
        // use a residue built from a large pseudorandom pair and check the
        // verification step catches mismatches for a tiny denominator bound
        // scenario: reconstruct, then confirm the result actually reduces
        // back to the residue (self-consistency).
        let p = prime_below_62(0);
        let fp = Fp::new(p);
        let m = Int::from(p);
        let a = Int::from(0x1234_5678_9ABC_DEFu64);
        if let Some(r) = rational_reconstruct(&a, &m) {
            let back = fp.reduce_rat(&r).unwrap();
            assert_eq!(Int::from(back), a);
        }
    }
}
