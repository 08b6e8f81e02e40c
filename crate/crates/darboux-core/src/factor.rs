//! Univariate factorization over the integers and rationals: modular gcd,
//! Yun square-free decomposition, Hensel-lifted Zassenhaus factorization,
//! and rational root extraction.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::modp::{berlekamp_factor, is_prime_u64, prime_below_62, Fp, PolyP};
use crate::unipoly::{UPolZ, UniPoly};
use crate::{Int, Rat};

/// gcd in Z[x] (sign-normalized to a positive leading coefficient),
/// computed from modular images with CRT lifting and verified by exact
/// trial division, so unlucky primes cannot produce a wrong answer.
pub fn gcd_z(a: &UPolZ, b: &UPolZ) -> UPolZ {
    if a.is_zero() {
        return sign_normalize(b);
    }
    if b.is_zero() {
        return sign_normalize(a);
    }
    let ca = a.content();
    let cb = b.content();
    let cont = ca.gcd(&cb);
    let pa = a.primitive();
    let pb = b.primitive();
    if pa.degree() == Some(0) || pb.degree() == Some(0) {
        return UPolZ::from_coeffs(vec![cont]);
    }
    let lc_gcd = pa.lc().gcd(&pb.lc());
    let mut acc: Option<(Vec<Int>, Int, usize)> = None; // (coeffs mod M, M, deg)
    let mut prime_idx = 0usize;
    loop {
        let p = prime_below_62(prime_idx);
        prime_idx += 1;
        let fp = Fp::new(p);
        if fp.reduce_int(&pa.lc()) == 0 || fp.reduce_int(&pb.lc()) == 0 {
            continue;
        }
        let gp = PolyP::from_upolz(fp, &pa).gcd(&PolyP::from_upolz(fp, &pb));
        let d = gp.degree().expect("gcd of nonzero polynomials");
        if d == 0 {
            return UPolZ::from_coeffs(vec![cont]);
        }
        // Scale the monic image so every lucky prime sees the same
        // normalization: lc_gcd times the primitive gcd.
        let scaled = gp.scale(fp.reduce_int(&lc_gcd));
        let img: Vec<Int> = (0..=d).map(|i| Int::from(scaled.coeff(i))).collect();
        let m = Int::from(p);
        acc = match acc {
            Some((coeffs, modulus, deg)) if deg < d => Some((coeffs, modulus, deg)),
            Some((coeffs, modulus, deg)) if deg == d => {
                let combined: Vec<Int> = coeffs
                    .iter()
                    .zip(img.iter())
                    .map(|(c1, c2)| crate::modp::crt_pair(c1, &modulus, c2, &m))
                    .collect();
                Some((combined, &modulus * &m, deg))
            }
            _ => Some((img, m, d)),
        };
        let (coeffs, modulus, _) = acc.as_ref().unwrap();
        let candidate =
            UPolZ::from_coeffs(coeffs.iter().map(|c| symmetric(c, modulus)).collect())
                .primitive();
        if !candidate.is_zero()
            && pa.div_exact(&candidate).is_some()
            && pb.div_exact(&candidate).is_some()
        {
            return candidate.scale(&cont);
        }
    }
}

fn sign_normalize(f: &UPolZ) -> UPolZ {
    if f.is_zero() || !f.lc().is_negative() {
        f.clone()
    } else {
        f.neg()
    }
}

/// Symmetric representative of c mod m, in (-m/2, m/2].
fn symmetric(c: &Int, m: &Int) -> Int {
    let r = c.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

/// Monic gcd over Q, routed through the integer gcd.
pub fn gcd_q(a: &UniPoly<Rat>, b: &UniPoly<Rat>) -> UniPoly<Rat> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (_, za) = UPolZ::from_rational(a);
    let (_, zb) = UPolZ::from_rational(b);
    gcd_z(&za.primitive(), &zb.primitive()).to_rational().monic()
}

/// f / gcd(f, f'): same roots, all simple.
pub fn square_free_part_q(f: &UniPoly<Rat>) -> UniPoly<Rat> {
    if f.is_zero() || f.degree() == Some(0) {
        return f.monic();
    }
    let g = gcd_q(f, &f.derivative());
    let (q, r) = f.div_rem(&g);
    debug_assert!(r.is_zero(), "gcd must divide f");
    q.monic()
}

/// Yun decomposition: returns (unit, parts) with f = unit * prod part_i ^
/// mult_i, the parts monic, square-free, pairwise coprime, multiplicities
/// strictly increasing.
pub fn square_free_decomposition_q(f: &UniPoly<Rat>) -> (Rat, Vec<(UniPoly<Rat>, u32)>) {
    assert!(!f.is_zero(), "square-free decomposition of zero");
    let unit = f.lc();
    let f = f.monic();
    if f.degree() == Some(0) {
        return (unit, Vec::new());
    }
    let df = f.derivative();
    let g = gcd_q(&f, &df);
    let mut parts = Vec::new();
    if g.degree() == Some(0) {
        parts.push((f, 1));
        return (unit, parts);
    }
    // Yun's loop: c = f/g, d = f'/g - c'.
    let mut c = exact_div(&f, &g);
    let mut d = exact_div(&df, &g).sub(&c.derivative());
    let mut i = 1u32;
    while c.degree() != Some(0) {
        let p = gcd_q(&c, &d);
        if p.degree() != Some(0) {
            parts.push((p.clone(), i));
        }
        c = exact_div(&c, &p);
        d = exact_div(&d, &p).sub(&c.derivative());
        i += 1;
    }
    (unit, parts)
}

fn exact_div(a: &UniPoly<Rat>, b: &UniPoly<Rat>) -> UniPoly<Rat> {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "division expected to be exact");
    q
}

/// Reduces coefficients into [0, m).
fn reduce_mod(f: &UPolZ, m: &Int) -> UPolZ {
    UPolZ::from_coeffs(f.coeffs.iter().map(|c| c.mod_floor(m)).collect())
}

fn mul_mod(a: &UPolZ, b: &UPolZ, m: &Int) -> UPolZ {
    reduce_mod(&a.mul(b), m)
}

fn sub_mod(a: &UPolZ, b: &UPolZ, m: &Int) -> UPolZ {
    reduce_mod(&a.sub(b), m)
}

fn add_mod(a: &UPolZ, b: &UPolZ, m: &Int) -> UPolZ {
    reduce_mod(&a.add(b), m)
}

/// Euclidean division by a monic divisor with all arithmetic mod m.
fn divrem_monic_mod(a: &UPolZ, h: &UPolZ, m: &Int) -> (UPolZ, UPolZ) {
    debug_assert!(h.lc().is_one(), "divisor must be monic");
    let dd = h.coeffs.len() - 1;
    let a = reduce_mod(a, m);
    if a.coeffs.len() <= dd {
        return (UPolZ::zero(), a);
    }
    let mut rem = a.coeffs.clone();
    let mut quot = vec![Int::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let q = rem[i].clone();
        if q.is_zero() {
            continue;
        }
        for j in 0..dd {
            rem[i - dd + j] = (&rem[i - dd + j] - &q * &h.coeffs[j]).mod_floor(m);
        }
        rem[i] = Int::zero();
        quot[i - dd] = q;
    }
    (UPolZ::from_coeffs(quot), UPolZ::from_coeffs(rem))
}

/// One quadratic Hensel step: from f = g h (mod m) with Bezout pair
/// s g + t h = 1 (mod m), h monic, to the same data mod m^2.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &UPolZ,
    g: &UPolZ,
    h: &UPolZ,
    s: &UPolZ,
    t: &UPolZ,
    m: &Int,
) -> (UPolZ, UPolZ, UPolZ, UPolZ) {
    let m2 = m * m;
    // Lift the factors: write e = (delta_g) h + (delta_h) g mod m^2 using
    // the Bezout identity, with delta_h = (s e mod h) so h stays monic.
    let e = sub_mod(f, &g.mul(h), &m2);
    let (_, r) = divrem_monic_mod(&e.mul(s), h, &m2);
    let h2 = add_mod(h, &r, &m2);
    let num = sub_mod(&e, &r.mul(g), &m2);
    let (dg, rem) = divrem_monic_mod(&num, h, &m2);
    debug_assert!(rem.is_zero(), "Hensel correction must divide exactly");
    let g2 = add_mod(g, &dg, &m2);
    // Lift the Bezout pair to s2 g2 + t2 h2 = 1 (mod m^2).
    let b = sub_mod(
        &add_mod(&s.mul(&g2), &t.mul(&h2), &m2),
        &UPolZ::from_coeffs(vec![Int::one()]),
        &m2,
    );
    let (_, rb) = divrem_monic_mod(&b.mul(s), &h2, &m2);
    let s2 = sub_mod(s, &rb, &m2);
    let numb = sub_mod(&b, &rb.mul(&g2), &m2);
    let (dt, remb) = divrem_monic_mod(&numb, &h2, &m2);
    debug_assert!(remb.is_zero(), "Bezout correction must divide exactly");
    let t2 = sub_mod(t, &dt, &m2);
    (g2, h2, s2, t2)
}

/// Extended gcd over F_p (monic gcd): returns (g, s, t).
fn ext_gcd_p(a: &PolyP, b: &PolyP) -> (PolyP, PolyP, PolyP) {
    let fp = a.fp;
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = PolyP::one(fp);
    let mut s1 = PolyP::zero(fp);
    let mut t0 = PolyP::zero(fp);
    let mut t1 = PolyP::one(fp);
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
        return (r0, s0, t0);
    }
    let inv = fp.inv(r0.lc());
    (r0.scale(inv), s0.scale(inv), t0.scale(inv))
}

fn upolz_of_polyp(f: &PolyP) -> UPolZ {
    UPolZ::from_coeffs(f.coeffs.iter().map(|&c| Int::from(c)).collect())
}

/// Lifts f = A B (mod q) to the target modulus (a power of q), doubling
/// precision each round. B must be monic; returns (A*, B*) mod target.
fn lift_pair(f: &UPolZ, a_q: &PolyP, b_q: &PolyP, q: u64, target: &Int) -> (UPolZ, UPolZ) {
    let (g1, s_q, t_q) = ext_gcd_p(a_q, b_q);
    assert_eq!(
        g1.degree(),
        Some(0),
        "modular factors must be coprime (square-free reduction)"
    );
    let mut m = Int::from(q);
    let mut g = upolz_of_polyp(a_q);
    let mut h = upolz_of_polyp(b_q);
    let mut s = upolz_of_polyp(&s_q);
    let mut t = upolz_of_polyp(&t_q);
    while &m < target {
        let fm = reduce_mod(f, &(&m * &m));
        let (g2, h2, s2, t2) = hensel_step(&fm, &g, &h, &s, &t, &m);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        m = &m * &m;
    }
    (reduce_mod(&g, &m), reduce_mod(&h, &m))
}

/// Multifactor lift: f = (lc carried by leftmost leaf) * prod(leaves)
/// (mod q), all leaves monic except possibly the first; returns the lifted
/// leaves mod target in order.
fn lift_tree(f: &UPolZ, leaves: &[PolyP], q: u64, target: &Int) -> Vec<UPolZ> {
    if leaves.len() == 1 {
        return vec![reduce_mod(f, target)];
    }
    let mid = leaves.len() / 2;
    let (left, right) = leaves.split_at(mid);
    let fp = leaves[0].fp;
    let mut a_q = PolyP::one(fp);
    for g in left {
        a_q = a_q.mul(g);
    }
    let mut b_q = PolyP::one(fp);
    for g in right {
        b_q = b_q.mul(g);
    }
    let (a_lift, b_lift) = lift_pair(f, &a_q, &b_q, q, target);
    let mut out = lift_tree(&a_lift, left, q, target);
    out.extend(lift_tree(&b_lift, right, q, target));
    out
}

/// Mignotte-style bound: any factor of f over Z has coefficients of
/// absolute value at most 2^n * sqrt(n+1) * height(f).
fn factor_coeff_bound(f: &UPolZ) -> Int {
    let n = f.degree().unwrap_or(0) as u32;
    let sqrt = Int::from(n + 1).sqrt() + 1;
    (Int::one() << n) * sqrt * f.height()
}

/// Zassenhaus factorization of a primitive square-free polynomial with a
/// positive leading coefficient. Returns primitive irreducible factors with
/// positive leading coefficients, in recombination-discovery order.
fn factor_squarefree_primitive(f: &UPolZ, cap: usize) -> Result<Vec<UPolZ>, Error> {
    let n = match f.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(1) => return Ok(vec![f.clone()]),
        Some(n) => n,
    };
    if n > cap {
        return Err(Error::FactorDegreeCap { degree: n, cap });
    }
    // Prime selection: among the first eligible small odd primes, keep the
    // one with the fewest modular factors.
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    let mut q = 3u64;
    let mut tried = 0;
    while tried < 5 {
        if is_prime_u64(q) {
            let fp = Fp::new(q);
            if fp.reduce_int(&f.lc()) != 0 {
                let fq = PolyP::from_upolz(fp, f).monic();
                if fq.is_square_free() {
                    let factors = berlekamp_factor(&fq);
                    let better = match &best {
                        Some((_, cur)) => factors.len() < cur.len(),
                        None => true,
                    };
                    if better {
                        best = Some((q, factors));
                    }
                    tried += 1;
                }
            }
        }
        q += 2;
    }
    let (q, modular) = best.expect("an eligible prime exists");
    if modular.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    // Lift to a modulus big enough that true factors (times lc) are
    // recovered exactly by symmetric representatives.
    let bound = factor_coeff_bound(f) * f.lc().abs() * Int::from(2);
    let mut target = Int::from(q);
    while target <= bound {
        target = &target * &target;
    }
    // Place lc on the leftmost leaf for the lift, then strip it afterwards
    // to recover monic lifted factors.
    let fp = Fp::new(q);
    let mut leaves = modular.clone();
    let lc_mod_q = fp.reduce_int(&f.lc());
    leaves[0] = leaves[0].scale(lc_mod_q);
    let mut lifted = lift_tree(&reduce_mod(f, &target), &leaves, q, &target);
    let lc_inv = int_inv_mod(&f.lc(), &target);
    lifted[0] = reduce_mod(&lifted[0].scale(&lc_inv), &target);

    // Subset recombination with exact trial division: try subsets of the
    // lifted factors by increasing size; a successful division removes the
    // subset and restarts at size 1 on the reduced polynomial.
    let mut remaining: Vec<UPolZ> = lifted;
    let mut current = f.clone();
    let mut found = Vec::new();
    let mut size = 1usize;
    'sizes: while 2 * size <= remaining.len() {
        let n_rem = remaining.len();
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            if let Some(g) = subset_candidate(&current, &remaining, &subset, &target) {
                if let Some(rest) = current.div_exact(&g) {
                    found.push(g);
                    current = rest;
                    let chosen: alloc::collections::BTreeSet<usize> =
                        subset.iter().copied().collect();
                    remaining = remaining
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !chosen.contains(i))
                        .map(|(_, g)| g.clone())
                        .collect();
                    size = 1;
                    continue 'sizes;
                }
            }
            if !next_combination(&mut subset, n_rem) {
                break;
            }
        }
        size += 1;
    }
    if current.degree().map(|d| d > 0).unwrap_or(false) {
        found.push(current.primitive());
    }
    Ok(found)
}

/// Advances to the next k-subset of {0..n-1} in lexicographic order;
/// false when exhausted.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Symmetric lift of lc * prod(subset) mod target, primitive part; None
/// when the cheap constant-term divisibility test already rules it out.
fn subset_candidate(
    current: &UPolZ,
    factors: &[UPolZ],
    subset: &[usize],
    target: &Int,
) -> Option<UPolZ> {
    // Constant-term pretest: for a true factor g of lc*f, g(0) divides
    // lc * f(0).
    let f0 = current.coeff(0);
    if !f0.is_zero() {
        let mut c0 = current.lc().mod_floor(target);
        for &i in subset {
            c0 = (c0 * factors[i].coeff(0)).mod_floor(target);
        }
        let c0 = symmetric(&c0, target);
        if c0.is_zero() {
            return None;
        }
        if !(&current.lc() * &f0).is_multiple_of(&c0) {
            return None;
        }
    }
    let mut prod = UPolZ::from_coeffs(vec![current.lc()]);
    for &i in subset {
        prod = mul_mod(&prod, &factors[i], target);
    }
    let sym = UPolZ::from_coeffs(prod.coeffs.iter().map(|c| symmetric(c, target)).collect());
    if sym.is_zero() {
        return None;
    }
    Some(sym.primitive())
}

/// Inverse of a mod m (gcd(a, m) = 1).
fn int_inv_mod(a: &Int, m: &Int) -> Int {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient must be a unit mod q^k");
    e.x.mod_floor(m)
}

/// Complete factorization over Q. Returns (unit, factors) with f = unit *
/// prod factor_i ^ mult_i, every factor a primitive irreducible integer
/// polynomial with positive leading coefficient. The cap bounds the degree
/// of any square-free part handed to the factorization core.
pub fn factor_q(f: &UniPoly<Rat>, cap: usize) -> Result<(Rat, Vec<(UPolZ, u32)>), Error> {
    assert!(!f.is_zero(), "factorization of zero");
    let (_, parts) = square_free_decomposition_q(f);
    let mut factors: Vec<(UPolZ, u32)> = Vec::new();
    for (part, mult) in parts {
        let (_, z) = UPolZ::from_rational(&part);
        for g in factor_squarefree_primitive(&z.primitive(), cap)? {
            factors.push((g, mult));
        }
    }
    // The factors are primitive, not monic; the unit makes the leading
    // coefficients match exactly: f = unit * prod factor^mult.
    let mut lc_all = Rat::one();
    for (g, m) in &factors {
        let lg = Rat::from_integer(g.lc());
        for _ in 0..*m {
            lc_all *= &lg;
        }
    }
    let unit = f.lc() / lc_all;
    Ok((unit, factors))
}

/// All rational roots of f with multiplicities, ascending.
pub fn rational_roots(f: &UniPoly<Rat>, cap: usize) -> Result<Vec<(Rat, u32)>, Error> {
    let (_, factors) = factor_q(f, cap)?;
    let mut roots = Vec::new();
    for (g, m) in factors {
        if g.degree() == Some(1) {
            // a x + b = 0 -> x = -b/a
            let root = Rat::new(-g.coeff(0), g.coeff(1));
            roots.push((root, m));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn zp(coeffs: &[i64]) -> UPolZ {
        UPolZ::from_coeffs(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    fn qp(coeffs: &[i64]) -> UniPoly<Rat> {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn integer_gcd_of_constructed_product() {
        let g = zp(&[-3, 0, 2, 7]); // shared part
        let a = g.mul(&zp(&[1, 5, 1]));
        let b = g.mul(&zp(&[4, -1]));
        assert_eq!(gcd_z(&a, &b), g);
        // Coprime pair.
        assert_eq!(gcd_z(&zp(&[1, 1]), &zp(&[2, 1])), zp(&[1]));
        // Contents contribute.
        let a6 = a.scale(&Int::from(6));
        let b4 = b.scale(&Int::from(4));
        assert_eq!(gcd_z(&a6, &b4), g.scale(&Int::from(2)));
    }

    #[test]
    fn square_free_machinery() {
        // f = (x-1)^2 (x+2)^3
        let f = qp(&[-1, 1]).pow(2).mul(&qp(&[2, 1]).pow(3));
        let sf = square_free_part_q(&f);
        assert_eq!(sf, qp(&[-1, 1]).mul(&qp(&[2, 1])).monic());
        let (unit, parts) = square_free_decomposition_q(&f);
        assert_eq!(unit, rat_int(1));
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (qp(&[-1, 1]), 2));
        assert_eq!(parts[1], (qp(&[2, 1]), 3));
    }

    #[test]
    fn factorization_small_products() {
        // f = (2x+3)(x-1)(x^2+x+1), the quadratic irreducible.
        let f = qp(&[3, 2]).mul(&qp(&[-1, 1])).mul(&qp(&[1, 1, 1]));
        let (unit, factors) = factor_q(&f, 40).unwrap();
        assert_eq!(unit, rat_int(1));
        let mut fs: Vec<UPolZ> = factors.iter().map(|(g, _)| g.clone()).collect();
        fs.sort_by_key(|g| (g.degree(), g.coeffs.clone()));
        assert_eq!(fs, vec![zp(&[-1, 1]), zp(&[3, 2]), zp(&[1, 1, 1])]);
        assert!(factors.iter().all(|&(_, m)| m == 1));
    }

    #[test]
    fn factorization_with_multiplicity_and_unit() {
        // f = 5/3 (x-2)^2 (x^2+1)
        let f = qp(&[-2, 1])
            .pow(2)
            .mul(&qp(&[1, 0, 1]))
            .scale(&rat(5, 3));
        let (unit, factors) = factor_q(&f, 40).unwrap();
        assert_eq!(unit, rat(5, 3));
        assert_eq!(factors.len(), 2);
        assert!(factors.contains(&(zp(&[-2, 1]), 2)));
        assert!(factors.contains(&(zp(&[1, 0, 1]), 1)));
    }

    #[test]
    fn swinnerton_dyer_stays_irreducible() {
        // x^4 - 10x^2 + 1 (minimal polynomial of sqrt(2) + sqrt(3)) splits
        // mod every prime but is irreducible over Q; recombination has to
        // discover that no proper subset works.
        let f = qp(&[1, 0, -10, 0, 1]);
        let (unit, factors) = factor_q(&f, 40).unwrap();
        assert_eq!(unit, rat_int(1));
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0], (zp(&[1, 0, -10, 0, 1]), 1));
    }

    #[test]
    fn wilkinson_style_split() {
        // prod_{k=1..8} (x - k): all linear factors recovered.
        let mut f = qp(&[1]);
        for k in 1..=8 {
            f = f.mul(&qp(&[-k, 1]));
        }
        let (_, factors) = factor_q(&f, 40).unwrap();
        assert_eq!(factors.len(), 8);
        assert!(factors.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
    }

    #[test]
    fn rational_root_extraction() {
        // (3x-2)^2 (5x+7) (x^2+1)
        let f = qp(&[-2, 3]).pow(2).mul(&qp(&[7, 5])).mul(&qp(&[1, 0, 1]));
        let roots = rational_roots(&f, 40).unwrap();
        assert_eq!(roots, vec![(rat(-7, 5), 1), (rat(2, 3), 2)]);
        // Root at zero.
        let g = qp(&[0, 1]).mul(&qp(&[-1, 1]));
        let roots = rational_roots(&g, 40).unwrap();
        assert_eq!(roots, vec![(rat_int(0), 1), (rat_int(1), 1)]);
    }

    #[test]
    fn degree_cap_is_enforced() {
        // x^41 - 2 is square-free of degree 41 > 40.
        let mut coeffs = vec![rat_int(-2)];
        coeffs.extend(core::iter::repeat_n(rat_int(0), 40));
        coeffs.push(rat_int(1));
        let f = UniPoly::from_coeffs(coeffs);
        match factor_q(&f, 40) {
            Err(Error::FactorDegreeCap { degree: 41, cap: 40 }) => {}
            other => panic!("expected degree cap error, got {other:?}"),
        }
    }

    #[test]
    fn cyclotomic_like_products() {
        // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
        let f = qp(&[-1, 0, 0, 0, 0, 0, 1]);
        let (unit, factors) = factor_q(&f, 40).unwrap();
        assert_eq!(unit, rat_int(1));
        let mut degs: Vec<usize> = factors.iter().map(|(g, _)| g.degree().unwrap()).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 2, 2]);
    }
}
