//! Probabilistic pre-check of invariance certificates.
//!
//! Evaluates X(g) - K g at pseudo-random rational points. By
//! Schwartz-Zippel a nonzero residual polynomial evaluates nonzero at a
//! random point with high probability, so a handful of trials catches
//! essentially every corrupt certificate long before the symbolic check.
//! The point stream is deterministic in the seed.

use alloc::vec::Vec;

use crate::error::Error;
use crate::vecfield::CurveCertificate;
use crate::{rat_int, Int, Rat};

/// splitmix64: tiny, well-mixed, deterministic PRNG; adequate for picking
/// evaluation points (nothing here is adversarial or cryptographic).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in 0..bound (bound > 0), by rejection of the biased tail.
    pub fn below(&mut self, bound: u64) -> u64 {
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// Rational with numerator in [-10^6, 10^6] and denominator in
    /// [1, 10^6].
    pub fn rational(&mut self) -> Rat {
        let num = self.below(2_000_001) as i64 - 1_000_000;
        let den = self.below(1_000_000) as i64 + 1;
        Rat::new(Int::from(num), Int::from(den))
    }
}

/// Result of the probabilistic check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeVerdict {
    pub all_zero: bool,
    pub trials: u32,
    /// Trial index and point of the first nonzero residual value.
    pub first_nonzero: Option<(u32, Vec<Rat>)>,
}

/// Evaluates the residual X(g) - K g at `trials` pseudo-random points.
pub fn probe(cert: &CurveCertificate, trials: u32, seed: u64) -> Result<ProbeVerdict, Error> {
    let residual = {
        let xg = cert.system.lie_derivative(&cert.g)?;
        &xg - &(&cert.cofactor * &cert.g)
    };
    let arity = cert.g.ctx().arity();
    let mut rng = SplitMix64::new(seed);
    for trial in 0..trials.max(1) {
        let point: Vec<Rat> = (0..arity).map(|_| rng.rational()).collect();
        let value = residual.evaluate(&point)?;
        if value != rat_int(0) {
            return Ok(ProbeVerdict {
                all_zero: false,
                trials: trial + 1,
                first_nonzero: Some((trial, point)),
            });
        }
    }
    Ok(ProbeVerdict {
        all_zero: true,
        trials: trials.max(1),
        first_nonzero: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::VariableContext;
    use crate::parse::parse_polynomial;
    use crate::vecfield::PolyVectorField;

    #[test]
    fn deterministic_stream() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = SplitMix64::new(43);
        assert_ne!(a.next_u64(), c.next_u64());
    }

    #[test]
    fn rational_bounds() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..500 {
            let r = rng.rational();
            let num = r.numer();
            let den = r.denom();
            assert!(num.magnitude() <= &1_000_000u64.into());
            assert!(den.magnitude() <= &1_000_000u64.into());
            assert!(den > &crate::Int::from(0));
        }
    }

    #[test]
    fn true_certificate_probes_zero() {
        let c = VariableContext::standard();
        let p = parse_polynomial("z", &c).unwrap();
        let q = parse_polynomial("y", &c).unwrap();
        let x = PolyVectorField::with_state_names(p, q, "z", "y").unwrap();
        let g = parse_polynomial("z*y", &c).unwrap();
        let k = parse_polynomial("2", &c).unwrap();
        let cert = CurveCertificate::new(x, g, k).unwrap();
        let v = probe(&cert, 50, 1).unwrap();
        assert!(v.all_zero);
        assert_eq!(v.trials, 50);
    }

    #[test]
    fn perturbed_certificate_detected() {
        let c = VariableContext::standard();
        let p = parse_polynomial("z", &c).unwrap();
        let q = parse_polynomial("y", &c).unwrap();
        let x = PolyVectorField::with_state_names(p, q, "z", "y").unwrap();
        let g = parse_polynomial("z*y + 1", &c).unwrap(); // not invariant
        let k = parse_polynomial("2", &c).unwrap();
        let cert = CurveCertificate::new(x, g, k).unwrap();
        let v = probe(&cert, 10, 1).unwrap();
        assert!(!v.all_zero);
        assert!(v.first_nonzero.is_some());
    }
}
