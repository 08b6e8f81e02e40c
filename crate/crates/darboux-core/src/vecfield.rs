//! Planar polynomial vector fields, Lie derivatives, cofactors, and
//! invariance certificates.
//!
//! A curve g = 0 is invariant for the field X = (P, Q) iff
//! X(g) = P dg/dv1 + Q dg/dv2 equals K g for a polynomial cofactor K; for a
//! quadratic field K has state degree <= 1.

use core::time::Duration;

use num_traits::One;

use crate::context::{same_context, Ctx};
use crate::error::Error;
use crate::poly::Polynomial;
use crate::Rat;

/// A planar vector field (first' = P, second' = Q); every variable other
/// than the two designated state variables is a parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVectorField {
    p: Polynomial,
    q: Polynomial,
    state: (usize, usize),
}

impl PolyVectorField {
    pub fn new(p: Polynomial, q: Polynomial, state: (usize, usize)) -> Result<Self, Error> {
        if !same_context(p.ctx(), q.ctx()) {
            return Err(Error::ContextMismatch);
        }
        let arity = p.ctx().arity();
        if state.0 >= arity || state.1 >= arity || state.0 == state.1 {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: state.0.max(state.1) + 1,
            });
        }
        Ok(PolyVectorField { p, q, state })
    }

    /// As `new`, with state variables given by name.
    pub fn with_state_names(
        p: Polynomial,
        q: Polynomial,
        first: &str,
        second: &str,
    ) -> Result<Self, Error> {
        let ctx = p.ctx().clone();
        Self::new(p, q, (ctx.require(first)?, ctx.require(second)?))
    }

    /// Checks the quadratic degree bound (state degree <= 2) on top of `new`.
    pub fn quadratic(p: Polynomial, q: Polynomial, state: (usize, usize)) -> Result<Self, Error> {
        let field = Self::new(p, q, state)?;
        let d = field.state_degree();
        if d > 2 {
            return Err(Error::NotQuadratic { degree: d });
        }
        Ok(field)
    }

    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    pub fn q(&self) -> &Polynomial {
        &self.q
    }

    pub fn state(&self) -> (usize, usize) {
        self.state
    }

    pub fn ctx(&self) -> &Ctx {
        self.p.ctx()
    }

    /// Max state degree of the two components.
    pub fn state_degree(&self) -> u32 {
        let vars = [self.state.0, self.state.1];
        self.p
            .degree_in(&vars)
            .unwrap_or(0)
            .max(self.q.degree_in(&vars).unwrap_or(0))
    }

    /// X(g) = P dg/dfirst + Q dg/dsecond.
    pub fn lie_derivative(&self, g: &Polynomial) -> Result<Polynomial, Error> {
        if !same_context(self.ctx(), g.ctx()) {
            return Err(Error::ContextMismatch);
        }
        let gz = g.partial_derivative(self.state.0)?;
        let gy = g.partial_derivative(self.state.1)?;
        Ok(&(&self.p * &gz) + &(&self.q * &gy))
    }

    /// Extracts K = X(g)/g by exact division and asserts the quadratic
    /// cofactor bound (state degree <= 1).
    pub fn cofactor_of(&self, g: &Polynomial) -> Result<Polynomial, Error> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let xg = self.lie_derivative(g)?;
        let k = match xg.exact_divide(g) {
            Ok(k) => k,
            Err(Error::NotDivisible { .. }) => return Err(Error::NotInvariant),
            Err(e) => return Err(e),
        };
        let kd = k
            .degree_in(&[self.state.0, self.state.1])
            .unwrap_or(0);
        if kd > 1 {
            return Err(Error::CofactorDegreeViolation { degree: kd });
        }
        Ok(k)
    }
}

/// The reduced quadratic family z' = zy + 1, y' = 3y^2 + beta zy + gamma z^2
/// + delta, with beta, gamma, delta polynomials in parameters only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticNormalForm {
    beta: Polynomial,
    gamma: Polynomial,
    delta: Polynomial,
}

impl QuadraticNormalForm {
    /// Coefficients must not involve the state variables z, y.
    pub fn new(
        beta: Polynomial,
        gamma: Polynomial,
        delta: Polynomial,
    ) -> Result<Self, Error> {
        let ctx = beta.ctx().clone();
        if !same_context(&ctx, gamma.ctx()) || !same_context(&ctx, delta.ctx()) {
            return Err(Error::ContextMismatch);
        }
        let z = ctx.require("z")?;
        let y = ctx.require("y")?;
        for f in [&beta, &gamma, &delta] {
            if f.degree_in(&[z, y]).unwrap_or(0) > 0 {
                return Err(Error::NotQuadratic {
                    degree: f.degree_in(&[z, y]).unwrap_or(0),
                });
            }
        }
        Ok(QuadraticNormalForm { beta, gamma, delta })
    }

    pub fn beta(&self) -> &Polynomial {
        &self.beta
    }

    pub fn gamma(&self) -> &Polynomial {
        &self.gamma
    }

    pub fn delta(&self) -> &Polynomial {
        &self.delta
    }

    /// Expands to the vector field with state variables (z, y).
    pub fn expand(&self) -> Result<PolyVectorField, Error> {
        let ctx = self.beta.ctx().clone();
        let z = Polynomial::var_named(&ctx, "z")?;
        let y = Polynomial::var_named(&ctx, "y")?;
        let zy = &z * &y;
        let p = &zy + &Polynomial::one(&ctx);
        let q = &(&(&y.pow(2).scale(&crate::rat_int(3)) + &(&self.beta * &zy))
            + &(&self.gamma * &z.pow(2)))
            + &self.delta;
        PolyVectorField::with_state_names(p, q, "z", "y")
    }
}

/// A claimed invariance certificate: X(g) = K g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveCertificate {
    pub system: PolyVectorField,
    pub g: Polynomial,
    pub cofactor: Polynomial,
    /// Total degree of g in the state variables.
    pub degree: u32,
}

impl CurveCertificate {
    pub fn new(system: PolyVectorField, g: Polynomial, cofactor: Polynomial) -> Result<Self, Error> {
        if !same_context(system.ctx(), g.ctx()) || !same_context(system.ctx(), cofactor.ctx()) {
            return Err(Error::ContextMismatch);
        }
        let (s0, s1) = system.state();
        let degree = g.degree_in(&[s0, s1]).unwrap_or(0);
        Ok(CurveCertificate {
            system,
            g,
            cofactor,
            degree,
        })
    }
}

/// Outcome of an exact certificate check. Failures are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub pass: bool,
    /// X(g) - K g when nonzero.
    pub residual: Option<Polynomial>,
    pub residual_terms: usize,
    /// Wall time, filled by callers that have a clock (core has none).
    pub elapsed: Option<Duration>,
}

/// Exact identity check X(g) - K g == 0 in the full polynomial ring
/// (parameters stay symbolic).
pub fn verify_certificate(c: &CurveCertificate) -> Verdict {
    match c.system.lie_derivative(&c.g) {
        Ok(xg) => {
            let residual = &xg - &(&c.cofactor * &c.g);
            if residual.is_zero() {
                Verdict {
                    pass: true,
                    residual: None,
                    residual_terms: 0,
                    elapsed: None,
                }
            } else {
                let n = residual.num_terms();
                Verdict {
                    pass: false,
                    residual: Some(residual),
                    residual_terms: n,
                    elapsed: None,
                }
            }
        }
        Err(_) => Verdict {
            pass: false,
            residual: None,
            residual_terms: 0,
            elapsed: None,
        },
    }
}

/// Convenience: the polynomial `n*y` style cofactor `c * var`.
pub fn scalar_cofactor(ctx: &Ctx, var: &str, c: i64) -> Result<Polynomial, Error> {
    Ok(Polynomial::var_named(ctx, var)?.scale(&Rat::from_integer(c.into())))
}

/// Builds the pure-q normal form with beta = b q, gamma = c q^2, delta = q.
pub fn pure_q_normal_form(ctx: &Ctx, b: &Rat, c: &Rat) -> Result<QuadraticNormalForm, Error> {
    let q = Polynomial::var_named(ctx, "q")?;
    let beta = q.scale(b);
    let gamma = q.pow(2).scale(c);
    let delta = q.scale(&Rat::one());
    QuadraticNormalForm::new(beta, gamma, delta)
}
