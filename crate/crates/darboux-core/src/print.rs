//! Canonical polynomial rendering.
//!
//! Terms are printed in descending graded-lex order; within a monomial,
//! variable factors appear in reverse context order (so parameters precede
//! state variables, matching the source text's "q^2*z" style). Coefficients
//! are exact rationals `a/b`. Printing is injective on canonical
//! polynomials and `parse(print(f)) == f`.

use alloc::string::String;
use core::fmt::Write;

use num_traits::{One, Signed};

use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::Rat;

fn push_rat(out: &mut String, r: &Rat) {
    let _ = write!(out, "{}", r.numer());
    if !r.denom().is_one() {
        let _ = write!(out, "/{}", r.denom());
    }
}

fn push_monomial(out: &mut String, m: &Monomial, ctx: &crate::context::Ctx) {
    let mut first = true;
    for v in (0..m.arity()).rev() {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(ctx.name(v));
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

/// Canonical rendering; deterministic, returns "0" for the zero polynomial.
pub fn print_polynomial(f: &Polynomial) -> String {
    if f.is_zero() {
        return String::from("0");
    }
    let mut out = String::new();
    let mut first = true;
    for (m, c) in f.terms_desc() {
        let neg = c.is_negative();
        let abs = if neg { -c.clone() } else { c.clone() };
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if m.is_one() {
            push_rat(&mut out, &abs);
        } else {
            if !abs.is_one() {
                push_rat(&mut out, &abs);
                out.push('*');
            }
            push_monomial(&mut out, m, f.ctx());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::VariableContext;
    use crate::parse::parse_polynomial;
    use crate::poly::Polynomial;
    use crate::{rat, rat_int};

    #[test]
    fn zero_prints_as_zero() {
        let c = VariableContext::standard();
        assert_eq!(print_polynomial(&Polynomial::zero(&c)), "0");
    }

    #[test]
    fn two_term_example() {
        let c = VariableContext::standard();
        // {y^4: 1, q*y^2: 1/19} -> "y^4 + 1/19*q*y^2"
        let f = parse_polynomial("y^4 + 1/19*q*y^2", &c).unwrap();
        assert_eq!(print_polynomial(&f), "y^4 + 1/19*q*y^2");
    }

    #[test]
    fn signs_and_unit_coefficients() {
        let c = VariableContext::standard();
        let f = parse_polynomial("-z^2 + y - 1/2", &c).unwrap();
        assert_eq!(print_polynomial(&f), "-z^2 + y - 1/2");
        let g = parse_polynomial("3", &c).unwrap();
        assert_eq!(print_polynomial(&g), "3");
        let h = Polynomial::constant(&c, rat(-7, 3));
        assert_eq!(print_polynomial(&h), "-7/3");
        let one_term = Polynomial::var_named(&c, "q").unwrap().scale(&rat_int(-1));
        assert_eq!(print_polynomial(&one_term), "-q");
    }

    #[test]
    fn round_trip_catalog_style() {
        let c = VariableContext::standard();
        let src = "y^3 - 12/13*q*y^2*z - 9/26*q^2*z + 296/2197*q^4*z^3";
        let f = parse_polynomial(src, &c).unwrap();
        let printed = print_polynomial(&f);
        let g = parse_polynomial(&printed, &c).unwrap();
        assert_eq!(f, g);
    }
}
