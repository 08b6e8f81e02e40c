//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace-insensitive):
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | variable ('^' uint)? | '(' expr ')' | '-' factor
//! rational := int ('/' uint)?
//! ```
//! Multiplication is explicit; exponents are non-negative integers; unknown
//! variables are errors. Every error carries a byte-offset span and the set
//! of tokens that would have been accepted.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::context::Ctx;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::{Int, Rat};

/// Byte offsets into the input text; start <= end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at bytes {}..{}: {}",
            self.span.start, self.span.end, self.message
        )?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Integer(Int),
    Ident(String),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Plus => "'+'".to_string(),
            Tok::Minus => "'-'".to_string(),
            Tok::Star => "'*'".to_string(),
            Tok::Caret => "'^'".to_string(),
            Tok::Slash => "'/'".to_string(),
            Tok::LParen => "'('".to_string(),
            Tok::RParen => "')'".to_string(),
            Tok::Integer(n) => format!("integer {n}"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::End => "end of input".to_string(),
        }
    }
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next token plus its span.
    fn next(&mut self) -> Result<(Tok, SourceSpan), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if start >= self.text.len() {
            return Ok((
                Tok::End,
                SourceSpan {
                    start,
                    end: start,
                },
            ));
        }
        let b = self.text[start];
        let single = |tok: Tok, lexer: &mut Lexer| {
            lexer.pos = start + 1;
            Ok((
                tok,
                SourceSpan {
                    start,
                    end: start + 1,
                },
            ))
        };
        match b {
            b'+' => single(Tok::Plus, self),
            b'-' => single(Tok::Minus, self),
            b'*' => single(Tok::Star, self),
            b'^' => single(Tok::Caret, self),
            b'/' => single(Tok::Slash, self),
            b'(' => single(Tok::LParen, self),
            b')' => single(Tok::RParen, self),
            b'0'..=b'9' => {
                let mut end = start;
                while end < self.text.len() && self.text[end].is_ascii_digit() {
                    end += 1;
                }
                self.pos = end;
                let s = core::str::from_utf8(&self.text[start..end]).expect("ascii digits");
                let n: Int = s.parse().expect("digit string");
                Ok((Tok::Integer(n), SourceSpan { start, end }))
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                let mut end = start;
                while end < self.text.len()
                    && (self.text[end].is_ascii_alphanumeric() || self.text[end] == b'_')
                {
                    end += 1;
                }
                self.pos = end;
                let s = core::str::from_utf8(&self.text[start..end])
                    .expect("ascii identifier")
                    .to_string();
                Ok((Tok::Ident(s), SourceSpan { start, end }))
            }
            other => Err(ParseError {
                span: SourceSpan {
                    start,
                    end: start + 1,
                },
                message: format!("unexpected byte {:?}", other as char),
                expected: Vec::new(),
            }),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    ctx: &'a Ctx,
    tok: Tok,
    span: SourceSpan,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, ctx: &'a Ctx) -> Result<Self, ParseError> {
        let mut lexer = Lexer::new(text);
        let (tok, span) = lexer.next()?;
        Ok(Parser {
            lexer,
            ctx,
            tok,
            span,
        })
    }

    fn advance(&mut self) -> Result<(), ParseError> {
        let (tok, span) = self.lexer.next()?;
        self.tok = tok;
        self.span = span;
        Ok(())
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        ParseError {
            span: self.span,
            message: format!("unexpected {}", self.tok.describe()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.advance()?;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.advance()?;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.tok == Tok::Star {
            self.advance()?;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        match self.tok.clone() {
            Tok::Minus => {
                self.advance()?;
                let f = self.factor()?;
                Ok(f.neg_ref())
            }
            Tok::LParen => {
                self.advance()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return Err(self.unexpected(&["')'"]));
                }
                self.advance()?;
                Ok(inner)
            }
            Tok::Integer(n) => {
                self.advance()?;
                if self.tok == Tok::Slash {
                    self.advance()?;
                    match self.tok.clone() {
                        Tok::Integer(d) => {
                            let span = self.span;
                            self.advance()?;
                            if d == Int::from(0) {
                                return Err(ParseError {
                                    span,
                                    message: "zero denominator".to_string(),
                                    expected: Vec::new(),
                                });
                            }
                            Ok(Polynomial::constant(self.ctx, Rat::new(n, d)))
                        }
                        _ => Err(self.unexpected(&["unsigned integer"])),
                    }
                } else {
                    Ok(Polynomial::constant(self.ctx, Rat::from_integer(n)))
                }
            }
            Tok::Ident(name) => {
                let span = self.span;
                let var = self.ctx.index_of(&name).ok_or_else(|| ParseError {
                    span,
                    message: format!("unknown variable `{name}`"),
                    expected: Vec::new(),
                })?;
                self.advance()?;
                let exp: u32 = if self.tok == Tok::Caret {
                    self.advance()?;
                    match self.tok.clone() {
                        Tok::Integer(n) => {
                            let span = self.span;
                            self.advance()?;
                            u32::try_from(&n).map_err(|_| ParseError {
                                span,
                                message: format!("exponent {n} out of range"),
                                expected: Vec::new(),
                            })?
                        }
                        _ => return Err(self.unexpected(&["unsigned integer exponent"])),
                    }
                } else {
                    1
                };
                let m = Monomial::var(self.ctx.arity(), var).pow(exp);
                Ok(Polynomial::term(self.ctx, m, Rat::one()).expect("arity matches"))
            }
            _ => Err(self.unexpected(&[
                "rational",
                "variable",
                "'('",
                "'-'",
            ])),
        }
    }
}

/// Parses an expression over the context. Whitespace-insensitive; the whole
/// input must be consumed.
pub fn parse_polynomial(text: &str, ctx: &Ctx) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(text, ctx)?;
    let poly = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.unexpected(&["'+'", "'-'", "'*'", "end of input"]));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::VariableContext;
    use crate::{rat, rat_int};

    fn ctx() -> Ctx {
        VariableContext::standard()
    }

    #[test]
    fn leading_terms_of_a_catalog_curve() {
        let c = ctx();
        let f = parse_polynomial("y^3 - 9/26*q^2*z", &c).unwrap();
        assert_eq!(f.num_terms(), 2);
        let y3 = Monomial::var(c.arity(), 1).pow(3);
        let mut e = alloc::vec![0u32; c.arity()];
        e[0] = 1;
        e[2] = 2;
        let q2z = Monomial::from_exps(e);
        assert_eq!(f.coeff(&y3), rat_int(1));
        assert_eq!(f.coeff(&q2z), rat(-9, 26));
    }

    #[test]
    fn zero_and_parens_and_unary_minus() {
        let c = ctx();
        assert!(parse_polynomial("0", &c).unwrap().is_zero());
        let f = parse_polynomial("-(z - y)*(z + y)", &c).unwrap();
        let g = parse_polynomial("y^2 - z^2", &c).unwrap();
        assert_eq!(f, g);
        let h = parse_polynomial("- - 3", &c).unwrap();
        assert_eq!(h, Polynomial::constant(&c, rat_int(3)));
    }

    #[test]
    fn error_spans_and_expectations() {
        let c = ctx();
        let err = parse_polynomial("y^3 + w", &c).unwrap_err();
        assert_eq!(err.span, SourceSpan { start: 6, end: 7 });
        assert!(err.message.contains("unknown variable"));

        let err = parse_polynomial("y^", &c).unwrap_err();
        assert!(!err.expected.is_empty());

        let err = parse_polynomial("1/0", &c).unwrap_err();
        assert!(err.message.contains("zero denominator"));

        let err = parse_polynomial("(y", &c).unwrap_err();
        assert_eq!(err.expected, alloc::vec!["')'".to_string()]);

        let err = parse_polynomial("y 3", &c).unwrap_err();
        assert!(err.message.contains("unexpected"));
    }

    #[test]
    fn whitespace_insensitive() {
        let c = ctx();
        let a = parse_polynomial("y^3-9/26*q^2*z", &c).unwrap();
        let b = parse_polynomial("  y^3   -   9/26 * q^2 * z ", &c).unwrap();
        assert_eq!(a, b);
    }
}
