use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::{self, Write};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::ring::RingContext;
use super::Rational;

/// A malformed polynomial, located by byte offset into the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

struct Parser<'a> {
    ctx: &'a RingContext,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, at: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: at, message: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return self.err(at, "division only by nonzero constants");
                    }
                    acc = acc.scale(&d.constant_term().recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return self.err(at, "expected a nonnegative integer exponent");
            }
            let e: u32 = match digits.parse() {
                Ok(e) if e <= u16::MAX as u32 => e,
                _ => return self.err(at, "exponent too large"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        core::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let at = match self.peek() {
            None => return self.err(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        let c = self.src[at];
        if c == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(b')') {
                return self.err(self.pos, "expected ')'");
            }
            self.pos += 1;
            return Ok(inner);
        }
        if c.is_ascii_digit() {
            let d = self.digits();
            let n: BigInt = d.parse().unwrap();
            return Ok(Polynomial::constant(Rational::from_integer(n)));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = core::str::from_utf8(&self.src[at..self.pos]).unwrap();
            return match self.ctx.var_index(name) {
                Some(i) => Ok(Polynomial::var(i)),
                None => self.err(at, alloc::format!("unknown variable '{}'", name)),
            };
        }
        let ch = core::str::from_utf8(&self.src[at..]).ok().and_then(|s| s.chars().next());
        self.err(at, alloc::format!("unexpected character {:?}", ch.unwrap_or('?')))
    }
}

pub(crate) fn parse_polynomial(ctx: &RingContext, src: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser { ctx, src: src.as_bytes(), pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err(p.pos, "unexpected trailing input");
    }
    Ok(out)
}

fn write_monomial(ctx: &RingContext, m: &Monomial, out: &mut String) {
    let mut first = true;
    for (i, name) in ctx.names().iter().enumerate() {
        let e = m.exponent(i);
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(name);
        if e > 1 {
            let _ = write!(out, "^{}", e);
        }
    }
}

pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        alloc::format!("{}/{}", c.numer(), c.denom())
    }
}

/// Prints terms in descending ring order, e.g. `x*z - y^2`.
pub(crate) fn format_polynomial(ctx: &RingContext, p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let terms: Vec<_> = p.sorted_terms(ctx);
    for (k, (m, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&format_rational(&a));
        } else {
            if !a.is_one() {
                out.push_str(&format_rational(&a));
                out.push('*');
            }
            write_monomial(ctx, m, &mut out);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TermOrder;
    use proptest::prelude::*;

    fn ring() -> RingContext {
        RingContext::unweighted(&["x", "y", "z"], TermOrder::Global).unwrap()
    }

    #[test]
    fn parses_and_prints() {
        let r = ring();
        let p = r.poly("x*z - y^2");
        assert_eq!(r.format(&p), "-y^2 + x*z");
        let q = r.poly("(x+1)^2 - 1/2*y + 3/4");
        assert_eq!(r.format(&q), "x^2 + 2*x - 1/2*y + 7/4");
        assert_eq!(r.poly("x/2"), r.poly("1/2*x"));
        assert_eq!(r.poly("-(-x)"), r.poly("x"));
        assert_eq!(r.format(&Polynomial::zero()), "0");
        let l = r.with_order(TermOrder::Local);
        assert_eq!(l.format(&p), "-y^2 + x*z");
        assert_eq!(l.format(&r.poly("x - x^2")), "x - x^2");
    }

    #[test]
    fn reports_positions() {
        let r = ring();
        let e = r.parse("x + w").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(e.message.contains("unknown variable"));
        assert_eq!(r.parse("x +").unwrap_err().offset, 3);
        assert_eq!(r.parse("x ^ y").unwrap_err().offset, 4);
        assert_eq!(r.parse("(x").unwrap_err().offset, 2);
        assert_eq!(r.parse("x y").unwrap_err().offset, 2);
        assert!(r.parse("x/y").is_err());
        assert!(r.parse("x/0").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(p in crate::algebra::poly::tests::arb_poly(3, 4, 6), d in 1i64..7, local in any::<bool>()) {
            let r = if local { ring().with_order(TermOrder::Local) } else { ring() };
            let p = p.scale(&Rational::new(1.into(), d.into()));
            let s = r.format(&p);
            prop_assert_eq!(r.parse(&s).unwrap(), p);
        }
    }
}
