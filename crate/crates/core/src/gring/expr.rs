//! Expression parser for ring elements.
//!
//! Grammar: sums and differences of products, `^` with a non-negative integer
//! exponent, parentheses, unary minus, rational literals `p` and `p/q`, and
//! generator names.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Element, Ring, RingError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, RingError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|(_, c)| c).collect())));
        } else {
            let op = match c {
                '+' | '-' | '*' | '^' | '(' | ')' | '/' => c,
                '\u{2212}' => '-',
                '\u{b7}' => '*',
                _ => return Err(RingError::ParseError { pos, msg: format!("unexpected {c:?}") }),
            };
            out.push((pos, Tok::Op(op)));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, msg: &str) -> RingError {
        RingError::ParseError { pos: self.pos(), msg: msg.to_string() }
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Element, RingError> {
        let mut acc = self.product()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.product()?;
            } else if self.eat('-') {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Element, RingError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Element, RingError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.at += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Element, RingError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                let mut q = BigRational::from_integer(n);
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            self.at += 1;
                            q /= BigRational::from_integer(d);
                        }
                        _ => return Err(self.err("expected a non-zero denominator")),
                    }
                }
                self.ring.scalar(&q)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                self.ring.gen(&name)
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(self.err("expected )"));
                }
                Ok(e)
            }
            _ => Err(self.err("expected a number, generator or (")),
        }
    }
}

/// Parses `src` into a normal-form element of `ring`.
pub fn parse_element(ring: &Ring, src: &str) -> Result<Element, RingError> {
    let toks = lex(src)?;
    let mut p = Parser { ring, toks, at: 0, end: src.len() };
    let e = p.sum()?;
    if p.at != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::CoeffRing;

    fn ring() -> Ring {
        Ring::free(CoeffRing::Rationals, &[("x", 2), ("y", 2)], 8).unwrap()
    }

    #[test]
    fn precedence() {
        let r = ring();
        assert_eq!(parse_element(&r, "1 + 2*x^2").unwrap(), r.parse("1 + (2*(x^2))").unwrap());
        assert_eq!(parse_element(&r, "-x^2").unwrap(), -&r.parse("x*x").unwrap());
        assert_eq!(parse_element(&r, "3/4*x - x").unwrap(), r.parse("-1/4*x").unwrap());
    }

    #[test]
    fn errors() {
        let r = ring();
        assert_eq!(parse_element(&r, "z"), Err(RingError::UnknownGenerator("z".into())));
        assert!(matches!(parse_element(&r, "x +"), Err(RingError::ParseError { .. })));
        assert!(matches!(parse_element(&r, "(x"), Err(RingError::ParseError { .. })));
        assert!(matches!(parse_element(&r, "x ^ y"), Err(RingError::ParseError { .. })));
        assert!(matches!(parse_element(&r, "1/0"), Err(RingError::ParseError { .. })));
        assert!(matches!(parse_element(&r, "x $"), Err(RingError::ParseError { .. })));
    }

    #[test]
    fn unicode_operators() {
        let r = ring();
        assert_eq!(parse_element(&r, "x\u{b7}y \u{2212} y\u{b7}x").unwrap(), r.zero());
    }
}
