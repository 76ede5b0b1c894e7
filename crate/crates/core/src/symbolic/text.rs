use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Generator, Monomial, Rational, SymbolicValue};
use crate::error::{Error, Result};

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (g, e)) in self.factors().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{g}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Canonical text form, e.g. `-11/720*pi^4 - 2*zb1_3`.
impl fmt::Display for SymbolicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (mono, coef)) in terms.into_iter().enumerate() {
            let negative = coef.is_negative();
            let magnitude = coef.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mono.is_one() {
                write_rational(f, &magnitude)?;
            } else if magnitude.is_one() {
                write!(f, "{mono}")?;
            } else {
                write_rational(f, &magnitude)?;
                write!(f, "*{mono}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '/' => {
                out.push(Token::Slash);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Int(digits.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Token::Int(n)) => {
                    u32::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))
                }
                _ => Err(Error::Parse("expected integer exponent after `^`".into())),
            }
        } else {
            Ok(1)
        }
    }

    // factor := INT ['^' INT] | IDENT ['^' INT]
    fn factor(&mut self) -> Result<SymbolicValue> {
        match self.next() {
            Some(Token::Int(n)) => {
                let e = self.exponent()?;
                Ok(SymbolicValue::from_rational(Rational::from_integer(
                    num_traits::pow(n, e as usize),
                )))
            }
            Some(Token::Ident(name)) => {
                let g = Generator::from_name(&name)?;
                let e = self.exponent()?;
                Ok(SymbolicValue::term(Rational::one(), Monomial::power(g, e)))
            }
            other => Err(Error::Parse(format!(
                "expected a number or generator, found {other:?}"
            ))),
        }
    }

    // term := factor (('*' factor) | ('/' INT))*
    fn term(&mut self) -> Result<SymbolicValue> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let divisor = match self.factor()?.as_rational() {
                        Some(r) if !r.is_zero() => r,
                        _ => {
                            return Err(Error::Parse("can only divide by a nonzero integer".into()))
                        }
                    };
                    acc = acc.scale(&divisor.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    // expr := ['+'|'-']* term (('+'|'-')+ term)*
    fn expr(&mut self) -> Result<SymbolicValue> {
        let mut acc = SymbolicValue::zero();
        loop {
            let mut negative = false;
            while let Some(t @ (Token::Plus | Token::Minus)) = self.peek() {
                negative ^= *t == Token::Minus;
                self.pos += 1;
            }
            if self.peek().is_none() {
                return Err(Error::Parse("expression ends with an operator".into()));
            }
            let t = self.term()?;
            acc = if negative { acc - t } else { acc + t };
            match self.peek() {
                None => return Ok(acc),
                Some(Token::Plus | Token::Minus) => {}
                Some(t) => return Err(Error::Parse(format!("unexpected token {t:?}"))),
            }
        }
    }
}

impl FromStr for SymbolicValue {
    type Err = Error;

    /// Parses the canonical text form and looser variants such as
    /// `pi^4/24 + 1/2*pi^2*log2^2` or `3/2*pi*zeta3^2`.
    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        if tokens.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut p = Parser { tokens, pos: 0 };
        p.expr()
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::arb_value;
    use super::super::{rat, SymbolicValue};
    use proptest::prelude::*;

    #[test]
    fn canonical_text() {
        let v: SymbolicValue = "-11/720*pi^4 - 2*zb1_3".parse().unwrap();
        assert_eq!(v.to_string(), "-11/720*pi^4 - 2*zb1_3");
        let w: SymbolicValue = "pi^4/24 + 1/2*pi^2*log2^2".parse().unwrap();
        assert_eq!(w.to_string(), "1/24*pi^4 + 1/2*pi^2*log2^2");
        assert_eq!(SymbolicValue::zero().to_string(), "0");
        assert_eq!(SymbolicValue::from_rational(rat(-3, 4)).to_string(), "-3/4");
    }

    #[test]
    fn loose_forms_normalize() {
        let a: SymbolicValue = "log2*pi^2*3/2 + zeta3*zeta3".parse().unwrap();
        let b: SymbolicValue = "3/2*pi^2*log2 + zeta3^2".parse().unwrap();
        assert_eq!(a, b);
        let c: SymbolicValue = "2^3*pi - 8*pi".parse().unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "pi +", "zeta4", "pi/log2", "1/0", "x", "pi^", "3 pi"] {
            assert!(bad.parse::<SymbolicValue>().is_err(), "{bad}");
        }
    }

    proptest! {
        #[test]
        fn text_round_trip(v in arb_value()) {
            let back: SymbolicValue = v.to_string().parse().unwrap();
            prop_assert_eq!(back, v);
        }
    }
}
