//! Parser for the polynomial text grammar.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [rational ['*']] factor ('*'? factor)*  |  rational
//! factor := name ['^' int]
//! ```
//! Whitespace is ignored everywhere.

use super::{Exponent, Polynomial, VarNames};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

pub fn parse(text: &str, nvars: usize) -> Result<Polynomial, ParseError> {
    parse_named(text, &VarNames::standard(nvars))
}

/// Parse with explicit variable names (e.g. `x1`, `z2`, `y`).
pub fn parse_named(text: &str, names: &VarNames) -> Result<Polynomial, ParseError> {
    Parser {
        chars: text.chars().collect(),
        pos: 0,
        names,
    }
    .poly()
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a VarNames,
}

impl Parser<'_> {
    fn n(&self) -> usize {
        self.names.0.len()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let mut p = Polynomial::zero(self.n());
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(c) => return self.err(format!("expected '+' or '-', found '{c}'")),
                None => break,
            };
            first = false;
            let (e, c) = self.term()?;
            p.add_term(e, if neg { -c } else { c });
        }
        Ok(p)
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn rational(&mut self) -> Result<Option<Rational>, ParseError> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        if self.peek() == Some('/') {
            self.pos += 1;
            let Some(den) = self.digits() else {
                return self.err("expected denominator after '/'");
            };
            if den.is_zero() {
                return self.err("zero denominator");
            }
            return Ok(Some(Rational::new(num, den)));
        }
        Ok(Some(Rational::from_integer(num)))
    }

    fn term(&mut self) -> Result<(Exponent, Rational), ParseError> {
        let mut coeff = Rational::one();
        let mut exp = vec![0u32; self.n()];
        let mut saw_any = false;
        if let Some(c) = self.rational()? {
            coeff = c;
            saw_any = true;
            if self.peek() == Some('*') {
                self.pos += 1;
                if !self.at_factor() {
                    return self.err("expected a variable after '*'");
                }
            }
        }
        while self.at_factor() {
            let (i, k) = self.factor()?;
            exp[i] += k;
            saw_any = true;
            if self.peek() == Some('*') {
                self.pos += 1;
                if !self.at_factor() {
                    return self.err("expected a variable after '*'");
                }
            }
        }
        if !saw_any {
            return match self.peek() {
                Some(c) => self.err(format!("unexpected character '{c}'")),
                None => self.err("unexpected end of input"),
            };
        }
        Ok((Exponent(exp), coeff))
    }

    fn at_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphabetic())
    }

    fn factor(&mut self) -> Result<(usize, u32), ParseError> {
        self.skip_ws();
        let start = self.pos;
        // Longest matching name wins, so `x12` is not read as `x1` `2`.
        let rest: String = self.chars[self.pos..].iter().collect();
        let best = self
            .names
            .0
            .iter()
            .enumerate()
            .filter(|(_, nm)| rest.starts_with(nm.as_str()))
            .max_by_key(|(_, nm)| nm.len());
        let Some((idx, name)) = best else {
            let mut end = self.pos;
            while end < self.chars.len() && self.chars[end].is_ascii_alphanumeric() {
                end += 1;
            }
            let tok: String = self.chars[start..end].iter().collect();
            return self.err(format!(
                "variable '{tok}' out of range or unknown (known: {})",
                self.names.0.join(", ")
            ));
        };
        self.pos += name.chars().count();
        // A name directly followed by more digits is a different variable.
        if matches!(self.chars.get(self.pos), Some(c) if c.is_ascii_digit()) {
            let mut end = self.pos;
            while end < self.chars.len() && self.chars[end].is_ascii_digit() {
                end += 1;
            }
            let tok: String = self.chars[start..end].iter().collect();
            self.pos = start;
            return self.err(format!(
                "variable '{tok}' out of range for {} variables",
                self.n()
            ));
        }
        let mut k = 1u32;
        if self.peek() == Some('^') {
            self.pos += 1;
            let Some(d) = self.digits() else {
                return self.err("expected exponent after '^'");
            };
            k = match u32::try_from(d) {
                Ok(v) => v,
                Err(_) => return self.err("exponent too large"),
            };
        }
        Ok((idx, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn simple_forms() {
        let p = parse("x1^2 - x2^2", 2).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&[2, 0]), int(1));
        assert_eq!(p.coeff(&[0, 2]), int(-1));
        let g = parse("x1*x3 + x2*x3 + x1*x2", 3).unwrap();
        assert_eq!(g.coeff(&[1, 0, 1]), int(1));
        assert!(parse("3/2*x1 - 3/2*x1", 1).unwrap().is_zero());
    }

    #[test]
    fn juxtaposition_and_spacing() {
        let a = parse("9x2^3 - 9x1x2^2 + 1/2 x1", 2).unwrap();
        assert_eq!(a.coeff(&[1, 2]), int(-9));
        assert_eq!(a.coeff(&[1, 0]), rat(1, 2));
        assert_eq!(parse("-x1", 1).unwrap().coeff(&[1]), int(-1));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("x1 + x3", 2).unwrap_err();
        assert_eq!(e.pos, 5);
        assert!(e.msg.contains("out of range"));
        let e = parse("x1 + + x2", 2).unwrap_err();
        assert_eq!(e.pos, 5);
        assert!(parse("", 2).is_err());
        assert!(parse("x1^", 2).is_err());
        assert!(parse("1/0*x1", 2).is_err());
        assert!(parse("x1 x", 2).is_err());
    }

    #[test]
    fn custom_names() {
        let names = VarNames::new(&["x1", "z2"]);
        let p = parse_named("1 + z2 + z2*x1", &names).unwrap();
        assert_eq!(p.coeff(&[1, 1]), int(1));
        assert!(parse_named("x2", &names).is_err());
    }
}
