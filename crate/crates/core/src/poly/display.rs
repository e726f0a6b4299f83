//! Canonical text output: graded-lex descending, ties by lex.

use super::{Exponent, Polynomial};
use crate::rational::{to_short_string, Rational};
use num_traits::{One, Signed};
use std::fmt;

/// Variable names used for printing and parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames(pub Vec<String>);

impl VarNames {
    /// `x1, …, xn`.
    pub fn standard(n: usize) -> Self {
        VarNames((1..=n).map(|i| format!("x{i}")).collect())
    }

    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        VarNames(names.iter().map(|s| s.as_ref().to_string()).collect())
    }
}

pub struct Displayed<'a> {
    pub(super) p: &'a Polynomial,
    pub(super) names: &'a VarNames,
}

impl Polynomial {
    /// Terms sorted for printing: higher total degree first, then
    /// lex-descending.
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &Rational)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|(a, _), (b, _)| b.total().cmp(&a.total()).then_with(|| b.cmp(a)));
        v
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &Exponent, names: &VarNames) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.0.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", names.0[i])?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Polynomial, names: &VarNames) -> fmt::Result {
    assert!(names.0.len() >= p.nvars(), "not enough variable names");
    let terms = p.sorted_terms();
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (idx, (e, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        match (idx, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if e.total() == 0 {
            write!(f, "{}", to_short_string(&a))?;
        } else {
            if !a.is_one() {
                write!(f, "{}*", to_short_string(&a))?;
            }
            write_monomial(f, e, names)?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self, &VarNames::standard(self.nvars()))
    }
}

impl fmt::Display for Displayed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.p, self.names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, parse_named};

    #[test]
    fn canonical_order() {
        let p = parse("x2 + 1 + x1*x2 - x1^2 + 3/2*x1", 2).unwrap();
        assert_eq!(p.to_string(), "-x1^2 + x1*x2 + 3/2*x1 + x2 + 1");
        assert_eq!(parse("3/2*x1 - 3/2*x1", 1).unwrap().to_string(), "0");
        assert_eq!(parse("-2", 3).unwrap().to_string(), "-2");
    }

    #[test]
    fn named_output() {
        let names = VarNames::new(&["x1", "z2"]);
        let p = parse_named("z2^2 + x1 + z2*x1^2", &names).unwrap();
        assert_eq!(p.display_with(&names).to_string(), "x1^2*z2 + z2^2 + x1");
    }
}
