//! Exact nonnegativity of univariate polynomials and binary forms.

use super::roots::{cauchy_bound, isolate_real_roots};
use super::verdict::{Verdict, Witness};
use crate::poly::{Polynomial, UniPoly};
use crate::rational::{int, to_short_string, Rational};
use num_traits::{Signed, ToPrimitive};

/// Small integers `0, 1, -1, 2, -2, …` up to `|k| <= bound`.
pub(crate) fn small_candidates(bound: &Rational) -> impl Iterator<Item = Rational> {
    let b = bound
        .ceil()
        .to_integer()
        .to_i64()
        .unwrap_or(i64::MAX)
        .min(64);
    std::iter::once(int(0)).chain((1..=b).flat_map(|k| [int(k), int(-k)]))
}

/// A rational `x` with `p(x) < 0`, if one exists.
pub fn univariate_negative_point(p: &UniPoly) -> Option<Rational> {
    if p.is_zero() {
        return None;
    }
    if let Some(x) = small_candidates(&cauchy_bound(p)).find(|x| p.eval(x).is_negative()) {
        return Some(x);
    }
    // p has constant sign on every open cell between consecutive roots.
    let mut iso = isolate_real_roots(p);
    iso.cell_samples()
        .into_iter()
        .find(|x| p.eval(x).is_negative())
}

/// Decide `p(x) >= 0` for all real `x`.
pub fn univariate_nonneg(p: &UniPoly) -> Verdict {
    if p.is_zero() {
        return Verdict::proved("zero polynomial");
    }
    match univariate_negative_point(p) {
        Some(x) => {
            let v = p.eval(&x);
            Verdict::disproved(
                Witness::point(vec![x.clone()]),
                format!("p({}) = {} < 0", to_short_string(&x), to_short_string(&v)),
            )
        }
        None => Verdict::proved("nonnegative on every cell of the real root sign table"),
    }
}

/// A point where the binary form `p` is negative.
pub fn binary_negative_point(p: &Polynomial) -> Option<Vec<Rational>> {
    assert_eq!(p.nvars(), 2, "binary form expected");
    let one = Rational::from_integer(1.into());
    let at_x1_one = p.set_var_drop(0).ok()?.to_univariate()?;
    if let Some(t) = univariate_negative_point(&at_x1_one) {
        return Some(vec![one, t]);
    }
    let at_x2_one = p.set_var_drop(1).ok()?.to_univariate()?;
    univariate_negative_point(&at_x2_one).map(|t| vec![t, one])
}

/// Decide global nonnegativity of a homogeneous polynomial in two
/// variables.
pub fn binary_form_nonneg(p: &Polynomial) -> Verdict {
    if p.nvars() != 2 || !p.is_homogeneous() {
        return Verdict::unknown("input is not a binary form");
    }
    if p.is_zero() {
        return Verdict::proved("zero form");
    }
    match binary_negative_point(p) {
        Some(x) => {
            let v = p.evaluate(&x);
            Verdict::disproved(
                Witness::point(x),
                format!("form takes the value {} < 0", to_short_string(&v)),
            )
        }
        None => Verdict::proved("both dehomogenizations are nonnegative"),
    }
}

/// Nonnegativity for one variable or a binary form, `Unknown` otherwise.
pub fn exact_nonneg(p: &Polynomial) -> Verdict {
    match p.nvars() {
        1 => univariate_nonneg(&p.to_univariate().expect("one variable")),
        2 if p.is_homogeneous() => binary_form_nonneg(p),
        _ => {
            if p.is_zero() {
                Verdict::proved("zero polynomial")
            } else {
                Verdict::unknown("no exact nonnegativity test for this shape")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::VerdictKind;
    use crate::poly::parse;

    #[test]
    fn univariate_examples() {
        let p = &UniPoly::linear_root(&int(3)).pow(2) * &UniPoly::from_ints(&[1, 1, 1]);
        assert!(univariate_nonneg(&p).is_proved());
        let v = univariate_nonneg(&UniPoly::from_ints(&[0, -1, 0, 1]));
        assert_eq!(v.kind, VerdictKind::Disproved);
        assert_eq!(v.witness_point(), Some(&[int(-2)][..]));
        assert!(univariate_nonneg(&UniPoly::zero()).is_proved());
        // x^2 - 2 x + 1 - 1/100 has roots near 1: negative only on (0.9, 1.1)
        let q = UniPoly::new(vec![crate::rational::rat(99, 100), int(-2), int(1)]);
        let w = univariate_nonneg(&q);
        assert!(w.is_disproved());
        assert!(q.eval(&w.witness_point().unwrap()[0]).is_negative());
    }

    #[test]
    fn binary_examples() {
        assert!(binary_form_nonneg(&parse("x1^2 - x2^2", 2).unwrap().pow(2)).is_proved());
        let v = binary_form_nonneg(&parse("x1^3*x2", 2).unwrap());
        assert_eq!(v.witness_point(), Some(&[int(1), int(-1)][..]));
        assert!(binary_form_nonneg(&parse("x1^2*x2^2", 2).unwrap()).is_proved());
        assert!(binary_form_nonneg(&parse("x1^3", 2).unwrap()).is_disproved());
        assert!(binary_form_nonneg(&parse("x2^2", 2).unwrap()).is_proved());
        assert!(binary_form_nonneg(&parse("-x2^2", 2).unwrap()).is_disproved());
    }
}
