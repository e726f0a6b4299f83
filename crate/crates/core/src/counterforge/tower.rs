//! Blow-ups of the plane at the origin on the chart `x2 = x1·z`, and the
//! tower of higher-degree counterexamples they produce.

use super::{catalog::NamedInstance, CounterError};
use crate::poly::{parse, Exponent, Polynomial};
use crate::rational::int;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowUp {
    /// Order of `x1` in `p(x1, x1·z)`.
    pub mult: u32,
    /// `p(x1, x1·z) / x1^mult`.
    pub birational: Polynomial,
}

/// `p(x1, x1·z) = x1^m · p'` with `x1 ∤ p'`.
pub fn blowup_step(p: &Polynomial) -> BlowUp {
    assert_eq!(p.nvars(), 2, "plane curve expected");
    assert!(!p.is_zero(), "zero polynomial");
    let x1 = Polynomial::var(2, 0);
    let total = p.compose(&[x1.clone(), &x1 * &Polynomial::var(2, 1)]);
    let mult = total.terms().map(|(e, _)| e.0[0]).min().unwrap_or(0);
    let birational = Polynomial::from_terms(
        2,
        total
            .terms()
            .map(|(e, c)| (vec![e.0[0] - mult, e.0[1]], c.clone())),
    );
    debug_assert_eq!(&x1.pow(mult) * &birational, total);
    BlowUp { mult, birational }
}

fn x1_pow(k: u32) -> Polynomial {
    Polynomial::monomial(2, Exponent(vec![k, 0]), int(1))
}

/// Closed forms for the strict transforms at level `i ≥ 2`, in the chart
/// variable `z`.
pub fn closed_form_f(i: u32) -> Polynomial {
    let e = 2 * (i - 2) + 1;
    parse(&format!("x1^{e}*x2^2 + 1 + x2*x1^{}", 2 + i), 2).expect("closed form")
}

pub fn closed_form_g(i: u32) -> Polynomial {
    parse(&format!("1 + x2 + x2*x1^{i}"), 2).expect("closed form")
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerLevel {
    pub index: u32,
    /// The pair at this level: `(f_poly, g_poly)`.
    pub f_poly: Polynomial,
    pub g_poly: Polynomial,
    pub birational_f: Polynomial,
    pub birational_g: Polynomial,
    pub exceptional_mult_f: u32,
    pub exceptional_mult_g: u32,
    pub deg_f: u32,
    pub deg_g: u32,
    /// Comparison with the closed forms (levels ≥ 2 only).
    pub closed_form_f: Option<Polynomial>,
    pub closed_form_g: Option<Polynomial>,
    pub f_matches_closed_form: Option<bool>,
    pub g_matches_closed_form: Option<bool>,
}

/// The dehomogenized ternary pair the tower starts from.
pub fn base_pair() -> (Polynomial, Polynomial) {
    (
        parse("x1^3 + x1^3*x2 + x2^2", 2).expect("base f"),
        parse("x1 + x2 + x1*x2", 2).expect("base g"),
    )
}

/// Iterated blow-ups. Level 1 is the total transform of the base pair,
/// `x1²·f₁'` and `x1·g₁'`; level `i ≥ 2` is `(x1²·f_i, x1·g_i)` where `f_i`,
/// `g_i` are the total transforms of the previous strict transforms.
/// Variables are `x1` and the chart coordinate `z` (printed as `x2`).
pub fn tower(levels: u32) -> Vec<TowerLevel> {
    let (mut f, mut g) = base_pair();
    let mut out = Vec::new();
    for index in 1..=levels {
        let bf = blowup_step(&f);
        let bg = blowup_step(&g);
        let (pre_f, pre_g) = if index == 1 { (0, 0) } else { (2, 1) };
        let f_poly = &x1_pow(pre_f + bf.mult) * &bf.birational;
        let g_poly = &x1_pow(pre_g + bg.mult) * &bg.birational;
        let (cf, cg) = if index >= 2 {
            (Some(closed_form_f(index)), Some(closed_form_g(index)))
        } else {
            (None, None)
        };
        out.push(TowerLevel {
            index,
            deg_f: f_poly.total_degree().finite().unwrap_or(0),
            deg_g: g_poly.total_degree().finite().unwrap_or(0),
            f_poly,
            g_poly,
            f_matches_closed_form: cf.as_ref().map(|c| *c == bf.birational),
            g_matches_closed_form: cg.as_ref().map(|c| *c == bg.birational),
            closed_form_f: cf,
            closed_form_g: cg,
            birational_f: bf.birational.clone(),
            birational_g: bg.birational.clone(),
            exceptional_mult_f: bf.mult,
            exceptional_mult_g: bg.mult,
        });
        f = bf.birational;
        g = bg.birational;
    }
    out
}

/// `ν(d)`: degree of `g` paired with a degree-`d` `f`.
pub fn nu(d: i64) -> Result<i64, CounterError> {
    match d {
        4..=6 => Ok(d - 2),
        _ if d >= 8 && d % 2 == 0 => Ok(d - (d - 6) / 2 - 2),
        _ => Err(CounterError::UnsupportedDegree(d)),
    }
}

/// Tower level whose `g` has degree `ν(d)` (0 is the base pair).
pub fn level_for_degree(d: i64) -> Result<u32, CounterError> {
    nu(d)?;
    Ok(match d {
        4 => 0,
        5 => 1,
        6 => 2,
        _ => (d / 2 - 1) as u32,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BlonkInstance {
    pub instance: NamedInstance,
    pub level: u32,
    pub requested_degree: i64,
    pub nu: i64,
    pub deg_f: u32,
    pub deg_g: u32,
    /// Whether the iterated pair has exactly the degrees `(d, ν(d))`.
    pub degrees_match: bool,
}

/// The tower pair meant to have `deg f = d`, `deg g = ν(d)`. The degrees
/// actually produced by the iteration are reported, not assumed.
pub fn blonk_instance(d: i64) -> Result<BlonkInstance, CounterError> {
    let nu_d = nu(d)?;
    let level = level_for_degree(d)?;
    let (f, g) = if level == 0 {
        base_pair()
    } else {
        let top = tower(level).pop().expect("at least one level");
        (top.f_poly, top.g_poly)
    };
    let deg_f = f.total_degree().finite().unwrap_or(0);
    let deg_g = g.total_degree().finite().unwrap_or(0);
    let degrees_match = i64::from(deg_f) == d && i64::from(deg_g) == nu_d;
    Ok(BlonkInstance {
        instance: NamedInstance {
            name: format!("blonk-{d}"),
            f,
            g,
            nvars: 2,
            description: format!(
                "tower level {level}: deg f = {deg_f}, deg g = {deg_g}; no nonnegative multiplier, inherited from the base pair through the blow-ups"
            ),
            epsilon: None,
        },
        level,
        requested_degree: d,
        nu: nu_d,
        deg_f,
        deg_g,
        degrees_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one() {
        let (f, g) = base_pair();
        assert_eq!(
            blowup_step(&f),
            BlowUp {
                mult: 2,
                birational: parse("x2^2 + x1 + x2*x1^2", 2).unwrap()
            }
        );
        assert_eq!(
            blowup_step(&g),
            BlowUp {
                mult: 1,
                birational: parse("1 + x2 + x2*x1", 2).unwrap()
            }
        );
        let p = parse("1 + x1 + x2^2", 2).unwrap();
        let b = blowup_step(&p);
        assert_eq!(b.mult, 0);
        assert_eq!(b.birational, parse("1 + x1 + x1^2*x2^2", 2).unwrap());
    }

    #[test]
    fn multiplicity_is_exact_order() {
        for l in tower(5) {
            let x1 = Polynomial::var(2, 0);
            assert!(l.birational_f.exact_div(&x1).is_none());
            assert!(l.birational_g.exact_div(&x1).is_none());
        }
    }

    #[test]
    fn iteration_closed_forms() {
        let t = tower(5);
        // Iteration oracle: f_i' = 1 + x1^(2i-3) z^2 + x1^i z and
        // g_i' = 1 + x1^(i-1) z + x1^i z for i >= 2.
        for l in &t[1..] {
            let i = l.index;
            let f = parse(&format!("1 + x1^{}*x2^2 + x1^{i}*x2", 2 * i - 3), 2).unwrap();
            let g = parse(&format!("1 + x1^{}*x2 + x1^{i}*x2", i - 1), 2).unwrap();
            assert_eq!(l.birational_f, f, "level {i}");
            assert_eq!(l.birational_g, g, "level {i}");
            assert_eq!(l.f_matches_closed_form, Some(false));
            assert_eq!(l.g_matches_closed_form, Some(false));
        }
        let degs: Vec<(u32, u32)> = t.iter().map(|l| (l.deg_f, l.deg_g)).collect();
        // From level 3 on the strict transform misses the centre, so the
        // exceptional multiplicity of f drops to 0.
        assert_eq!(degs, [(5, 3), (6, 4), (7, 5), (9, 6), (11, 7)]);
        let mults: Vec<(u32, u32)> = t
            .iter()
            .map(|l| (l.exceptional_mult_f, l.exceptional_mult_g))
            .collect();
        assert_eq!(mults, [(2, 1), (1, 0), (0, 0), (0, 0), (0, 0)]);
    }

    #[test]
    fn blonk_degrees() {
        assert_eq!(nu(8).unwrap(), 5);
        assert!(nu(7).is_err() && nu(3).is_err());
        for d in [4, 5, 6] {
            assert!(blonk_instance(d).unwrap().degrees_match, "{d}");
        }
        for d in [8, 10, 12] {
            let b = blonk_instance(d).unwrap();
            assert_eq!((b.deg_f as i64, b.deg_g as i64), (d - 1, nu(d).unwrap()));
            assert!(!b.degrees_match);
        }
        assert_eq!(
            blonk_instance(5).unwrap().instance.g,
            parse("x1 + x1*x2 + x1^2*x2", 2).unwrap()
        );
    }
}
