//! Division-remainder argument for the pair whose `g` is a product of two
//! parallel lines.

use super::catalog::{lookup, nongeom_lines};
use super::linsys::{fourier_motzkin, FmFailure};
use super::CounterError;
use crate::certify::Verdict;
use crate::poly::{parse, Exponent, Polynomial};
use crate::rational::{int, rat, serde_str, to_short_string, Rational};
use serde::Serialize;

/// Remainder of `f` modulo `l2²` as it is commonly printed; it contains two
/// typos that the report points out.
pub const PRINTED_R1: &str = "9*x2^3 - 9*x1*x2^2 - 52*x2^2 - 25*x1*x2 + 97*x2^2 - 22*x1 - 66";

#[derive(Clone, Debug, Serialize)]
pub struct RemainderTriple {
    pub r1: Polynomial,
    pub r2: Polynomial,
    /// `r1 / r2`, a polynomial in `x2` alone.
    pub r3: Polynomial,
}

#[derive(Clone, Debug, Serialize)]
pub struct TermMismatch {
    pub monomial: String,
    #[serde(with = "serde_str")]
    pub computed: Rational,
    #[serde(with = "serde_str")]
    pub printed: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct NongeomReport {
    pub verdict: Verdict,
    pub remainders: RemainderTriple,
    pub r2_expected: bool,
    pub r3_expected: bool,
    /// Terms where the recomputed `r1` differs from [`PRINTED_R1`].
    pub r1_discrepancies: Vec<TermMismatch>,
    /// `f - t̃·g` in `(x1, x2, a)` with `t̃ = a·l2² + r3`.
    pub residual: Polynomial,
    #[serde(with = "serde_str")]
    pub top_coefficient_x2_4: Rational,
    #[serde(with = "serde_str")]
    pub top_coefficient_slope: Rational,
    #[serde(with = "serde_str")]
    pub origin_constant: Rational,
    #[serde(with = "serde_str")]
    pub origin_slope: Rational,
    /// `a ≤ upper` from the `x2⁴` coefficient.
    #[serde(with = "serde_str")]
    pub upper: Rational,
    /// `a ≥ lower` from the value at the origin.
    #[serde(with = "serde_str")]
    pub lower: Rational,
    pub steps: Vec<String>,
}

fn check(ok: bool, what: &str) -> Result<(), CounterError> {
    if ok {
        Ok(())
    } else {
        Err(CounterError::Identity(what.into()))
    }
}

fn monomial_text(e: &Exponent) -> String {
    Polynomial::monomial(e.len(), e.clone(), int(1)).to_string()
}

/// Coefficient of `a^k` in a polynomial over `(x1, x2, a)`, evaluated at
/// `x1 = x2 = 0` after picking the `x2^j` part.
fn coeff(p: &Polynomial, x2: u32, a: u32) -> Rational {
    p.coeff(&[0, x2, a])
}

pub fn nongeom_verify() -> Result<NongeomReport, CounterError> {
    let inst = lookup("nongeom")?;
    let (_, l2) = nongeom_lines();
    let l2sq = l2.pow(2);
    let (qf, r1) = inst.f.divrem_monic_in(&l2sq, 0);
    let (qg, r2) = inst.g.divrem_monic_in(&l2sq, 0);
    check(&(&qf * &l2sq) + &r1 == inst.f, "f = q1*l2^2 + r1")?;
    check(&(&qg * &l2sq) + &r2 == inst.g, "g = q2*l2^2 + r2")?;
    let mut steps = vec![
        format!("f mod l2^2 = r1 = {r1}"),
        format!("g mod l2^2 = r2 = {r2}"),
    ];

    let r2_expected = r2 == parse("6*x2 - 6*x1 - 18", 2).expect("r2");
    let r3 = r1
        .exact_div(&r2)
        .ok_or_else(|| CounterError::Identity("r2 divides r1".into()))?;
    check(r3.degree_in(0).finite() == Some(0), "r3 is free of x1")?;
    let r3_expected = r3 == parse("22/6 - 25/6*x2 + 9/6*x2^2", 2).expect("r3");
    check(&r1 - &(&r3 * &r2) == Polynomial::zero(2), "r1 - r3*r2 = 0")?;
    steps.push(format!("r3 = r1 / r2 = {r3}"));

    let printed = parse(PRINTED_R1, 2).expect("printed remainder");
    let diff = &r1 - &printed;
    let r1_discrepancies: Vec<TermMismatch> = diff
        .terms()
        .map(|(e, _)| TermMismatch {
            monomial: monomial_text(e),
            computed: r1.coeff(&e.0),
            printed: printed.coeff(&e.0),
        })
        .collect();
    for m in &r1_discrepancies {
        steps.push(format!(
            "printed r1 differs at {}: computed {}, printed {}",
            m.monomial,
            to_short_string(&m.computed),
            to_short_string(&m.printed)
        ));
    }

    // Work over (x1, x2, a): t̃ = a·l2² + r3.
    let lift = |p: &Polynomial| p.extend_vars(1);
    let a = Polynomial::var(3, 2);
    let t = &(&a * &lift(&l2sq)) + &lift(&r3);
    let residual = &lift(&inst.f) - &(&t * &lift(&inst.g));
    let h_mod = residual.divrem_monic_in(&lift(&l2sq), 0).1;
    check(h_mod.is_zero(), "l2^2 divides f - t~*g")?;
    check(
        residual.degree_in(1).finite() == Some(4),
        "f - t~*g has degree 4 in x2",
    )?;
    for (e, _) in residual.terms() {
        check(
            e.0[1] < 4 || (e.0[0] == 0 && e.0[1] == 4),
            "x2^4 coefficient is free of x1",
        )?;
    }
    let (top_c, top_s) = (coeff(&residual, 4, 0), coeff(&residual, 4, 1));
    let (org_c, org_s) = (residual.coeff(&[0, 0, 0]), residual.coeff(&[0, 0, 1]));
    check(
        top_c == rat(-1, 2) && top_s == int(-1),
        "x2^4 coefficient is -1/2 - a",
    )?;
    check(
        org_c == int(30) && org_s == int(81),
        "value at the origin is 30 + 81a",
    )?;
    steps.push(format!(
        "x2^4 coefficient of f - t~*g: {} {} a >= 0",
        to_short_string(&top_c),
        if top_s < int(0) { "-" } else { "+" }
    ));
    steps.push(format!(
        "value at the origin: {} + {} a >= 0",
        to_short_string(&org_c),
        to_short_string(&org_s)
    ));
    let upper = -&top_c / &top_s;
    let lower = -&org_c / &org_s;
    steps.push(format!(
        "a <= {} and a >= {}",
        to_short_string(&upper),
        to_short_string(&lower)
    ));

    let rows = vec![
        (vec![top_s.clone()], top_c.clone()),
        (vec![org_s.clone()], org_c.clone()),
    ];
    let verdict = match fourier_motzkin(1, rows) {
        Err(FmFailure::Empty(why)) => Verdict::proved(format!(
            "a <= {} and a >= {} cannot both hold ({why})",
            to_short_string(&upper),
            to_short_string(&lower)
        )),
        Err(FmFailure::Budget) => Verdict::unknown("elimination budget exceeded"),
        Ok(a) => Verdict::unknown(format!(
            "a = {} satisfies both bounds",
            to_short_string(&a[0])
        )),
    };
    Ok(NongeomReport {
        verdict,
        remainders: RemainderTriple { r1, r2, r3 },
        r2_expected,
        r3_expected,
        r1_discrepancies,
        residual,
        top_coefficient_x2_4: top_c,
        top_coefficient_slope: top_s,
        origin_constant: org_c,
        origin_slope: org_s,
        upper,
        lower,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remainders_and_bounds() {
        let r = nongeom_verify().unwrap();
        assert!(r.verdict.is_proved(), "{}", r.verdict.reason);
        assert!(r.r2_expected && r.r3_expected);
        assert_eq!(
            r.remainders.r1,
            parse(
                "9*x2^3 - 9*x1*x2^2 - 52*x2^2 + 25*x1*x2 + 97*x2 - 22*x1 - 66",
                2
            )
            .unwrap()
        );
        assert_eq!(
            (r.upper.clone(), r.lower.clone()),
            (rat(-1, 2), rat(-30, 81))
        );
        let monos: Vec<&str> = r
            .r1_discrepancies
            .iter()
            .map(|m| m.monomial.as_str())
            .collect();
        assert_eq!(monos.len(), 3, "{monos:?}");
        assert!(monos.contains(&"x1*x2") && monos.contains(&"x2") && monos.contains(&"x2^2"));
    }
}
