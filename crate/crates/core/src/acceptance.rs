//! The bundled acceptance suite: ten exact checks, each with a runtime
//! limit. Used by the `acceptance` subcommand and the integration test.

use crate::certify::convexity::{
    midpoint_realized_in_plane, nonconvexity_certificate, verify_segment,
};
use crate::certify::SamplingConfig;
use crate::counterforge::even_degree::{random_nonneg_form, EvenDegreeBranch};
use crate::counterforge::{
    blonk_instance, default_curves, lookup, nongeom_verify, refute_even_degree_multiplier,
    refute_quadratic_multiplier, tower, RefuteConfig,
};
use crate::par::ExecMode;
use crate::poly::{parse, Grading, Polynomial};
use crate::quadform::{det, gram_of, GramMatrix, Matrix};
use crate::random::{point, rng_for, symmetric_matrix};
use crate::rational::{int, rat, rvec, Rational};
use crate::s4solve::{round_trip, s4, S4Config};
use crate::slemma::{homogeneous_slemma, no_constant_multiplier, Bound, CurveArgument};
use crate::stability::{
    classify_t0, default_z_candidates, sign_flip_witness_search, FlipSearchConfig, T0Class,
};
use num_traits::Signed;
use rand::Rng;
use serde::Serialize;
use std::fmt;
use std::time::Instant;

pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
}

impl CriterionReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = self.checks.iter().filter(|c| c.ok).count();
        write!(
            f,
            "[{}] {:>2} {:<40} {}/{} checks, {} ms (limit {} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            ok,
            self.checks.len(),
            self.elapsed_ms,
            self.limit_ms
        )
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            ok,
            detail: detail.into(),
        });
    }
}

pub const TITLES: [&str; 10] = [
    "introductory identity and s4 certificate",
    "S-lemma feasible interval [1, 2]",
    "no constant multiplier for l3.1",
    "ternary counterexample elimination",
    "even-degree refutation on random t",
    "non-geometric counterexample remainders",
    "blow-up tower",
    "T0 stability classification",
    "sign-flip witness bundles",
    "property suites",
];

const LIMITS_MS: [u128; 10] = [
    1_000, 1_000, 1_000, 5_000, 10_000, 2_000, 5_000, 1_000, 10_000, 60_000,
];

fn p(s: &str, n: usize) -> Polynomial {
    parse(s, n).expect("literal polynomial")
}

/// Runs criterion `id` (1 to 10).
pub fn run(id: u8, seed: u64) -> Option<CriterionReport> {
    let body: fn(&mut Checks, u64) = match id {
        1 => intro_identity,
        2 => slemma_interval,
        3 => no_constant,
        4 => ternary,
        5 => even_degree,
        6 => nongeom,
        7 => blowup_tower,
        8 => stability_classes,
        9 => flip_bundles,
        10 => property_suites,
        _ => return None,
    };
    let mut checks = Checks::default();
    let start = Instant::now();
    body(&mut checks, seed);
    let elapsed_ms = start.elapsed().as_millis();
    let limit_ms = LIMITS_MS[id as usize - 1];
    let timely = elapsed_ms < limit_ms;
    checks.add("runtime", timely, format!("{elapsed_ms} ms"));
    Some(CriterionReport {
        id,
        title: TITLES[id as usize - 1],
        passed: checks.0.iter().all(|c| c.ok),
        checks: checks.0,
        elapsed_ms,
        limit_ms,
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    (1..=10).filter_map(|id| run(id, seed)).collect()
}

fn intro_identity(c: &mut Checks, _seed: u64) {
    let f = p("x1^4 - x2^4", 2);
    let g = p("x1^2 - x2^2", 2);
    let t = p("2*x2^2", 2);
    let lhs = &f - &(&t * &g);
    c.add(
        "f - 2 x2^2 g = (x1^2 - x2^2)^2",
        lhs == g.pow(2),
        lhs.to_string(),
    );
    match s4(&f, &g, &rvec(&[1, 0]), &S4Config::default()) {
        Ok(cert) => c.add(
            "s4 certificate verifies",
            cert.verify(&f, &g),
            format!("t = {}", cert.t),
        ),
        Err(e) => c.add("s4 certificate verifies", false, e.to_string()),
    }
}

fn slemma_interval(c: &mut Checks, _seed: u64) {
    let f = p("2*x1^2 - x2^2", 2);
    let g = p("x1^2 - x2^2", 2);
    let sampling = SamplingConfig::default();
    let res = match homogeneous_slemma(&f, &g, &rvec(&[1, 0]), &sampling) {
        Ok(r) => r,
        Err(e) => return c.add("slemma", false, e.to_string()),
    };
    let iv = &res.feasible;
    c.add(
        "interval is [1, 2]",
        iv.lower == Bound::Rational { value: int(1) }
            && iv.upper == Bound::Rational { value: int(2) },
        iv.to_string(),
    );
    let cert_ok = res
        .certificate()
        .is_some_and(|k| k.verify_homogeneous(&f, &g));
    c.add(
        "certificate verifies",
        cert_ok,
        format!("{:?}", res.verdict_kind()),
    );
    let (a, b) = (
        gram_of(&f).expect("quadratic"),
        gram_of(&g).expect("quadratic"),
    );
    let bad: Vec<Rational> = (0..=300)
        .map(|k| rat(k, 100))
        .filter(|t| a.pencil(&b, t).is_psd() != (*t >= int(1) && *t <= int(2)))
        .collect();
    c.add(
        "301-point PSD grid agrees",
        bad.is_empty(),
        format!("{} disagreements", bad.len()),
    );
}

fn no_constant(c: &mut Checks, _seed: u64) {
    let g = p("x1^2 - x2^2", 2);
    let f = &p("x1^2", 2) * &g;
    let rep = no_constant_multiplier(&f, &g, &[int(1), rat(1, 100)]);
    c.add(
        "verdict Proved",
        rep.verdict.is_proved(),
        rep.verdict.reason.clone(),
    );
    let neg = rep
        .negative_point
        .as_ref()
        .is_some_and(|x| f.evaluate(x).is_negative());
    c.add(
        "t = 0 excluded by a point with f < 0",
        neg,
        format!("{:?}", rep.negative_point),
    );
    c.add(
        "shrinking-ray argument",
        matches!(rep.curve, Some(CurveArgument::ShrinkingRay { .. })),
        format!("{:?}", rep.curve),
    );
    let chains_ok = !rep.instances.is_empty()
        && rep.instances.iter().all(|i| {
            i.k.is_some()
                && !i.chain.is_empty()
                && g.evaluate(&i.point).is_positive()
                && f.evaluate(&i.point) - &i.t * g.evaluate(&i.point) == i.value
                && i.value.is_negative()
        });
    c.add(
        "explicit k and inequality chain per t",
        chains_ok,
        format!("{} instances", rep.instances.len()),
    );
}

fn ternary(c: &mut Checks, _seed: u64) {
    let inst = lookup("ternary-counterexample").expect("catalog entry");
    let r = refute_quadratic_multiplier(
        &inst.f,
        &inst.g,
        &default_curves(3),
        &RefuteConfig::default(),
    );
    c.add(
        "verdict Proved",
        r.verdict.is_proved(),
        r.verdict.reason.clone(),
    );
    c.add(
        "pin order a1, a6, a4, a5, a2, a3",
        r.trace.pinned_order == ["a1", "a6", "a4", "a5", "a2", "a3"],
        r.trace.pinned_order.join(", "),
    );
    let x1sq = p("x1^2", 3);
    c.add(
        "a1 = 1 and the other coefficients vanish",
        r.trace.candidate.as_ref() == Some(&x1sq),
        format!("{:?}", r.trace.candidate.as_ref().map(|q| q.to_string())),
    );
    let expected = p("-x1^2*x2*x3 + x2^2*x3^2", 3);
    let residual_ok =
        r.trace.residual.as_ref() == Some(&expected) && &inst.f - &(&x1sq * &inst.g) == expected;
    c.add(
        "residual -x1^2 x2 x3 + x2^2 x3^2",
        residual_ok,
        expected.to_string(),
    );
    let witness_ok = r.trace.witness.as_ref().is_some_and(|w| {
        expected.evaluate(w).is_negative() && Some(expected.evaluate(w)) == r.trace.witness_value
    });
    c.add(
        "negativity witness",
        witness_ok,
        format!("{:?}", r.trace.witness),
    );
}

fn even_degree(c: &mut Checks, seed: u64) {
    let inst = lookup("ternary-counterexample").expect("catalog entry");
    for i in 0..5u64 {
        let d = if i % 2 == 0 { 4 } else { 6 };
        let t = random_nonneg_form(&mut rng_for(seed, 500 + i), d);
        let r = refute_even_degree_multiplier(&inst.f, &inst.g, &t);
        let h = &inst.f - &(&t * &inst.g);
        let ok = r.verdict.is_proved()
            && match &r.branch {
                Some(EvenDegreeBranch::BetaRay { sign, point, .. }) => {
                    sign.sign == -1 && h.evaluate(point).is_negative()
                }
                Some(EvenDegreeBranch::VanishesOnPlane { point }) => {
                    h.evaluate(point).is_negative()
                }
                None => false,
            };
        c.add(format!("random t #{i} of degree {d}"), ok, r.verdict.reason);
    }
}

fn nongeom(c: &mut Checks, _seed: u64) {
    let r = match nongeom_verify() {
        Ok(r) => r,
        Err(e) => return c.add("identities", false, e.to_string()),
    };
    c.add(
        "r2 = 6 x2 - 6 x1 - 18",
        r.r2_expected,
        r.remainders.r2.to_string(),
    );
    c.add(
        "r3 = (9 x2^2 - 25 x2 + 22)/6",
        r.r3_expected,
        r.remainders.r3.to_string(),
    );
    c.add("a <= -1/2", r.upper == rat(-1, 2), r.upper.to_string());
    c.add("a >= -30/81", r.lower == rat(-30, 81), r.lower.to_string());
    c.add(
        "bounds inconsistent",
        r.verdict.is_proved(),
        r.verdict.reason.clone(),
    );
    let flagged: Vec<&str> = r
        .r1_discrepancies
        .iter()
        .map(|m| m.monomial.as_str())
        .collect();
    c.add(
        "printed r1 discrepancy flagged",
        !flagged.is_empty(),
        flagged.join(", "),
    );
}

fn blowup_tower(c: &mut Checks, _seed: u64) {
    let levels = tower(5);
    let l1 = &levels[0];
    c.add(
        "f1 = x1^2 (z^2 + x1 + z x1^2)",
        l1.f_poly == &p("x1^2", 2) * &p("x2^2 + x1 + x2*x1^2", 2),
        l1.f_poly.to_string(),
    );
    c.add(
        "g1 = x1 (1 + z + z x1)",
        l1.g_poly == &p("x1", 2) * &p("1 + x2 + x2*x1", 2),
        l1.g_poly.to_string(),
    );
    for l in &levels[1..] {
        c.add(
            format!("g-side closed form at level {}", l.index),
            l.g_matches_closed_form == Some(true),
            format!(
                "iteration {}, closed form {:?}",
                l.birational_g,
                l.closed_form_g.as_ref().map(|q| q.to_string())
            ),
        );
    }
    for d in [4, 5, 6, 8, 10] {
        match blonk_instance(d) {
            Ok(b) => c.add(
                format!("degrees (d, nu(d)) for d = {d}"),
                b.degrees_match,
                format!(
                    "level {}: ({}, {}) vs ({d}, {})",
                    b.level, b.deg_f, b.deg_g, b.nu
                ),
            ),
            Err(e) => c.add(format!("degrees for d = {d}"), false, e.to_string()),
        }
    }
}

fn stability_classes(c: &mut Checks, _seed: u64) {
    let q = p("x1*x2 + x2*x3 + x1*x3", 3);
    let full = matches!(classify_t0(&q), Ok(T0Class::Full));
    c.add(
        "x1 x2 + x2 x3 + x1 x3 is Full",
        full,
        format!("{:?}", classify_t0(&q)),
    );
    let q = p("-x1^2 + x1*x2", 2);
    match classify_t0(&q) {
        Ok(T0Class::WitnessAgainst { pair, .. }) => c.add(
            "-x1^2 + x1 x2 has a verified degree drop",
            pair.z == Grading(vec![1, 0])
                && pair.verify(&q)
                && pair.degree_drop().map_or(true, |d| d > 0),
            format!("z = {:?}, drop {:?}", pair.z.0, pair.degree_drop()),
        ),
        other => c.add(
            "-x1^2 + x1 x2 has a verified degree drop",
            false,
            format!("{other:?}"),
        ),
    }
}

fn flip_bundles(c: &mut Checks, _seed: u64) {
    let cfg = FlipSearchConfig {
        mode: ExecMode::Sequential,
        ..Default::default()
    };
    let quintic = lookup("counter2-quintic").expect("catalog entry");
    let (q, f) = (&quintic.g, &quintic.f);
    match sign_flip_witness_search(q, f, &default_z_candidates(q, f), &cfg).map(|r| r.bundle) {
        Ok(Some(b)) => {
            c.add(
                "quintic bundle at x = (5,5) / (5,-5)",
                b.x_plus == rvec(&[5, 5]) && b.x_minus == rvec(&[5, -5]),
                format!("z = {:?}", b.z.0),
            );
            let signs = [b.q_plus.sign, b.p_plus.sign, b.q_minus.sign, b.p_minus.sign];
            c.add(
                "ray signs (+, +, -, -) re-verified",
                signs == [1, 1, -1, -1] && b.verify(q, f),
                format!("{signs:?}"),
            );
        }
        other => c.add("quintic bundle", false, format!("{other:?}")),
    }
    let base = lookup("dehomog-counterexample").expect("catalog entry");
    let (g, fs) = (base.g.permute_vars(&[1, 0]), base.f.permute_vars(&[1, 0]));
    match sign_flip_witness_search(&g, &fs, &default_z_candidates(&g, &fs), &cfg).map(|r| r.bundle)
    {
        Ok(Some(b)) => c.add(
            "swapped pair bundle with 3 z2 = z1",
            b.z.0[0] == 3 * b.z.0[1] && b.verify(&g, &fs),
            format!("z = {:?}, x = {:?}", b.z.0, b.x_minus),
        ),
        other => c.add("swapped pair bundle", false, format!("{other:?}")),
    }
}

/// PSD by the definition-independent test: every principal minor is
/// nonnegative.
pub fn psd_by_principal_minors(m: &Matrix) -> bool {
    let n = m.len();
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Matrix = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| m[i][j].clone()).collect())
            .collect();
        !det(&sub).is_negative()
    })
}

fn property_suites(c: &mut Checks, seed: u64) {
    let bad = (0..500u64)
        .filter(|&i| {
            let mut rng = rng_for(seed, 10_000 + i);
            let n = rng.gen_range(1..=5);
            let m = symmetric_matrix(&mut rng, n);
            GramMatrix::new(m.clone()).expect("symmetric").is_psd() != psd_by_principal_minors(&m)
        })
        .count();
    c.add(
        "(a) is_psd agrees with principal minors",
        bad == 0,
        format!("{bad}/500 disagree"),
    );

    let bad = (0..500u64)
        .filter(|&i| {
            let mut rng = rng_for(seed, 20_000 + i);
            let n = rng.gen_range(1..=3);
            let z = Grading((0..n).map(|_| rng.gen_range(1..=4)).collect());
            let a = crate::random::polynomial(&mut rng, n, 3, 4, 5);
            let b = crate::random::polynomial(&mut rng, n, 3, 4, 5);
            if a.is_zero() || b.is_zero() {
                return false;
            }
            let lhs = (&a * &b).leading_form_z(&z).expect("nonzero");
            let rhs =
                &a.leading_form_z(&z).expect("nonzero") * &b.leading_form_z(&z).expect("nonzero");
            lhs != rhs
        })
        .count();
    c.add(
        "(b) L_z multiplicative",
        bad == 0,
        format!("{bad}/500 disagree"),
    );

    let (ok, errs) = round_trip(seed, 200, &S4Config::default());
    c.add(
        "(c) s4 round trip >= 95%",
        ok * 100 >= 95 * 200,
        format!(
            "{ok}/200 verified; first errors {:?}",
            errs.iter().take(3).collect::<Vec<_>>()
        ),
    );

    let bad = (0..200u64)
        .filter(|&i| {
            let mut rng = rng_for(seed, 30_000 + i);
            let n = rng.gen_range(1..=3);
            let q = crate::random::polynomial(&mut rng, n, 4, 5, 6);
            !q.is_zero() && q.homogenize().and_then(|h| h.dehomogenize(n)).as_ref() != Ok(&q)
        })
        .count();
    c.add(
        "(d) homogenize then dehomogenize is the identity",
        bad == 0,
        format!("{bad}/200 fail"),
    );

    let bad = (0..100u64)
        .filter(|&i| {
            let mut rng = rng_for(seed, 40_000 + i);
            let f1 = crate::random::form(&mut rng, 3, 2, 4, 4);
            let f2 = crate::random::form(&mut rng, 3, 2, 4, 4);
            let x = point(&mut rng, 3, 5, 2);
            let y = point(&mut rng, 3, 5, 2);
            !midpoint_realized_in_plane(&f1, &f2, &x, &y)
        })
        .count();
    c.add(
        "(e) quadratic joint-range midpoints realized",
        bad == 0,
        format!("{bad}/100 fail"),
    );
    let quart = lookup("convexity-quartics").expect("catalog entry");
    let cert = nonconvexity_certificate(&quart.f, &quart.g);
    c.add(
        "(e) quartic pair non-convexity certificate",
        cert.as_ref()
            .is_some_and(|w| verify_segment(&quart.f, &quart.g, w)),
        format!("{cert:?}"),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_minor_oracle() {
        assert!(psd_by_principal_minors(&vec![rvec(&[1, 1]), rvec(&[1, 1])]));
        assert!(!psd_by_principal_minors(&vec![
            rvec(&[0, 1]),
            rvec(&[1, 0])
        ]));
        assert!(!psd_by_principal_minors(&vec![
            rvec(&[0, 0]),
            rvec(&[0, -1])
        ]));
    }

    #[test]
    fn unknown_id() {
        assert!(run(0, 1).is_none() && run(11, 1).is_none());
    }
}
