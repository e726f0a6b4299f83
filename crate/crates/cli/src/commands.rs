//! Subcommand bodies. Each returns a [`Report`]; errors become exit code 1.

use crate::report::{parse_grading, parse_polys, parse_slater, read_certificate, Report};
use anyhow::{anyhow, bail, Result};
use slemma_kit::certify::convexity::joint_range_convexity_probe;
use slemma_kit::certify::{inclusion_check, SamplingConfig, Verdict, VerdictKind, Witness};
use slemma_kit::counterforge::{
    self, blonk_instance, catalog, default_curves, find_working_epsilon, lookup, nongeom_verify,
    refute_even_degree_multiplier, refute_quadratic_multiplier, tower, EpsilonScanConfig,
    NamedInstance, Refutation, RefuteConfig,
};
use slemma_kit::par::ExecMode;
use slemma_kit::poly::{Degree, Polynomial};
use slemma_kit::rational::{int, parse_rational, rat, to_short_string, Rational};
use slemma_kit::s4solve::{nonpositive_g_guard, s4, MultiplierCertificate, S4Config, S4Error};
use slemma_kit::slemma::{
    affine_slemma, find_slater_point, homogeneous_slemma, no_constant_multiplier,
    ScalarCertificate, SlemmaOutcome,
};
use slemma_kit::stability::{
    classify_t0, default_z_candidates, density_witness, sign_flip_witness_search, FlipSearchConfig,
    FlipSearchResult, T0Class,
};
use std::path::Path;

fn disproved_without_witness(reason: String) -> Verdict {
    Verdict {
        kind: VerdictKind::Disproved,
        witness: None,
        reason,
    }
}

fn checked(ok: bool, what: &str) -> Verdict {
    if ok {
        Verdict::proved(format!("{what} re-verified exactly"))
    } else {
        disproved_without_witness(format!("{what} failed exact re-verification"))
    }
}

fn slater_or_search(text: Option<&str>, g: &Polynomial) -> Result<Option<Vec<Rational>>> {
    match text {
        Some(t) => parse_slater(t, g.nvars()).map(Some),
        None => Ok(find_slater_point(g)),
    }
}

fn is_quadratic_form(p: &Polynomial) -> bool {
    p.is_zero() || (p.is_homogeneous() && p.total_degree() == Degree::Finite(2))
}

pub fn slemma(
    f: &str,
    g: &str,
    affine: bool,
    slater: Option<&str>,
    verify_only: Option<&Path>,
    sampling: &SamplingConfig,
) -> Result<Report> {
    let ps = parse_polys(&[("f", f), ("g", g)], 0)?;
    let (f, g) = (&ps[0], &ps[1]);
    let homogeneous = !affine && is_quadratic_form(f) && is_quadratic_form(g);
    let base = Report::new("slemma", Verdict::unknown(""))
        .input("f", f)
        .input("g", g);
    if let Some(path) = verify_only {
        let cert: ScalarCertificate = read_certificate(path)?;
        let ok = if homogeneous {
            cert.verify_homogeneous(f, g)
        } else {
            cert.verify_affine(f, g)
        };
        return Ok(Report {
            verdict: checked(ok, "scalar certificate"),
            ..base
        }
        .certificate(&cert));
    }
    let Some(s) = slater_or_search(slater, g)? else {
        bail!("g takes no positive value on the search grid; pass a Slater point with --slater");
    };
    let res = if homogeneous {
        homogeneous_slemma(f, g, &s, sampling)?
    } else {
        affine_slemma(f, g, &s, sampling)?
    };
    let verdict = match &res.outcome {
        SlemmaOutcome::Certificate(c) => Verdict::proved(format!(
            "f - {}*g is nonnegative, certified by a congruence diagonalization",
            to_short_string(&c.t)
        )),
        SlemmaOutcome::BoundaryOnly => {
            Verdict::unknown("the only feasible multiplier is irrational")
        }
        SlemmaOutcome::Refutation {
            witness: Some(w),
            reason,
        } => Verdict::disproved(Witness::point(w.clone()), reason.clone()),
        SlemmaOutcome::Refutation {
            witness: None,
            reason,
        } => Verdict::unknown(reason.clone()),
    };
    let trace = vec![
        format!("Slater point ({})", point_text(&s)),
        format!(
            "{} problem",
            if homogeneous { "homogeneous" } else { "affine" }
        ),
        format!("feasible multipliers: {}", res.feasible),
    ];
    Ok(Report {
        verdict,
        ..base.input("slater", point_text(&s))
    }
    .certificate(&res)
    .trace(trace))
}

pub fn no_constant(f: &str, g: &str, ts: Option<&str>) -> Result<Report> {
    let ps = parse_polys(&[("f", f), ("g", g)], 0)?;
    let ts: Vec<Rational> = match ts {
        Some(t) => t
            .split(',')
            .map(|s| parse_rational(s).map_err(|e| anyhow!("--t {s:?}: {e}")))
            .collect::<Result<_>>()?,
        None => vec![int(1), rat(1, 100)],
    };
    let rep = no_constant_multiplier(&ps[0], &ps[1], &ts);
    let trace = rep
        .instances
        .iter()
        .flat_map(|i| {
            std::iter::once(format!("t = {}:", to_short_string(&i.t)))
                .chain(i.chain.iter().map(|c| format!("  {c}")))
        })
        .collect::<Vec<_>>();
    Ok(
        Report::new("slemma no-constant-multiplier", rep.verdict.clone())
            .input("f", &ps[0])
            .input("g", &ps[1])
            .certificate(&rep)
            .trace(trace),
    )
}

fn point_text(x: &[Rational]) -> String {
    x.iter().map(to_short_string).collect::<Vec<_>>().join(",")
}

pub fn s4_cmd(
    f: &str,
    g: &str,
    slater: Option<&str>,
    verify_only: Option<&Path>,
    cfg: &S4Config,
) -> Result<Report> {
    let ps = parse_polys(&[("f", f), ("g", g)], 0)?;
    let (f, g) = (&ps[0], &ps[1]);
    let base = Report::new("s4", Verdict::unknown(""))
        .input("f", f)
        .input("g", g);
    if let Some(path) = verify_only {
        let cert: MultiplierCertificate = read_certificate(path)?;
        return Ok(Report {
            verdict: checked(cert.verify(f, g), "multiplier certificate"),
            ..base
        }
        .certificate(&cert));
    }
    let Some(s) = slater_or_search(slater, g)? else {
        let verdict = nonpositive_g_guard(f, g);
        return Ok(Report { verdict, ..base });
    };
    let base = base.input("slater", point_text(&s));
    match s4(f, g, &s, cfg) {
        Ok(cert) => {
            let trace = vec![
                format!("case {:?}", cert.case),
                format!("t = {}", cert.t),
                format!("f - t*g = {}", cert.residual),
                format!("t >= 0: {}", cert.t_evidence.reason),
                format!("f - t*g >= 0: {}", cert.residual_evidence.reason),
            ];
            let verdict =
                Verdict::proved(format!("f = t*g + r with t = {} and r nonnegative", cert.t));
            Ok(Report { verdict, ..base }.certificate(&cert).trace(trace))
        }
        Err(S4Error::InclusionFails(why)) => Ok(Report {
            verdict: disproved_without_witness(format!("S(g) is not contained in S(f): {why}")),
            ..base
        }),
        Err(e @ S4Error::PrecisionCeiling { .. }) => Ok(Report {
            verdict: Verdict::unknown(e.to_string()),
            ..base
        }),
        Err(e) => Err(e.into()),
    }
}

pub fn check_inclusion(f: &str, g: &str, sampling: &SamplingConfig) -> Result<Report> {
    let ps = parse_polys(&[("f", f), ("g", g)], 0)?;
    let v = inclusion_check(&ps[1], &ps[0], sampling);
    Ok(Report::new("check-inclusion", v)
        .input("f", &ps[0])
        .input("g", &ps[1]))
}

pub fn stability_classify(q: &str) -> Result<Report> {
    let q = parse_polys(&[("q", q)], 0)?.remove(0);
    let class = classify_t0(&q)?;
    let verdict = match &class {
        T0Class::Full => Verdict::proved("the diagonal of q is nonnegative, so T0(q) is full"),
        T0Class::WitnessAgainst { index, pair } => disproved_without_witness(format!(
            "a_{0}{0} < 0: sigma0 + sigma1*q drops z-degree from {1} to {2}",
            index + 1,
            pair.product_degree,
            pair.sum_degree
                .map_or("-inf".to_string(), |d| d.to_string())
        )),
    };
    Ok(Report::new("stability classify", verdict)
        .input("q", &q)
        .certificate(&class))
}

pub fn stability_density(
    gens: &[String],
    z: &str,
    budget: usize,
    mode: ExecMode,
) -> Result<Report> {
    let named: Vec<(&str, &str)> = gens.iter().map(|g| ("gen", g.as_str())).collect();
    let ps = parse_polys(&named, 0)?;
    let z = parse_grading(z)?;
    let res = density_witness(&ps, &z, budget, mode)?;
    let mut r =
        Report::new("stability dense", res.verdict.clone()).input("z", format!("{:?}", z.0));
    for (i, p) in ps.iter().enumerate() {
        r = r.input(&format!("gen{}", i + 1), p);
    }
    let leads = res
        .leading_forms
        .iter()
        .map(|l| format!("leading form {l}"))
        .collect::<Vec<_>>();
    Ok(r.certificate(&res.witness).trace(leads))
}

pub fn stability_flip(q: &str, p: &str, z: Option<&str>, mode: ExecMode) -> Result<Report> {
    let ps = parse_polys(&[("q", q), ("p", p)], 0)?;
    let zs = match z {
        Some(z) => vec![parse_grading(z)?],
        None => default_z_candidates(&ps[0], &ps[1]),
    };
    let cfg = FlipSearchConfig {
        mode,
        ..Default::default()
    };
    let res = sign_flip_witness_search(&ps[0], &ps[1], &zs, &cfg)?;
    Ok(Report::new("stability no-multiplier", res.verdict.clone())
        .input("q", &ps[0])
        .input("p", &ps[1])
        .certificate(&res.bundle)
        .trace([format!(
            "{} of {} gradings tried",
            res.candidates_tried,
            zs.len()
        )]))
}

pub fn counter_list() -> Report {
    let cat = catalog();
    let trace = cat
        .iter()
        .map(|i| format!("{}: {}", i.name, i.description))
        .collect::<Vec<_>>();
    Report::new(
        "counter list",
        Verdict::proved(format!("{} instances", cat.len())),
    )
    .certificate(&cat)
    .trace(trace)
}

fn refutation_trace(r: &Refutation) -> Vec<String> {
    let mut out = Vec::new();
    for s in &r.trace.steps {
        let mut line = s.source.clone();
        if !s.restricted.is_empty() {
            line.push_str(&format!(": {}", s.restricted));
        }
        if !s.derived.is_empty() {
            line.push_str(&format!(" => {}", s.derived.join("; ")));
        }
        if !s.newly_pinned.is_empty() {
            line.push_str(&format!(" [pinned {}]", s.newly_pinned.join(", ")));
        }
        out.push(line);
    }
    if let Some(res) = &r.trace.residual {
        out.push(format!("residual f - t*g = {res}"));
    }
    out
}

fn with_instance(r: Report, inst: &NamedInstance) -> Report {
    r.input("instance", &inst.name)
        .input("f", &inst.f)
        .input("g", &inst.g)
}

pub fn counter_verify(name: &str, cfg: &EpsilonScanConfig) -> Result<Report> {
    let command = "counter verify";
    if name == "ternary-perturbed" {
        return counter_scan(cfg);
    }
    let inst = lookup(name)?;
    let report = match name {
        "nongeom" => {
            let r = nongeom_verify()?;
            let mut trace = r.steps.clone();
            trace.push(format!("r2 matches the expected form: {}", r.r2_expected));
            trace.push(format!("r3 matches the expected form: {}", r.r3_expected));
            Report::new(command, r.verdict.clone())
                .certificate(&r.remainders)
                .trace(trace)
        }
        "l3.1" => {
            let rep = no_constant_multiplier(&inst.f, &inst.g, &[int(1), rat(1, 100)]);
            Report::new(command, rep.verdict.clone()).certificate(&rep)
        }
        "convexity-quartics" => {
            let probe = joint_range_convexity_probe(
                &inst.f,
                &inst.g,
                cfg.sampling.budget.min(256),
                cfg.sampling.seed,
            )?;
            // The claim is non-convexity, so a certified violation proves it.
            let verdict = match probe.verdict.kind {
                VerdictKind::Disproved => Verdict {
                    kind: VerdictKind::Proved,
                    ..probe.verdict.clone()
                },
                _ => Verdict::unknown(probe.verdict.reason.clone()),
            };
            Report::new(command, verdict)
                .certificate(&probe.verdict.witness)
                .trace([format!(
                    "{}/{} sampled midpoints realized in their plane",
                    probe.midpoints_realized, probe.pairs_tested
                )])
        }
        _ if inst.nvars == 3 => {
            let r = refute_quadratic_multiplier(&inst.f, &inst.g, &default_curves(3), &cfg.refute);
            let trace = refutation_trace(&r);
            Report::new(command, r.verdict.clone())
                .certificate(&r.trace)
                .trace(trace)
        }
        _ => {
            let fc = FlipSearchConfig {
                mode: cfg.sampling.mode,
                ..Default::default()
            };
            let (res, trace) = flip_either_order(&inst.g, &inst.f, &fc)?;
            Report::new(command, res.verdict.clone())
                .certificate(&res.bundle)
                .trace(trace)
        }
    };
    Ok(with_instance(report, &inst))
}

/// Runs the sign-flip search and, when it finds nothing, repeats it with the
/// variables in reverse order; gradings must weight the first variable most.
fn flip_either_order(
    g: &Polynomial,
    f: &Polynomial,
    cfg: &FlipSearchConfig,
) -> Result<(FlipSearchResult, Vec<String>)> {
    let res = sign_flip_witness_search(g, f, &default_z_candidates(g, f), cfg)?;
    if res.bundle.is_some() {
        return Ok((res, Vec::new()));
    }
    let perm: Vec<usize> = (0..g.nvars()).rev().collect();
    let (g2, f2) = (g.permute_vars(&perm), f.permute_vars(&perm));
    let res2 = sign_flip_witness_search(&g2, &f2, &default_z_candidates(&g2, &f2), cfg)?;
    if res2.bundle.is_none() {
        return Ok((res, Vec::new()));
    }
    let note = vec![
        "no bundle with the variables in the given order".to_string(),
        format!("bundle found after reversing the variables: g = {g2}, f = {f2}"),
    ];
    Ok((res2, note))
}

pub fn counter_scan(cfg: &EpsilonScanConfig) -> Result<Report> {
    let base = lookup("ternary-counterexample")?;
    let line = |a: &counterforge::EpsilonAttempt| {
        format!(
            "eps = {}: inclusion {:?}, refutation {:?}: {}",
            to_short_string(&a.epsilon),
            a.inclusion,
            a.refutation,
            a.reason
        )
    };
    Ok(match find_working_epsilon(&base, cfg) {
        Ok(scan) => {
            let trace = scan
                .attempts
                .iter()
                .map(line)
                .chain(refutation_trace(&scan.refutation))
                .collect::<Vec<_>>();
            let verdict = Verdict {
                reason: format!(
                    "eps = {}: {}",
                    to_short_string(&scan.epsilon),
                    scan.refutation.verdict.reason
                ),
                ..scan.refutation.verdict.clone()
            };
            with_instance(Report::new("counter verify", verdict), &scan.instance)
                .input("epsilon", to_short_string(&scan.epsilon))
                .certificate(&scan.refutation.trace)
                .trace(trace)
        }
        Err((e, attempts)) => Report::new("counter verify", Verdict::unknown(e.to_string()))
            .input("instance", "ternary-perturbed")
            .trace(attempts.iter().map(line)),
    })
}

pub fn counter_tower(levels: u32) -> Report {
    let t = tower(levels);
    let trace = t
        .iter()
        .map(|l| {
            format!(
                "level {}: f = {}, g = {}, multiplicities ({}, {}), degrees ({}, {}), closed forms match: f {:?}, g {:?}",
                l.index,
                l.f_poly,
                l.g_poly,
                l.exceptional_mult_f,
                l.exceptional_mult_g,
                l.deg_f,
                l.deg_g,
                l.f_matches_closed_form,
                l.g_matches_closed_form
            )
        })
        .collect::<Vec<_>>();
    Report::new(
        "counter tower",
        Verdict::proved(format!("{levels} blow-up levels computed")),
    )
    .input("levels", levels)
    .certificate(&t)
    .trace(trace)
}

pub fn counter_blonk(d: i64) -> Result<Report> {
    let b = blonk_instance(d)?;
    let verdict = if b.degrees_match {
        Verdict::proved(format!(
            "level {} has degrees ({}, {})",
            b.level, b.deg_f, b.deg_g
        ))
    } else {
        Verdict::unknown(format!(
            "level {} has degrees ({}, {}), not ({d}, {})",
            b.level, b.deg_f, b.deg_g, b.nu
        ))
    };
    Ok(
        with_instance(Report::new("counter blonk", verdict), &b.instance)
            .input("d", d)
            .certificate(&b),
    )
}

pub fn counter_even_degree(t: &str) -> Result<Report> {
    let inst = lookup("ternary-counterexample")?;
    let t = parse_polys(&[("t", t)], 3)?.remove(0);
    if t.nvars() != 3 {
        bail!("--t must be a polynomial in x1, x2, x3");
    }
    let r = refute_even_degree_multiplier(&inst.f, &inst.g, &t);
    Ok(
        with_instance(Report::new("counter even-degree", r.verdict.clone()), &inst)
            .input("t", &t)
            .certificate(&r)
            .trace(r.argument.clone()),
    )
}

pub fn scan_config(sampling: SamplingConfig) -> EpsilonScanConfig {
    EpsilonScanConfig {
        sampling,
        refute: RefuteConfig::default(),
        ..Default::default()
    }
}
