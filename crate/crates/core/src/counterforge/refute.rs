//! Refuting quadratic multipliers: necessary linear conditions from
//! restrictions to curves, exact elimination, then a negativity witness for
//! the surviving candidate (or cutting planes when a family survives).

use super::linsys::{Constraint, LinearConstraintSystem, Relation, SystemStatus};
use crate::certify::nonneg::univariate_negative_point;
use crate::certify::{Verdict, Witness};
use crate::poly::{Exponent, Polynomial, UniPoly};
use crate::quadform::GramMatrix;
use crate::rational::{int, rat, serde_opt, serde_opt_vec, to_short_string, Rational};
use num_traits::{Signed, Zero};
use serde::Serialize;

/// A substitution `x_i = images[i](s)`.
#[derive(Clone, Debug, Serialize)]
pub struct RestrictionCurve {
    pub label: String,
    #[serde(skip)]
    pub images: Vec<UniPoly>,
}

impl RestrictionCurve {
    /// `x_free = s`, `x_one = 1`, all other coordinates 0.
    pub fn coordinate(n: usize, free: usize, one: usize) -> Self {
        let mut images = vec![UniPoly::zero(); n];
        images[free] = UniPoly::x();
        images[one] = UniPoly::one();
        let label = (0..n)
            .map(|i| match i {
                _ if i == free => "s",
                _ if i == one => "1",
                _ => "0",
            })
            .collect::<Vec<_>>()
            .join(",");
        RestrictionCurve {
            label: format!("({label})"),
            images,
        }
    }
}

/// Coordinate lines: those with `x_n = 1` first, then every other ordered
/// pair of coordinates.
pub fn default_curves(n: usize) -> Vec<RestrictionCurve> {
    if n < 2 {
        return Vec::new();
    }
    let last = n - 1;
    let mut pairs: Vec<(usize, usize)> = (0..last).map(|i| (i, last)).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j && !pairs.contains(&(i, j)) {
                pairs.push((i, j));
            }
        }
    }
    pairs
        .into_iter()
        .map(|(i, j)| RestrictionCurve::coordinate(n, i, j))
        .collect()
}

/// Monomials `x_i x_j` of a general quadratic form, in the order used for the
/// unknown coefficients `a_1, a_2, …`.
pub fn quadratic_monomials(n: usize) -> Vec<(usize, usize)> {
    if n == 3 {
        return vec![(0, 0), (1, 1), (0, 1), (0, 2), (1, 2), (2, 2)];
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            out.push((i, j));
        }
    }
    out
}

fn monomial_poly(n: usize, (i, j): (usize, usize)) -> Polynomial {
    let mut e = Exponent::zero(n);
    e.0[i] += 1;
    e.0[j] += 1;
    Polynomial::monomial(n, e, int(1))
}

#[derive(Clone, Debug)]
pub struct RefuteConfig {
    /// Cutting-plane rounds once elimination leaves a family.
    pub cut_rounds: usize,
    /// Integer grid radius of the first witness scan.
    pub grid_radius: i64,
    /// Univariate slices tried per witness search.
    pub slice_budget: usize,
}

impl Default for RefuteConfig {
    fn default() -> Self {
        RefuteConfig {
            cut_rounds: 40,
            grid_radius: 3,
            slice_budget: 400,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub source: String,
    pub restricted: String,
    pub derived: Vec<String>,
    /// Coefficients fixed for the first time by this step, e.g. `a1 = 1`.
    pub newly_pinned: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RefutationTrace {
    /// `a1*x1^2`, `a2*x2^2`, …
    pub unknowns: Vec<String>,
    pub steps: Vec<TraceStep>,
    pub pinned_order: Vec<String>,
    pub system: LinearConstraintSystem,
    pub status: SystemStatus,
    pub candidate: Option<Polynomial>,
    pub residual: Option<Polynomial>,
    #[serde(with = "serde_opt_vec")]
    pub witness: Option<Vec<Rational>>,
    #[serde(with = "serde_opt")]
    pub witness_value: Option<Rational>,
    pub cuts: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Refutation {
    pub verdict: Verdict,
    pub trace: RefutationTrace,
}

struct Setup {
    n: usize,
    monos: Vec<(usize, usize)>,
    mono_polys: Vec<Polynomial>,
    names: Vec<String>,
}

impl Setup {
    fn new(n: usize) -> Self {
        let monos = quadratic_monomials(n);
        let mono_polys = monos.iter().map(|&m| monomial_poly(n, m)).collect();
        let names = (1..=monos.len()).map(|k| format!("a{k}")).collect();
        Setup {
            n,
            monos,
            mono_polys,
            names,
        }
    }

    fn t_of(&self, a: &[Rational]) -> Polynomial {
        self.mono_polys
            .iter()
            .zip(a)
            .fold(Polynomial::zero(self.n), |acc, (m, c)| &acc + &m.scale(c))
    }

    fn diag_index(&self, i: usize) -> Option<usize> {
        self.monos.iter().position(|&m| m == (i, i))
    }
}

/// Necessary conditions for `Σ_k C_k s^k ≥ 0` where every `C_k` is affine
/// in the unknowns: walking down from the top and up from the bottom, odd
/// positions must vanish until the first even position, which must be
/// nonnegative.
fn univariate_conditions(coeffs: &[(Vec<Rational>, Rational)], label: &str) -> Vec<Constraint> {
    let nonzero = |k: usize| {
        let (c, d) = &coeffs[k];
        !(d.is_zero() && c.iter().all(Zero::is_zero))
    };
    let mut out = Vec::new();
    let mut walk = |order: Vec<usize>, side: &str| {
        for k in order {
            if !nonzero(k) {
                continue;
            }
            let (c, d) = coeffs[k].clone();
            let odd = k % 2 == 1;
            let rel = if odd { Relation::Eq } else { Relation::Ge };
            out.push(Constraint::new(
                c,
                d,
                rel,
                format!("{label}: {side} coefficient of s^{k}"),
            ));
            if !odd {
                break;
            }
        }
    };
    let top = coeffs.len();
    walk((0..top).rev().collect(), "leading");
    walk((0..top).collect(), "lowest");
    out
}

fn restricted_coefficients(
    setup: &Setup,
    f: &Polynomial,
    g: &Polynomial,
    curve: &RestrictionCurve,
) -> Vec<(Vec<Rational>, Rational)> {
    let fc = f.compose_univariate(&curve.images);
    let gc = g.compose_univariate(&curve.images);
    let tg: Vec<UniPoly> = setup
        .mono_polys
        .iter()
        .map(|m| &m.compose_univariate(&curve.images) * &gc)
        .collect();
    let deg = std::iter::once(fc.degree())
        .chain(tg.iter().map(UniPoly::degree))
        .flatten()
        .max();
    let Some(deg) = deg else {
        return Vec::new();
    };
    (0..=deg)
        .map(|k| (tg.iter().map(|p| -p.coeff(k)).collect(), fc.coeff(k)))
        .collect()
}

fn restricted_text(setup: &Setup, coeffs: &[(Vec<Rational>, Rational)]) -> String {
    let mut parts = Vec::new();
    for (k, (c, d)) in coeffs.iter().enumerate().rev() {
        let probe = Constraint::new(c.clone(), d.clone(), Relation::Eq, "");
        if probe.is_trivial() && d.is_zero() {
            continue;
        }
        let body = probe.display(&setup.names);
        let body = body.trim_end_matches(" = 0");
        parts.push(format!("({body})*s^{k}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Off-diagonal entries are forced to zero once a diagonal entry is pinned
/// to zero.
fn psd_propagation(setup: &Setup, sys: &mut LinearConstraintSystem) -> Vec<String> {
    let mut derived = Vec::new();
    loop {
        let pinned = sys.pinned();
        let mut added = false;
        for (var, val) in &pinned {
            let (i, j) = setup.monos[*var];
            if i != j || !val.is_zero() {
                continue;
            }
            for (k, &(p, q)) in setup.monos.iter().enumerate() {
                if p != q && (p == i || q == i) {
                    let mut c = vec![Rational::zero(); setup.monos.len()];
                    c[k] = int(1);
                    let origin = format!(
                        "t >= 0 with {} = 0 forces {} = 0",
                        setup.names[*var], setup.names[k]
                    );
                    let con = Constraint::new(c, Rational::zero(), Relation::Eq, origin);
                    let text = con.display(&setup.names);
                    if sys.push(con) {
                        derived.push(text);
                        added = true;
                    }
                }
            }
        }
        if !added {
            return derived;
        }
    }
}

fn record_pins(setup: &Setup, sys: &LinearConstraintSystem, known: &mut Vec<usize>) -> Vec<String> {
    let mut out = Vec::new();
    for (var, val) in sys.pinned() {
        if !known.contains(&var) {
            known.push(var);
            out.push(format!("{} = {}", setup.names[var], to_short_string(&val)));
        }
    }
    out
}

/// Integer points of `[-r, r]ⁿ` ordered by max-norm, then number of
/// negative entries, then lexicographically.
fn witness_grid(n: usize, r: i64) -> Vec<Vec<Rational>> {
    let mut pts: Vec<Vec<i64>> = crate::slemma::grid_points(n, r)
        .into_iter()
        .map(|p| {
            p.iter()
                .map(|v| v.to_integer().try_into().unwrap_or(0))
                .collect()
        })
        .collect();
    pts.sort_by_key(|p: &Vec<i64>| {
        (
            p.iter().map(|v| v.abs()).max().unwrap_or(0),
            p.iter().filter(|v| **v < 0).count(),
            p.clone(),
        )
    });
    pts.into_iter()
        .map(|p| p.into_iter().map(int).collect())
        .collect()
}

fn slice_values() -> Vec<Rational> {
    let mut v = vec![int(0)];
    for (n, d) in [
        (1, 1),
        (2, 1),
        (1, 2),
        (3, 1),
        (3, 2),
        (1, 3),
        (4, 1),
        (2, 3),
        (5, 1),
        (1, 4),
    ] {
        v.push(rat(n, d));
        v.push(rat(-n, d));
    }
    v
}

/// Exact search for a point where `p < 0`: an integer grid first, then
/// univariate slices through small rational points.
pub fn negative_point(
    p: &Polynomial,
    grid_radius: i64,
    slice_budget: usize,
) -> Option<Vec<Rational>> {
    let n = p.nvars();
    if let Some(x) = witness_grid(n, grid_radius)
        .into_iter()
        .find(|x| p.evaluate(x).is_negative())
    {
        return Some(x);
    }
    if n == 0 {
        return None;
    }
    let vals = slice_values();
    let mut tried = 0;
    for width in 1..=vals.len() {
        // Assignments of the other n-1 coordinates using the first `width`
        // values, at least one of them the newest.
        let others = n - 1;
        let count = width.pow(others as u32);
        for idx in 0..count {
            let mut digits = Vec::with_capacity(others);
            let mut rest = idx;
            for _ in 0..others {
                digits.push(rest % width);
                rest /= width;
            }
            if others > 0 && !digits.contains(&(width - 1)) {
                continue;
            }
            if others == 0 && width > 1 {
                return None;
            }
            for free in 0..n {
                tried += 1;
                if tried > slice_budget {
                    return None;
                }
                let mut it = digits.iter();
                let images: Vec<UniPoly> = (0..n)
                    .map(|i| {
                        if i == free {
                            UniPoly::x()
                        } else {
                            UniPoly::constant(vals[*it.next().expect("digit")].clone())
                        }
                    })
                    .collect();
                let u = p.compose_univariate(&images);
                if let Some(s) = univariate_negative_point(&u) {
                    let mut it = digits.iter();
                    let x = (0..n)
                        .map(|i| {
                            if i == free {
                                s.clone()
                            } else {
                                vals[*it.next().expect("digit")].clone()
                            }
                        })
                        .collect();
                    return Some(x);
                }
            }
        }
    }
    None
}

enum Violation {
    NotPsd(Vec<Rational>),
    Negative(Vec<Rational>),
}

fn find_violation(
    setup: &Setup,
    f: &Polynomial,
    g: &Polynomial,
    a: &[Rational],
    cfg: &RefuteConfig,
) -> Option<Violation> {
    let t = setup.t_of(a);
    let gram = crate::quadform::gram_of(&t).expect("quadratic form");
    if let Some(v) = negative_direction(&gram) {
        return Some(Violation::NotPsd(v));
    }
    let residual = f - &(&t * g);
    negative_point(&residual, cfg.grid_radius, cfg.slice_budget).map(Violation::Negative)
}

/// A vector `v` with `vᵀAv < 0`, if `A` is not PSD.
pub fn negative_direction(a: &GramMatrix) -> Option<Vec<Rational>> {
    let d = a.diagonalize();
    let n = a.n();
    for k in 0..n {
        if d.diagonal[k].is_negative() {
            let v: Vec<Rational> = (0..n).map(|i| d.congruence[i][k].clone()).collect();
            if a.quad(&v).is_negative() {
                return Some(v);
            }
        }
    }
    // Zero pivots with a nonzero coupling also break semidefiniteness.
    (0..n).find_map(|i| {
        (0..n).find_map(|j| {
            if i == j || a.get(i, j).is_zero() || !a.get(i, i).is_zero() {
                return None;
            }
            let mut v = vec![Rational::zero(); n];
            v[i] = -a.get(i, j) * int(2) - a.get(j, j).abs() - int(1);
            v[j] = int(1);
            a.quad(&v).is_negative().then_some(v)
        })
    })
}

fn cut_for(setup: &Setup, f: &Polynomial, g: &Polynomial, v: &Violation) -> Constraint {
    match v {
        Violation::NotPsd(v) => {
            let c = setup.mono_polys.iter().map(|m| m.evaluate(v)).collect();
            Constraint::new(
                c,
                Rational::zero(),
                Relation::Ge,
                format!("t({}) >= 0", point_text(v)),
            )
        }
        Violation::Negative(y) => {
            let gy = g.evaluate(y);
            let c = setup
                .mono_polys
                .iter()
                .map(|m| -(m.evaluate(y) * &gy))
                .collect();
            Constraint::new(
                c,
                f.evaluate(y),
                Relation::Ge,
                format!("(f - t*g)({}) >= 0", point_text(y)),
            )
        }
    }
}

fn point_text(x: &[Rational]) -> String {
    x.iter().map(to_short_string).collect::<Vec<_>>().join(",")
}

/// Tries to prove that no quadratic form `t ≥ 0` makes `f - t·g` globally
/// nonnegative. Every derived constraint is necessary, so `Proved` is sound;
/// a surviving candidate yields `Unknown`.
pub fn refute_quadratic_multiplier(
    f: &Polynomial,
    g: &Polynomial,
    curves: &[RestrictionCurve],
    cfg: &RefuteConfig,
) -> Refutation {
    assert_eq!(f.nvars(), g.nvars(), "f and g share variables");
    let setup = Setup::new(f.nvars());
    let m = setup.monos.len();
    let mut sys = LinearConstraintSystem::new(setup.names.clone());
    let mut steps = Vec::new();
    let mut pinned_order = Vec::new();

    let mut psd = Vec::new();
    for i in 0..setup.n {
        let k = setup.diag_index(i).expect("diagonal monomial");
        let mut c = vec![Rational::zero(); m];
        c[k] = int(1);
        let con = Constraint::new(
            c,
            Rational::zero(),
            Relation::Ge,
            format!("t(e{}) >= 0", i + 1),
        );
        psd.push(con.display(&setup.names));
        sys.push(con);
    }
    steps.push(TraceStep {
        source: "diagonal of t".into(),
        restricted: String::new(),
        derived: psd,
        newly_pinned: Vec::new(),
    });

    for curve in curves {
        let coeffs = restricted_coefficients(&setup, f, g, curve);
        let mut derived = Vec::new();
        for con in univariate_conditions(&coeffs, &curve.label) {
            let text = con.display(&setup.names);
            if sys.push(con) {
                derived.push(text);
            }
        }
        let newly_pinned = record_pins(&setup, &sys, &mut pinned_order);
        steps.push(TraceStep {
            source: format!("f - t*g on {}", curve.label),
            restricted: restricted_text(&setup, &coeffs),
            derived,
            newly_pinned: newly_pinned.clone(),
        });
        let forced = psd_propagation(&setup, &mut sys);
        if !forced.is_empty() {
            let newly_pinned = record_pins(&setup, &sys, &mut pinned_order);
            steps.push(TraceStep {
                source: "t >= 0".into(),
                restricted: String::new(),
                derived: forced,
                newly_pinned,
            });
        }
    }

    let mut trace = RefutationTrace {
        unknowns: setup
            .names
            .iter()
            .zip(&setup.mono_polys)
            .map(|(a, p)| format!("{a}*{p}"))
            .collect(),
        steps,
        pinned_order: pinned_order
            .iter()
            .map(|&v| setup.names[v].to_string())
            .collect(),
        status: sys.decide(),
        system: sys,
        candidate: None,
        residual: None,
        witness: None,
        witness_value: None,
        cuts: 0,
    };

    loop {
        match trace.status.clone() {
            SystemStatus::Infeasible { reason } => {
                let verdict = Verdict::proved(format!(
                    "the necessary conditions on t are inconsistent: {reason}"
                ));
                return Refutation { verdict, trace };
            }
            SystemStatus::Undecided { dimension } => {
                let verdict = Verdict::unknown(format!(
                    "elimination over {dimension} free coefficients exceeded its budget"
                ));
                return Refutation { verdict, trace };
            }
            SystemStatus::Unique { values } => {
                let t = setup.t_of(&values);
                let residual = f - &(&t * g);
                trace.candidate = Some(t.clone());
                trace.residual = Some(residual.clone());
                let gram = crate::quadform::gram_of(&t).expect("quadratic form");
                if let Some(v) = negative_direction(&gram) {
                    let val = t.evaluate(&v);
                    trace.witness = Some(v.clone());
                    trace.witness_value = Some(val.clone());
                    let reason = format!(
                        "the only candidate t = {t} is negative at ({}): {}",
                        point_text(&v),
                        to_short_string(&val)
                    );
                    return Refutation {
                        verdict: proved_with(reason, v),
                        trace,
                    };
                }
                if let Some(y) = negative_point(&residual, cfg.grid_radius, cfg.slice_budget) {
                    let val = residual.evaluate(&y);
                    trace.witness = Some(y.clone());
                    trace.witness_value = Some(val.clone());
                    let reason = format!(
                        "the only candidate t = {t} leaves f - t*g = {residual}, which is {} at ({})",
                        to_short_string(&val),
                        point_text(&y)
                    );
                    return Refutation {
                        verdict: proved_with(reason, y),
                        trace,
                    };
                }
                let verdict = Verdict::unknown(format!(
                    "the unique candidate t = {t} survived the witness search"
                ));
                return Refutation { verdict, trace };
            }
            SystemStatus::Family { dimension, sample } => {
                if trace.cuts >= cfg.cut_rounds {
                    let verdict = Verdict::unknown(format!(
                        "a {dimension}-dimensional family of candidates survives {} cuts",
                        trace.cuts
                    ));
                    return Refutation { verdict, trace };
                }
                let Some(v) = find_violation(&setup, f, g, &sample, cfg) else {
                    let verdict = Verdict::unknown(format!(
                        "candidate t = {} passed every check; it may be a valid multiplier",
                        setup.t_of(&sample)
                    ));
                    trace.candidate = Some(setup.t_of(&sample));
                    return Refutation { verdict, trace };
                };
                let cut = cut_for(&setup, f, g, &v);
                trace.cuts += 1;
                trace.steps.push(TraceStep {
                    source: format!("cut {}", trace.cuts),
                    restricted: String::new(),
                    derived: vec![cut.display(&setup.names)],
                    newly_pinned: Vec::new(),
                });
                trace.system.push(cut);
                trace.status = trace.system.decide();
            }
        }
    }
}

fn proved_with(reason: String, x: Vec<Rational>) -> Verdict {
    let mut v = Verdict::proved(reason);
    v.witness = Some(Witness::point(x));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::VerdictKind;
    use crate::poly::parse;
    use crate::rational::rvec;

    fn ternary() -> (Polynomial, Polynomial) {
        (
            parse("x1^3*x3 + x1^3*x2 + x2^2*x3^2", 3).unwrap(),
            parse("x1*x3 + x2*x3 + x1*x2", 3).unwrap(),
        )
    }

    #[test]
    fn ternary_elimination() {
        let (f, g) = ternary();
        let r = refute_quadratic_multiplier(&f, &g, &default_curves(3), &RefuteConfig::default());
        assert_eq!(r.verdict.kind, VerdictKind::Proved, "{}", r.verdict.reason);
        assert_eq!(r.trace.pinned_order, ["a1", "a6", "a4", "a5", "a2", "a3"]);
        assert_eq!(r.trace.candidate, Some(parse("x1^2", 3).unwrap()));
        assert_eq!(
            r.trace.residual,
            Some(parse("-x1^2*x2*x3 + x2^2*x3^2", 3).unwrap())
        );
        assert_eq!(r.trace.witness, Some(rvec(&[2, 1, 1])));
        assert_eq!(r.trace.witness_value, Some(int(-3)));
        assert_eq!(r.trace.steps[1].newly_pinned, ["a1 = 1", "a6 = 0"]);
        assert!(r.trace.steps[1].derived.contains(&"-a4 >= 0".to_string()));
    }

    #[test]
    fn never_refutes_a_nonnegative_f() {
        let g = parse("x1*x3 + x2*x3 + x1*x2", 3).unwrap();
        for f in ["x1^4 + x2^4 + x3^4", "x1^2*x2^2 + x3^4", "0"] {
            let f = parse(f, 3).unwrap();
            let r =
                refute_quadratic_multiplier(&f, &g, &default_curves(3), &RefuteConfig::default());
            assert_ne!(r.verdict.kind, VerdictKind::Proved, "{f}");
        }
        // f = x3^2 * g + x1^4 has the multiplier x3^2.
        let f = &(&parse("x3^2", 3).unwrap() * &g) + &parse("x1^4", 3).unwrap();
        let r = refute_quadratic_multiplier(&f, &g, &default_curves(3), &RefuteConfig::default());
        assert_ne!(r.verdict.kind, VerdictKind::Proved);
    }

    #[test]
    fn negative_directions() {
        let a = GramMatrix::new(vec![rvec(&[0, 1]), rvec(&[1, 0])]).unwrap();
        let v = negative_direction(&a).unwrap();
        assert!(a.quad(&v).is_negative());
        assert!(negative_direction(&GramMatrix::identity(3)).is_none());
    }

    #[test]
    fn curve_order() {
        let labels: Vec<String> = default_curves(3).into_iter().map(|c| c.label).collect();
        assert_eq!(labels[..2], ["(s,0,1)", "(0,s,1)"]);
        assert_eq!(labels.len(), 6);
    }
}
