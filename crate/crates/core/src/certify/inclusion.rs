//! Testing `S(g) ⊆ S(f)` where `S(h) = {x : h(x) >= 0}`.
//!
//! One variable and pairs of binary forms are decided exactly. Everything
//! else is a seeded falsifier: it can only disprove.

use super::nonneg::{small_candidates, univariate_negative_point};
use super::roots::{cauchy_bound, isolate_real_roots};
use super::verdict::{Verdict, Witness};
use crate::par::{find_first, ExecMode};
use crate::poly::{Polynomial, UniPoly};
use crate::random::rng_for;
use crate::rational::{int, rat, to_short_string, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Budget and seed for the sampling falsifier.
#[derive(Clone, Debug)]
pub struct SamplingConfig {
    /// Number of sample indices tried.
    pub budget: usize,
    pub seed: u64,
    /// Initial box half-width; doubled in each of four rounds.
    pub box_half_width: Rational,
    pub mode: ExecMode,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            budget: 4000,
            seed: 0,
            box_half_width: int(4),
            mode: ExecMode::default(),
        }
    }
}

impl SamplingConfig {
    pub fn with_seed(seed: u64) -> Self {
        SamplingConfig {
            seed,
            ..Self::default()
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_mode(mut self, mode: ExecMode) -> Self {
        self.mode = mode;
        self
    }
}

/// `g(x) >= 0` and `f(x) < 0`.
pub fn violates(g: &Polynomial, f: &Polynomial, x: &[Rational]) -> bool {
    !g.evaluate(x).is_negative() && f.evaluate(x).is_negative()
}

fn witness_verdict(g: &Polynomial, f: &Polynomial, x: Vec<Rational>, how: &str) -> Verdict {
    let gv = g.evaluate(&x);
    let fv = f.evaluate(&x);
    Verdict::disproved(
        Witness::point(x),
        format!(
            "{how}: g = {} >= 0 but f = {} < 0",
            to_short_string(&gv),
            to_short_string(&fv)
        ),
    )
}

pub(crate) enum UniInclusion {
    Holds,
    Witness(Rational),
    /// The only violations sit at isolated irrational points of `S(g)`.
    IsolatedIrrational,
}

/// Exact inclusion test in one variable.
pub(crate) fn univariate_inclusion(g: &UniPoly, f: &UniPoly) -> UniInclusion {
    if f.is_zero() {
        return UniInclusion::Holds;
    }
    if g.is_zero() {
        return match univariate_negative_point(f) {
            Some(x) => UniInclusion::Witness(x),
            None => UniInclusion::Holds,
        };
    }
    let bad = |x: &Rational| !g.eval(x).is_negative() && f.eval(x).is_negative();
    let fg = f * g;
    let b = cauchy_bound(&fg).max(int(2));
    if let Some(x) = small_candidates(&b).find(|x| bad(x)) {
        return UniInclusion::Witness(x);
    }
    // f and g both keep a constant sign on every cell between roots of f·g.
    let mut iso = isolate_real_roots(&fg);
    if let Some(x) = iso.cell_samples().into_iter().find(|x| bad(x)) {
        return UniInclusion::Witness(x);
    }
    let mut isolated = false;
    for r in iso.roots.iter_mut() {
        if let Some(m) = r.exact() {
            if bad(m) {
                return UniInclusion::Witness(m.clone());
            }
        } else if r.sign_of(g) >= 0 && r.sign_of(f) < 0 {
            isolated = true;
        }
    }
    if isolated {
        UniInclusion::IsolatedIrrational
    } else {
        UniInclusion::Holds
    }
}

/// `(1 - u², 2u)`: hits every direction of the plane except `(-1, 0)`.
fn circle_images() -> [UniPoly; 2] {
    [UniPoly::from_ints(&[1, 0, -1]), UniPoly::from_ints(&[0, 2])]
}

fn binary_inclusion(g: &Polynomial, f: &Polynomial) -> Verdict {
    let origin = vec![Rational::zero(); 2];
    if violates(g, f, &origin) {
        return witness_verdict(g, f, origin, "origin");
    }
    let west = vec![-Rational::one(), Rational::zero()];
    if violates(g, f, &west) {
        return witness_verdict(g, f, west, "direction (-1, 0)");
    }
    let imgs = circle_images();
    let gu = g.compose_univariate(&imgs);
    let fu = f.compose_univariate(&imgs);
    match univariate_inclusion(&gu, &fu) {
        UniInclusion::Holds => Verdict::proved("sign table of the circle parametrization"),
        UniInclusion::Witness(u) => {
            let x = vec![Rational::one() - &u * &u, int(2) * &u];
            witness_verdict(g, f, x, "circle parametrization")
        }
        UniInclusion::IsolatedIrrational => Verdict::unknown(
            "inclusion fails only along isolated irrational directions; no rational witness exists",
        ),
    }
}

fn random_coord(rng: &mut impl Rng, half_width: i64) -> Rational {
    let den: i64 = rng.gen_range(1..=4);
    let num = rng.gen_range(-half_width * den..=half_width * den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

// Points near V(g) along a random line through a random base point.
fn boundary_candidates(g: &Polynomial, rng: &mut impl Rng, half_width: i64) -> Vec<Vec<Rational>> {
    let n = g.nvars();
    let base: Vec<Rational> = (0..n).map(|_| random_coord(rng, half_width)).collect();
    let mut dir: Vec<Rational> = (0..n).map(|_| int(rng.gen_range(-3..=3))).collect();
    if dir.iter().all(Zero::is_zero) {
        dir[0] = int(1);
    }
    let line = g.restrict_to_line(&base, &dir);
    if line.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let step = rat(1, 64);
    let mut ss = Vec::new();
    for r in isolate_real_roots(&line).roots.iter_mut().take(6) {
        match r.exact() {
            Some(m) => ss.extend([m.clone(), m - &step, m + &step]),
            None => {
                r.refine_to(&step);
                ss.extend([r.lo().clone(), r.hi().clone()]);
            }
        }
    }
    ss.into_iter()
        .map(|s| base.iter().zip(&dir).map(|(b, d)| b + &s * d).collect())
        .collect()
}

/// Deterministic sampling falsifier. Returns the witness with the lowest
/// sample index, independent of the thread count.
pub fn sample_violation(
    g: &Polynomial,
    f: &Polynomial,
    cfg: &SamplingConfig,
) -> Option<(usize, Vec<Rational>)> {
    let n = g.nvars();
    let rounds = 4usize;
    let per_round = cfg.budget.div_ceil(rounds).max(1);
    let b0 = cfg
        .box_half_width
        .ceil()
        .to_integer()
        .to_i64()
        .unwrap_or(4)
        .max(1);
    find_first(cfg.mode, cfg.budget, |i| {
        let mut rng = rng_for(cfg.seed, i as u64);
        let hw = b0 << (i / per_round).min(rounds - 1);
        let cands = if i % 4 == 3 {
            boundary_candidates(g, &mut rng, hw)
        } else {
            vec![(0..n).map(|_| random_coord(&mut rng, hw)).collect()]
        };
        cands.into_iter().find(|x| violates(g, f, x))
    })
}

/// Decide or falsify `S(g) ⊆ S(f)`.
pub fn inclusion_check(g: &Polynomial, f: &Polynomial, cfg: &SamplingConfig) -> Verdict {
    if g.nvars() != f.nvars() {
        return Verdict::unknown(format!(
            "variable counts differ ({} vs {})",
            g.nvars(),
            f.nvars()
        ));
    }
    let n = g.nvars();
    if n == 1 {
        let gu = g.to_univariate().expect("one variable");
        let fu = f.to_univariate().expect("one variable");
        return match univariate_inclusion(&gu, &fu) {
            UniInclusion::Holds => Verdict::proved("sign table over the real roots of f·g"),
            UniInclusion::Witness(x) => witness_verdict(g, f, vec![x], "sign table"),
            UniInclusion::IsolatedIrrational => Verdict::unknown(
                "inclusion fails only at isolated irrational points; no rational witness exists",
            ),
        };
    }
    if n == 2 && g.is_homogeneous() && f.is_homogeneous() {
        return binary_inclusion(g, f);
    }
    if n == 0 {
        let x: Vec<Rational> = vec![];
        return if violates(g, f, &x) {
            witness_verdict(g, f, x, "constants")
        } else {
            Verdict::proved("constants")
        };
    }
    match sample_violation(g, f, cfg) {
        Some((i, x)) => witness_verdict(g, f, x, &format!("sample {i} (seed {})", cfg.seed)),
        None => Verdict::unknown(format!(
            "no counterexample among {} samples (seed {})",
            cfg.budget, cfg.seed
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::VerdictKind;
    use crate::poly::parse;

    fn p(s: &str, n: usize) -> Polynomial {
        parse(s, n).unwrap()
    }

    #[test]
    fn binary_exact_path() {
        let v = inclusion_check(
            &p("x1^2 - x2^2", 2),
            &p("x1^4 - x2^4", 2),
            &SamplingConfig::default(),
        );
        assert_eq!(v.kind, VerdictKind::Proved);
        let v = inclusion_check(
            &p("x1^2 - x2^2", 2),
            &p("x1^3*x2 - x1^2*x2^2", 2),
            &SamplingConfig::default(),
        );
        assert!(v.is_disproved());
        let y = v.witness_point().unwrap();
        assert!(violates(
            &p("x1^2 - x2^2", 2),
            &p("x1^3*x2 - x1^2*x2^2", 2),
            y
        ));
    }

    #[test]
    fn univariate_path() {
        let v = inclusion_check(&p("x1", 1), &p("-x1", 1), &SamplingConfig::default());
        assert_eq!(v.witness_point(), Some(&[int(1)][..]));
        let v = inclusion_check(
            &p("1 - x1^2", 1),
            &p("2 - x1^2", 1),
            &SamplingConfig::default(),
        );
        assert!(v.is_proved());
        // S(g) = {±√2}; f < 0 only there.
        let v = inclusion_check(&p("-x1^2", 1), &p("-1", 1), &SamplingConfig::default());
        assert!(v.is_disproved());
        let g = &p("x1^2 - 2", 1).pow(2) * &p("-1", 1);
        let v = inclusion_check(&g, &p("-1", 1), &SamplingConfig::default());
        assert_eq!(v.kind, VerdictKind::Unknown);
    }

    #[test]
    fn ternary_pair_is_not_refuted() {
        let g = p("x1*x3 + x2*x3 + x1*x2", 3);
        let f = p("x1^3*x3 + x1^3*x2 + x2^2*x3^2", 3);
        let cfg = SamplingConfig::default().with_budget(2000);
        assert_eq!(inclusion_check(&g, &f, &cfg).kind, VerdictKind::Unknown);
        let bad = p("-x1^4 - x2^4", 3);
        let v = inclusion_check(&g, &bad, &cfg);
        assert!(v.is_disproved());
    }

    #[test]
    fn sampling_is_thread_independent() {
        let g = p("x1*x2 - 1", 3);
        let f = p("x3 - 1/2", 3);
        let a = sample_violation(
            &g,
            &f,
            &SamplingConfig::default().with_mode(ExecMode::Parallel),
        );
        let b = sample_violation(
            &g,
            &f,
            &SamplingConfig::default().with_mode(ExecMode::Sequential),
        );
        assert!(a.is_some());
        assert_eq!(a, b);
    }
}
