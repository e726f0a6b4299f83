//! Scalar multipliers for quadratic inclusions.
//!
//! For quadratic forms `f`, `g` with a Slater point, the set of `t >= 0`
//! with `A_f − t·A_g ⪰ 0` is a closed interval. It is located exactly: the
//! sums `E_k(t)` of principal minors of `A_f − t·A_g` are polynomials in `t`,
//! the matrix is semidefinite iff all of them are nonnegative, and their
//! real roots cut `[0, ∞)` into cells on which semidefiniteness is constant.

use crate::certify::inclusion::{inclusion_check, violates, SamplingConfig};
use crate::certify::roots::{isolate_real_roots, separate, RealRoot};
use crate::certify::{Verdict, VerdictKind, Witness};
use crate::poly::{Degree, Polynomial, UniPoly};
use crate::quadform::{gram_of, Diagonalization, GramMatrix, QuadError};
use crate::rational::{int, rat, serde_str, simplest_in, to_short_string, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SlemmaError {
    #[error("Slater condition fails: g(x') = {0} is not positive")]
    SlaterViolation(String),
    #[error("Slater point has {got} coordinates, expected {expected}")]
    SlaterLength { expected: usize, got: usize },
    #[error("f and g have different variable counts")]
    NvarsMismatch,
    #[error("degree {0} exceeds 2")]
    DegreeTooHigh(u32),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// `t` together with a congruence diagonalization proving `A_f − t·A_g ⪰ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarCertificate {
    #[serde(with = "serde_str")]
    pub t: Rational,
    /// Gram matrix of `f − t·g` (of its homogenization in the affine case).
    pub gram: GramMatrix,
    pub psd_evidence: Diagonalization,
}

impl ScalarCertificate {
    fn build(t: Rational, gram: GramMatrix) -> Self {
        let psd_evidence = gram.diagonalize();
        ScalarCertificate {
            t,
            gram,
            psd_evidence,
        }
    }

    /// Structural re-check: `SᵀAS = diag(d)` with `S` invertible and
    /// `d >= 0`, and `A` semidefinite by elimination.
    pub fn is_consistent(&self) -> bool {
        let d = &self.psd_evidence;
        !self.t.is_negative()
            && d.diagonal.iter().all(|x| !x.is_negative())
            && self.gram.congruence(&d.congruence) == GramMatrix::diag(&d.diagonal)
            && !crate::quadform::det(&d.congruence).is_zero()
            && self.gram.is_psd()
    }

    /// Full re-check against the homogeneous pair.
    pub fn verify_homogeneous(&self, f: &Polynomial, g: &Polynomial) -> bool {
        let r = f - &g.scale(&self.t);
        gram_of(&r).is_ok_and(|a| a == self.gram) && self.is_consistent()
    }

    /// Full re-check against an affine pair of degree at most 2.
    pub fn verify_affine(&self, f: &Polynomial, g: &Polynomial) -> bool {
        let r = (f - &g.scale(&self.t)).homogenize_to(2);
        gram_of(&r).is_ok_and(|a| a == self.gram) && self.is_consistent()
    }
}

/// An endpoint of the feasible interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Bound {
    NegInf,
    PosInf,
    Rational {
        #[serde(with = "serde_str")]
        value: Rational,
    },
    /// An irrational real root, given by an isolating interval.
    Algebraic {
        root: RealRoot,
    },
}

impl Bound {
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Bound::Rational { value } => Some(value),
            _ => None,
        }
    }

    fn from_root(r: &RealRoot) -> Bound {
        match r.exact() {
            Some(m) => Bound::Rational { value: m.clone() },
            None => Bound::Algebraic { root: r.clone() },
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::PosInf => write!(f, "+inf"),
            Bound::Rational { value } => write!(f, "{}", to_short_string(value)),
            Bound::Algebraic { root } => write!(
                f,
                "root of {} in ({}, {})",
                root.poly(),
                to_short_string(root.lo()),
                to_short_string(root.hi())
            ),
        }
    }
}

/// `{t >= 0 : A_f − t·A_g ⪰ 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibleInterval {
    pub lower: Bound,
    pub upper: Bound,
    pub empty: bool,
    pub boundary_only: bool,
}

impl FeasibleInterval {
    fn empty() -> Self {
        FeasibleInterval {
            lower: Bound::PosInf,
            upper: Bound::NegInf,
            empty: true,
            boundary_only: false,
        }
    }
}

impl fmt::Display for FeasibleInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.empty {
            write!(f, "empty")
        } else {
            let close = if self.upper == Bound::PosInf {
                ")"
            } else {
                "]"
            };
            write!(f, "[{}, {}{}", self.lower, self.upper, close)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SlemmaOutcome {
    Certificate(ScalarCertificate),
    /// The only feasible `t` is irrational; no exact certificate exists.
    BoundaryOnly,
    /// No feasible `t`. The witness, when found, has `g >= 0 > f`.
    Refutation {
        #[serde(with = "crate::rational::serde_opt_vec")]
        witness: Option<Vec<Rational>>,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlemmaResult {
    pub outcome: SlemmaOutcome,
    pub feasible: FeasibleInterval,
}

impl SlemmaResult {
    pub fn certificate(&self) -> Option<&ScalarCertificate> {
        match &self.outcome {
            SlemmaOutcome::Certificate(c) => Some(c),
            _ => None,
        }
    }

    pub fn verdict_kind(&self) -> VerdictKind {
        match &self.outcome {
            SlemmaOutcome::Certificate(_) => VerdictKind::Proved,
            SlemmaOutcome::Refutation {
                witness: Some(_), ..
            } => VerdictKind::Disproved,
            _ => VerdictKind::Unknown,
        }
    }
}

/// Newton interpolation through `(x_i, y_i)`.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = UniPoly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &UniPoly::linear_root(&xs[i])) + &UniPoly::constant(coef[i].clone());
    }
    p
}

/// `E_1(t), …, E_n(t)` for the pencil `A − t·B`.
pub fn minor_sum_polynomials(a: &GramMatrix, b: &GramMatrix) -> Vec<UniPoly> {
    let n = a.n();
    let xs: Vec<Rational> = (0..=n as i64).map(int).collect();
    let values: Vec<Vec<Rational>> = xs
        .iter()
        .map(|t| a.pencil(b, t).principal_minor_sums())
        .collect();
    (1..=n)
        .map(|k| {
            let ys: Vec<Rational> = values.iter().map(|v| v[k].clone()).collect();
            interpolate(&xs, &ys)
        })
        .collect()
}

enum Cell {
    Point(RealRoot),
    Gap(Rational),
}

struct CellTable {
    cells: Vec<(Cell, bool)>,
}

// Cells of [0, ∞) in order: {0}, (0, r1), {r1}, …, {rm}, (rm, ∞).
fn cell_table(a: &GramMatrix, b: &GramMatrix) -> CellTable {
    let es = minor_sum_polynomials(a, b);
    let delta = es.last().cloned().unwrap_or_else(UniPoly::zero);
    let breaker = if !delta.is_zero() {
        delta.square_free()
    } else {
        es.iter()
            .filter(|e| e.degree().unwrap_or(0) > 0)
            .fold(UniPoly::one(), |acc, e| &acc * &e.square_free())
            .square_free()
    };
    let mut pts = vec![RealRoot::exact_root(Rational::zero(), 1)];
    if breaker.degree().unwrap_or(0) > 0 {
        for mut r in isolate_real_roots(&breaker).roots {
            if r.cmp_rational(&Rational::zero()).is_gt() {
                pts.push(r);
            }
        }
    }
    separate(&mut pts);
    let psd_at = |t: &Rational| a.pencil(b, t).is_psd();
    let mut cells: Vec<(Cell, bool)> = Vec::new();
    let m = pts.len();
    let gap_samples: Vec<Rational> = (0..m)
        .map(|i| {
            if i + 1 < m {
                let (lo, hi) = (pts[i].hi().clone(), pts[i + 1].lo().clone());
                let q = (&hi - &lo) * rat(1, 4);
                simplest_in(&(&lo + &q), &(&hi - &q))
            } else {
                (pts[i].hi() + Rational::one()).ceil()
            }
        })
        .collect();
    let gap_ok: Vec<bool> = gap_samples.iter().map(psd_at).collect();
    for (i, mut p) in pts.into_iter().enumerate() {
        let ok = match p.exact() {
            Some(t) => psd_at(t),
            None => (i > 0 && gap_ok[i - 1]) || gap_ok[i] || es.iter().all(|e| p.sign_of(e) >= 0),
        };
        cells.push((Cell::Point(p), ok));
        cells.push((Cell::Gap(gap_samples[i].clone()), gap_ok[i]));
    }
    CellTable { cells }
}

fn feasible_interval(table: &mut CellTable) -> FeasibleInterval {
    let cells = &table.cells;
    let feasible: Vec<usize> = (0..cells.len()).filter(|&i| cells[i].1).collect();
    let (Some(&first), Some(&last)) = (feasible.first(), feasible.last()) else {
        return FeasibleInterval::empty();
    };
    let point_bound = |i: usize| match &cells[i].0 {
        Cell::Point(r) => Bound::from_root(r),
        Cell::Gap(_) => unreachable!(),
    };
    // Feasible sets are closed, so a feasible gap brings its endpoints.
    let lower = if first % 2 == 0 {
        point_bound(first)
    } else {
        point_bound(first - 1)
    };
    let upper = if last % 2 == 0 {
        point_bound(last)
    } else if last + 1 < cells.len() {
        point_bound(last + 1)
    } else {
        Bound::PosInf
    };
    let boundary_only =
        first == last && matches!(&cells[first].0, Cell::Point(r) if r.exact().is_none());
    FeasibleInterval {
        lower,
        upper,
        empty: false,
        boundary_only,
    }
}

fn choose_t(table: &CellTable) -> Option<Rational> {
    let cells = &table.cells;
    if cells[0].1 {
        return Some(Rational::zero());
    }
    let gap = cells.iter().find_map(|(c, ok)| match c {
        Cell::Gap(s) if *ok => Some(s.clone()),
        _ => None,
    });
    gap.or_else(|| {
        cells.iter().find_map(|(c, ok)| match c {
            Cell::Point(r) if *ok => r.exact().cloned(),
            _ => None,
        })
    })
}

fn check_slater(g: &Polynomial, slater: &[Rational]) -> Result<Rational, SlemmaError> {
    if slater.len() != g.nvars() {
        return Err(SlemmaError::SlaterLength {
            expected: g.nvars(),
            got: slater.len(),
        });
    }
    let gs = g.evaluate(slater);
    if !gs.is_positive() {
        return Err(SlemmaError::SlaterViolation(to_short_string(&gs)));
    }
    Ok(gs)
}

fn plane_witness(
    f: &Polynomial,
    g: &Polynomial,
    s: &[Rational],
    v: &[Rational],
) -> Option<Vec<Rational>> {
    let imgs: Vec<Polynomial> = s
        .iter()
        .zip(v)
        .map(|(a, b)| &Polynomial::var(2, 0).scale(a) + &Polynomial::var(2, 1).scale(b))
        .collect();
    let (fp, gp) = (f.compose(&imgs), g.compose(&imgs));
    let verdict = inclusion_check(&gp, &fp, &SamplingConfig::default());
    let ab = verdict.witness_point()?;
    let y: Vec<Rational> = s
        .iter()
        .zip(v)
        .map(|(a, b)| &ab[0] * a + &ab[1] * b)
        .collect();
    violates(g, f, &y).then_some(y)
}

// Search a point with g >= 0 > f: first exactly in planes spanned by the
// Slater point and negative directions of A_f − t·A_g, then by sampling.
fn refutation_witness(
    f: &Polynomial,
    g: &Polynomial,
    a: &GramMatrix,
    b: &GramMatrix,
    slater: &[Rational],
    u: &Rational,
    cfg: &SamplingConfig,
) -> Option<Vec<Rational>> {
    let mut ts = vec![Rational::zero(), u.clone(), u * rat(1, 2)];
    ts.extend((1..8).map(|k| u * rat(k, 8)));
    for t in ts {
        let d = a.pencil(b, &t).diagonalize();
        for (j, dj) in d.diagonal.iter().enumerate() {
            if dj.is_negative() {
                let v: Vec<Rational> = d.congruence.iter().map(|row| row[j].clone()).collect();
                if let Some(y) = plane_witness(f, g, slater, &v) {
                    return Some(y);
                }
            }
        }
    }
    inclusion_check(g, f, cfg)
        .witness_point()
        .map(<[Rational]>::to_vec)
}

/// Homogeneous S-lemma: quadratic forms `f`, `g` with `g(slater) > 0`.
pub fn homogeneous_slemma(
    f: &Polynomial,
    g: &Polynomial,
    slater: &[Rational],
    cfg: &SamplingConfig,
) -> Result<SlemmaResult, SlemmaError> {
    if f.nvars() != g.nvars() {
        return Err(SlemmaError::NvarsMismatch);
    }
    let gs = check_slater(g, slater)?;
    let a = gram_of(f)?;
    let b = gram_of(g)?;
    let u = f.evaluate(slater) / &gs;
    if u.is_negative() {
        return Ok(SlemmaResult {
            outcome: SlemmaOutcome::Refutation {
                witness: Some(slater.to_vec()),
                reason: "f is negative at the Slater point".into(),
            },
            feasible: FeasibleInterval::empty(),
        });
    }
    let mut table = cell_table(&a, &b);
    let feasible = feasible_interval(&mut table);
    let outcome = if feasible.empty {
        let w = refutation_witness(f, g, &a, &b, slater, &u, cfg);
        let reason = match &w {
            Some(_) => "no t >= 0 makes f - t g semidefinite; witness has g >= 0 > f".to_string(),
            None => "no t >= 0 makes f - t g semidefinite; no rational witness found".to_string(),
        };
        SlemmaOutcome::Refutation { witness: w, reason }
    } else {
        match choose_t(&table) {
            Some(t) => {
                let gram = a.pencil(&b, &t);
                SlemmaOutcome::Certificate(ScalarCertificate::build(t, gram))
            }
            None => SlemmaOutcome::BoundaryOnly,
        }
    };
    Ok(SlemmaResult { outcome, feasible })
}

fn check_degree(p: &Polynomial) -> Result<(), SlemmaError> {
    match p.total_degree() {
        Degree::Finite(d) if d > 2 => Err(SlemmaError::DegreeTooHigh(d)),
        _ => Ok(()),
    }
}

/// Affine S-lemma for polynomials of degree at most 2.
///
/// The Slater point is moved to the origin and both polynomials are
/// homogenized with an extra variable `y`, so the homogeneous problem has
/// Slater point `(0, …, 0, 1)`. Semidefiniteness of the homogenized
/// `f − t·g` gives `f − t·g >= 0` on all of ℝⁿ.
pub fn affine_slemma(
    f: &Polynomial,
    g: &Polynomial,
    slater: &[Rational],
    cfg: &SamplingConfig,
) -> Result<SlemmaResult, SlemmaError> {
    if f.nvars() != g.nvars() {
        return Err(SlemmaError::NvarsMismatch);
    }
    check_degree(f)?;
    check_degree(g)?;
    check_slater(g, slater)?;
    let n = f.nvars();
    let shift: Vec<Polynomial> = (0..n)
        .map(|i| &Polynomial::var(n, i) + &Polynomial::constant(n, slater[i].clone()))
        .collect();
    let fh = f.compose(&shift).homogenize_to(2);
    let gh = g.compose(&shift).homogenize_to(2);
    let mut e = vec![Rational::zero(); n + 1];
    e[n] = Rational::one();
    let mut res = homogeneous_slemma(&fh, &gh, &e, cfg)?;
    res.outcome = match res.outcome {
        SlemmaOutcome::Certificate(c) => {
            let gram = gram_of(&(f - &g.scale(&c.t)).homogenize_to(2))?;
            SlemmaOutcome::Certificate(ScalarCertificate::build(c.t, gram))
        }
        SlemmaOutcome::Refutation { witness, reason } => {
            let w = witness.and_then(|w| dehomogenized_witness(f, g, slater, &w));
            let w = w.or_else(|| {
                inclusion_check(g, f, cfg)
                    .witness_point()
                    .map(<[Rational]>::to_vec)
            });
            SlemmaOutcome::Refutation { witness: w, reason }
        }
        other => other,
    };
    Ok(res)
}

// Map a witness (x', y') of the homogenized, translated pair back.
fn dehomogenized_witness(
    f: &Polynomial,
    g: &Polynomial,
    s: &[Rational],
    w: &[Rational],
) -> Option<Vec<Rational>> {
    let n = s.len();
    let y = &w[n];
    if !y.is_zero() {
        let x: Vec<Rational> = (0..n).map(|i| &w[i] / y + &s[i]).collect();
        return violates(g, f, &x).then_some(x);
    }
    // A witness at infinity: walk out along the direction.
    (0..64u32).find_map(|k| {
        let lam = crate::rational::pow2(k);
        let x: Vec<Rational> = (0..n).map(|i| &s[i] + &lam * &w[i]).collect();
        violates(g, f, &x).then_some(x)
    })
}

/// A point with `g > 0` on a small grid, preferring simple points.
pub fn find_slater_point(g: &Polynomial) -> Option<Vec<Rational>> {
    let n = g.nvars();
    let vals = [0i64, 1, -1, 2, -2, 3, -3];
    let total = vals.len().pow(n as u32);
    (0..total).find_map(|mut idx| {
        let x: Vec<Rational> = (0..n)
            .map(|_| {
                let v = vals[idx % vals.len()];
                idx /= vals.len();
                int(v)
            })
            .collect();
        g.evaluate(&x).is_positive().then_some(x)
    })
}

/// How violations of `f − t·g >= 0` are produced for every `t > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveArgument {
    /// `g(p) > 0 = f(p)`, so `f − t·g = −t·g(p) < 0` at `p`.
    ZeroOfF {
        #[serde(with = "crate::rational::serde_vec")]
        point: Vec<Rational>,
    },
    /// Along `k·d` with `k → 0+`: `g > 0` and `f/g → limit <= 0`, or
    /// `f/g → 0`, so `f/g < t` once `k` is small.
    ShrinkingRay {
        #[serde(with = "crate::rational::serde_vec")]
        direction: Vec<Rational>,
        order_f: Option<usize>,
        order_g: usize,
    },
    /// Along `k·d` with `k → ∞`.
    GrowingRay {
        #[serde(with = "crate::rational::serde_vec")]
        direction: Vec<Rational>,
        degree_f: Option<usize>,
        degree_g: usize,
    },
}

/// A concrete instance of the argument for one value of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainInstance {
    #[serde(with = "serde_str")]
    pub t: Rational,
    /// `k_N = 1/N` (shrinking) or `N` (growing); absent for a zero of `f`.
    #[serde(with = "crate::rational::serde_opt")]
    pub k: Option<Rational>,
    #[serde(with = "crate::rational::serde_vec")]
    pub point: Vec<Rational>,
    #[serde(with = "serde_str")]
    pub value: Rational,
    pub chain: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoConstantReport {
    pub verdict: Verdict,
    /// Point with `f < 0`, ruling out `t = 0`.
    #[serde(with = "crate::rational::serde_opt_vec")]
    pub negative_point: Option<Vec<Rational>>,
    pub curve: Option<CurveArgument>,
    pub instances: Vec<ChainInstance>,
}

fn small_directions(n: usize) -> Vec<Vec<Rational>> {
    let vals = [1i64, 0, -1, 2, -2];
    let total = vals.len().pow(n as u32);
    (0..total)
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let v = vals[idx % vals.len()];
                    idx /= vals.len();
                    int(v)
                })
                .collect::<Vec<_>>()
        })
        .filter(|d| !d.iter().all(Zero::is_zero))
        .collect()
}

fn scaled(d: &[Rational], k: &Rational) -> Vec<Rational> {
    d.iter().map(|x| x * k).collect()
}

// Orders along k·d: (lowest k-power of F or None if F ≡ 0, of G) with G's
// lowest coefficient positive and the ratio tending to something <= 0.
fn shrinking_ray(f: &Polynomial, g: &Polynomial, d: &[Rational]) -> Option<CurveArgument> {
    let zero = vec![Rational::zero(); d.len()];
    let fu = f.restrict_to_line(&zero, d);
    let gu = g.restrict_to_line(&zero, d);
    let og = gu.order()?;
    if !gu.coeff(og).is_positive() {
        return None;
    }
    let ok = match fu.order() {
        None => true,
        Some(of) => of > og || fu.coeff(of).is_negative(),
    };
    ok.then(|| CurveArgument::ShrinkingRay {
        direction: d.to_vec(),
        order_f: fu.order(),
        order_g: og,
    })
}

fn growing_ray(f: &Polynomial, g: &Polynomial, d: &[Rational]) -> Option<CurveArgument> {
    let zero = vec![Rational::zero(); d.len()];
    let fu = f.restrict_to_line(&zero, d);
    let gu = g.restrict_to_line(&zero, d);
    let dg = gu.degree()?;
    if !gu.lc().is_positive() {
        return None;
    }
    let ok = match fu.degree() {
        None => true,
        Some(df) => df < dg || fu.lc().is_negative(),
    };
    ok.then(|| CurveArgument::GrowingRay {
        direction: d.to_vec(),
        degree_f: fu.degree(),
        degree_g: dg,
    })
}

fn instance_for(
    f: &Polynomial,
    g: &Polynomial,
    curve: &CurveArgument,
    t: &Rational,
) -> Option<ChainInstance> {
    let fmt = to_short_string;
    match curve {
        CurveArgument::ZeroOfF { point } => {
            let gv = g.evaluate(point);
            let value = f.evaluate(point) - t * &gv;
            Some(ChainInstance {
                t: t.clone(),
                k: None,
                point: point.clone(),
                chain: vec![
                    format!("f(p) = 0 and g(p) = {} > 0", fmt(&gv)),
                    format!(
                        "f(p) - t*g(p) = -{}*{} = {} < 0",
                        fmt(t),
                        fmt(&gv),
                        fmt(&value)
                    ),
                ],
                value,
            })
        }
        CurveArgument::ShrinkingRay { direction, .. }
        | CurveArgument::GrowingRay { direction, .. } => {
            let shrinking = matches!(curve, CurveArgument::ShrinkingRay { .. });
            (1..=1u64 << 20).find_map(|n| {
                let k = if shrinking {
                    rat(1, n as i64)
                } else {
                    int(n as i64)
                };
                let x = scaled(direction, &k);
                let gv = g.evaluate(&x);
                let fv = f.evaluate(&x);
                let value = &fv - t * &gv;
                if !(gv.is_positive() && value.is_negative()) {
                    return None;
                }
                let ratio = &fv / &gv;
                Some(ChainInstance {
                    t: t.clone(),
                    k: Some(k.clone()),
                    chain: vec![
                        format!("g(k_N d) = {} > 0", fmt(&gv)),
                        format!("f(k_N d) / g(k_N d) = {} < t = {}", fmt(&ratio), fmt(t)),
                        format!(
                            "f - t*g = g*(f/g - t) = {} < 0 at k_N = {}",
                            fmt(&value),
                            fmt(&k)
                        ),
                    ],
                    point: x,
                    value,
                })
            })
        }
    }
}

/// Show that no constant `t >= 0` satisfies `f − t·g >= 0` on ℝⁿ.
///
/// For `t = 0` a point with `f < 0` is exhibited. For `t > 0` the argument
/// needs points where `g > 0` and `f/g` is below `t`: a zero of `f` inside
/// `{g > 0}`, or a ray along which `f/g` tends to a limit `<= 0`. For
/// quadratic inputs the S-lemma is consulted first and a found `t` gives
/// `Disproved`.
pub fn no_constant_multiplier(
    f: &Polynomial,
    g: &Polynomial,
    demo_ts: &[Rational],
) -> NoConstantReport {
    let n = f.nvars();
    let quadratic = |p: &Polynomial| p.total_degree() <= Degree::Finite(2);
    if quadratic(f) && quadratic(g) {
        if let Some(s) = find_slater_point(g) {
            if let Ok(res) = affine_slemma(f, g, &s, &SamplingConfig::default()) {
                if let Some(c) = res.certificate() {
                    return NoConstantReport {
                        verdict: Verdict::disproved(
                            Witness::point(vec![c.t.clone()]),
                            format!(
                                "t = {} works: f - t*g is nonnegative",
                                to_short_string(&c.t)
                            ),
                        ),
                        negative_point: None,
                        curve: None,
                        instances: vec![],
                    };
                }
            }
        }
    }
    let grid = crate::slemma::grid_points(n, 3);
    let negative_point = grid.iter().find(|x| f.evaluate(x).is_negative()).cloned();
    let Some(neg) = negative_point else {
        return NoConstantReport {
            verdict: Verdict::unknown("no point with f < 0 found, so t = 0 is not excluded"),
            negative_point: None,
            curve: None,
            instances: vec![],
        };
    };
    let dirs = small_directions(n);
    let curve = grid
        .iter()
        .find(|x| f.evaluate(x).is_zero() && g.evaluate(x).is_positive())
        .map(|x| CurveArgument::ZeroOfF { point: x.clone() })
        .or_else(|| dirs.iter().find_map(|d| shrinking_ray(f, g, d)))
        .or_else(|| dirs.iter().find_map(|d| growing_ray(f, g, d)));
    let Some(curve) = curve else {
        return NoConstantReport {
            verdict: Verdict::unknown(
                "f < 0 somewhere, but no curve with f/g below every t > 0 was found",
            ),
            negative_point: Some(neg),
            curve: None,
            instances: vec![],
        };
    };
    let instances: Vec<ChainInstance> = demo_ts
        .iter()
        .filter_map(|t| instance_for(f, g, &curve, t))
        .collect();
    let how = match &curve {
        CurveArgument::ZeroOfF { .. } => "f vanishes at a point where g > 0".to_string(),
        CurveArgument::ShrinkingRay { direction, .. } => format!(
            "along k*({}) with k -> 0+, g > 0 and f/g tends to a limit <= 0",
            direction
                .iter()
                .map(to_short_string)
                .collect::<Vec<_>>()
                .join(", ")
        ),
        CurveArgument::GrowingRay { direction, .. } => format!(
            "along k*({}) with k -> oo, g > 0 and f/g tends to a limit <= 0",
            direction
                .iter()
                .map(to_short_string)
                .collect::<Vec<_>>()
                .join(", ")
        ),
    };
    NoConstantReport {
        verdict: Verdict::proved(format!(
            "t = 0 fails at a point with f < 0; for t > 0, {how}, so f - t*g < 0 somewhere"
        )),
        negative_point: Some(neg),
        curve: Some(curve),
        instances,
    }
}

/// All integer points of `[-r, r]ⁿ`, ordered by max-norm then lexicographically.
pub fn grid_points(n: usize, r: i64) -> Vec<Vec<Rational>> {
    let side = (2 * r + 1) as usize;
    let mut pts: Vec<Vec<i64>> = (0..side.pow(n as u32))
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let v = (idx % side) as i64 - r;
                    idx /= side;
                    v
                })
                .collect()
        })
        .collect();
    pts.sort_by_key(|p| (p.iter().map(|v| v.abs()).max().unwrap_or(0), p.clone()));
    pts.into_iter()
        .map(|p| p.into_iter().map(int).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::rational::rvec;

    fn p(s: &str, n: usize) -> Polynomial {
        parse(s, n).unwrap()
    }

    fn cfg() -> SamplingConfig {
        SamplingConfig::default()
    }

    #[test]
    fn interval_for_paper_pair() {
        let f = p("2*x1^2 - x2^2", 2);
        let g = p("x1^2 - x2^2", 2);
        let r = homogeneous_slemma(&f, &g, &rvec(&[1, 0]), &cfg()).unwrap();
        assert_eq!(r.feasible.lower, Bound::Rational { value: int(1) });
        assert_eq!(r.feasible.upper, Bound::Rational { value: int(2) });
        let c = r.certificate().unwrap();
        assert_eq!(c.t, rat(3, 2));
        assert!(c.verify_homogeneous(&f, &g));
        // Oracle: exact PSD tests on a grid.
        let a = gram_of(&f).unwrap();
        let b = gram_of(&g).unwrap();
        for k in 0..=300 {
            let t = rat(k, 100);
            assert_eq!(
                a.pencil(&b, &t).is_psd(),
                t >= int(1) && t <= int(2),
                "t = {t}"
            );
        }
    }

    #[test]
    fn trivial_multipliers() {
        let g = p("x1^2 - x2^2", 2);
        let r = homogeneous_slemma(&g, &g, &rvec(&[1, 0]), &cfg()).unwrap();
        assert!(r.certificate().unwrap().verify_homogeneous(&g, &g));
        let f = p("x1^2 + x2^2", 2);
        let r = homogeneous_slemma(&f, &g, &rvec(&[1, 0]), &cfg()).unwrap();
        assert_eq!(r.certificate().unwrap().t, int(0));
    }

    #[test]
    fn slater_is_checked() {
        let e = homogeneous_slemma(&p("x1^2", 2), &p("-x1^2", 2), &rvec(&[1, 0]), &cfg());
        assert!(matches!(e, Err(SlemmaError::SlaterViolation(_))));
    }

    #[test]
    fn refutation_has_witness() {
        let f = p("x1^2 - 2*x2^2", 2);
        let g = p("x1^2 - x2^2", 2);
        let r = homogeneous_slemma(&f, &g, &rvec(&[1, 0]), &cfg()).unwrap();
        assert!(r.feasible.empty);
        match r.outcome {
            SlemmaOutcome::Refutation {
                witness: Some(y), ..
            } => assert!(violates(&g, &f, &y)),
            o => panic!("unexpected {o:?}"),
        }
    }

    #[test]
    fn irrational_boundary() {
        // Two blocks: one feasible for t >= √2, the other for t <= √2.
        let f = p("2*x1*x2 + x3^2 + 2*x4^2", 4);
        let g = p("-x1^2 - 1/2*x2^2 - 2*x3*x4", 4);
        let r = homogeneous_slemma(&f, &g, &rvec(&[0, 0, 1, -1]), &cfg()).unwrap();
        assert_eq!(r.outcome, SlemmaOutcome::BoundaryOnly);
        assert!(r.feasible.boundary_only);
        let Bound::Algebraic { root } = &r.feasible.lower else {
            panic!("expected an algebraic bound");
        };
        assert!(root.lo() < &rat(1415, 1000) && root.hi() > &rat(1414, 1000));
        assert_eq!(r.feasible.lower, r.feasible.upper);
    }

    #[test]
    fn affine_examples() {
        let r = affine_slemma(
            &p("x1^2 - 2*x1 + 1", 1),
            &p("1 - x1^2", 1),
            &rvec(&[0]),
            &cfg(),
        )
        .unwrap();
        assert_eq!(r.certificate().unwrap().t, int(0));
        let r = affine_slemma(&p("x1", 1), &p("x1", 1), &rvec(&[1]), &cfg()).unwrap();
        let c = r.certificate().unwrap();
        assert_eq!(c.t, int(1));
        assert!(c.verify_affine(&p("x1", 1), &p("x1", 1)));
        let (f, g) = (p("2 - x1^2", 1), p("1 - x1^2", 1));
        let r = affine_slemma(&f, &g, &rvec(&[0]), &cfg()).unwrap();
        assert_eq!(r.feasible.lower, Bound::Rational { value: int(1) });
        assert_eq!(r.feasible.upper, Bound::Rational { value: int(2) });
        assert!(r.certificate().unwrap().verify_affine(&f, &g));
    }

    #[test]
    fn affine_refutation_maps_back() {
        let (f, g) = (p("x1 - 1", 1), p("4 - x1^2", 1));
        let r = affine_slemma(&f, &g, &rvec(&[0]), &cfg()).unwrap();
        match r.outcome {
            SlemmaOutcome::Refutation {
                witness: Some(y), ..
            } => assert!(violates(&g, &f, &y)),
            o => panic!("unexpected {o:?}"),
        }
    }

    #[test]
    fn no_constant_for_l31() {
        let g = p("x1^2 - x2^2", 2);
        let f = &p("x1^2", 2) * &g;
        let rep = no_constant_multiplier(&f, &g, &[int(1), rat(1, 100)]);
        assert!(rep.verdict.is_proved());
        assert!(matches!(
            rep.curve,
            Some(CurveArgument::ShrinkingRay { .. })
        ));
        for inst in &rep.instances {
            assert!(inst.value.is_negative());
            assert!(g.evaluate(&inst.point).is_positive());
            assert_eq!(
                f.evaluate(&inst.point) - &inst.t * g.evaluate(&inst.point),
                inst.value
            );
        }
        // Direction (2, 1): f/g = 4k^2, below 1/100 first at k = 1/21.
        assert_eq!(rep.instances[1].k, Some(rat(1, 21)));
    }

    #[test]
    fn constant_exists_for_quadratics() {
        let g = p("x1^2 - x2^2", 2);
        assert!(no_constant_multiplier(&g, &g, &[int(1)])
            .verdict
            .is_disproved());
        let rep = no_constant_multiplier(&p("x1^4 - x2^4", 2), &g, &[int(1)]);
        assert!(rep.verdict.is_proved());
    }
}
