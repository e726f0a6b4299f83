//! Stability of quadratic modules under z-gradings: the diagonal
//! classification, density points, tentacle containment, and the sign-flip
//! witnesses that rule out nonnegative multipliers.

use crate::certify::interval::{eval_box, Interval};
use crate::certify::ray::{ray_asymptotic_sign, RaySign};
use crate::certify::roots::{isolate_real_roots, no_roots_from, root_bound};
use crate::certify::{Verdict, VerdictKind, Witness};
use crate::par::{find_first, ExecMode};
use crate::poly::{Exponent, Grading, Polynomial, UniPoly, UniRational};
use crate::quadform::{gram_of, QuadError};
use crate::random::{point, rng_for};
use crate::rational::{int, rat, serde_str, serde_vec, Rational};
use crate::slemma::grid_points;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

/// Bisection levels per axis before a tentacle check gives up.
pub const SUBDIVISION_DEPTH: u32 = 12;
const CELL_BUDGET: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilityError {
    #[error("expected a quadratic form: {0}")]
    NotQuadratic(#[from] QuadError),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("box interval {index} has empty interior")]
    DegenerateBox { index: usize },
    #[error("motion component {index} is the zero fraction")]
    ZeroFraction { index: usize },
    #[error("motion component {index} has a pole on [1, ∞)")]
    Pole { index: usize },
    #[error("anchor {index} is not the lex-leading exponent of its polynomial")]
    AnchorNotLexMax { index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedSquare {
    #[serde(with = "serde_str")]
    pub weight: Rational,
    pub base: Polynomial,
}

/// A weighted sum of squares `Σ c_k h_k²` with `c_k ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareSum(pub Vec<WeightedSquare>);

impl SquareSum {
    pub fn single(weight: Rational, base: Polynomial) -> Self {
        SquareSum(vec![WeightedSquare { weight, base }])
    }

    pub fn is_valid(&self) -> bool {
        self.0.iter().all(|s| !s.weight.is_negative())
    }

    pub fn expand(&self, nvars: usize) -> Polynomial {
        self.0.iter().fold(Polynomial::zero(nvars), |acc, s| {
            &acc + &(&s.base * &s.base).scale(&s.weight)
        })
    }
}

/// `σ₀ + σ₁·q` has strictly lower z-degree than `σ₁·q`, so the quadratic
/// module generated by `q` is not stable in the z-grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstabilityPair {
    pub z: Grading,
    pub sigma0: SquareSum,
    pub sigma1: SquareSum,
    pub product_degree: i64,
    /// `None` when the sum cancels completely.
    pub sum_degree: Option<i64>,
}

impl InstabilityPair {
    pub fn degree_drop(&self) -> Option<i64> {
        self.sum_degree.map(|d| self.product_degree - d)
    }

    /// Recomputes both degrees from the squares.
    pub fn verify(&self, q: &Polynomial) -> bool {
        let n = q.nvars();
        if !self.sigma0.is_valid() || !self.sigma1.is_valid() {
            return false;
        }
        let prod = &self.sigma1.expand(n) * q;
        let sum = &self.sigma0.expand(n) + &prod;
        let Some(pd) = prod.z_degree(&self.z) else {
            return false;
        };
        let sd = sum.z_degree(&self.z);
        pd == self.product_degree && sd == self.sum_degree && sd.map_or(true, |d| d < pd)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StabilityWitness {
    DensityPoint {
        #[serde(with = "serde_vec")]
        x: Vec<Rational>,
    },
    InstabilityPair(InstabilityPair),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum T0Class {
    /// Nonnegative diagonal: every grading direction is a tentacle direction.
    Full,
    WitnessAgainst {
        index: usize,
        pair: InstabilityPair,
    },
}

/// Classifies `T₀(q)` by the diagonal of `q`. A negative entry `a_ii`
/// yields the grading `e_i` together with `σ₁ = x_i²`, `σ₀ = -a_ii·x_i⁴`:
/// the sum `x_i²(q - a_ii x_i²)` has `x_i`-degree at most 3.
pub fn classify_t0(q: &Polynomial) -> Result<T0Class, StabilityError> {
    if q.is_zero() {
        return Err(StabilityError::ZeroPolynomial);
    }
    let gram = gram_of(q)?;
    let n = q.nvars();
    let Some(i) = gram.diagonal_entries().iter().position(|a| a.is_negative()) else {
        return Ok(T0Class::Full);
    };
    let a = gram.get(i, i).clone();
    let mut z = vec![0; n];
    z[i] = 1;
    let z = Grading(z);
    let xi2 = Polynomial::var(n, i).pow(2);
    let sigma1 = SquareSum::single(Rational::one(), Polynomial::var(n, i));
    let sigma0 = SquareSum::single(-a, xi2);
    let prod = &sigma1.expand(n) * q;
    let sum = &sigma0.expand(n) + &prod;
    let pair = InstabilityPair {
        product_degree: prod.z_degree(&z).expect("nonzero product"),
        sum_degree: sum.z_degree(&z),
        z,
        sigma0,
        sigma1,
    };
    debug_assert!(pair.verify(q));
    Ok(T0Class::WitnessAgainst { index: i, pair })
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityResult {
    pub verdict: Verdict,
    pub witness: Option<StabilityWitness>,
    pub leading_forms: Vec<Polynomial>,
}

fn probe_point(n: usize, grid: &[Vec<Rational>], seed: u64, i: usize) -> Vec<Rational> {
    if i == 0 {
        vec![Rational::one(); n]
    } else if i <= grid.len() {
        grid[i - 1].clone()
    } else {
        point(&mut rng_for(seed, i as u64), n, 9, 4)
    }
}

/// Searches for a point where every z-leading form is strictly positive.
/// Such a point gives an open subset of `S(L_z(f_1), …)`, hence density.
pub fn density_witness(
    gens: &[Polynomial],
    z: &Grading,
    budget: usize,
    mode: ExecMode,
) -> Result<DensityResult, StabilityError> {
    let n = check_dims(gens, z.len())?;
    let leads = gens
        .iter()
        .map(|g| {
            g.leading_form_z(z)
                .map_err(|_| StabilityError::ZeroPolynomial)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let grid = if n <= 4 {
        grid_points(n, 2)
    } else {
        grid_points(n, 1)
    };
    let found = find_first(mode, budget, |i| {
        let x = probe_point(n, &grid, 0, i);
        leads
            .iter()
            .all(|l| l.evaluate(&x).is_positive())
            .then_some(x)
    });
    Ok(match found {
        Some((_, x)) => DensityResult {
            verdict: Verdict {
                kind: VerdictKind::Proved,
                witness: Some(Witness::point(x.clone())),
                reason: format!("all z-leading forms are positive at this point (z = {z})"),
            },
            witness: Some(StabilityWitness::DensityPoint { x }),
            leading_forms: leads,
        },
        None => DensityResult {
            verdict: Verdict::unknown(format!(
                "no point with all z-leading forms positive among {budget} probes"
            )),
            witness: None,
            leading_forms: leads,
        },
    })
}

/// A box around a density point on which every leading form stays
/// positive, packaged as a monomial tentacle.
pub fn density_tentacle(leads: &[Polynomial], z: &Grading, x: &[Rational]) -> Option<TentacleSpec> {
    let mut h = rat(1, 2);
    for _ in 0..64 {
        let bx: Vec<Interval> = x.iter().map(|c| Interval::new(c - &h, c + &h)).collect();
        if leads.iter().all(|l| eval_box(l, &bx).is_positive()) {
            return Some(TentacleSpec {
                bx,
                motion: Motion::MonomialPowers(z.clone()),
            });
        }
        h /= int(2);
    }
    None
}

fn check_dims(gens: &[Polynomial], n: usize) -> Result<usize, StabilityError> {
    for g in gens {
        if g.is_zero() {
            return Err(StabilityError::ZeroPolynomial);
        }
        if g.nvars() != n {
            return Err(StabilityError::Dimension {
                expected: n,
                got: g.nvars(),
            });
        }
    }
    Ok(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Motion {
    MonomialPowers(Grading),
    RationalFractions(#[serde(serialize_with = "fractions_as_text")] Vec<UniRational>),
}

fn fractions_as_text<S: serde::Serializer>(phi: &[UniRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(phi.iter().map(|f| f.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TentacleDegree(pub Vec<i64>);

/// `{(φ_1(λ)x_1, …, φ_n(λ)x_n) : λ ≥ 1, x ∈ box}`, where monomial powers
/// mean `φ_i = λ^{z_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TentacleSpec {
    #[serde(skip)]
    pub bx: Vec<Interval>,
    pub motion: Motion,
}

impl TentacleSpec {
    pub fn dim(&self) -> usize {
        self.bx.len()
    }

    /// Rejects flat boxes, zero fractions and poles on `[1, ∞)`.
    pub fn validate(&self) -> Result<(), StabilityError> {
        if let Some(index) = self.bx.iter().position(|iv| iv.lo >= iv.hi) {
            return Err(StabilityError::DegenerateBox { index });
        }
        match &self.motion {
            Motion::MonomialPowers(z) if z.len() != self.dim() => Err(StabilityError::Dimension {
                expected: self.dim(),
                got: z.len(),
            }),
            Motion::RationalFractions(phi) if phi.len() != self.dim() => {
                Err(StabilityError::Dimension {
                    expected: self.dim(),
                    got: phi.len(),
                })
            }
            Motion::MonomialPowers(_) => Ok(()),
            Motion::RationalFractions(phi) => {
                for (index, f) in phi.iter().enumerate() {
                    if f.num().is_zero() {
                        return Err(StabilityError::ZeroFraction { index });
                    }
                    let den = f.den();
                    let pole_free = match den.degree() {
                        Some(0) => true,
                        _ => no_roots_from(den, &Rational::one()),
                    };
                    if !pole_free {
                        return Err(StabilityError::Pole { index });
                    }
                }
                Ok(())
            }
        }
    }

    pub fn degree(&self) -> TentacleDegree {
        match &self.motion {
            Motion::MonomialPowers(z) => TentacleDegree(z.0.clone()),
            Motion::RationalFractions(phi) => TentacleDegree(
                phi.iter()
                    .map(|f| f.degree().expect("nonzero fraction"))
                    .collect(),
            ),
        }
    }

    /// The tentacle point for parameters `x` and `λ`.
    pub fn image(&self, x: &[Rational], lambda: &Rational) -> Vec<Rational> {
        match &self.motion {
            Motion::MonomialPowers(z) => x
                .iter()
                .zip(&z.0)
                .map(|(xi, &zi)| {
                    let l = num_traits::pow(lambda.clone(), zi.unsigned_abs() as usize);
                    if zi < 0 {
                        xi / l
                    } else {
                        xi * l
                    }
                })
                .collect(),
            Motion::RationalFractions(phi) => x
                .iter()
                .zip(phi)
                .map(|(xi, f)| xi * f.eval(lambda).expect("pole-free on [1, ∞)"))
                .collect(),
        }
    }

    /// `g` along the tentacle as a polynomial in `(x, λ)` (λ last) whose sign
    /// agrees with `g` for every `λ ≥ 1`.
    fn lift(&self, g: &Polynomial) -> Polynomial {
        let n = self.dim();
        let lam_poly = |u: &UniPoly, e: &Exponent, c: &Rational| {
            let mut p = Polynomial::zero(n + 1);
            for (k, a) in u.coeffs().iter().enumerate() {
                let mut ex = e.0.clone();
                ex.push(k as u32);
                p.add_term(Exponent(ex), a * c);
            }
            p
        };
        match &self.motion {
            Motion::MonomialPowers(z) => {
                let shift = g
                    .terms()
                    .map(|(e, _)| z.weight(e))
                    .min()
                    .unwrap_or(0)
                    .min(0);
                let mut out = Polynomial::zero(n + 1);
                for (e, c) in g.terms() {
                    let mut ex = e.0.clone();
                    ex.push((z.weight(e) - shift) as u32);
                    out.add_term(Exponent(ex), c.clone());
                }
                out
            }
            Motion::RationalFractions(phi) => {
                // Clear denominators with even powers so the sign is kept.
                let even: Vec<u32> = (0..n)
                    .map(|i| g.degree_in(i).finite().unwrap_or(0))
                    .map(|d| d + d % 2)
                    .collect();
                let mut out = Polynomial::zero(n + 1);
                for (e, c) in g.terms() {
                    let u = (0..n).fold(UniPoly::one(), |acc, i| {
                        &(&acc * &phi[i].num().pow(e.0[i])) * &phi[i].den().pow(even[i] - e.0[i])
                    });
                    out = &out + &lam_poly(&u, e, c);
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TentacleCounterexample {
    pub generator: usize,
    #[serde(with = "serde_vec")]
    pub x: Vec<Rational>,
    #[serde(with = "serde_str")]
    pub lambda: Rational,
    #[serde(with = "serde_vec")]
    pub image: Vec<Rational>,
    #[serde(with = "serde_str")]
    pub value: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct TentacleReport {
    pub verdict: Verdict,
    pub counterexample: Option<TentacleCounterexample>,
    pub cells: usize,
}

enum CellOutcome {
    Certified,
    Negative(Vec<Rational>, Rational),
    Split,
}

struct Lifted {
    g: Polynomial,
    shifted: Polynomial,
    coeffs: Vec<Polynomial>,
}

impl Lifted {
    fn new(g: Polynomial) -> Self {
        let m = g.nvars();
        let lam = m - 1;
        let mut images: Vec<Polynomial> = (0..m).map(|i| Polynomial::var(m, i)).collect();
        images[lam] = &images[lam] + &Polynomial::one(m);
        let shifted = g.compose(&images);
        let coeffs = g.coefficients_in(lam);
        Lifted { g, shifted, coeffs }
    }

    fn lam(&self) -> usize {
        self.g.nvars() - 1
    }

    /// A `λ ≥ 1` where `g(x, λ) < 0`, if the exact univariate slice shows one.
    fn negative_lambda(&self, x: &[Rational]) -> Option<Rational> {
        let slice = UniPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.evaluate(&with_lambda(x, &Rational::zero())))
                .collect(),
        );
        if slice.is_zero() {
            return None;
        }
        let one = Rational::one();
        let mut cands = vec![one.clone(), root_bound(&slice).max(one.clone()) + &one];
        let mut iso = isolate_real_roots(&slice);
        cands.extend(iso.cell_samples().into_iter().filter(|s| *s >= one));
        cands.into_iter().find(|l| slice.eval(l).is_negative())
    }

    fn check_cell(&self, cell: &[Interval], depth: u32, evals: &mut usize) -> CellOutcome {
        let mid: Vec<Rational> = cell.iter().map(Interval::mid).collect();
        if let Some(l) = self.negative_lambda(&mid) {
            return CellOutcome::Negative(mid, l);
        }
        let lam1 = Interval::point(Rational::one());
        let at = |iv: &Interval| {
            let mut b = cell.to_vec();
            b.push(iv.clone());
            b
        };
        let lead = eval_box(self.coeffs.last().expect("nonzero"), &at(&lam1));
        *evals += 1;
        if !lead.is_positive() {
            return CellOutcome::Split;
        }
        // Every coefficient in μ = λ - 1 nonnegative settles the cell.
        let mu_ok = self
            .shifted
            .coefficients_in(self.lam())
            .iter()
            .all(|c| eval_box(c, &at(&lam1)).is_nonneg());
        *evals += 1;
        if mu_ok {
            return CellOutcome::Certified;
        }
        // Past λ₀ the leading term dominates; check [1, λ₀] by bisection.
        let d = self.coeffs.len() - 1;
        let big = self.coeffs[..d]
            .iter()
            .map(|c| {
                let e = eval_box(c, &at(&lam1));
                e.lo.abs().max(e.hi.abs())
            })
            .max()
            .unwrap_or_else(Rational::zero);
        let lambda0 = Rational::one() + big / &lead.lo;
        let mut stack = vec![(Interval::new(Rational::one(), lambda0), 0u32)];
        while let Some((iv, ldepth)) = stack.pop() {
            *evals += 1;
            if *evals > CELL_BUDGET {
                return CellOutcome::Split;
            }
            if eval_box(&self.g, &at(&iv)).is_nonneg() {
                continue;
            }
            if ldepth >= SUBDIVISION_DEPTH + depth {
                return CellOutcome::Split;
            }
            let (a, b) = iv.bisect();
            stack.push((b, ldepth + 1));
            stack.push((a, ldepth + 1));
        }
        CellOutcome::Certified
    }
}

fn with_lambda(x: &[Rational], l: &Rational) -> Vec<Rational> {
    let mut v = x.to_vec();
    v.push(l.clone());
    v
}

/// Decides `T ⊆ S(gens)` by exact probes and interval subdivision of the box.
pub fn tentacle_in_set(
    t: &TentacleSpec,
    gens: &[Polynomial],
) -> Result<TentacleReport, StabilityError> {
    t.validate()?;
    check_dims(gens, t.dim())?;
    let mut evals = 0usize;
    let mut cells = 0usize;
    for (gi, g) in gens.iter().enumerate() {
        let lifted = Lifted::new(t.lift(g));
        let mut stack = vec![(t.bx.clone(), 0u32)];
        while let Some((cell, depth)) = stack.pop() {
            cells += 1;
            match lifted.check_cell(&cell, depth, &mut evals) {
                CellOutcome::Certified => {}
                CellOutcome::Negative(x, lambda) => {
                    let image = t.image(&x, &lambda);
                    let value = g.evaluate(&image);
                    debug_assert!(value.is_negative());
                    return Ok(TentacleReport {
                        verdict: Verdict::disproved(
                            Witness::point(image.clone()),
                            format!("generator {} is negative on the tentacle", gi + 1),
                        ),
                        counterexample: Some(TentacleCounterexample {
                            generator: gi,
                            x,
                            lambda,
                            image,
                            value,
                        }),
                        cells,
                    });
                }
                CellOutcome::Split => {
                    if depth >= SUBDIVISION_DEPTH || evals > CELL_BUDGET {
                        return Ok(TentacleReport {
                            verdict: Verdict::unknown(format!(
                                "generator {} not certified at subdivision depth {depth}",
                                gi + 1
                            )),
                            counterexample: None,
                            cells,
                        });
                    }
                    stack.extend(split_all(&cell).into_iter().map(|c| (c, depth + 1)));
                }
            }
        }
    }
    Ok(TentacleReport {
        verdict: Verdict::proved("every generator is nonnegative on the tentacle"),
        counterexample: None,
        cells,
    })
}

fn split_all(cell: &[Interval]) -> Vec<Vec<Interval>> {
    cell.iter().fold(vec![Vec::new()], |acc, iv| {
        let (a, b) = iv.bisect();
        acc.into_iter()
            .flat_map(|pre| {
                let mut l = pre.clone();
                l.push(a.clone());
                let mut r = pre;
                r.push(b.clone());
                [l, r]
            })
            .collect()
    })
}

/// A grading under which each anchor strictly dominates the other terms of
/// its polynomial. Geometric weights `(M^{n-1}, …, M, 1)` with `M` one more
/// than the largest total degree turn lex order into weight order.
pub fn special_grading(anchors: &[(Polynomial, Exponent)]) -> Result<Grading, StabilityError> {
    let n = anchors.first().map_or(1, |(p, _)| p.nvars());
    for (index, (p, e)) in anchors.iter().enumerate() {
        if p.nvars() != n {
            return Err(StabilityError::Dimension {
                expected: n,
                got: p.nvars(),
            });
        }
        let (lead, _) = p
            .leading_term_lex()
            .map_err(|_| StabilityError::ZeroPolynomial)?;
        if &lead != e {
            return Err(StabilityError::AnchorNotLexMax { index });
        }
    }
    if anchors.iter().all(|(p, _)| p.num_terms() == 1) {
        return Ok(Grading::ones(n));
    }
    let m = 1 + anchors
        .iter()
        .filter_map(|(p, _)| p.total_degree().finite())
        .max()
        .unwrap_or(0) as i64;
    let z = Grading((0..n).map(|i| m.pow((n - 1 - i) as u32)).collect());
    debug_assert!(dominates(anchors, &z));
    Ok(z)
}

/// Every anchor has strictly larger z-weight than the other terms.
pub fn dominates(anchors: &[(Polynomial, Exponent)], z: &Grading) -> bool {
    anchors.iter().all(|(p, a)| {
        let w = z.weight(a);
        p.terms()
            .filter(|(e, _)| *e != a)
            .all(|(e, _)| z.weight(e) < w)
    })
}

/// Whether `L_z(q)` divides `L_z(p)`.
pub fn lz_divisibility(
    p: &Polynomial,
    q: &Polynomial,
    z: &Grading,
) -> Result<bool, StabilityError> {
    let lp = p
        .leading_form_z(z)
        .map_err(|_| StabilityError::ZeroPolynomial)?;
    let lq = q
        .leading_form_z(z)
        .map_err(|_| StabilityError::ZeroPolynomial)?;
    Ok(lp.exact_div(&lq).is_some())
}

/// The coordinate reflection `π_I` (indices are 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignFlip {
    pub flip_set: BTreeSet<usize>,
}

impl SignFlip {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        SignFlip {
            flip_set: indices.into_iter().collect(),
        }
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        x.iter()
            .enumerate()
            .map(|(i, v)| {
                if self.flip_set.contains(&(i + 1)) {
                    -v
                } else {
                    v.clone()
                }
            })
            .collect()
    }

    /// Composition in the group of reflections.
    pub fn then(&self, other: &SignFlip) -> SignFlip {
        SignFlip {
            flip_set: self
                .flip_set
                .symmetric_difference(&other.flip_set)
                .copied()
                .collect(),
        }
    }
}

/// Four asymptotic ray signs at `x_plus` and its reflection, plus the
/// non-divisibility of the leading forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipBundle {
    pub z: Grading,
    #[serde(with = "serde_vec")]
    pub x_plus: Vec<Rational>,
    #[serde(with = "serde_vec")]
    pub x_minus: Vec<Rational>,
    pub flip: SignFlip,
    pub q_plus: RaySign,
    pub p_plus: RaySign,
    pub q_minus: RaySign,
    pub p_minus: RaySign,
}

impl FlipBundle {
    /// Recomputes every sign and the divisibility test from scratch.
    pub fn verify(&self, q: &Polynomial, p: &Polynomial) -> bool {
        let s = |f: &Polynomial, x: &[Rational]| ray_asymptotic_sign(f, x, &self.z);
        self.flip.apply(&self.x_plus) == self.x_minus
            && self.x_plus.iter().all(|v| !v.is_zero())
            && lz_divisibility(p, q, &self.z) == Ok(false)
            && s(q, &self.x_plus) == self.q_plus
            && s(p, &self.x_plus) == self.p_plus
            && s(q, &self.x_minus) == self.q_minus
            && s(p, &self.x_minus) == self.p_minus
            && self.q_plus.sign == 1
            && self.p_plus.sign == 1
            && self.q_minus.sign == -1
            && self.p_minus.sign == -1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlipSearchResult {
    pub verdict: Verdict,
    pub bundle: Option<FlipBundle>,
    pub candidates_tried: usize,
}

#[derive(Clone, Debug)]
pub struct FlipSearchConfig {
    /// Coordinate magnitudes for `x_plus`, tried in order.
    pub magnitudes: Vec<Rational>,
    pub mode: ExecMode,
}

impl Default for FlipSearchConfig {
    fn default() -> Self {
        FlipSearchConfig {
            magnitudes: [5, 3, 7, 2, 11, 1].into_iter().map(int).collect(),
            mode: ExecMode::default(),
        }
    }
}

/// Gradings with `1 ≤ z_i ≤ z_1 ≤ 6`, then the special grading of the
/// lex-leading terms of `q` and `p`.
pub fn default_z_candidates(q: &Polynomial, p: &Polynomial) -> Vec<Grading> {
    let n = q.nvars();
    let mut out = Vec::new();
    for z1 in 1..=6i64 {
        let tails = (0..n.saturating_sub(1)).fold(vec![vec![z1]], |acc, _| {
            acc.into_iter()
                .flat_map(|pre| {
                    (1..=z1).map(move |v| {
                        let mut t = pre.clone();
                        t.push(v);
                        t
                    })
                })
                .collect()
        });
        out.extend(tails.into_iter().map(Grading));
    }
    let anchors: Option<Vec<(Polynomial, Exponent)>> = [q, p]
        .iter()
        .map(|f| f.leading_term_lex().ok().map(|(e, _)| ((*f).clone(), e)))
        .collect();
    if let Some(z) = anchors.and_then(|a| special_grading(&a).ok()) {
        if !out.contains(&z) {
            out.push(z);
        }
    }
    out
}

/// Nonempty flip sets: smaller first, then heavier total z-weight, then
/// higher indices.
fn flip_order(z: &Grading) -> Vec<SignFlip> {
    let n = z.len();
    let mut sets: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|m| (1..=n).filter(|&i| m & (1 << (i - 1)) != 0).collect())
        .collect();
    sets.sort_by_key(|s: &Vec<usize>| {
        let w: i64 = s.iter().map(|&i| z.0[i - 1]).sum();
        let rev: Vec<std::cmp::Reverse<usize>> =
            s.iter().rev().map(|&i| std::cmp::Reverse(i)).collect();
        (s.len(), std::cmp::Reverse(w), rev)
    });
    sets.into_iter().map(SignFlip::new).collect()
}

fn sign_patterns(n: usize) -> Vec<Vec<i64>> {
    (0u32..(1 << n))
        .map(|m| {
            (0..n)
                .map(|i| if m & (1 << i) != 0 { -1 } else { 1 })
                .collect()
        })
        .collect()
}

fn try_grading(
    q: &Polynomial,
    p: &Polynomial,
    z: &Grading,
    cfg: &FlipSearchConfig,
) -> Option<FlipBundle> {
    if lz_divisibility(p, q, z).ok()? {
        return None;
    }
    let n = z.len();
    let flips = flip_order(z);
    for m in &cfg.magnitudes {
        for s in sign_patterns(n) {
            let x_plus: Vec<Rational> = s.iter().map(|&si| m * int(si)).collect();
            let q_plus = ray_asymptotic_sign(q, &x_plus, z);
            let p_plus = ray_asymptotic_sign(p, &x_plus, z);
            if q_plus.sign != 1 || p_plus.sign != 1 {
                continue;
            }
            for flip in &flips {
                let x_minus = flip.apply(&x_plus);
                let q_minus = ray_asymptotic_sign(q, &x_minus, z);
                let p_minus = ray_asymptotic_sign(p, &x_minus, z);
                if q_minus.sign == -1 && p_minus.sign == -1 {
                    return Some(FlipBundle {
                        z: z.clone(),
                        x_plus,
                        x_minus,
                        flip: flip.clone(),
                        q_plus,
                        p_plus,
                        q_minus,
                        p_minus,
                    });
                }
            }
        }
    }
    None
}

/// Looks for a grading, a point and a reflection showing that no
/// nonnegative `t` makes `p - t·q` nonnegative.
pub fn sign_flip_witness_search(
    q: &Polynomial,
    p: &Polynomial,
    z_candidates: &[Grading],
    cfg: &FlipSearchConfig,
) -> Result<FlipSearchResult, StabilityError> {
    let n = check_dims(&[q.clone()], p.nvars())?;
    if p.is_zero() {
        return Err(StabilityError::ZeroPolynomial);
    }
    let usable: Vec<&Grading> = z_candidates
        .iter()
        .filter(|z| z.len() == n && z.in_n1())
        .collect();
    let found = find_first(cfg.mode, usable.len(), |i| {
        try_grading(q, p, usable[i], cfg)
    });
    Ok(match found {
        Some((i, bundle)) => FlipSearchResult {
            verdict: Verdict {
                kind: VerdictKind::Proved,
                witness: Some(Witness::Ray {
                    x: bundle.x_minus.clone(),
                    z: bundle.z.clone(),
                    threshold: bundle.q_minus.threshold.clone().max(bundle.p_minus.threshold.clone()),
                }),
                reason: "no nonnegative multiplier exists (sign-flip pattern: L_z(q) does not divide L_z(p), \
                         both ray signs +1 at x_plus and -1 at its reflection)"
                    .into(),
            },
            bundle: Some(bundle),
            candidates_tried: i + 1,
        },
        None => FlipSearchResult {
            verdict: Verdict::unknown("no grading, point and reflection realise the sign-flip pattern"),
            bundle: None,
            candidates_tried: usable.len(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::rational::rvec;

    fn p(s: &str, n: usize) -> Polynomial {
        parse(s, n).unwrap()
    }

    fn boxed(c: &[i64], h: Rational) -> Vec<Interval> {
        c.iter()
            .map(|&v| Interval::new(int(v) - &h, int(v) + &h))
            .collect()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_t0(&p("x1*x2 + x2*x3 + x1*x3", 3)).unwrap(),
            T0Class::Full
        );
        assert_eq!(classify_t0(&p("x1^2 + x2^2", 2)).unwrap(), T0Class::Full);
        let q = p("-x1^2 + x1*x2", 2);
        let T0Class::WitnessAgainst { index, pair } = classify_t0(&q).unwrap() else {
            panic!("expected a witness");
        };
        assert_eq!(index, 0);
        assert_eq!(pair.z, Grading(vec![1, 0]));
        assert_eq!(pair.sigma0.expand(2), p("x1^4", 2));
        assert_eq!(pair.sigma1.expand(2), p("x1^2", 2));
        assert_eq!((pair.product_degree, pair.sum_degree), (4, Some(3)));
        assert!(pair.verify(&q));
        // Any positive multiple of the grading keeps the drop: 4N against 3N.
        let n = 7;
        let zn = Grading(vec![n, 0]);
        let sum = &pair.sigma0.expand(2) + &(&pair.sigma1.expand(2) * &q);
        assert_eq!(sum, p("x1^3*x2", 2));
        assert_eq!((&pair.sigma1.expand(2) * &q).z_degree(&zn), Some(4 * n));
        assert_eq!(sum.z_degree(&zn), Some(3 * n));
        assert!(classify_t0(&p("x1^3", 1)).is_err());
    }

    #[test]
    fn density_examples() {
        let gens = [p("x1*x2 + x2*x3 + x1*x3", 3)];
        let r = density_witness(&gens, &Grading::ones(3), 50, ExecMode::Sequential).unwrap();
        assert_eq!(r.verdict.witness_point(), Some(&rvec(&[1, 1, 1])[..]));
        let r = density_witness(
            &[p("-x1^2", 1)],
            &Grading(vec![2]),
            200,
            ExecMode::Sequential,
        )
        .unwrap();
        assert_eq!(r.verdict.kind, VerdictKind::Unknown);
        let r = density_witness(&[p("x1", 1)], &Grading(vec![1]), 5, ExecMode::Sequential).unwrap();
        assert_eq!(r.verdict.witness_point(), Some(&rvec(&[1])[..]));
    }

    #[test]
    fn density_point_gives_tentacle() {
        let gens = [p("x1*x2 - x1^2 + x2", 2), p("x2^3 - x1", 2)];
        let z = Grading(vec![1, 1]);
        let r = density_witness(&gens, &z, 100, ExecMode::Sequential).unwrap();
        let x = r.verdict.witness_point().unwrap().to_vec();
        let t = density_tentacle(&r.leading_forms, &z, &x).unwrap();
        assert!(tentacle_in_set(&t, &r.leading_forms)
            .unwrap()
            .verdict
            .is_proved());
    }

    #[test]
    fn tentacle_examples() {
        let t = TentacleSpec {
            bx: vec![Interval::new(int(1), int(2)); 2],
            motion: Motion::MonomialPowers(Grading::ones(2)),
        };
        assert!(tentacle_in_set(&t, &[p("x1*x2", 2)])
            .unwrap()
            .verdict
            .is_proved());
        let r = tentacle_in_set(&t, &[p("-x1^2", 2)]).unwrap();
        assert!(r.verdict.is_disproved());
        let cx = r.counterexample.unwrap();
        assert!(cx.value.is_negative() && cx.lambda >= Rational::one());
        let near = TentacleSpec {
            bx: boxed(&[5, 5], rat(1, 4)),
            motion: Motion::MonomialPowers(Grading::ones(2)),
        };
        assert!(tentacle_in_set(&near, &[p("x1 + x2 + x1*x2^3", 2)])
            .unwrap()
            .verdict
            .is_proved());
    }

    #[test]
    fn tentacle_needs_subdivision() {
        // Positive on the tentacle but with sign-mixed coefficients in λ.
        let t = TentacleSpec {
            bx: boxed(&[2, 1], rat(1, 4)),
            motion: Motion::MonomialPowers(Grading(vec![1, 0])),
        };
        let g = p("x1^2 - 3*x1 + 3", 2);
        assert!(tentacle_in_set(&t, &[g]).unwrap().verdict.is_proved());
        // The same polynomial dips below zero near λ·x1 = 3/2.
        let g = p("x1^2 - 3*x1 + 2", 2);
        let t = TentacleSpec {
            bx: boxed(&[1, 1], rat(1, 8)),
            motion: Motion::MonomialPowers(Grading(vec![1, 0])),
        };
        assert!(tentacle_in_set(&t, &[g]).unwrap().verdict.is_disproved());
    }

    #[test]
    fn rational_tentacles() {
        // φ = (λ, (λ² + 1)/λ) has degree (1, 1).
        let phi = vec![
            UniRational::from_poly(UniPoly::x()),
            UniRational::new(UniPoly::from_ints(&[1, 0, 1]), UniPoly::x()),
        ];
        let t = TentacleSpec {
            bx: vec![Interval::new(int(1), int(2)); 2],
            motion: Motion::RationalFractions(phi),
        };
        assert_eq!(t.degree(), TentacleDegree(vec![1, 1]));
        assert!(tentacle_in_set(&t, &[p("2*x1*x2 - x2", 2)])
            .unwrap()
            .verdict
            .is_proved());
        assert!(tentacle_in_set(&t, &[p("x1 - x2", 2)])
            .unwrap()
            .verdict
            .is_disproved());
        let bad = TentacleSpec {
            bx: t.bx.clone(),
            motion: Motion::RationalFractions(vec![
                UniRational::from_poly(UniPoly::x()),
                UniRational::new(UniPoly::one(), UniPoly::from_ints(&[-2, 1])),
            ]),
        };
        assert_eq!(bad.validate(), Err(StabilityError::Pole { index: 1 }));
        let flat = TentacleSpec {
            bx: vec![Interval::point(int(1)), Interval::new(int(0), int(1))],
            motion: Motion::MonomialPowers(Grading::ones(2)),
        };
        assert_eq!(
            flat.validate(),
            Err(StabilityError::DegenerateBox { index: 0 })
        );
    }

    #[test]
    fn special_grading_examples() {
        let g = p("x1 + x2 + x1*x2", 2);
        let f = p("x1^3 + x1^3*x2 + x2^2", 2);
        let anchors = vec![(g, Exponent(vec![1, 1])), (f, Exponent(vec![3, 1]))];
        let z = special_grading(&anchors).unwrap();
        assert_eq!(z, Grading(vec![5, 1]));
        assert!(z.in_n1() && dominates(&anchors, &z));
        let mono = vec![(p("3*x1^2*x2", 2), Exponent(vec![2, 1]))];
        assert_eq!(special_grading(&mono).unwrap(), Grading::ones(2));
        let uni = vec![(p("x1^2 + 1", 1), Exponent(vec![2]))];
        assert_eq!(special_grading(&uni).unwrap(), Grading(vec![1]));
        let wrong = vec![(p("x1 + x2", 2), Exponent(vec![0, 1]))];
        assert_eq!(
            special_grading(&wrong),
            Err(StabilityError::AnchorNotLexMax { index: 0 })
        );
    }

    #[test]
    fn divisibility_examples() {
        let f = p("x1^3 + x1^3*x2 + x2^2", 2);
        let g = p("x1 + x2 + x1*x2", 2);
        assert!(lz_divisibility(&f, &g, &Grading::ones(2)).unwrap());
        let fs = p("x2^3 + x2^3*x1 + x1^2", 2);
        assert!(!lz_divisibility(&fs, &g, &Grading(vec![3, 1])).unwrap());
        assert!(lz_divisibility(&g, &g, &Grading(vec![2, 1])).unwrap());
    }

    #[test]
    fn flip_bundles() {
        let cfg = FlipSearchConfig {
            mode: ExecMode::Sequential,
            ..Default::default()
        };
        let q = p("x1 + x2 + x1*x2^3", 2);
        let f = p("x1^5 + x1^5*x2 + x2^2", 2);
        let r = sign_flip_witness_search(&q, &f, &default_z_candidates(&q, &f), &cfg).unwrap();
        let b = r.bundle.unwrap();
        assert_eq!(b.z, Grading(vec![1, 1]));
        assert_eq!(
            (b.x_plus.clone(), b.x_minus.clone()),
            (rvec(&[5, 5]), rvec(&[5, -5]))
        );
        assert_eq!(b.flip, SignFlip::new([2]));
        assert!(b.verify(&q, &f));
        assert!(b.q_minus.from_one && b.p_minus.from_one);

        let g = p("x1 + x2 + x1*x2", 2);
        let fs = p("x2^3 + x2^3*x1 + x1^2", 2);
        let r = sign_flip_witness_search(&g, &fs, &default_z_candidates(&g, &fs), &cfg).unwrap();
        let b = r.bundle.unwrap();
        assert_eq!(b.z, Grading(vec![3, 1]));
        assert_eq!(b.x_minus, rvec(&[-5, 5]));
        assert_eq!(b.flip, SignFlip::new([1]));
        assert!(b.verify(&g, &fs));

        let r = sign_flip_witness_search(&g, &g, &default_z_candidates(&g, &g), &cfg).unwrap();
        assert_eq!(r.verdict.kind, VerdictKind::Unknown);
    }

    #[test]
    fn flips_are_involutions() {
        let s = SignFlip::new([1, 3]);
        let x = rvec(&[1, -2, 3]);
        assert_eq!(s.apply(&s.apply(&x)), x);
        assert!(s.then(&s).flip_set.is_empty());
    }
}
