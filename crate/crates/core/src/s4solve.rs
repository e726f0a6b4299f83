//! Quadratic multipliers for quartics in one variable and binary forms.
//!
//! Given `f` of degree 4 and `g` of degree 2 with `S(g) ⊆ S(f)` and a point
//! where `g > 0`, find a nonnegative `t` of degree at most 2 with
//! `f − t·g >= 0`. The construction follows the root structure of the
//! quartic. Irrational roots are replaced by rational approximations at
//! increasing precision, and a candidate is accepted only after both `t`
//! and `f − t·g` pass an exact nonnegativity test.

use crate::certify::inclusion::{inclusion_check, SamplingConfig};
use crate::certify::roots::{isolate_real_roots, RealRoot};
use crate::certify::{exact_nonneg, univariate_nonneg, Verdict, VerdictKind};
use crate::poly::{Degree, Polynomial, UniPoly};
use crate::quadform::{gram_of, inverse, linear_substitution, GramMatrix};
use crate::rational::{int, rat, to_short_string, Rational};
use crate::slemma::{affine_slemma, Bound, SlemmaResult};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum S4Error {
    #[error("inclusion S(g) ⊆ S(f) fails: {0}")]
    InclusionFails(String),
    #[error("g is not positive at the given Slater point")]
    SlaterViolation,
    #[error("expected {what}")]
    BadShape { what: String },
    #[error("no exactly verified certificate up to {bits} bits of root precision")]
    PrecisionCeiling { bits: u32 },
    #[error("shape check failed: {0}")]
    ShapeViolation(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

/// Which branch of the construction produced the certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum S4Case {
    /// `f` is already nonnegative, so `t = 0`.
    Trivial,
    /// Degree at most 2: a constant from the affine S-lemma.
    Degenerate,
    RealDoubleRoot,
    ComplexPair,
    /// Four simple real roots; `negative_first_gap` selects how `h` is anchored.
    FourRealRoots {
        negative_first_gap: bool,
    },
    /// Binary form with no pure fourth powers after diagonalizing `g`.
    MixedMonomials,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierCertificate {
    pub t: Polynomial,
    pub residual: Polynomial,
    pub t_evidence: Verdict,
    pub residual_evidence: Verdict,
    pub case: S4Case,
    /// Root precision used, when approximate roots were involved.
    pub precision_bits: Option<u32>,
}

impl MultiplierCertificate {
    /// `f = t·g + residual` and both `t` and the residual are nonnegative,
    /// all re-checked exactly.
    pub fn verify(&self, f: &Polynomial, g: &Polynomial) -> bool {
        &(&self.t * g) + &self.residual == *f
            && exact_nonneg(&self.t).is_proved()
            && exact_nonneg(&self.residual).is_proved()
    }
}

#[derive(Clone, Debug)]
pub struct S4Config {
    pub max_bits: u32,
    pub sampling: SamplingConfig,
}

impl Default for S4Config {
    fn default() -> Self {
        S4Config {
            max_bits: 256,
            sampling: SamplingConfig::default(),
        }
    }
}

fn uni(p: &UniPoly) -> Polynomial {
    Polynomial::from_univariate(p)
}

fn accept(p: &UniPoly, q: &UniPoly, t: &UniPoly) -> Option<(UniPoly, (Verdict, Verdict))> {
    let fitted = fit_common_root(p, q, t);
    std::iter::once(t.clone())
        .chain(fitted)
        .find_map(|t| accept_exact(p, q, &t).map(|ev| (t, ev)))
}

// At a common simple root r of p and q, p − t·q needs a double root, so
// t(r) = p'(r)/q'(r) exactly. Rescale an approximate t to meet that.
fn fit_common_root(p: &UniPoly, q: &UniPoly, t: &UniPoly) -> Option<UniPoly> {
    let common = p.gcd(q);
    if common.degree().unwrap_or(0) == 0 {
        return None;
    }
    let rs = crate::certify::roots::rational_roots(&common);
    let [(r, 1)] = rs.as_slice() else {
        return None;
    };
    let dq = q.derivative().eval(r);
    let tr = t.eval(r);
    if dq.is_zero() || tr.is_zero() {
        return None;
    }
    let c = p.derivative().eval(r) / dq;
    (!c.is_negative() && c != tr).then(|| t.scale(&(c / tr)))
}

fn accept_exact(p: &UniPoly, q: &UniPoly, t: &UniPoly) -> Option<(Verdict, Verdict)> {
    let te = univariate_nonneg(t);
    if !te.is_proved() {
        return None;
    }
    let re = univariate_nonneg(&(p - &(t * q)));
    re.is_proved().then_some((te, re))
}

fn certificate(
    p: &UniPoly,
    q: &UniPoly,
    t: UniPoly,
    ev: (Verdict, Verdict),
    case: S4Case,
    bits: Option<u32>,
) -> MultiplierCertificate {
    MultiplierCertificate {
        residual: uni(&(p - &(&t * q))),
        t: uni(&t),
        t_evidence: ev.0,
        residual_evidence: ev.1,
        case,
        precision_bits: bits,
    }
}

fn bound_value(b: &Bound, bits: u32) -> Option<Rational> {
    match b {
        Bound::Rational { value } => Some(value.clone()),
        Bound::Algebraic { root } => Some(root.clone().approx(bits)),
        _ => None,
    }
}

// Scalars t' to try for `h − t'·q >= 0`: the S-lemma's pick first, then
// points deeper inside the feasible interval.
fn scalar_candidates(
    h: &UniPoly,
    q: &UniPoly,
    slater: &Rational,
    cfg: &S4Config,
    bits: u32,
) -> Vec<Rational> {
    let Ok(res) = affine_slemma(
        &uni(h),
        &uni(q),
        std::slice::from_ref(slater),
        &cfg.sampling,
    ) else {
        return vec![];
    };
    let SlemmaResult {
        outcome: _,
        feasible,
    } = &res;
    let mut out: Vec<Rational> = res.certificate().map(|c| c.t.clone()).into_iter().collect();
    if !feasible.empty {
        let lo = bound_value(&feasible.lower, bits);
        let hi = bound_value(&feasible.upper, bits);
        match (lo, hi) {
            (Some(l), Some(u)) => out.push((l + u) * rat(1, 2)),
            (Some(l), None) => out.extend([&l + int(1), &l * int(2) + int(1)]),
            _ => {}
        }
    }
    out.dedup();
    out.retain(|t| !t.is_negative());
    out
}

fn quad_from_roots(alpha: &Rational, a: &Rational, b: &Rational) -> UniPoly {
    &(&UniPoly::linear_root(a) * &UniPoly::linear_root(b)) * &UniPoly::constant(alpha.clone())
}

fn approx_root(r: &RealRoot, bits: u32) -> Rational {
    let mut r = r.clone();
    r.try_make_exact();
    match r.exact() {
        Some(m) => m.clone(),
        None => r.approx(bits),
    }
}

fn is_rational(r: &RealRoot) -> bool {
    let mut r = r.clone();
    r.try_make_exact();
    r.exact().is_some()
}

fn precision_schedule(max_bits: u32) -> impl Iterator<Item = u32> {
    std::iter::successors(Some(16u32), |b| b.checked_mul(2))
        .take_while(move |&b| b <= max_bits.max(16))
}

/// One-variable case: `p` of degree 4, `q` of degree 2, `q(slater) > 0`.
pub fn univariate_s4(
    p: &Polynomial,
    q: &Polynomial,
    slater: &Rational,
    cfg: &S4Config,
) -> Result<MultiplierCertificate, S4Error> {
    let (Some(pu), Some(qu)) = (p.to_univariate(), q.to_univariate()) else {
        return Err(S4Error::BadShape {
            what: "polynomials in one variable".into(),
        });
    };
    if qu.degree().unwrap_or(0) > 2 || pu.degree().unwrap_or(0) > 4 {
        return Err(S4Error::BadShape {
            what: "deg p <= 4 and deg q <= 2".into(),
        });
    }
    if !qu.eval(slater).is_positive() {
        return Err(S4Error::SlaterViolation);
    }
    let inc = inclusion_check(q, p, &cfg.sampling);
    if inc.kind == VerdictKind::Disproved {
        return Err(S4Error::InclusionFails(inc.reason));
    }
    let zero = UniPoly::zero();
    if let Some(ev) = accept_exact(&pu, &qu, &zero) {
        return Ok(certificate(&pu, &qu, zero, ev, S4Case::Trivial, None));
    }
    match pu.degree() {
        Some(d) if d <= 2 => {
            for t in scalar_candidates(&pu, &qu, slater, cfg, cfg.max_bits) {
                if let Some((t, ev)) = accept(&pu, &qu, &UniPoly::constant(t)) {
                    return Ok(certificate(&pu, &qu, t, ev, S4Case::Degenerate, None));
                }
            }
            return Err(S4Error::InclusionFails(
                "affine S-lemma found no multiplier".into(),
            ));
        }
        Some(3) => {
            return Err(S4Error::Unsupported(
                "p has degree 3 and is not nonnegative".into(),
            ));
        }
        _ => {}
    }
    let iso = isolate_real_roots(&pu);
    let roots = iso.roots;

    if let Some(r) = roots.iter().find(|r| r.multiplicity() >= 2) {
        let mut r = r.clone();
        r.try_make_exact();
        let Some(y) = r.exact().cloned() else {
            // Then p = c·m² for a rational quadratic m; p <= 0 contradicts
            // the Slater point, and p >= 0 was handled above.
            return Err(S4Error::InclusionFails(
                "p is a negative multiple of a square".into(),
            ));
        };
        let s = UniPoly::linear_root(&y).pow(2);
        let h = pu.exact_div(&s).expect("double root divides");
        return reduce_by_factor(&pu, &qu, &s, &h, slater, cfg, S4Case::RealDoubleRoot, None);
    }

    if iso.complex_count > 0 {
        if roots.len() != 2 {
            return Err(S4Error::InclusionFails(
                "p has no real roots and is negative".into(),
            ));
        }
        let exact = roots.iter().all(is_rational);
        let lc = pu.lc();
        for bits in precision_schedule(cfg.max_bits) {
            let (a, b) = (approx_root(&roots[0], bits), approx_root(&roots[1], bits));
            let h = quad_from_roots(&lc, &a, &b);
            let (s, _) = pu.divrem(&h);
            let used = (!exact).then_some(bits);
            if let Ok(c) =
                reduce_by_factor(&pu, &qu, &s, &h, slater, cfg, S4Case::ComplexPair, used)
            {
                return Ok(c);
            }
            if exact {
                break;
            }
        }
        return Err(S4Error::PrecisionCeiling { bits: cfg.max_bits });
    }

    four_real_roots(&pu, &qu, roots, slater, cfg)
}

// t = t'·s where s >= 0 and h = p / s (exactly or approximately).
#[allow(clippy::too_many_arguments)]
fn reduce_by_factor(
    p: &UniPoly,
    q: &UniPoly,
    s: &UniPoly,
    h: &UniPoly,
    slater: &Rational,
    cfg: &S4Config,
    case: S4Case,
    bits: Option<u32>,
) -> Result<MultiplierCertificate, S4Error> {
    for tp in scalar_candidates(h, q, slater, cfg, bits.unwrap_or(64)) {
        if let Some((t, ev)) = accept(p, q, &s.scale(&tp)) {
            return Ok(certificate(p, q, t, ev, case, bits));
        }
    }
    Err(S4Error::PrecisionCeiling {
        bits: bits.unwrap_or(0),
    })
}

fn four_real_roots(
    p: &UniPoly,
    q: &UniPoly,
    mut roots: Vec<RealRoot>,
    slater: &Rational,
    cfg: &S4Config,
) -> Result<MultiplierCertificate, S4Error> {
    crate::certify::roots::separate(&mut roots);
    let gap = |i: usize| (roots[i].hi() + roots[i + 1].lo()) * rat(1, 2);
    let negative_first_gap = p.eval(&gap(0)).is_negative();
    let (ia, ib, alpha) = if negative_first_gap {
        (0, 3, Rational::one())
    } else {
        // S(q) is a bounded interval inside [r1, r2] or [r3, r4].
        let mut r2 = roots[1].clone();
        if r2.cmp_rational(slater).is_ge() {
            (0, 1, -Rational::one())
        } else {
            (2, 3, -Rational::one())
        }
    };
    let exact = is_rational(&roots[ia]) && is_rational(&roots[ib]);
    let dp = p.derivative();
    for bits in precision_schedule(cfg.max_bits) {
        let (a, b) = (approx_root(&roots[ia], bits), approx_root(&roots[ib], bits));
        let h = quad_from_roots(&alpha, &a, &b);
        let dh = h.derivative();
        let sa = dp.eval(&a) / dh.eval(&a);
        let sb = dp.eval(&b) / dh.eval(&b);
        // Positive quadratic with v(a) = sa, v(b) = sb.
        let v = if sa <= sb {
            let c = (&sb - &sa) / (&b - &a).pow(2);
            &UniPoly::linear_root(&a).pow(2).scale(&c) + &UniPoly::constant(sa.clone())
        } else {
            let c = (&sa - &sb) / (&a - &b).pow(2);
            &UniPoly::linear_root(&b).pow(2).scale(&c) + &UniPoly::constant(sb.clone())
        };
        let used = (!exact).then_some(bits);
        for tp in scalar_candidates(&h, q, slater, cfg, bits) {
            if let Some((t, ev)) = accept(p, q, &v.scale(&tp)) {
                return Ok(certificate(
                    p,
                    q,
                    t,
                    ev,
                    S4Case::FourRealRoots { negative_first_gap },
                    used,
                ));
            }
        }
        if exact {
            break;
        }
    }
    Err(S4Error::PrecisionCeiling { bits: cfg.max_bits })
}

fn is_form(p: &Polynomial, d: u32) -> bool {
    p.nvars() == 2 && p.is_homogeneous() && matches!(p.total_degree(), Degree::Finite(k) if k == d)
}

/// Binary quartic form `f`, binary quadratic form `g`, `g(slater) > 0`.
/// The certificate is expressed in the original coordinates.
pub fn bivariate_s4(
    f: &Polynomial,
    g: &Polynomial,
    slater: &[Rational],
    cfg: &S4Config,
) -> Result<MultiplierCertificate, S4Error> {
    if !is_form(g, 2) || !(f.is_zero() || is_form(f, 4)) {
        return Err(S4Error::BadShape {
            what: "a binary quartic form f and a binary quadratic form g".into(),
        });
    }
    if slater.len() != 2 || !g.evaluate(slater).is_positive() {
        return Err(S4Error::SlaterViolation);
    }
    let inc = inclusion_check(g, f, &cfg.sampling);
    if inc.kind == VerdictKind::Disproved {
        return Err(S4Error::InclusionFails(inc.reason));
    }
    let done = |t: Polynomial,
                case: S4Case,
                bits: Option<u32>|
     -> Result<MultiplierCertificate, S4Error> {
        let residual = f - &(&t * g);
        let te = exact_nonneg(&t);
        let re = exact_nonneg(&residual);
        if te.is_proved() && re.is_proved() {
            Ok(MultiplierCertificate {
                t,
                residual,
                t_evidence: te,
                residual_evidence: re,
                case,
                precision_bits: bits,
            })
        } else {
            Err(S4Error::ShapeViolation(format!(
                "constructed t = {t} failed the exact check ({}; {})",
                te.reason, re.reason
            )))
        }
    };
    if exact_nonneg(f).is_proved() {
        return done(Polynomial::zero(2), S4Case::Trivial, None);
    }
    let a = gram_of(g).expect("quadratic form");
    let diag = a.diagonalize();
    let mut s = diag.congruence.clone();
    let mut d = diag.diagonal.clone();
    if !(d.iter().any(|x| x.is_positive()) && d.iter().any(|x| x.is_negative())) {
        return Err(S4Error::InclusionFails(
            "g is semidefinite but f is not nonnegative".into(),
        ));
    }
    if d[0].is_negative() {
        d.swap(0, 1);
        for row in s.iter_mut() {
            row.swap(0, 1);
        }
    }
    let (a11, a22) = (d[0].clone(), d[1].clone());
    let fy = linear_substitution(f, &s);
    let gy = GramMatrix::diag(&d).to_form();
    let back = inverse(&s).expect("congruence is invertible");

    let (ty, case, bits) = if fy.coeff(&[4, 0]).is_zero() && fy.coeff(&[0, 4]).is_zero() {
        if !fy.coeff(&[3, 1]).is_zero() {
            return Err(S4Error::ShapeViolation(
                "y1^3*y2 appears, which inclusion rules out; the inputs are inconsistent".into(),
            ));
        }
        let gamma = fy.coeff(&[2, 2]);
        let beta = fy.coeff(&[1, 3]);
        if !gamma.is_positive() {
            return Err(S4Error::ShapeViolation(format!(
                "coefficient of y1^2*y2^2 is {}, expected positive",
                to_short_string(&gamma)
            )));
        }
        let b = &gamma / &a11;
        let disc = &beta * &beta + &a22 * &a11 * &b * &b;
        if disc.is_positive() {
            return Err(S4Error::ShapeViolation(format!(
                "beta^2 + a22*a11*b^2 = {} > 0",
                to_short_string(&disc)
            )));
        }
        let t = Polynomial::monomial(2, crate::poly::Exponent(vec![0, 2]), &b * rat(1, 2));
        (t, S4Case::MixedMonomials, None)
    } else {
        // Dehomogenize in the variable whose fourth power is missing, or y2.
        let keep = if fy.coeff(&[4, 0]).is_zero() { 1 } else { 0 };
        let drop = 1 - keep;
        let ft = fy.set_var_drop(drop).expect("two variables");
        let gt = gy.set_var_drop(drop).expect("two variables");
        let gu = gt.to_univariate().expect("one variable");
        let sl = crate::certify::nonneg::small_candidates(&int(64))
            .chain((1..=20).map(|k| rat(1, 1 << k)))
            .find(|x| gu.eval(x).is_positive())
            .ok_or(S4Error::SlaterViolation)?;
        let c = univariate_s4(&ft, &gt, &sl, cfg)?;
        // t̃(y_keep) → homogeneous of degree 2 in (y_keep, y_drop).
        let th = c.t.homogenize_to(2);
        let th = if keep == 0 {
            th
        } else {
            th.permute_vars(&[1, 0])
        };
        (th, c.case, c.precision_bits)
    };
    let t = linear_substitution(&ty, &back);
    done(t, case, bits)
}

/// Dispatch on the number of variables.
pub fn s4(
    f: &Polynomial,
    g: &Polynomial,
    slater: &[Rational],
    cfg: &S4Config,
) -> Result<MultiplierCertificate, S4Error> {
    match f.nvars() {
        1 => univariate_s4(f, g, slater.first().ok_or(S4Error::SlaterViolation)?, cfg),
        2 => bivariate_s4(f, g, slater, cfg),
        n => Err(S4Error::Unsupported(format!(
            "{n} variables; only 1 or 2 are handled"
        ))),
    }
}

/// Reject pairs where `g` has no point with `g > 0`.
///
/// Without such a point the two-variable statement is false: for
/// `g = −x1²` and `f = x1⁴ + x1³x2 + x1x2³`, every `f − t·g` restricted to
/// `x2 = 1` keeps the linear term `x1` and so changes sign at the origin.
pub fn nonpositive_g_guard(f: &Polynomial, g: &Polynomial) -> Verdict {
    let rejected = |reason: String| Verdict {
        kind: VerdictKind::Disproved,
        witness: None,
        reason,
    };
    if g.is_zero() {
        return rejected("g = 0 has no Slater point".into());
    }
    let Ok(a) = gram_of(g) else {
        return match crate::slemma::find_slater_point(g) {
            Some(_) => Verdict::proved("g takes a positive value"),
            None => Verdict::unknown("g is not a quadratic form and no point with g > 0 was found"),
        };
    };
    let d = a.diagonalize();
    if d.diagonal.iter().any(|x| x.is_positive()) {
        return Verdict::proved("g takes a positive value");
    }
    let mut reason = "g <= 0 everywhere, so no Slater point exists".to_string();
    // Rank one: g = −c·ℓ². Put ℓ first and look for a sign change of f
    // across ℓ = 0 that no multiple of g can cancel.
    if f.nvars() == 2 && a.rank() == 1 {
        let mut s = d.congruence.clone();
        if d.diagonal[0].is_zero() {
            for row in s.iter_mut() {
                row.swap(0, 1);
            }
        }
        let fy = linear_substitution(f, &s);
        if let Some(fu) = fy.set_var_drop(1).ok().and_then(|p| p.to_univariate()) {
            if fu.coeff(0).is_zero() && !fu.coeff(1).is_zero() {
                reason.push_str(&format!(
                    "; along l = 0 every f - t*g has linear term {}*l and changes sign at the origin",
                    to_short_string(&fu.coeff(1))
                ));
            }
        }
    }
    rejected(reason)
}

/// A seeded feasible instance: `f = t₀·g + w₀` with `g` indefinite,
/// `t₀` a nonnegative quadratic form and `w₀` a sum of squares of
/// quadratic forms. Returns `(f, g, slater)`.
pub fn feasible_instance(seed: u64, index: u64) -> (Polynomial, Polynomial, Vec<Rational>) {
    use crate::random::{rng_for, small_int};
    let mut rng = rng_for(seed, index);
    let lin = |rng: &mut rand_chacha::ChaCha8Rng| {
        &Polynomial::var(2, 0).scale(&small_int(rng, 3))
            + &Polynomial::var(2, 1).scale(&small_int(rng, 3))
    };
    // g = ℓ1·ℓ2 for independent linear forms is indefinite.
    let (mut l1, mut l2) = (lin(&mut rng), lin(&mut rng));
    while gram_of(&(&l1 * &l2)).map(|a| a.rank() < 2).unwrap_or(true) {
        l1 = lin(&mut rng);
        l2 = lin(&mut rng);
    }
    let g = &l1 * &l2;
    let t0 = &lin(&mut rng).pow(2) + &lin(&mut rng).pow(2);
    let quad = |rng: &mut rand_chacha::ChaCha8Rng| crate::random::form(rng, 2, 2, 3, 3);
    let w0 = &(&quad(&mut rng).pow(2) + &quad(&mut rng).pow(2)) + &p_small(&mut rng);
    let f = &(&t0 * &g) + &w0;
    // ℓ1 = ℓ2 = 1 gives g = 1.
    let m = vec![
        vec![l1.coeff(&[1, 0]), l1.coeff(&[0, 1])],
        vec![l2.coeff(&[1, 0]), l2.coeff(&[0, 1])],
    ];
    let slater = crate::quadform::mat_vec(&inverse(&m).expect("independent"), &[int(1), int(1)]);
    (f, g, slater)
}

// Small multiple of x1⁴ + x2⁴, keeping w₀ strictly positive most of the time.
fn p_small(rng: &mut impl rand::Rng) -> Polynomial {
    let c = rat(rng.gen_range(0..=2), 4);
    let e = |a, b| Polynomial::monomial(2, crate::poly::Exponent(vec![a, b]), c.clone());
    &e(4, 0) + &e(0, 4)
}

/// Run the bivariate solver on `n` seeded feasible instances; returns the
/// number of exactly verified certificates and the errors that occurred.
pub fn round_trip(seed: u64, n: usize, cfg: &S4Config) -> (usize, Vec<(usize, S4Error)>) {
    let results = crate::par::map_indexed(crate::par::ExecMode::Parallel, n, |i| {
        let (f, g, s) = feasible_instance(seed, i as u64);
        bivariate_s4(&f, &g, &s, cfg).and_then(|c| {
            if c.verify(&f, &g) {
                Ok(c)
            } else {
                Err(S4Error::ShapeViolation(
                    "certificate failed re-verification".into(),
                ))
            }
        })
    });
    let mut ok = 0;
    let mut errs = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(_) => ok += 1,
            Err(e) => errs.push((i, e)),
        }
    }
    (ok, errs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn p(s: &str, n: usize) -> Polynomial {
        parse(s, n).unwrap()
    }

    fn cfg() -> S4Config {
        S4Config::default()
    }

    #[test]
    fn intro_identity() {
        let f = p("x1^4 - x2^4", 2);
        let g = p("x1^2 - x2^2", 2);
        let t = p("2*x2^2", 2);
        assert_eq!(&f - &(&t * &g), p("x1^2 - x2^2", 2).pow(2));
        let c = bivariate_s4(&f, &g, &rvec2(1, 0), &cfg()).unwrap();
        assert!(c.verify(&f, &g));
    }

    fn rvec2(a: i64, b: i64) -> Vec<Rational> {
        vec![int(a), int(b)]
    }

    #[test]
    fn univariate_cases() {
        let c = univariate_s4(&p("x1^4 + 1", 1), &p("x1^2 - 1", 1), &int(2), &cfg()).unwrap();
        assert_eq!(c.case, S4Case::Trivial);
        assert!(c.t.is_zero());
        // Four rational roots ±1, ±2; S(q) = |x| >= 3.
        let (pp, q) = (p("x1^4 - 5*x1^2 + 4", 1), p("x1^2 - 9", 1));
        let c = univariate_s4(&pp, &q, &int(4), &cfg()).unwrap();
        assert!(matches!(
            c.case,
            S4Case::FourRealRoots {
                negative_first_gap: true
            }
        ));
        assert!(c.verify(&pp, &q));
        assert_eq!(c.precision_bits, None);
        // Double root at 3: p = (x - 3)^2 (x^2 - 1), S(q) = |x| >= 2.
        let pp = &p("x1 - 3", 1).pow(2) * &p("x1^2 - 1", 1);
        let q = p("x1^2 - 4", 1);
        let c = univariate_s4(&pp, &q, &int(3), &cfg()).unwrap();
        assert_eq!(c.case, S4Case::RealDoubleRoot);
        assert!(c.verify(&pp, &q));
    }

    #[test]
    fn irrational_roots_are_refined() {
        // (x^2 - 2)(x^2 + x + 1): complex pair and real roots ±√2.
        let pp = &p("x1^2 - 2", 1) * &p("x1^2 + x1 + 1", 1);
        let q = p("x1^2 - 3", 1);
        let c = univariate_s4(&pp, &q, &int(2), &cfg()).unwrap();
        assert_eq!(c.case, S4Case::ComplexPair);
        assert!(c.precision_bits.is_some());
        assert!(c.verify(&pp, &q));
        // Four irrational roots ±√2, ±√5 with S(q) bounded inside one positive gap.
        let pp = &p("x1^2 - 2", 1) * &p("5 - x1^2", 1);
        let q = p("-4*x1^2 + 14*x1 - 12", 1);
        let c = univariate_s4(&pp, &q, &rat(7, 4), &cfg()).unwrap();
        assert!(matches!(
            c.case,
            S4Case::FourRealRoots {
                negative_first_gap: false
            }
        ));
        assert!(c.verify(&pp, &q));
    }

    #[test]
    fn spec_example_violates_inclusion() {
        let e = univariate_s4(
            &p("x1^4 - 5*x1^2 + 4", 1),
            &p("4 - x1^2", 1),
            &int(0),
            &cfg(),
        );
        assert!(matches!(e, Err(S4Error::InclusionFails(_))));
    }

    #[test]
    fn mixed_monomial_case() {
        let g = p("x1^2 - x2^2", 2);
        let f = p("2*x1^2*x2^2 + x1*x2^3", 2);
        let c = bivariate_s4(&f, &g, &rvec2(1, 0), &cfg()).unwrap();
        assert_eq!(c.case, S4Case::MixedMonomials);
        assert_eq!(c.t, p("x2^2", 2));
        assert!(c.verify(&f, &g));
    }

    #[test]
    fn non_diagonal_g() {
        // g = x1*x2 is indefinite and needs a congruence first.
        let g = p("x1*x2", 2);
        let f = &p("x1^2 + x2^2", 2) * &g;
        let f = &f + &p("x1^4 + x2^4", 2);
        let c = bivariate_s4(&f, &g, &rvec2(1, 1), &cfg()).unwrap();
        assert!(c.verify(&f, &g));
    }

    #[test]
    fn round_trip_rate() {
        let (ok, errs) = round_trip(11, 40, &cfg());
        assert!(ok >= 38, "{ok}/40, errors: {errs:?}");
    }

    #[test]
    fn guard() {
        let f = p("x1^4 + x1^3*x2 + x1*x2^3", 2);
        let v = nonpositive_g_guard(&f, &p("-x1^2", 2));
        assert_eq!(v.kind, VerdictKind::Disproved);
        assert!(v.reason.contains("changes sign"));
        assert!(nonpositive_g_guard(&f, &p("x1^2 - x2^2", 2)).is_proved());
        assert_eq!(
            nonpositive_g_guard(&f, &Polynomial::zero(2)).kind,
            VerdictKind::Disproved
        );
    }
}
