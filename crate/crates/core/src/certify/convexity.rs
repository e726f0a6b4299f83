//! Convexity probe for the joint range `M = {(f1(x), f2(x)) : x ∈ ℝⁿ}`.
//!
//! Midpoints of sampled pairs are checked for a preimage inside the plane
//! spanned by the two sample points, exactly. For two binary forms the probe
//! also searches for a certified non-convexity configuration: an open ray
//! from the origin that `M` provably misses, crossed by a segment between
//! two points of `M`.

use super::roots::isolate_real_roots;
use super::verdict::{Verdict, Witness};
use crate::par::{map_indexed, ExecMode};
use crate::poly::Polynomial;
use crate::random::{point, rng_for};
use crate::rational::{int, sign, to_short_string, Rational};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProbeError {
    #[error("both polynomials are zero")]
    Degenerate,
    #[error("variable counts differ")]
    NvarsMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityProbe {
    pub verdict: Verdict,
    pub pairs_tested: usize,
    pub midpoints_realized: usize,
}

// Binary forms P1, P2 and a target direction m ≠ 0: is some w ≠ 0 mapped to
// a positive multiple of m? Exact, via the root lines of m2·P1 − m1·P2.
fn direction_attained(p1: &Polynomial, p2: &Polynomial, m: [&Rational; 2]) -> Option<bool> {
    let h = &p1.scale(m[1]) - &p2.scale(m[0]);
    if h.is_zero() {
        return None;
    }
    let target = [sign(m[0]), sign(m[1])];
    let odd = p1.total_degree().finite().unwrap_or(0) % 2 == 1
        || p2.total_degree().finite().unwrap_or(0) % 2 == 1;
    let matches = |s: [i8; 2]| s == target || (odd && s == [-target[0], -target[1]]);
    let e1 = vec![int(1), int(0)];
    if h.evaluate(&e1).is_zero() && matches([sign(&p1.evaluate(&e1)), sign(&p2.evaluate(&e1))]) {
        return Some(true);
    }
    let hu = h.set_var_drop(1).ok()?.to_univariate()?;
    let u1 = p1.set_var_drop(1).ok()?.to_univariate()?;
    let u2 = p2.set_var_drop(1).ok()?.to_univariate()?;
    for r in isolate_real_roots(&hu).roots.iter_mut() {
        let s = [r.sign_of(&u1), r.sign_of(&u2)];
        if matches(s) {
            return Some(true);
        }
    }
    Some(false)
}

fn restrict_to_plane(f: &Polynomial, x: &[Rational], y: &[Rational]) -> Polynomial {
    let imgs: Vec<Polynomial> = x
        .iter()
        .zip(y)
        .map(|(a, b)| &Polynomial::var(2, 0).scale(a) + &Polynomial::var(2, 1).scale(b))
        .collect();
    f.compose(&imgs)
}

/// Whether the midpoint of `F(x)` and `F(y)` has a preimage in span{x, y}.
pub fn midpoint_realized_in_plane(
    f1: &Polynomial,
    f2: &Polynomial,
    x: &[Rational],
    y: &[Rational],
) -> bool {
    let m1 = f1.evaluate(x) + f1.evaluate(y);
    let m2 = f2.evaluate(x) + f2.evaluate(y);
    if m1.is_zero() && m2.is_zero() {
        return true;
    }
    let p1 = restrict_to_plane(f1, x, y);
    let p2 = restrict_to_plane(f2, x, y);
    // A zero pencil means the whole plane maps onto one line through the
    // origin, which already contains both endpoints.
    direction_attained(&p1, &p2, [&m1, &m2]).unwrap_or(true)
}

const DIRECTIONS: [[i64; 2]; 8] = [
    [0, -1],
    [0, 1],
    [-1, 0],
    [1, 0],
    [1, 1],
    [1, -1],
    [-1, 1],
    [-1, -1],
];

/// Exact non-convexity certificate for two binary forms.
pub fn nonconvexity_certificate(f1: &Polynomial, f2: &Polynomial) -> Option<Witness> {
    if f1.nvars() != 2 || !f1.is_homogeneous() || !f2.is_homogeneous() {
        return None;
    }
    let grid: Vec<Vec<Rational>> = (-3..=3i64)
        .flat_map(|a| (-3..=3i64).map(move |b| vec![int(a), int(b)]))
        .filter(|v| !v.iter().all(Zero::is_zero))
        .collect();
    let images: Vec<[Rational; 2]> = grid
        .iter()
        .map(|v| [f1.evaluate(v), f2.evaluate(v)])
        .collect();
    for d in DIRECTIONS {
        let d = [int(d[0]), int(d[1])];
        if direction_attained(f1, f2, [&d[0], &d[1]]) != Some(false) {
            continue;
        }
        let cross = |u: &[Rational; 2]| &u[0] * &d[1] - &u[1] * &d[0];
        for i in 0..grid.len() {
            for j in i + 1..grid.len() {
                let (a, b) = (&images[i], &images[j]);
                let (ca, cb) = (cross(a), cross(b));
                if (&ca * &cb).is_negative() {
                    let s = &ca / (&ca - &cb);
                    let p = [&a[0] + &s * (&b[0] - &a[0]), &a[1] + &s * (&b[1] - &a[1])];
                    if (&p[0] * &d[0] + &p[1] * &d[1]).is_positive() {
                        return Some(Witness::Segment {
                            x: grid[i].clone(),
                            y: grid[j].clone(),
                            direction: d.to_vec(),
                            crossing: p.to_vec(),
                        });
                    }
                }
            }
        }
    }
    None
}

/// Re-check a [`Witness::Segment`] from scratch.
pub fn verify_segment(f1: &Polynomial, f2: &Polynomial, w: &Witness) -> bool {
    let Witness::Segment {
        x,
        y,
        direction,
        crossing,
    } = w
    else {
        return false;
    };
    if direction.len() != 2 || crossing.len() != 2 {
        return false;
    }
    let a = [f1.evaluate(x), f2.evaluate(x)];
    let b = [f1.evaluate(y), f2.evaluate(y)];
    // crossing = a + s(b - a) for some s in [0, 1], and a positive multiple of direction.
    let on_ray = (&crossing[0] * &direction[1] - &crossing[1] * &direction[0]).is_zero()
        && (&crossing[0] * &direction[0] + &crossing[1] * &direction[1]).is_positive();
    let ba = [&b[0] - &a[0], &b[1] - &a[1]];
    let ca = [&crossing[0] - &a[0], &crossing[1] - &a[1]];
    let collinear = (&ba[0] * &ca[1] - &ba[1] * &ca[0]).is_zero();
    let dot = &ba[0] * &ca[0] + &ba[1] * &ca[1];
    let len2 = &ba[0] * &ba[0] + &ba[1] * &ba[1];
    let between = !dot.is_negative() && dot <= len2;
    on_ray
        && collinear
        && between
        && direction_attained(f1, f2, [&direction[0], &direction[1]]) == Some(false)
}

/// Sample midpoints and look for certified non-convexity.
pub fn joint_range_convexity_probe(
    f1: &Polynomial,
    f2: &Polynomial,
    samples: usize,
    seed: u64,
) -> Result<ConvexityProbe, ProbeError> {
    if f1.nvars() != f2.nvars() {
        return Err(ProbeError::NvarsMismatch);
    }
    if f1.is_zero() && f2.is_zero() {
        return Err(ProbeError::Degenerate);
    }
    if f1 == f2 {
        return Ok(ConvexityProbe {
            verdict: Verdict::proved(
                "f1 = f2: the joint range lies on the diagonal and is a ray or a line",
            ),
            pairs_tested: 0,
            midpoints_realized: 0,
        });
    }
    let n = f1.nvars();
    let hits = map_indexed(ExecMode::Parallel, samples, |i| {
        let mut rng = rng_for(seed, i as u64);
        let x = point(&mut rng, n, 5, 2);
        let y = point(&mut rng, n, 5, 2);
        midpoint_realized_in_plane(f1, f2, &x, &y)
    });
    let realized = hits.iter().filter(|&&b| b).count();
    let verdict = match nonconvexity_certificate(f1, f2) {
        Some(w) => {
            let Witness::Segment { direction, crossing, .. } = &w else {
                unreachable!()
            };
            let reason = format!(
                "open ray through ({}, {}) misses M, but the segment between two points of M meets it at ({}, {})",
                to_short_string(&direction[0]),
                to_short_string(&direction[1]),
                to_short_string(&crossing[0]),
                to_short_string(&crossing[1]),
            );
            Verdict::disproved(w, reason)
        }
        None => Verdict::unknown(format!(
            "no violation found: {realized}/{samples} sampled midpoints have a preimage in their plane"
        )),
    };
    Ok(ConvexityProbe {
        verdict,
        pairs_tested: samples,
        midpoints_realized: realized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    #[test]
    fn quadratic_pairs_are_consistent() {
        let f1 = parse("x1^2 - x2^2 + x1*x3", 3).unwrap();
        let f2 = parse("2*x1*x2 - x3^2", 3).unwrap();
        let r = joint_range_convexity_probe(&f1, &f2, 40, 7).unwrap();
        assert_eq!(r.midpoints_realized, 40);
        assert!(!r.verdict.is_disproved());
    }

    #[test]
    fn quartic_pair_is_not_convex() {
        let p = parse("x1^4 - x1*x2^3", 2).unwrap();
        let q = parse("x1^3*x2 - x1^2*x2^2", 2).unwrap();
        let r = joint_range_convexity_probe(&p, &q, 10, 0).unwrap();
        assert!(r.verdict.is_disproved());
        assert!(verify_segment(&p, &q, r.verdict.witness.as_ref().unwrap()));
        // The half-line {(0, s) : s < 0} is excluded.
        assert_eq!(direction_attained(&p, &q, [&int(0), &int(-1)]), Some(false));
    }

    #[test]
    fn trivial_and_degenerate() {
        let f = parse("x1*x2", 2).unwrap();
        assert!(joint_range_convexity_probe(&f, &f, 5, 0)
            .unwrap()
            .verdict
            .is_proved());
        let z = Polynomial::zero(2);
        assert_eq!(
            joint_range_convexity_probe(&z, &z, 5, 0),
            Err(ProbeError::Degenerate)
        );
    }
}
