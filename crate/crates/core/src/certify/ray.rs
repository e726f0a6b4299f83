//! Eventual sign of a polynomial along monomial curves `λ ↦ (λ^{z_i} x_i)`.

use super::roots::{cauchy_bound, no_roots_from};
use crate::poly::{Grading, Polynomial};
use crate::rational::{sign, Rational};
use num_traits::One;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RaySign {
    /// Sign of `p` for every `λ > threshold`.
    pub sign: i8,
    #[serde(with = "crate::rational::serde_str")]
    pub threshold: Rational,
    /// The sign already holds on all of `λ >= 1`.
    pub from_one: bool,
}

/// Sign of `p(λ^{z_1} x_1, …, λ^{z_n} x_n)` as `λ → ∞`, with an explicit
/// threshold past which it is constant (a Cauchy bound on the composed
/// polynomial).
pub fn ray_asymptotic_sign(p: &Polynomial, x: &[Rational], z: &Grading) -> RaySign {
    let u = p.compose_ray(x, z).sign_equivalent();
    if u.is_zero() {
        return RaySign {
            sign: 0,
            threshold: Rational::one(),
            from_one: true,
        };
    }
    let bound = cauchy_bound(&u);
    RaySign {
        sign: sign(&u.lc()),
        threshold: if bound > Rational::one() {
            bound
        } else {
            Rational::one()
        },
        from_one: no_roots_from(&u, &Rational::one()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::rational::{int, rvec};

    #[test]
    fn paper_rays() {
        let f = parse("x1^5 + x1^5*x2 + x2^2", 2).unwrap();
        for z in [[1, 1], [2, 1], [3, 1], [5, 5]] {
            let r = ray_asymptotic_sign(&f, &rvec(&[5, -5]), &Grading(z.to_vec()));
            assert_eq!(r.sign, -1, "z = {z:?}");
            assert!(r.from_one);
        }
        let g = parse("x1 + x2 + x1*x2^3", 2).unwrap();
        let r = ray_asymptotic_sign(&g, &rvec(&[5, 5]), &Grading::ones(2));
        assert_eq!(r.sign, 1);
        let c = parse("-3", 2).unwrap();
        let r = ray_asymptotic_sign(&c, &rvec(&[1, 1]), &Grading::ones(2));
        assert_eq!((r.sign, r.threshold), (-1, int(1)));
    }

    #[test]
    fn negative_weights() {
        // x1 x2 with z = (1, -1) is the constant x1 x2 along the curve.
        let p = parse("x1*x2 - x2", 2).unwrap();
        let r = ray_asymptotic_sign(&p, &rvec(&[2, 1]), &Grading(vec![1, -1]));
        assert_eq!(r.sign, 1);
    }
}
