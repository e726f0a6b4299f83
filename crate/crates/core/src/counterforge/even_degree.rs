//! The β-direction argument against multipliers of any even degree for the
//! ternary pair, checked on a concrete candidate `t`.

use crate::certify::{
    nonneg::binary_negative_point, ray_asymptotic_sign, RaySign, Verdict, Witness,
};
use crate::poly::{Grading, Polynomial, UniPoly};
use crate::rational::{int, serde_opt, serde_vec, to_short_string, Rational};
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

const MAX_BETA: i64 = 64;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum EvenDegreeBranch {
    /// `t(x1, x2, 0) ≡ 0`, so `f - t·g` agrees with `f` on `x3 = 0`.
    VanishesOnPlane {
        #[serde(with = "serde_vec")]
        point: Vec<Rational>,
    },
    /// `f - t·g → -∞` along `λ ↦ (λ, βλ, 1)`.
    BetaRay {
        #[serde(with = "crate::rational::serde_str")]
        beta: Rational,
        /// `P(β)`: leading coefficient of `t(λ, βλ, 1)` in `λ`.
        #[serde(with = "crate::rational::serde_str")]
        leading: Rational,
        sign: RaySign,
        #[serde(with = "serde_vec")]
        point: Vec<Rational>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct EvenDegreeReport {
    pub verdict: Verdict,
    pub branch: Option<EvenDegreeBranch>,
    /// `P` as a polynomial in β, when `t(x1, x2, 0) ≢ 0`.
    pub leading_poly: Option<String>,
    #[serde(with = "serde_opt")]
    pub value: Option<Rational>,
    /// The general argument, one step per line.
    pub argument: Vec<String>,
}

fn argument() -> Vec<String> {
    [
        "let t >= 0 and D = max{a1 + a2 : c_a != 0} over the monomials x1^a1 x2^a2 x3^a3 of t",
        "if t(x1, x2, 0) = 0 then f - t*g = x1^3*x2 on x3 = 0, which is negative at (1, -1, 0)",
        "otherwise P(b) = sum over a1 + a2 = D of c_a b^a2 is a nonzero polynomial, so P(b) != 0 for some b > 0",
        "t(l, b*l, 1) = P(b) l^D + lower terms and t >= 0 force D even and P(b) > 0",
        "f(l, b*l, 1) has degree 4 and g(l, b*l, 1) = b l^2 + (1 + b) l, so f - t*g = -b P(b) l^(D+2) + lower terms when D >= 4",
        "hence f - t*g is unbounded below along (l, b*l, 1)",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

/// `P(β)` as a univariate polynomial: the top `(x1, x2)`-degree part of `t`
/// evaluated at `(1, β)`.
fn leading_poly(t: &Polynomial) -> Option<UniPoly> {
    let top = t.terms().map(|(e, _)| e.0[0] + e.0[1]).max()?;
    let mut c = vec![Rational::zero(); top as usize + 1];
    for (e, v) in t.terms() {
        if e.0[0] + e.0[1] == top {
            c[e.0[1] as usize] += v;
        }
    }
    let p = UniPoly::new(c);
    (!p.is_zero()).then_some(p)
}

/// Certifies that `f - t·g` is not nonnegative for the candidate `t`.
pub fn refute_even_degree_multiplier(
    f: &Polynomial,
    g: &Polynomial,
    t: &Polynomial,
) -> EvenDegreeReport {
    assert!(
        f.nvars() == 3 && g.nvars() == 3 && t.nvars() == 3,
        "ternary pair expected"
    );
    let h = f - &(t * g);
    let on_plane = t.set_var(2, &int(0));
    if on_plane.is_zero() {
        let slice = Polynomial::from_terms(
            2,
            h.set_var(2, &int(0))
                .terms()
                .map(|(e, c)| (vec![e.0[0], e.0[1]], c.clone())),
        );
        let found = if slice.is_homogeneous() {
            binary_negative_point(&slice)
        } else {
            None
        };
        return match found {
            Some(p) => {
                let point = vec![p[0].clone(), p[1].clone(), int(0)];
                let value = h.evaluate(&point);
                EvenDegreeReport {
                    verdict: proved_at(
                        format!(
                            "t vanishes on x3 = 0 and f - t*g = {} there",
                            to_short_string(&value)
                        ),
                        &point,
                    ),
                    branch: Some(EvenDegreeBranch::VanishesOnPlane { point }),
                    leading_poly: None,
                    value: Some(value),
                    argument: argument(),
                }
            }
            None => EvenDegreeReport {
                verdict: Verdict::unknown("f - t*g is nonnegative on x3 = 0"),
                branch: None,
                leading_poly: None,
                value: None,
                argument: argument(),
            },
        };
    }
    let p = leading_poly(t).expect("t is nonzero");
    let z = Grading(vec![1, 1, 0]);
    for b in 1..=MAX_BETA {
        let beta = int(b);
        let lead = p.eval(&beta);
        if lead.is_zero() {
            continue;
        }
        let x = vec![int(1), beta.clone(), int(1)];
        let sign = ray_asymptotic_sign(&h, &x, &z);
        if sign.sign >= 0 {
            continue;
        }
        // Past the threshold the sign is fixed; step beyond it.
        let lambda = sign.threshold.floor() + int(1);
        let point = vec![lambda.clone(), &beta * &lambda, int(1)];
        let value = h.evaluate(&point);
        debug_assert!(value.is_negative());
        let reason = format!(
            "P({b}) = {} != 0 and f - t*g -> -inf along (l, {b}*l, 1); value {} at l = {}",
            to_short_string(&lead),
            to_short_string(&value),
            to_short_string(&lambda)
        );
        return EvenDegreeReport {
            verdict: proved_at(reason, &point),
            branch: Some(EvenDegreeBranch::BetaRay {
                beta,
                leading: lead,
                sign,
                point,
            }),
            leading_poly: Some(p.to_string()),
            value: Some(value),
            argument: argument(),
        };
    }
    EvenDegreeReport {
        verdict: Verdict::unknown(format!("no beta in 1..={MAX_BETA} gives a negative ray")),
        branch: None,
        leading_poly: Some(p.to_string()),
        value: None,
        argument: argument(),
    }
}

fn proved_at(reason: String, x: &[Rational]) -> Verdict {
    let mut v = Verdict::proved(reason);
    v.witness = Some(Witness::point(x.to_vec()));
    v
}

/// A random nonnegative form of even degree `d` in three variables: a sum of
/// two squares of forms of degree `d/2`, nonzero on `x3 = 0`.
pub fn random_nonneg_form(rng: &mut impl Rng, d: u32) -> Polynomial {
    assert!(d % 2 == 0 && d > 0, "even degree");
    loop {
        let a = crate::random::form(rng, 3, d / 2, 3, 3);
        let b = crate::random::form(rng, 3, d / 2, 3, 3);
        let t = &a.pow(2) + &b.pow(2);
        if !t.set_var(2, &int(0)).is_zero() {
            return t;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::random::rng_for;
    use crate::rational::rvec;

    fn pair() -> (Polynomial, Polynomial) {
        (
            parse("x1^3*x3 + x1^3*x2 + x2^2*x3^2", 3).unwrap(),
            parse("x1*x3 + x2*x3 + x1*x2", 3).unwrap(),
        )
    }

    #[test]
    fn quartic_square() {
        let (f, g) = pair();
        let t = parse("x1^2 + x2^2 + x3^2", 3).unwrap().pow(2);
        let r = refute_even_degree_multiplier(&f, &g, &t);
        assert!(r.verdict.is_proved());
        match r.branch.unwrap() {
            EvenDegreeBranch::BetaRay {
                beta, sign, point, ..
            } => {
                assert_eq!(beta, int(1));
                assert_eq!(sign.sign, -1);
                assert!((&f - &(&t * &g)).evaluate(&point).is_negative());
            }
            b => panic!("{b:?}"),
        }
    }

    #[test]
    fn plane_branch() {
        let (f, g) = pair();
        for t in ["0", "x3^4"] {
            let r = refute_even_degree_multiplier(&f, &g, &parse(t, 3).unwrap());
            assert!(r.verdict.is_proved(), "{t}");
            match r.branch.unwrap() {
                EvenDegreeBranch::VanishesOnPlane { point } => {
                    assert_eq!(point, rvec(&[1, -1, 0]));
                    assert!(f.evaluate(&point).is_negative());
                }
                b => panic!("{b:?}"),
            }
        }
    }

    #[test]
    fn random_candidates() {
        let (f, g) = pair();
        for i in 0..6 {
            let d = if i % 2 == 0 { 4 } else { 6 };
            let t = random_nonneg_form(&mut rng_for(11, i), d);
            let r = refute_even_degree_multiplier(&f, &g, &t);
            assert!(r.verdict.is_proved(), "{t}: {}", r.verdict.reason);
            let x = r.verdict.witness_point().unwrap();
            assert!((&f - &(&t * &g)).evaluate(x).is_negative());
        }
    }
}
