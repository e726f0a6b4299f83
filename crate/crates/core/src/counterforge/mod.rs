//! Known counterexample pairs and exact checks of their refutations.

pub mod catalog;
pub mod even_degree;
pub mod linsys;
pub mod nongeom;
pub mod refute;
pub mod singular;
pub mod tower;

pub use catalog::{catalog, lookup, NamedInstance};
pub use even_degree::{refute_even_degree_multiplier, EvenDegreeReport};
pub use linsys::{Constraint, LinearConstraintSystem, Relation, SystemStatus};
pub use nongeom::{nongeom_verify, NongeomReport, RemainderTriple};
pub use refute::{
    default_curves, refute_quadratic_multiplier, Refutation, RefuteConfig, RestrictionCurve,
};
pub use singular::{line_in_zero_set, singular_locus_check};
pub use tower::{blonk_instance, blowup_step, nu, tower, BlonkInstance, BlowUp, TowerLevel};

use crate::certify::{inclusion_check, SamplingConfig, VerdictKind};
use crate::poly::{Exponent, Polynomial};
use crate::rational::{pow2, serde_str, to_short_string, Rational};
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CounterError {
    #[error("unknown instance {0:?}")]
    UnknownInstance(String),
    #[error("epsilon must be nonnegative, got {0}")]
    NegativeEpsilon(String),
    #[error("bad epsilon: {0}")]
    BadEpsilon(String),
    #[error("perturbation needs a pair in three variables, got {0}")]
    NotTernary(usize),
    #[error("no working epsilon among {tried} candidates down to {smallest}")]
    ScanExhausted { tried: usize, smallest: String },
    #[error("degree {0} is not in {{4, 5, 6}} or {{2n : n >= 4}}")]
    UnsupportedDegree(i64),
    #[error("identity failed: {0}")]
    Identity(String),
}

/// `f + ε·x3⁴`, `g + ε·x3²`. `ε = 0` returns the pair unchanged.
pub fn perturb(base: &NamedInstance, eps: &Rational) -> Result<NamedInstance, CounterError> {
    if eps.is_negative() {
        return Err(CounterError::NegativeEpsilon(to_short_string(eps)));
    }
    if base.nvars != 3 {
        return Err(CounterError::NotTernary(base.nvars));
    }
    if eps.is_zero() {
        return Ok(base.clone());
    }
    let x3 = |k: u32| Polynomial::monomial(3, Exponent(vec![0, 0, k]), eps.clone());
    Ok(NamedInstance {
        name: "ternary-perturbed".into(),
        f: &base.f + &x3(4),
        g: &base.g + &x3(2),
        nvars: 3,
        description: format!(
            "{} plus eps*x3^4 and eps*x3^2 with eps = {}",
            base.name,
            to_short_string(eps)
        ),
        epsilon: Some(eps.clone()),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EpsilonAttempt {
    #[serde(with = "serde_str")]
    pub epsilon: Rational,
    pub inclusion: VerdictKind,
    pub refutation: VerdictKind,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EpsilonScan {
    #[serde(with = "serde_str")]
    pub epsilon: Rational,
    pub instance: NamedInstance,
    pub refutation: Refutation,
    pub attempts: Vec<EpsilonAttempt>,
}

#[derive(Clone, Debug)]
pub struct EpsilonScanConfig {
    /// Candidates are `1/2, 1/4, …, 1/2^halvings`.
    pub halvings: u32,
    pub sampling: SamplingConfig,
    pub refute: RefuteConfig,
}

impl Default for EpsilonScanConfig {
    fn default() -> Self {
        EpsilonScanConfig {
            halvings: 8,
            sampling: SamplingConfig::default(),
            refute: RefuteConfig::default(),
        }
    }
}

fn attempt(
    base: &NamedInstance,
    eps: &Rational,
    cfg: &EpsilonScanConfig,
) -> (EpsilonAttempt, NamedInstance, Refutation) {
    let inst = perturb(base, eps).expect("positive epsilon on a ternary pair");
    let inclusion = inclusion_check(&inst.g, &inst.f, &cfg.sampling);
    let refutation = refute_quadratic_multiplier(&inst.f, &inst.g, &default_curves(3), &cfg.refute);
    let reason = if inclusion.is_disproved() {
        format!("inclusion fails: {}", inclusion.reason)
    } else {
        refutation.verdict.reason.clone()
    };
    let att = EpsilonAttempt {
        epsilon: eps.clone(),
        inclusion: inclusion.kind,
        refutation: refutation.verdict.kind,
        reason,
    };
    (att, inst, refutation)
}

/// Scans `ε = 1/2, 1/4, …` for a perturbed pair that keeps the inclusion
/// and still has no quadratic multiplier, stopping at the first hit. Each
/// attempt parallelizes internally according to its sampling config.
pub fn find_working_epsilon(
    base: &NamedInstance,
    cfg: &EpsilonScanConfig,
) -> Result<EpsilonScan, (CounterError, Vec<EpsilonAttempt>)> {
    let mut attempts = Vec::new();
    for i in 1..=cfg.halvings {
        let eps = pow2(i).recip();
        let (att, instance, refutation) = attempt(base, &eps, cfg);
        let hit = att.inclusion != VerdictKind::Disproved && att.refutation == VerdictKind::Proved;
        attempts.push(att);
        if hit {
            return Ok(EpsilonScan {
                epsilon: eps,
                instance,
                refutation,
                attempts,
            });
        }
    }
    Err((
        CounterError::ScanExhausted {
            tried: attempts.len(),
            smallest: to_short_string(&pow2(cfg.halvings).recip()),
        },
        attempts,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn perturb_edges() {
        let base = lookup("ternary-counterexample").unwrap();
        assert_eq!(perturb(&base, &int(0)).unwrap(), base);
        assert!(matches!(
            perturb(&base, &rat(-1, 3)),
            Err(CounterError::NegativeEpsilon(_))
        ));
        let p = perturb(&base, &rat(1, 10)).unwrap();
        assert_eq!(p.f.coeff(&[0, 0, 4]), rat(1, 10));
        assert_eq!(p.g.coeff(&[0, 0, 2]), rat(1, 10));
        let l = lookup("l3.1").unwrap();
        assert!(matches!(
            perturb(&l, &rat(1, 2)),
            Err(CounterError::NotTernary(2))
        ));
    }

    #[test]
    fn epsilon_scan_finds_a_counterexample() {
        let base = lookup("ternary-counterexample").unwrap();
        let scan = find_working_epsilon(&base, &EpsilonScanConfig::default())
            .map_err(|e| e.0)
            .unwrap();
        assert_eq!(scan.epsilon, rat(1, 64));
        assert!(scan.refutation.verdict.is_proved());
        assert_eq!(scan.attempts.len(), 6);
        assert!(scan.attempts[..5]
            .iter()
            .all(|a| a.refutation == VerdictKind::Unknown));
        // The candidate singled out for 1/10 is recorded, not refuted.
        let p = perturb(&base, &rat(1, 10)).unwrap();
        let r =
            refute_quadratic_multiplier(&p.f, &p.g, &default_curves(3), &RefuteConfig::default());
        assert_eq!(r.verdict.kind, VerdictKind::Unknown);
    }
}
