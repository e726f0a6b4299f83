//! Named (f, g) pairs used throughout the counterexample checks.

use super::CounterError;
use crate::poly::{parse, Polynomial};
use crate::rational::{rat, Rational};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedInstance {
    pub name: String,
    pub f: Polynomial,
    pub g: Polynomial,
    pub nvars: usize,
    pub description: String,
    /// Perturbation parameter for `ternary-perturbed` instances.
    #[serde(
        with = "crate::rational::serde_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub epsilon: Option<Rational>,
}

/// Perturbation used by the catalog's `ternary-perturbed` entry.
pub fn default_epsilon() -> Rational {
    rat(1, 10)
}

fn entry(name: &str, f: &str, g: &str, nvars: usize, description: &str) -> NamedInstance {
    NamedInstance {
        name: name.into(),
        f: parse(f, nvars).expect("catalog polynomial"),
        g: parse(g, nvars).expect("catalog polynomial"),
        nvars,
        description: description.into(),
        epsilon: None,
    }
}

/// `l1 = -3 + x1 - x2`, `l2 = 3 + x1 - x2` of the non-geometric pair.
pub fn nongeom_lines() -> (Polynomial, Polynomial) {
    (
        parse("-3 + x1 - x2", 2).expect("line"),
        parse("3 + x1 - x2", 2).expect("line"),
    )
}

fn nongeom() -> NamedInstance {
    let (l1, l2) = nongeom_lines();
    let p = parse("-x1^3 + x2^3 + 2*x1 + 1", 2).expect("cubic");
    let g = l1.try_mul(&l2).expect("same ring");
    let f = l2.try_mul(&p).expect("same ring").scale(&rat(-1, 1));
    NamedInstance {
        name: "nongeom".into(),
        f,
        g,
        nvars: 2,
        description:
            "g is a product of two parallel lines and S(g) is not the closure of its interior"
                .into(),
        epsilon: None,
    }
}

pub fn catalog() -> Vec<NamedInstance> {
    let ternary = entry(
        "ternary-counterexample",
        "x1^3*x3 + x1^3*x2 + x2^2*x3^2",
        "x1*x3 + x2*x3 + x1*x2",
        3,
        "quartic form and quadratic form in three variables with no quadratic multiplier",
    );
    let perturbed = super::perturb(&ternary, &default_epsilon()).expect("positive epsilon");
    vec![
        ternary,
        perturbed,
        entry(
            "dehomog-counterexample",
            "x1^3 + x1^3*x2 + x2^2",
            "x1 + x2 + x1*x2",
            2,
            "the ternary pair at x3 = 1; no nonnegative multiplier of any degree",
        ),
        entry(
            "l3.1",
            "x1^4 - x1^2*x2^2",
            "x1^2 - x2^2",
            2,
            "quartic pair where no constant multiplier works",
        ),
        entry(
            "convexity-quartics",
            "x1^4 - x1*x2^3",
            "x1^3*x2 - x1^2*x2^2",
            2,
            "two quartic forms with a non-convex joint range",
        ),
        nongeom(),
        entry(
            "counter2-quintic",
            "x1^5 + x1^5*x2 + x2^2",
            "x1 + x2 + x1*x2^3",
            2,
            "quintic pair with a sign-flip witness bundle at z = (1,1)",
        ),
        entry(
            "counter2-swapped",
            "x2^5 + x2^5*x1 + x1^2",
            "x2 + x1 + x2*x1^3",
            2,
            "the quintic pair with x1 and x2 exchanged",
        ),
    ]
}

pub fn lookup(name: &str) -> Result<NamedInstance, CounterError> {
    if let Some(eps) = name.strip_prefix("ternary-perturbed:") {
        let eps =
            crate::rational::parse_rational(eps).map_err(|e| CounterError::BadEpsilon(e.0))?;
        let base = lookup("ternary-counterexample")?;
        return super::perturb(&base, &eps);
    }
    catalog()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| CounterError::UnknownInstance(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        let t = lookup("ternary-counterexample").unwrap();
        assert_eq!(t.f, parse("x1^3*x3 + x1^3*x2 + x2^2*x3^2", 3).unwrap());
        assert_eq!(t.g, parse("x1*x3 + x2*x3 + x1*x2", 3).unwrap());
        let n = lookup("nongeom").unwrap();
        assert_eq!(n.g, parse("x1^2 - 2*x1*x2 + x2^2 - 9", 2).unwrap());
        assert!(matches!(
            lookup("nope"),
            Err(CounterError::UnknownInstance(_))
        ));
        let p = lookup("ternary-perturbed:1/4").unwrap();
        assert_eq!(p.g, parse("x1*x3 + x2*x3 + x1*x2 + 1/4*x3^2", 3).unwrap());
        let names: Vec<String> = catalog().into_iter().map(|c| c.name).collect();
        for want in [
            "ternary-counterexample",
            "ternary-perturbed",
            "dehomog-counterexample",
            "l3.1",
            "convexity-quartics",
            "nongeom",
            "counter2-quintic",
        ] {
            assert!(names.iter().any(|n| n == want), "{want}");
        }
    }
}
