//! Degrees, z-gradings, leading forms and ray compositions.

use super::{Exponent, PolyError, Polynomial, UniPoly, UniRational};
use crate::rational::Rational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Total degree; the zero polynomial has degree `-∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Integer weight vector defining the z-grading `deg x^δ = ⟨z, δ⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Grading(pub Vec<i64>);

impl Grading {
    pub fn ones(n: usize) -> Self {
        Grading(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All entries nonnegative and none above the first.
    pub fn in_n1(&self) -> bool {
        match self.0.first() {
            None => true,
            Some(&z1) => self.0.iter().all(|&z| z >= 0 && z <= z1),
        }
    }

    pub fn weight(&self, e: &Exponent) -> i64 {
        assert_eq!(e.len(), self.0.len(), "grading length");
        self.0.iter().zip(&e.0).map(|(z, &k)| z * k as i64).sum()
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|z| z.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Result of substituting `x_i ↦ λ^{z_i}·x_i` at a fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RayComposition {
    Polynomial(UniPoly),
    /// Negative weights give a Laurent polynomial, stored as a fraction
    /// with a power-of-λ denominator.
    Laurent(UniRational),
}

impl RayComposition {
    /// A polynomial whose sign agrees with the composition for `λ > 0`.
    pub fn sign_equivalent(&self) -> UniPoly {
        match self {
            RayComposition::Polynomial(p) => p.clone(),
            RayComposition::Laurent(r) => r.num().clone(),
        }
    }
}

impl Polynomial {
    /// Maximal z-weight over the terms; `None` for the zero polynomial.
    pub fn z_degree(&self, z: &Grading) -> Option<i64> {
        self.terms().map(|(e, _)| z.weight(e)).max()
    }

    /// The homogeneous component of maximal z-weight.
    pub fn leading_form_z(&self, z: &Grading) -> Result<Polynomial, PolyError> {
        let d = self.z_degree(z).ok_or(PolyError::ZeroPolynomial)?;
        Ok(self.filter_terms(|e| z.weight(e) == d))
    }

    /// `p(λ^{z_1}x_1, …, λ^{z_n}x_n)` as a univariate function of λ.
    pub fn compose_ray(&self, x: &[Rational], z: &Grading) -> RayComposition {
        assert_eq!(x.len(), self.nvars(), "point length");
        let mut by_weight: BTreeMap<i64, Polynomial> = BTreeMap::new();
        for (e, c) in self.terms() {
            by_weight
                .entry(z.weight(e))
                .or_insert_with(|| Polynomial::zero(self.nvars()))
                .add_term(e.clone(), c.clone());
        }
        let min = by_weight.keys().next().copied().unwrap_or(0).min(0);
        let max = by_weight.keys().next_back().copied().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); (max - min + 1) as usize];
        for (w, part) in &by_weight {
            coeffs[(w - min) as usize] = part.evaluate(x);
        }
        let num = UniPoly::new(coeffs);
        if min < 0 {
            let den = UniPoly::monomial((-min) as usize, Rational::from_integer(1.into()));
            RayComposition::Laurent(UniRational::new(num, den))
        } else {
            RayComposition::Polynomial(num)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::rational::{int, rvec};

    #[test]
    fn degree_order() {
        assert!(Degree::NegInf < Degree::Finite(0));
        assert_eq!(Polynomial::zero(2).total_degree(), Degree::NegInf);
    }

    #[test]
    fn n1_predicate() {
        assert!(Grading(vec![3, 1]).in_n1());
        assert!(Grading(vec![1, 1, 0]).in_n1());
        assert!(!Grading(vec![1, 3]).in_n1());
        assert!(!Grading(vec![2, -1]).in_n1());
    }

    #[test]
    fn leading_forms() {
        let f = parse("x2^3 + x2^3*x1 + x1^2", 2).unwrap();
        assert_eq!(
            f.leading_form_z(&Grading(vec![3, 1])).unwrap(),
            parse("x2^3*x1 + x1^2", 2).unwrap()
        );
        let g = parse("x1 + x2 + x1*x2", 2).unwrap();
        assert_eq!(
            g.leading_form_z(&Grading::ones(2)).unwrap(),
            parse("x1*x2", 2).unwrap()
        );
        let h = parse("x1^2 - 3*x1*x2", 2).unwrap();
        assert_eq!(h.leading_form_z(&Grading::ones(2)).unwrap(), h);
        assert!(Polynomial::zero(2)
            .leading_form_z(&Grading::ones(2))
            .is_err());
    }

    #[test]
    fn ray_composition_examples() {
        let g = parse("x1 + x2 + x1*x2^3", 2).unwrap();
        // z = (2, 1): 5λ^2 + 5λ + 625λ^5
        let RayComposition::Polynomial(u) = g.compose_ray(&rvec(&[5, 5]), &Grading(vec![2, 1]))
        else {
            panic!("expected polynomial");
        };
        assert_eq!(u, UniPoly::new(rvec(&[0, 5, 5, 0, 0, 625])));
        let f = parse("x1^5 + x1^5*x2 + x2^2", 2).unwrap();
        let RayComposition::Polynomial(v) = f.compose_ray(&rvec(&[5, -5]), &Grading(vec![1, 1]))
        else {
            panic!("expected polynomial");
        };
        assert_eq!(v.coeff(5), int(3125));
        assert_eq!(v.coeff(2), int(25));
        assert_eq!(v.coeff(6), int(-15625));
        let RayComposition::Polynomial(c) = f.compose_ray(&rvec(&[5, -5]), &Grading(vec![0, 0]))
        else {
            panic!();
        };
        assert_eq!(c, UniPoly::constant(f.evaluate(&rvec(&[5, -5]))));
        assert!(matches!(
            g.compose_ray(&rvec(&[1, 1]), &Grading(vec![1, -1])),
            RayComposition::Laurent(_)
        ));
    }
}
