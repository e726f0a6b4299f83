//! Sparse multivariate polynomials over ℚ.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors; zero coefficients
//! are never stored. Canonical printing uses graded-lex order (see
//! [`display`]).

mod display;
mod grading;
mod parse;
pub mod univariate;

pub use display::VarNames;
pub use grading::{Degree, Grading, RayComposition};
pub use parse::{parse, parse_named, ParseError};
pub use univariate::{UniPoly, UniRational};

use crate::rational::Rational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector; the derived `Ord` is lexicographic with `x1` most
/// significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Exponent(e)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when `other` divides `self` componentwise.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("variable index {index} out of range for {nvars} variables")]
    VarOutOfRange { index: usize, nvars: usize },
    #[error("expected {expected} coordinates, got {got}")]
    PointLength { expected: usize, got: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Exponent::zero(nvars), c)
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars}");
        Self::monomial(nvars, Exponent::unit(nvars, i), Rational::one())
    }

    pub fn monomial(nvars: usize, e: Exponent, c: Rational) -> Self {
        assert_eq!(e.len(), nvars, "exponent length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Polynomial { nvars, terms }
    }

    /// Build from `(exponent, coefficient)` pairs, summing duplicates.
    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(Exponent(e), c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lex order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms
            .get(&Exponent(e.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.total() == 0)
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|e| e.total())
            .max()
            .map_or(Degree::NegInf, Degree::Finite)
    }

    /// Degree in one variable.
    pub fn degree_in(&self, var: usize) -> Degree {
        self.terms
            .keys()
            .map(|e| e.0[var])
            .max()
            .map_or(Degree::NegInf, Degree::Finite)
    }

    /// Homogeneous with every term of the same total degree; zero counts.
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.total());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        self.filter_terms(|e| e.total() == d)
    }

    pub(crate) fn filter_terms(&self, keep: impl Fn(&Exponent) -> bool) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::NvarsMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), -c);
        }
        Ok(r)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        let mut r = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                r.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn try_evaluate(&self, x: &[Rational]) -> Result<Rational, PolyError> {
        if x.len() != self.nvars {
            return Err(PolyError::PointLength {
                expected: self.nvars,
                got: x.len(),
            });
        }
        Ok(self.evaluate(x))
    }

    /// Exact value at `x`. Panics if `x.len() != nvars`.
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars, "point length");
        // Cache powers per variable; degrees here are small.
        let mut pows: Vec<Vec<Rational>> =
            x.iter().map(|v| vec![Rational::one(), v.clone()]).collect();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let k = k as usize;
                while pows[i].len() <= k {
                    let next = pows[i].last().unwrap() * &x[i];
                    pows[i].push(next);
                }
                t *= &pows[i][k];
            }
            acc += t;
        }
        acc
    }

    /// Replace every variable `x_i` by `images[i]`; all images share one
    /// variable count, which becomes the result's.
    pub fn compose(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let m = images.first().map_or(0, |p| p.nvars);
        let mut cache: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| {
                assert_eq!(p.nvars, m, "images must share nvars");
                vec![Polynomial::one(m), p.clone()]
            })
            .collect();
        let mut acc = Polynomial::zero(m);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(m, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let k = k as usize;
                while cache[i].len() <= k {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][k];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitute selected variables by polynomials in the same ring.
    pub fn substitute(&self, assignments: &[(usize, Polynomial)]) -> Polynomial {
        let mut images: Vec<Polynomial> = (0..self.nvars)
            .map(|i| Polynomial::var(self.nvars, i))
            .collect();
        for (i, p) in assignments {
            assert_eq!(p.nvars, self.nvars, "substitution stays in the same ring");
            images[*i] = p.clone();
        }
        self.compose(&images)
    }

    /// Fix one variable to a value, keeping the variable count.
    pub fn set_var(&self, var: usize, value: &Rational) -> Polynomial {
        self.substitute(&[(var, Polynomial::constant(self.nvars, value.clone()))])
    }

    /// Homogenize to total degree `deg(p)` with a new last variable.
    pub fn homogenize(&self) -> Result<Polynomial, PolyError> {
        match self.total_degree() {
            Degree::NegInf => Err(PolyError::ZeroPolynomial),
            Degree::Finite(d) => Ok(self.homogenize_to(d)),
        }
    }

    /// Homogenize to a given degree `d >= deg(p)` with a new last variable.
    pub fn homogenize_to(&self, d: u32) -> Polynomial {
        let mut r = Polynomial::zero(self.nvars + 1);
        for (e, c) in &self.terms {
            let t = e.total();
            assert!(t <= d, "target degree below polynomial degree");
            let mut v = e.0.clone();
            v.push(d - t);
            r.add_term(Exponent(v), c.clone());
        }
        r
    }

    /// Set `x_var = 1` in a homogeneous polynomial and drop that variable.
    pub fn dehomogenize(&self, var: usize) -> Result<Polynomial, PolyError> {
        if !self.is_homogeneous() {
            return Err(PolyError::NotHomogeneous);
        }
        self.set_var_drop(var)
    }

    /// Set `x_var = 1` and drop the variable, for any polynomial.
    pub fn set_var_drop(&self, var: usize) -> Result<Polynomial, PolyError> {
        if var >= self.nvars {
            return Err(PolyError::VarOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        let mut r = Polynomial::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            let mut v = e.0.clone();
            v.remove(var);
            r.add_term(Exponent(v), c.clone());
        }
        Ok(r)
    }

    /// Append `extra` unused variables.
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut v = e.0.clone();
                    v.extend(std::iter::repeat(0).take(extra));
                    (Exponent(v), c.clone())
                })
                .collect(),
        }
    }

    /// Rename variables: old variable `i` becomes `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Polynomial {
        assert_eq!(perm.len(), self.nvars);
        let mut r = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut v = vec![0; self.nvars];
            for (i, &k) in e.0.iter().enumerate() {
                v[perm[i]] = k;
            }
            r.add_term(Exponent(v), c.clone());
        }
        r
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut r = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k == 0 {
                continue;
            }
            let mut v = e.0.clone();
            v[var] -= 1;
            r.add_term(Exponent(v), c * Rational::from_integer(k.into()));
        }
        r
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    /// Lex-maximal term.
    pub fn leading_term_lex(&self) -> Result<(Exponent, Rational), PolyError> {
        self.terms
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// The univariate view when `nvars == 1`.
    pub fn to_univariate(&self) -> Option<UniPoly> {
        if self.nvars != 1 {
            return None;
        }
        let deg = match self.total_degree() {
            Degree::NegInf => return Some(UniPoly::zero()),
            Degree::Finite(d) => d as usize,
        };
        let mut c = vec![Rational::zero(); deg + 1];
        for (e, a) in &self.terms {
            c[e.0[0] as usize] = a.clone();
        }
        Some(UniPoly::new(c))
    }

    pub fn from_univariate(p: &UniPoly) -> Polynomial {
        Polynomial::from_terms(
            1,
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (vec![k as u32], c.clone())),
        )
    }

    /// Restrict to the line `x = base + s·dir`, as a polynomial in `s`.
    pub fn restrict_to_line(&self, base: &[Rational], dir: &[Rational]) -> UniPoly {
        let images: Vec<UniPoly> = base
            .iter()
            .zip(dir)
            .map(|(b, d)| UniPoly::new(vec![b.clone(), d.clone()]))
            .collect();
        self.compose_univariate(&images)
    }

    /// Replace every variable by a univariate polynomial.
    pub fn compose_univariate(&self, images: &[UniPoly]) -> UniPoly {
        assert_eq!(images.len(), self.nvars);
        let mut cache: Vec<Vec<UniPoly>> = images
            .iter()
            .map(|p| vec![UniPoly::one(), p.clone()])
            .collect();
        let mut acc = UniPoly::zero();
        for (e, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let k = k as usize;
                while cache[i].len() <= k {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][k];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Coefficients with respect to `var`: `p = Σ_k c_k · x_var^k`, each
    /// `c_k` free of `x_var` (same variable count).
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let d = match self.degree_in(var) {
            Degree::NegInf => return vec![],
            Degree::Finite(d) => d as usize,
        };
        let mut out = vec![Polynomial::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let k = e.0[var] as usize;
            let mut v = e.0.clone();
            v[var] = 0;
            out[k].add_term(Exponent(v), c.clone());
        }
        out
    }

    /// Division by a divisor that is monic in `var`, inside
    /// `(ℚ[other vars])[x_var]`. Returns `(quotient, remainder)` with
    /// `deg_var(remainder) < deg_var(divisor)`.
    pub fn divrem_monic_in(&self, divisor: &Polynomial, var: usize) -> (Polynomial, Polynomial) {
        let m = match divisor.degree_in(var) {
            Degree::Finite(m) => m,
            Degree::NegInf => panic!("division by zero polynomial"),
        };
        let dc = divisor.coefficients_in(var);
        assert!(
            dc[m as usize] == Polynomial::one(self.nvars),
            "divisor must be monic in the chosen variable"
        );
        let mut q = Polynomial::zero(self.nvars);
        let mut r = self.clone();
        while let Degree::Finite(k) = r.degree_in(var) {
            if k < m {
                break;
            }
            let lead = r.coefficients_in(var).swap_remove(k as usize);
            let shift = Polynomial::monomial(
                self.nvars,
                {
                    let mut v = vec![0; self.nvars];
                    v[var] = k - m;
                    Exponent(v)
                },
                Rational::one(),
            );
            let t = &lead * &shift;
            r = &r - &(&t * divisor);
            q = &q + &t;
        }
        (q, r)
    }

    /// Exact quotient `self / d` when `d` divides `self`, else `None`.
    /// Uses full reduction against the lex-leading term of `d`, which
    /// leaves a zero remainder exactly when `d` divides `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_lex(d);
        r.is_zero().then_some(q)
    }

    /// Multivariate division by a single divisor under lex order.
    pub fn div_lex(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let (ld, lc) = d.leading_term_lex().expect("division by zero polynomial");
        let mut q = Polynomial::zero(self.nvars);
        let mut rem = Polynomial::zero(self.nvars);
        let mut p = self.clone();
        while let Some((e, c)) = p
            .terms
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
        {
            match e.checked_sub(&ld) {
                Some(shift) => {
                    let t = Polynomial::monomial(self.nvars, shift, &c / &lc);
                    p = &p - &(&t * d);
                    q = &q + &t;
                }
                None => {
                    p.terms.remove(&e);
                    rem.add_term(e, c);
                }
            }
        }
        (q, rem)
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Display using custom variable names.
    pub fn display_with<'a>(&'a self, names: &'a VarNames) -> display::Displayed<'a> {
        display::Displayed { p: self, names }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics on mismatched variable counts; use the `try_` form to
            /// get an error instead.
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Polynomial", 2)?;
        st.serialize_field("nvars", &self.nvars)?;
        st.serialize_field("expr", &self.to_string())?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            nvars: usize,
            expr: String,
        }
        let raw = Raw::deserialize(d)?;
        parse(&raw.expr, raw.nvars).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, rvec};

    fn p(s: &str, n: usize) -> Polynomial {
        parse(s, n).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("x1^2 - x2^2", 2);
        let b = p("x1^2 + x2^2", 2);
        assert_eq!(&a * &b, p("x1^4 - x2^4", 2));
        assert!((&a * &Polynomial::zero(2)).is_zero());
    }

    #[test]
    fn intro_residual() {
        let f = p("x1^4 - x2^4", 2);
        let g = p("x1^2 - x2^2", 2);
        let t = p("2*x2^2", 2);
        assert_eq!(&f - &(&t * &g), g.pow(2));
    }

    #[test]
    fn evaluation() {
        let g = p("x1*x3 + x2*x3 + x1*x2", 3);
        assert_eq!(g.evaluate(&rvec(&[1, 1, 1])), int(3));
        let f = p("x1^3*x3 + x1^3*x2 + x2^2*x3^2", 3);
        assert_eq!(f.evaluate(&rvec(&[1, -1, 0])), int(-1));
        assert_eq!(f.evaluate(&rvec(&[0, 0, 0])), f.constant_term());
        assert!(f.try_evaluate(&rvec(&[1])).is_err());
    }

    #[test]
    fn blowup_substitution() {
        let ft = p("x1^3 + x1^3*x2 + x2^2", 2);
        let x1z2 = p("x1*x2", 2);
        assert_eq!(
            ft.substitute(&[(1, x1z2.clone())]),
            p("x2^2*x1^2 + x1^3 + x2*x1^4", 2)
        );
        let gt = p("x1 + x2 + x1*x2", 2);
        assert_eq!(gt.substitute(&[(1, x1z2)]), p("x1 + x2*x1 + x2*x1^2", 2));
        assert_eq!(gt.substitute(&[]), gt);
    }

    #[test]
    fn homogenization() {
        let ft = p("x1^3 + x1^3*x2 + x2^2", 2);
        assert_eq!(
            ft.homogenize().unwrap(),
            p("x1^3*x3 + x1^3*x2 + x2^2*x3^2", 3)
        );
        let gt = p("x1 + x2 + x1*x2", 2);
        let gh = gt.homogenize().unwrap();
        assert_eq!(gh, p("x1*x3 + x2*x3 + x1*x2", 3));
        assert_eq!(gh.dehomogenize(2).unwrap(), gt);
        assert_eq!(Polynomial::one(1).homogenize().unwrap(), Polynomial::one(2));
        assert_eq!(
            Polynomial::zero(2).homogenize(),
            Err(PolyError::ZeroPolynomial)
        );
        assert_eq!(gt.dehomogenize(0), Err(PolyError::NotHomogeneous));
    }

    #[test]
    fn gradients() {
        let ft = p("x1^3 + x1^3*x2 + x2^2", 2);
        assert_eq!(
            ft.gradient(),
            vec![p("3*x1^2 + 3*x1^2*x2", 2), p("x1^3 + 2*x2", 2)]
        );
        assert!(Polynomial::constant(2, int(5))
            .gradient()
            .iter()
            .all(Polynomial::is_zero));
        let f = p("x1^3*x3 + x1^3*x2 + x2^2*x3^2", 3);
        let on_plane: Vec<_> = f.gradient().iter().map(|d| d.set_var(2, &int(0))).collect();
        assert_eq!(
            on_plane,
            vec![p("3*x1^2*x2", 3), p("x1^3", 3), p("x1^3", 3)]
        );
    }

    #[test]
    fn lex_leading_terms() {
        let g = p("x1 + x2 + x1*x2", 2);
        assert_eq!(
            g.leading_term_lex().unwrap(),
            (Exponent(vec![1, 1]), int(1))
        );
        let f = p("x1^3 + x1^3*x2 + x2^2", 2);
        assert_eq!(f.leading_term_lex().unwrap().0, Exponent(vec![3, 1]));
        let m = p("3*x1*x2^2", 2);
        assert_eq!(
            m.leading_term_lex().unwrap(),
            (Exponent(vec![1, 2]), int(3))
        );
    }

    #[test]
    fn exact_division() {
        let a = p("x1^2 - 2*x1*x2 + x2^2 - 9", 2);
        let l1 = p("-3 + x1 - x2", 2);
        let l2 = p("3 + x1 - x2", 2);
        assert_eq!(a.exact_div(&l1).unwrap(), l2);
        assert!(a.exact_div(&p("x1", 2)).is_none());
    }

    #[test]
    fn monic_division() {
        let l2 = p("3 + x1 - x2", 2);
        let d = l2.pow(2);
        let f = p("x1^3 + x2", 2);
        let (q, r) = f.divrem_monic_in(&d, 0);
        assert_eq!(&(&q * &d) + &r, f);
        assert!(r.degree_in(0) < Degree::Finite(2));
    }

    #[test]
    fn line_restriction() {
        let f = p("x1^2 + x2", 2);
        let u = f.restrict_to_line(&rvec(&[1, 0]), &rvec(&[1, 2]));
        // (1+s)^2 + 2s
        assert_eq!(u, UniPoly::new(rvec(&[1, 4, 1])));
        assert_eq!(u.eval(&rat(1, 2)), f.evaluate(&[rat(3, 2), int(1)]));
    }

    #[test]
    fn mismatched_nvars_is_an_error() {
        let a = Polynomial::one(2);
        let b = Polynomial::one(3);
        assert!(matches!(
            a.try_add(&b),
            Err(PolyError::NvarsMismatch { .. })
        ));
    }
}
