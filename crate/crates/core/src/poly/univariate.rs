//! Dense univariate polynomials and rational functions over ℚ.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    c: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn zero() -> Self {
        UniPoly { c: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(a: Rational) -> Self {
        Self::new(vec![a])
    }

    /// `a·x^k`.
    pub fn monomial(k: usize, a: Rational) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = a;
        Self::new(c)
    }

    pub fn x() -> Self {
        Self::monomial(1, Rational::one())
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(
            c.iter()
                .map(|&v| Rational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.c.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.c.iter().position(|a| !a.is_zero())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn scale(&self, a: &Rational) -> Self {
        Self::new(self.c.iter().map(|v| v * a).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &UniPoly) -> Self {
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * q) + &Self::constant(a.clone());
        }
        acc
    }

    /// `(quotient, remainder)`; panics on division by zero.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lc();
        let mut r = self.c.clone();
        let Some(rd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if rd < dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); rd - dd + 1];
        for k in (dd..=rd).rev() {
            let a = &r[k] / &lc;
            if a.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k - dd + j] -= &a * b;
            }
            q[k - dd] = a;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    /// Exact quotient if `d` divides `self`.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Integer coefficients with content 1 and positive leading
    /// coefficient; a positive rational multiple of `self` up to sign.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self
            .c
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let ints: Vec<BigInt> = self
            .c
            .iter()
            .map(|a| (a * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
        let sgn = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let g = g * sgn;
        Self::new(
            ints.into_iter()
                .map(|a| Rational::from_integer(a / &g))
                .collect(),
        )
    }

    /// Like [`primitive`](Self::primitive) but never flips the sign.
    pub fn positive_primitive(&self) -> UniPoly {
        let p = self.primitive();
        if self.lc().is_negative() {
            -p
        } else {
            p
        }
    }

    /// Square-free part `p / gcd(p, p')`, monic.
    pub fn square_free(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Yun's algorithm: `p = lc · Π a_k^k` with square-free, pairwise
    /// coprime monic `a_k`. Returns `(a_k, k)` for nonconstant factors.
    pub fn square_free_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).unwrap();
        let mut c = df.exact_div(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut k = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), k));
            }
            b = b.exact_div(&a).unwrap();
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.exact_div(&a).unwrap();
            d = &c - &b.derivative();
            k += 1;
        }
        out
    }

    /// Substitute `x ↦ -x`.
    pub fn reflect(&self) -> UniPoly {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .map(|(k, a)| if k % 2 == 1 { -a } else { a.clone() })
                .collect(),
        )
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = super::Polynomial::from_univariate(self);
        write!(f, "{}", p.display_with(&super::VarNames::new(&["x"])))
    }
}

macro_rules! uni_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly {
                $body(self, rhs)
            }
        }
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                $body(&self, &rhs)
            }
        }
    };
}

fn uni_add(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let n = a.c.len().max(b.c.len());
    UniPoly::new((0..n).map(|k| a.coeff(k) + b.coeff(k)).collect())
}

fn uni_sub(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let n = a.c.len().max(b.c.len());
    UniPoly::new((0..n).map(|k| a.coeff(k) - b.coeff(k)).collect())
}

fn uni_mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero();
    }
    let mut c = vec![Rational::zero(); a.c.len() + b.c.len() - 1];
    for (i, x) in a.c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.c.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    UniPoly::new(c)
}

uni_binop!(Add, add, uni_add);
uni_binop!(Sub, sub, uni_sub);
uni_binop!(Mul, mul, uni_mul);

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.c.iter().map(|a| -a).collect())
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

/// A reduced fraction `num / den` with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniRational {
    num: UniPoly,
    den: UniPoly,
}

impl UniRational {
    /// Normalizes: cancels the gcd and makes the denominator monic.
    /// Panics if `den` is zero.
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.degree().unwrap_or(0) > 0 {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        } else {
            (num, den)
        };
        let l = d.lc();
        n = n.scale(&l.recip());
        d = d.monic();
        UniRational { num: n, den: d }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        UniRational {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Degree valuation at infinity: `deg num − deg den` (`None` for zero).
    pub fn degree(&self) -> Option<i64> {
        self.num
            .degree()
            .map(|dn| dn as i64 - self.den.degree().unwrap() as i64)
    }
}

impl fmt::Display for UniRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UniPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn division_and_gcd() {
        let p = UniPoly::from_ints(&[-1, 0, 0, 0, 1]); // x^4 - 1
        let d = UniPoly::from_ints(&[-1, 0, 1]);
        let (q, r) = p.divrem(&d);
        assert_eq!(q, UniPoly::from_ints(&[1, 0, 1]));
        assert!(r.is_zero());
        let a = UniPoly::from_ints(&[-1, 1]).pow(2) * UniPoly::from_ints(&[2, 1]);
        let b = UniPoly::from_ints(&[-1, 1]) * UniPoly::from_ints(&[5, 0, 1]);
        assert_eq!(a.gcd(&b), UniPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^2 (x^2+1)
        let p = UniPoly::from_ints(&[-1, 1]).pow(2) * UniPoly::from_ints(&[1, 0, 1]);
        let sf = p.square_free_decomposition();
        assert_eq!(
            sf,
            vec![
                (UniPoly::from_ints(&[1, 0, 1]), 1),
                (UniPoly::from_ints(&[-1, 1]), 2)
            ]
        );
        let q = UniPoly::from_ints(&[2, 1]).pow(3).scale(&rat(-3, 2));
        assert_eq!(
            q.square_free_decomposition(),
            vec![(UniPoly::from_ints(&[2, 1]), 3)]
        );
        assert!(UniPoly::constant(int(4))
            .square_free_decomposition()
            .is_empty());
    }

    #[test]
    fn primitive_parts() {
        let p = UniPoly::new(vec![rat(1, 2), rat(-3, 4)]);
        assert_eq!(p.primitive(), UniPoly::from_ints(&[-2, 3]));
        assert_eq!(p.positive_primitive(), UniPoly::from_ints(&[2, -3]));
    }

    #[test]
    fn rational_functions() {
        let r = UniRational::new(UniPoly::from_ints(&[-1, 0, 1]), UniPoly::from_ints(&[2, 2]));
        assert_eq!(r.num(), &UniPoly::new(vec![rat(-1, 2), rat(1, 2)]));
        assert_eq!(r.den(), &UniPoly::one());
        let s = UniRational::new(UniPoly::from_ints(&[1]), UniPoly::from_ints(&[-1, 1]));
        assert_eq!(s.eval(&int(1)), None);
        assert_eq!(s.degree(), Some(-1));
    }

    #[test]
    fn composition_and_reflection() {
        let p = UniPoly::from_ints(&[0, 0, 1]);
        assert_eq!(
            p.compose(&UniPoly::from_ints(&[1, 1])),
            UniPoly::from_ints(&[1, 2, 1])
        );
        assert_eq!(
            UniPoly::from_ints(&[1, 2, 3]).reflect(),
            UniPoly::from_ints(&[1, -2, 3])
        );
    }
}
