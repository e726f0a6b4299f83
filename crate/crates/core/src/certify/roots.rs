//! Real root isolation with Sturm sequences.
//!
//! A root is kept as a rational interval together with a square-free
//! polynomial that has exactly one root in it. Either the interval is a
//! single rational point (an exact root) or `lo < hi`, the polynomial is
//! nonzero at both ends with opposite signs, and the root lies in the open
//! interval. Every query refines by bisection, so no precision is fixed up
//! front.

use crate::poly::UniPoly;
use crate::rational::{rat, serde_str, serde_vec, sign, simplest_in, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

fn mid(a: &Rational, b: &Rational) -> Rational {
    (a + b) * rat(1, 2)
}

/// `1 + max |a_i / a_n|`; every complex root has modulus below it.
pub fn cauchy_bound(p: &UniPoly) -> Rational {
    let Some(d) = p.degree() else {
        return Rational::one();
    };
    let lc = p.lc().abs();
    let m = (0..d)
        .map(|i| p.coeff(i).abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    Rational::one() + m
}

/// A power of two strictly above the modulus of every complex root
/// (Fujiwara's bound, rounded up through bit lengths).
pub fn root_bound(p: &UniPoly) -> Rational {
    let Some(n) = p.degree().filter(|&d| d > 0) else {
        return Rational::one();
    };
    let lc = p.lc().abs();
    let bits = |x: &Rational| x.numer().bits() as i64 - x.denom().bits() as i64 + 1;
    let e = (1..=n)
        .filter_map(|i| {
            let c = p.coeff(n - i);
            (!c.is_zero()).then(|| {
                let r = c.abs() / &lc;
                // r <= 2^bits(r), so r^(1/i) <= 2^ceil(bits/i).
                bits(&r).div_euclid(i as i64) + i64::from(bits(&r).rem_euclid(i as i64) != 0)
            })
        })
        .max()
        .unwrap_or(0);
    let k = e + 2;
    if k >= 0 {
        Rational::from_integer(BigInt::one() << k as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-k) as usize)
    }
}

/// Sturm chain `p, p', -rem(p, p'), …` rescaled by positive constants to
/// primitive integer polynomials.
#[derive(Clone, Debug)]
pub struct SturmChain {
    ints: Vec<Vec<BigInt>>,
}

impl SturmChain {
    pub fn len(&self) -> usize {
        self.ints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ints.is_empty()
    }
}

fn int_coeffs(p: &UniPoly) -> Vec<BigInt> {
    p.coeffs().iter().map(|c| c.to_integer()).collect()
}

// Sign of an integer polynomial at n/d, by Horner on the homogenized form.
fn sign_at(c: &[BigInt], x: &Rational) -> i8 {
    let Some((top, rest)) = c.split_last() else {
        return 0;
    };
    let (n, d) = (x.numer(), x.denom());
    let mut acc = top.clone();
    let mut dp = BigInt::one();
    for ci in rest.iter().rev() {
        dp *= d;
        acc = acc * n + ci * &dp;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

pub fn sturm_chain(p: &UniPoly) -> SturmChain {
    let mut chain = vec![p.positive_primitive()];
    let d = p.derivative();
    if !d.is_zero() {
        chain.push(d.positive_primitive());
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push((-r).positive_primitive());
        }
    }
    SturmChain {
        ints: chain.iter().map(int_coeffs).collect(),
    }
}

fn variations(chain: &SturmChain, x: &Rational) -> i64 {
    let mut last = 0i8;
    let mut v = 0;
    for c in &chain.ints {
        let s = sign_at(c, x);
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn count_roots(chain: &SturmChain, a: &Rational, b: &Rational) -> i64 {
    variations(chain, a) - variations(chain, b)
}

/// An isolated real root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealRoot {
    #[serde(with = "serde_str")]
    lo: Rational,
    #[serde(with = "serde_str")]
    hi: Rational,
    multiplicity: u32,
    #[serde(rename = "poly", with = "uni_serde")]
    poly: UniPoly,
}

mod uni_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &UniPoly, s: S) -> Result<S::Ok, S::Error> {
        serde_vec::serialize(p.coeffs(), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<UniPoly, D::Error> {
        serde_vec::deserialize(d).map(UniPoly::new)
    }
}

impl RealRoot {
    pub fn exact_root(r: Rational, multiplicity: u32) -> Self {
        RealRoot {
            poly: UniPoly::linear_root(&r),
            lo: r.clone(),
            hi: r,
            multiplicity,
        }
    }

    /// Root of the square-free `poly` isolated in `(lo, hi)` with a sign
    /// change, or the exact root when `lo == hi`.
    pub fn new(poly: UniPoly, lo: Rational, hi: Rational, multiplicity: u32) -> Self {
        debug_assert!(lo <= hi);
        RealRoot {
            lo,
            hi,
            multiplicity,
            poly,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    /// The square-free polynomial that defines the root.
    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn exact(&self) -> Option<&Rational> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Halve the isolating interval.
    pub fn refine_once(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let m = mid(&self.lo, &self.hi);
        let sm = sign(&self.poly.eval(&m));
        if sm == 0 {
            self.lo = m.clone();
            self.hi = m;
        } else if sm == sign(&self.poly.eval(&self.lo)) {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    pub fn refine_to(&mut self, width: &Rational) {
        while self.width() >= *width && self.lo != self.hi {
            self.refine_once();
        }
    }

    /// A rational within `2^-bits` of the root.
    pub fn approx(&mut self, bits: u32) -> Rational {
        self.refine_to(&crate::rational::pow2(bits).recip());
        mid(&self.lo, &self.hi)
    }

    /// Detect a rational root: for an integer polynomial with leading
    /// coefficient `A`, rational roots have denominators dividing `A`, and
    /// two such rationals are at least `1/A²` apart.
    pub fn try_make_exact(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let a = self.poly.primitive().lc().abs();
        let w = (&a * &a).recip();
        self.refine_to(&w);
        if self.lo == self.hi {
            return;
        }
        let s = simplest_in(&self.lo, &self.hi);
        if self.poly.eval(&s).is_zero() {
            self.lo = s.clone();
            self.hi = s;
        }
    }

    /// Sign of `f` at the root.
    pub fn sign_of(&mut self, f: &UniPoly) -> i8 {
        if let Some(m) = self.exact() {
            return sign(&f.eval(m));
        }
        if f.is_zero() {
            return 0;
        }
        let g = f.gcd(&self.poly);
        if g.degree().unwrap_or(0) > 0 && count_roots(&sturm_chain(&g), &self.lo, &self.hi) == 1 {
            return 0;
        }
        let fs = f.square_free();
        let chain = sturm_chain(&fs);
        loop {
            if let Some(m) = self.exact() {
                return sign(&f.eval(m));
            }
            if count_roots(&chain, &self.lo, &self.hi) == 0 {
                return sign(&f.eval(&self.hi));
            }
            self.refine_once();
        }
    }

    /// Order two distinct roots, refining until their intervals separate.
    pub fn compare(&mut self, other: &mut RealRoot) -> Ordering {
        loop {
            if self.hi < other.lo {
                return Ordering::Less;
            }
            if other.hi < self.lo {
                return Ordering::Greater;
            }
            if let (Some(a), Some(b)) = (self.exact(), other.exact()) {
                return a.cmp(b);
            }
            self.refine_once();
            other.refine_once();
        }
    }

    /// Compare the root with a rational.
    pub fn cmp_rational(&mut self, x: &Rational) -> Ordering {
        loop {
            if let Some(m) = self.exact() {
                return m.cmp(x);
            }
            if self.hi <= *x {
                return Ordering::Less;
            }
            if self.lo >= *x {
                return Ordering::Greater;
            }
            if self.poly.eval(x).is_zero() {
                return Ordering::Equal;
            }
            self.refine_once();
        }
    }
}

/// All real roots of a polynomial, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootIsolation {
    /// Yun factors `(a_k, k)` with `p = lc · Π a_k^k`.
    pub square_free_parts: Vec<(UniPoly, u32)>,
    pub roots: Vec<RealRoot>,
    /// Non-real roots counted with multiplicity.
    pub complex_count: usize,
}

impl RootIsolation {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// One rational in each open cell cut out by the roots, from left to
    /// right (`len() + 1` points).
    pub fn cell_samples(&mut self) -> Vec<Rational> {
        separate(&mut self.roots);
        let rs = &self.roots;
        if rs.is_empty() {
            return vec![Rational::zero()];
        }
        let mut out = vec![(rs[0].lo.clone() - Rational::one()).floor()];
        for w in rs.windows(2) {
            out.push(inner_sample(&w[0].hi, &w[1].lo));
        }
        out.push((rs[rs.len() - 1].hi.clone() + Rational::one()).ceil());
        out
    }
}

// A short rational strictly between a < b, preferring small denominators.
fn inner_sample(a: &Rational, b: &Rational) -> Rational {
    let q = (b - a) * rat(1, 4);
    let lo = a + &q;
    let hi = b - &q;
    simplest_in(&lo, &hi)
}

/// Refine until consecutive closed intervals are strictly separated and
/// sorted.
pub fn separate(roots: &mut [RealRoot]) {
    loop {
        roots.sort_by(|a, b| mid(&a.lo, &a.hi).cmp(&mid(&b.lo, &b.hi)));
        let mut clean = true;
        for i in 1..roots.len() {
            if roots[i - 1].hi >= roots[i].lo {
                clean = false;
                let (l, r) = roots.split_at_mut(i);
                l[i - 1].refine_once();
                r[0].refine_once();
            }
        }
        if clean {
            return;
        }
    }
}

// Isolate the roots of a square-free polynomial in (-B, B].
fn isolate_square_free(q: &UniPoly) -> Vec<(Rational, Rational)> {
    if q.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let chain = sturm_chain(q);
    let bound = root_bound(q);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        match count_roots(&chain, &a, &b) {
            0 => {}
            1 => out.push(shrink_single(q, &chain, a, b)),
            _ => {
                let m = mid(&a, &b);
                stack.push((m.clone(), b));
                stack.push((a, m));
            }
        }
    }
    out
}

// (a, b] holds exactly one root; make both ends nonzero or hit it exactly.
fn shrink_single(
    q: &UniPoly,
    chain: &SturmChain,
    mut a: Rational,
    mut b: Rational,
) -> (Rational, Rational) {
    loop {
        if q.eval(&b).is_zero() {
            return (b.clone(), b);
        }
        if !q.eval(&a).is_zero() {
            return (a, b);
        }
        let m = mid(&a, &b);
        if count_roots(chain, &a, &m) == 1 {
            b = m;
        } else {
            a = m;
        }
    }
}

/// Isolate every real root of `p` with its multiplicity. Rational roots are
/// always reported exactly.
pub fn isolate_real_roots(p: &UniPoly) -> RootIsolation {
    let parts = p.square_free_decomposition();
    let mut roots = Vec::new();
    for (a, k) in &parts {
        for (lo, hi) in isolate_square_free(a) {
            let mut r = RealRoot::new(a.clone(), lo, hi, *k);
            r.try_make_exact();
            roots.push(r);
        }
    }
    separate(&mut roots);
    let real: usize = roots.iter().map(|r| r.multiplicity as usize).sum();
    RootIsolation {
        square_free_parts: parts,
        complex_count: p.degree().unwrap_or(0) - real,
        roots,
    }
}

/// Rational roots only, with multiplicity.
pub fn rational_roots(p: &UniPoly) -> Vec<(Rational, u32)> {
    isolate_real_roots(p)
        .roots
        .iter()
        .filter_map(|r| r.exact().map(|m| (m.clone(), r.multiplicity)))
        .collect()
}

/// Number of distinct real roots of `p` in the half-open `(a, b]`.
pub fn distinct_roots_in(p: &UniPoly, a: &Rational, b: &Rational) -> i64 {
    if p.is_zero() {
        return i64::MAX;
    }
    count_roots(&sturm_chain(&p.square_free()), a, b)
}

/// `true` when `p` keeps a constant nonzero sign on `[x, ∞)`.
pub fn no_roots_from(p: &UniPoly, x: &Rational) -> bool {
    if p.is_zero() || p.eval(x).is_zero() {
        return false;
    }
    let b = root_bound(p);
    if *x >= b {
        return true;
    }
    distinct_roots_in(p, x, &b) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn root_bound_is_valid() {
        // Roots 1000, -1/3 and a complex pair of modulus 2.
        let p = &(&up(&[-1000, 1]) * &up(&[1, 3])) * &up(&[4, 0, 1]);
        let b = root_bound(&p);
        assert!(b > int(1000) && b <= int(1 << 14), "{b}");
        assert_eq!(root_bound(&up(&[0, 0, 1])), int(4));
    }

    #[test]
    fn double_root_and_complex_pair() {
        // (x-1)^2 (x^2+1) = x^4 - 2x^3 + 2x^2 - 2x + 1
        let iso = isolate_real_roots(&up(&[1, -2, 2, -2, 1]));
        assert_eq!(iso.roots.len(), 1);
        assert_eq!(iso.roots[0].exact(), Some(&int(1)));
        assert_eq!(iso.roots[0].multiplicity(), 2);
        assert_eq!(iso.complex_count, 2);
    }

    #[test]
    fn four_rational_roots() {
        let iso = isolate_real_roots(&up(&[4, 0, -5, 0, 1]));
        let rs: Vec<Rational> = iso
            .roots
            .iter()
            .map(|r| r.exact().unwrap().clone())
            .collect();
        assert_eq!(rs, vec![int(-2), int(-1), int(1), int(2)]);
        assert!(isolate_real_roots(&up(&[1, 0, 1])).is_empty());
    }

    #[test]
    fn irrational_roots_are_isolated() {
        let p = up(&[-2, 0, 1]);
        let mut iso = isolate_real_roots(&p);
        assert_eq!(iso.len(), 2);
        let r = &mut iso.roots[1];
        assert!(r.exact().is_none());
        let a = r.approx(40);
        assert!((a.clone() * &a - int(2)).abs() < rat(1, 1 << 30));
        assert_eq!(r.sign_of(&up(&[-3, 2])), -1); // 2√2 < 3
        assert_eq!(r.sign_of(&up(&[-2, 0, 1])), 0);
        assert_eq!(r.sign_of(&up(&[0, 0, 0, 1, 0, 0, 0])), 1);
        assert_eq!(r.cmp_rational(&rat(141, 100)), Ordering::Greater);
        let samples = iso.cell_samples();
        assert_eq!(samples.len(), 3);
        assert!(samples.iter().all(|s| !p.eval(s).is_zero()));
    }

    #[test]
    fn mixed_multiplicities() {
        // (x-1/2)^3 (x^2-3)
        let a = UniPoly::linear_root(&rat(1, 2)).pow(3);
        let p = &a * &up(&[-3, 0, 1]);
        let iso = isolate_real_roots(&p);
        let mults: Vec<u32> = iso.roots.iter().map(RealRoot::multiplicity).collect();
        assert_eq!(mults, vec![1, 3, 1]);
        assert_eq!(iso.roots[1].exact(), Some(&rat(1, 2)));
    }

    #[test]
    fn root_free_tails() {
        assert!(no_roots_from(&up(&[-5, 1]), &int(6)));
        assert!(!no_roots_from(&up(&[-5, 1]), &int(1)));
        assert!(no_roots_from(&up(&[3]), &int(1)));
    }
}
