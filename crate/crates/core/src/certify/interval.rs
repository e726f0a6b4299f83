//! Closed rational intervals with outward-exact arithmetic.

use crate::poly::Polynomial;
use crate::rational::Rational;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (
            Interval::new(self.lo.clone(), m.clone()),
            Interval::new(m, self.hi.clone()),
        )
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_nonneg(&self) -> bool {
        !self.lo.is_negative()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn pow(&self, k: u32) -> Interval {
        if k == 0 {
            return Interval::point(Rational::one());
        }
        let a = num_traits::pow(self.lo.clone(), k as usize);
        let b = num_traits::pow(self.hi.clone(), k as usize);
        if k % 2 == 1 {
            Interval::new(a, b)
        } else if self.lo.is_negative() && self.hi.is_positive() {
            Interval::new(Rational::zero(), a.max(b))
        } else {
            Interval::new(a.clone().min(b.clone()), a.max(b))
        }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Interval::new(b, a)
        } else {
            Interval::new(a, b)
        }
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }
}

/// Natural interval extension of `p` over a box.
pub fn eval_box(p: &Polynomial, bx: &[Interval]) -> Interval {
    assert_eq!(bx.len(), p.nvars(), "box dimension");
    let mut acc = Interval::point(Rational::zero());
    for (e, c) in p.terms() {
        let mut t = Interval::point(c.clone());
        for (i, &k) in e.0.iter().enumerate() {
            if k > 0 {
                t = &t * &bx[i].pow(k);
            }
        }
        acc = &acc + &t;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::rational::{int, rat};

    #[test]
    fn enclosures_contain_values() {
        let p = parse("x1^2 - x1*x2 + 3", 2).unwrap();
        let bx = [
            Interval::new(int(-1), int(2)),
            Interval::new(rat(1, 2), int(1)),
        ];
        let e = eval_box(&p, &bx);
        for x in [int(-1), int(0), int(2), rat(1, 3)] {
            for y in [rat(1, 2), int(1)] {
                assert!(e.contains(&p.evaluate(&[x.clone(), y])));
            }
        }
        assert_eq!(
            Interval::new(int(-2), int(1)).pow(2),
            Interval::new(int(0), int(4))
        );
    }
}
