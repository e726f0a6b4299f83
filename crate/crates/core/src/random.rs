//! Seeded generators for sampling and property suites.
//!
//! Sample `i` of a run with seed `s` always uses its own ChaCha8 stream, so
//! draws do not depend on how work is split across threads.

use crate::poly::{Exponent, Polynomial};
use crate::rational::Rational;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

/// Uniform `a/b` with `|a| <= max_num`, `1 <= b <= max_den`.
pub fn small_rational(rng: &mut impl Rng, max_num: i64, max_den: i64) -> Rational {
    let a = rng.gen_range(-max_num..=max_num);
    let b = rng.gen_range(1..=max_den);
    Rational::new(BigInt::from(a), BigInt::from(b))
}

pub fn small_int(rng: &mut impl Rng, max: i64) -> Rational {
    Rational::from_integer(BigInt::from(rng.gen_range(-max..=max)))
}

pub fn point(rng: &mut impl Rng, n: usize, max_num: i64, max_den: i64) -> Vec<Rational> {
    (0..n)
        .map(|_| small_rational(rng, max_num, max_den))
        .collect()
}

/// Random symmetric matrix with small rational entries; about a third of
/// the draws are built as low-rank sums so semidefinite boundary cases
/// show up regularly.
pub fn symmetric_matrix(rng: &mut impl Rng, n: usize) -> Vec<Vec<Rational>> {
    let mut m = vec![vec![Rational::from_integer(0.into()); n]; n];
    if rng.gen_bool(0.35) {
        let rank = rng.gen_range(0..=n);
        for _ in 0..rank {
            let v = point(rng, n, 3, 2);
            let w = small_rational(rng, 3, 1);
            let w = if rng.gen_bool(0.8) { w.abs_val() } else { w };
            for i in 0..n {
                for j in 0..n {
                    m[i][j] += &w * &v[i] * &v[j];
                }
            }
        }
    } else {
        for i in 0..n {
            for j in i..n {
                let x = small_rational(rng, 4, 3);
                m[i][j] = x.clone();
                m[j][i] = x;
            }
        }
    }
    m
}

trait AbsVal {
    fn abs_val(self) -> Self;
}

impl AbsVal for Rational {
    fn abs_val(self) -> Self {
        num_traits::Signed::abs(&self)
    }
}

/// All exponents of total degree exactly `d` in `n` variables.
pub fn exponents_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if prefix.len() == n - 1 {
            let mut e = prefix.clone();
            e.push(d - prefix.iter().sum::<u32>());
            out.push(Exponent(e));
            return;
        }
        let used: u32 = prefix.iter().sum();
        for k in (0..=d - used).rev() {
            prefix.push(k);
            rec(n, d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Random form of degree `d` using up to `nterms` monomials.
pub fn form(rng: &mut impl Rng, n: usize, d: u32, nterms: usize, max_coeff: i64) -> Polynomial {
    let exps = exponents_of_degree(n, d);
    let mut p = Polynomial::zero(n);
    for _ in 0..nterms {
        let e = exps[rng.gen_range(0..exps.len())].clone();
        p.add_term(e, small_int(rng, max_coeff));
    }
    p
}

/// Random polynomial with terms of degree at most `d`.
pub fn polynomial(
    rng: &mut impl Rng,
    n: usize,
    d: u32,
    nterms: usize,
    max_coeff: i64,
) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..nterms {
        let k = rng.gen_range(0..=d);
        p = &p + &form(rng, n, k, 1, max_coeff);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<u32> = (0..4).map(|i| rng_for(7, i).gen()).collect();
        let b: Vec<u32> = (0..4).map(|i| rng_for(7, i).gen()).collect();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn exponent_enumeration() {
        assert_eq!(exponents_of_degree(3, 2).len(), 6);
        assert_eq!(exponents_of_degree(2, 4).len(), 5);
        assert!(exponents_of_degree(3, 3).iter().all(|e| e.total() == 3));
    }
}
