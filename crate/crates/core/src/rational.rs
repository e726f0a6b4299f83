//! Rational scalars and small helpers around [`BigRational`].
//!
//! `BigRational` already keeps values reduced with a positive denominator,
//! so it is used directly as the coefficient field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// `n / d` as a rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rvec(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

/// Sign as -1, 0, 1.
pub fn sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn pow2(k: u32) -> Rational {
    Rational::from_integer(BigInt::one() << k)
}

/// Canonical `num/den` text; the denominator is always printed.
pub fn to_fraction_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Human-oriented text: integers print without a denominator.
pub fn to_short_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct RationalParseError(pub String);

/// Parse `int`, `int/posint`, or a finite decimal such as `-1.25`.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let t = s.trim();
    let err = || RationalParseError(s.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        let whole: BigInt = if ip_abs.is_empty() {
            BigInt::zero()
        } else {
            ip_abs.parse().map_err(|_| err())?
        };
        let frac: BigInt = fp.parse().map_err(|_| err())?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let v = Rational::new(whole * &scale + frac, scale);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = t.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(n))
}

/// Parse a comma separated point such as `1,0` or `1/2, -3`.
pub fn parse_point(s: &str) -> Result<Vec<Rational>, RationalParseError> {
    s.split(',').map(parse_rational).collect()
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]` (ties broken toward smaller magnitude numerator).
pub fn simplest_in(lo: &Rational, hi: &Rational) -> Rational {
    simplest_in_bounded(lo, hi, usize::MAX).expect("unbounded descent")
}

/// [`simplest_in`] giving up after `max_terms` continued-fraction terms.
pub fn simplest_in_bounded(lo: &Rational, hi: &Rational, max_terms: usize) -> Option<Rational> {
    assert!(lo <= hi, "simplest_in: empty interval");
    if lo.is_positive() {
        simplest_pos(lo, hi, max_terms)
    } else if hi.is_negative() {
        simplest_pos(&-hi, &-lo, max_terms).map(|v| -v)
    } else {
        Some(Rational::zero())
    }
}

// Continued-fraction descent for 0 < lo <= hi: while both ends share the
// integer part, continue with the reciprocals of the fractional parts.
fn simplest_pos(lo: &Rational, hi: &Rational, max_terms: usize) -> Option<Rational> {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let mut terms = Vec::new();
    loop {
        let fl = lo.floor();
        if fl == lo {
            terms.push(fl);
            break;
        }
        let next = &fl + Rational::one();
        if next <= hi {
            terms.push(next);
            break;
        }
        if terms.len() + 1 >= max_terms {
            return None;
        }
        (lo, hi) = ((&hi - &fl).recip(), (&lo - &fl).recip());
        terms.push(fl);
    }
    let last = terms.pop().expect("at least one term");
    Some(terms.into_iter().rev().fold(last, |acc, a| a + acc.recip()))
}

/// Least common multiple of the denominators.
pub fn denom_lcm<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Round to the nearest multiple of `2^-bits` (ties toward +inf).
pub fn round_dyadic(x: &Rational, bits: u32) -> Rational {
    let s = pow2(bits);
    let scaled = x * &s + rat(1, 2);
    scaled.floor() / s
}

pub fn min_rat<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn max_rat<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if a >= b {
        a
    } else {
        b
    }
}

/// serde adapters that encode rationals as `"num/den"` strings.
pub mod serde_str {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_fraction_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

pub mod serde_vec {
    use super::*;
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&to_fraction_string(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

pub mod serde_opt {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&to_fraction_string(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let v = Option::<String>::deserialize(d)?;
        v.map(|s| parse_rational(&s).map_err(D::Error::custom))
            .transpose()
    }
}

pub mod serde_opt_vec {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&v.iter().map(to_fraction_string).collect::<Vec<_>>()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        let v = Option::<Vec<String>>::deserialize(d)?;
        v.map(|xs| {
            xs.iter()
                .map(|s| parse_rational(s).map_err(D::Error::custom))
                .collect()
        })
        .transpose()
    }
}

pub mod serde_matrix {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m
            .iter()
            .map(|r| r.iter().map(to_fraction_string).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_rational(s).map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn fraction_strings() {
        assert_eq!(to_fraction_string(&int(3)), "3/1");
        assert_eq!(to_fraction_string(&rat(-6, 4)), "-3/2");
        assert_eq!(to_short_string(&int(3)), "3");
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_in(&rat(1, 3), &rat(1, 2)), rat(1, 2));
        assert_eq!(simplest_in(&rat(3, 10), &rat(4, 10)), rat(1, 3));
        assert_eq!(simplest_in(&rat(-4, 10), &rat(-3, 10)), rat(-1, 3));
        assert_eq!(simplest_in(&rat(-1, 2), &rat(5, 1)), int(0));
        assert_eq!(simplest_in(&rat(7, 5), &rat(7, 5)), rat(7, 5));
        assert_eq!(
            simplest_in(&rat(14142, 10000), &rat(14143, 10000)),
            rat(99, 70)
        );
        assert_eq!(
            simplest_in_bounded(&rat(14142, 10000), &rat(14143, 10000), 3),
            None
        );
        // Consecutive Fibonacci ratios have long expansions.
        let fib = |n: usize| {
            (0..n)
                .fold((BigInt::from(0), BigInt::from(1)), |(a, b), _| {
                    (b.clone(), a + b)
                })
                .0
        };
        let x = Rational::new(fib(2001), fib(2000));
        assert_eq!(simplest_in(&x, &x), x);
    }

    #[test]
    fn dyadic_rounding() {
        assert_eq!(round_dyadic(&rat(1, 3), 2), rat(1, 4));
        assert_eq!(round_dyadic(&rat(3, 8), 2), rat(1, 2));
    }
}
