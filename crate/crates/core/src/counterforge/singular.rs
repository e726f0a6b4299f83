//! Exact check that a rational line lies in the singular locus of `p = 0`.

use crate::certify::{Verdict, Witness};
use crate::poly::Polynomial;
use crate::rational::{int, to_short_string, Rational};
use num_traits::Zero;

/// `Proved` iff `p` and every partial derivative vanish identically on
/// `base + s·dir`. Otherwise `Disproved` at a point of the line where one of
/// them is nonzero.
pub fn singular_locus_check(p: &Polynomial, base: &[Rational], dir: &[Rational]) -> Verdict {
    let names: Vec<String> = std::iter::once("p".to_string())
        .chain((1..=p.nvars()).map(|i| format!("dp/dx{i}")))
        .collect();
    let restricted: Vec<_> = std::iter::once(p.clone())
        .chain(p.gradient())
        .map(|q| q.restrict_to_line(base, dir))
        .collect();
    let Some((k, u)) = restricted.iter().enumerate().find(|(_, u)| !u.is_zero()) else {
        return Verdict::proved("p and its gradient vanish identically on the line");
    };
    // A nonzero polynomial of degree d has a non-root among 0..=d.
    let s = (0..=u.degree().unwrap_or(0) as i64)
        .map(int)
        .find(|s| !u.eval(s).is_zero())
        .expect("nonzero polynomial");
    let x: Vec<Rational> = base.iter().zip(dir).map(|(b, d)| b + &s * d).collect();
    let reason = format!(
        "{} = {} at s = {}",
        names[k],
        to_short_string(&u.eval(&s)),
        to_short_string(&s)
    );
    Verdict::disproved(Witness::point(x), reason)
}

/// `Proved` iff `p` vanishes identically on `base + s·dir`.
pub fn line_in_zero_set(p: &Polynomial, base: &[Rational], dir: &[Rational]) -> Verdict {
    let u = p.restrict_to_line(base, dir);
    if u.is_zero() {
        return Verdict::proved("p vanishes identically on the line");
    }
    let s = (0..=u.degree().unwrap_or(0) as i64)
        .map(int)
        .find(|s| !u.eval(s).is_zero())
        .expect("nonzero polynomial");
    let x: Vec<Rational> = base.iter().zip(dir).map(|(b, d)| b + &s * d).collect();
    Verdict::disproved(
        Witness::point(x),
        format!(
            "p = {} at s = {}",
            to_short_string(&u.eval(&s)),
            to_short_string(&s)
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::rational::rvec;

    #[test]
    fn x2_axis_is_singular() {
        let f = parse("x1^3*x3 + x1^3*x2 + x2^2*x3^2", 3).unwrap();
        let g = parse("x1*x3 + x2*x3 + x1*x2", 3).unwrap();
        let (base, dir) = (rvec(&[0, 0, 0]), rvec(&[0, 1, 0]));
        assert!(singular_locus_check(&f, &base, &dir).is_proved());
        // The axis lies on g = 0, but g is smooth there: grad g = (s, 0, s).
        assert!(line_in_zero_set(&g, &base, &dir).is_proved());
        assert!(singular_locus_check(&g, &base, &dir).is_disproved());
        let v = singular_locus_check(&f, &rvec(&[1, 0, 0]), &rvec(&[0, 0, 1]));
        assert!(v.is_disproved());
        let p = parse("x1^2 + x2 - 1", 2).unwrap();
        assert!(singular_locus_check(&p, &rvec(&[0, 0]), &rvec(&[1, 1])).is_disproved());
    }
}
