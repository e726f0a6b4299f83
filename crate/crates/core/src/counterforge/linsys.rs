//! Exact linear equalities and inequalities over ℚ, decided by Gaussian
//! elimination followed by Fourier–Motzkin on the free variables.

use crate::quadform::{rref, Matrix};
use crate::rational::{serde_str, serde_vec, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// Fourier–Motzkin is only attempted up to this many free variables.
pub const FM_MAX_VARS: usize = 8;
const FM_MAX_ROWS: usize = 20_000;
/// Coefficient size cap; beyond it elimination is too slow to finish.
const FM_MAX_BITS: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// `expr = 0`
    Eq,
    /// `expr ≥ 0`
    Ge,
}

/// `Σ coeffs[i]·a_i + constant` related to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constraint {
    #[serde(with = "serde_vec")]
    pub coeffs: Vec<Rational>,
    #[serde(with = "serde_str")]
    pub constant: Rational,
    pub relation: Relation,
    pub origin: String,
}

impl Constraint {
    pub fn new(
        coeffs: Vec<Rational>,
        constant: Rational,
        relation: Relation,
        origin: impl Into<String>,
    ) -> Self {
        Constraint {
            coeffs,
            constant,
            relation,
            origin: origin.into(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, a: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(a)
            .fold(self.constant.clone(), |acc, (c, x)| acc + c * x)
    }

    pub fn holds(&self, a: &[Rational]) -> bool {
        let v = self.eval(a);
        match self.relation {
            Relation::Eq => v.is_zero(),
            Relation::Ge => !v.is_negative(),
        }
    }

    pub fn display(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (c, n) in self.coeffs.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if mag.is_one() {
                parts.push(format!("{sign} {n}"));
            } else {
                parts.push(format!("{sign} {mag}*{n}"));
            }
        }
        if !self.constant.is_zero() || parts.is_empty() {
            let sign = if self.constant.is_negative() {
                "-"
            } else {
                "+"
            };
            parts.push(format!("{sign} {}", self.constant.abs()));
        }
        let mut s = parts.join(" ");
        if let Some(rest) = s.strip_prefix("+ ") {
            s = rest.to_string();
        } else if let Some(rest) = s.strip_prefix("- ") {
            s = format!("-{rest}");
        }
        let rel = match self.relation {
            Relation::Eq => "=",
            Relation::Ge => ">=",
        };
        format!("{s} {rel} 0")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SystemStatus {
    Infeasible {
        reason: String,
    },
    /// The equalities fix every variable and the inequalities hold there.
    Unique {
        #[serde(with = "serde_vec")]
        values: Vec<Rational>,
    },
    /// A feasible family of the given dimension with one member.
    Family {
        dimension: usize,
        #[serde(with = "serde_vec")]
        sample: Vec<Rational>,
    },
    /// Too many free variables for elimination.
    Undecided {
        dimension: usize,
    },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LinearConstraintSystem {
    pub names: Vec<String>,
    pub constraints: Vec<Constraint>,
}

/// Solution of the equalities: `a = base + Σ_j free_j · dirs[j]`.
struct Affine {
    base: Vec<Rational>,
    free: Vec<usize>,
    /// `dirs[j][i]` is the coefficient of free variable `j` in `a_i`.
    dirs: Vec<Vec<Rational>>,
}

impl LinearConstraintSystem {
    pub fn new(names: Vec<String>) -> Self {
        LinearConstraintSystem {
            names,
            constraints: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// Adds a constraint unless an identical one is present. Returns whether
    /// it was new.
    pub fn push(&mut self, c: Constraint) -> bool {
        assert_eq!(c.coeffs.len(), self.nvars(), "constraint width");
        let dup = self
            .constraints
            .iter()
            .any(|d| d.relation == c.relation && d.coeffs == c.coeffs && d.constant == c.constant);
        if !dup {
            self.constraints.push(c);
        }
        !dup
    }

    fn equalities(&self) -> Option<Affine> {
        let m = self.nvars();
        let rows: Matrix = self
            .constraints
            .iter()
            .filter(|c| c.relation == Relation::Eq)
            .map(|c| {
                let mut r = c.coeffs.clone();
                r.push(-&c.constant);
                r
            })
            .collect();
        let (r, pivots) = if rows.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            rref(&rows)
        };
        if pivots.contains(&m) {
            return None;
        }
        let free: Vec<usize> = (0..m).filter(|i| !pivots.contains(i)).collect();
        let mut base = vec![Rational::zero(); m];
        let mut dirs = vec![vec![Rational::zero(); m]; free.len()];
        for (row, &p) in r.iter().zip(&pivots) {
            base[p] = row[m].clone();
            for (j, &f) in free.iter().enumerate() {
                dirs[j][p] = -&row[f];
            }
        }
        for (j, &f) in free.iter().enumerate() {
            dirs[j][f] = Rational::one();
        }
        Some(Affine { base, free, dirs })
    }

    /// Variables fixed by the equalities alone, with their values.
    pub fn pinned(&self) -> Vec<(usize, Rational)> {
        let Some(aff) = self.equalities() else {
            return Vec::new();
        };
        (0..self.nvars())
            .filter(|&i| aff.dirs.iter().all(|d| d[i].is_zero()))
            .map(|i| (i, aff.base[i].clone()))
            .collect()
    }

    pub fn decide(&self) -> SystemStatus {
        let Some(aff) = self.equalities() else {
            return SystemStatus::Infeasible {
                reason: "the equalities are inconsistent".into(),
            };
        };
        let k = aff.free.len();
        // Inequalities in the free variables: coeffs·(base + D y) + c ≥ 0.
        let reduced: Vec<(Vec<Rational>, Rational, usize)> = self
            .constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| c.relation == Relation::Ge)
            .map(|(idx, c)| {
                let cst = c.eval(&aff.base);
                let co = aff
                    .dirs
                    .iter()
                    .map(|d| {
                        c.coeffs
                            .iter()
                            .zip(d)
                            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                    })
                    .collect();
                (co, cst, idx)
            })
            .collect();
        if k > FM_MAX_VARS {
            return SystemStatus::Undecided { dimension: k };
        }
        match fourier_motzkin(
            k,
            reduced
                .iter()
                .map(|(c, d, _)| (c.clone(), d.clone()))
                .collect(),
        ) {
            Err(FmFailure::Empty(e)) => SystemStatus::Infeasible { reason: e },
            Err(FmFailure::Budget) => SystemStatus::Undecided { dimension: k },
            Ok(y) => {
                let mut a = aff.base.clone();
                for (j, yj) in y.iter().enumerate() {
                    for (ai, dj) in a.iter_mut().zip(&aff.dirs[j]) {
                        *ai += dj * yj;
                    }
                }
                debug_assert!(self.constraints.iter().all(|c| c.holds(&a)));
                if k == 0 {
                    SystemStatus::Unique { values: a }
                } else {
                    SystemStatus::Family {
                        dimension: k,
                        sample: a,
                    }
                }
            }
        }
    }
}

impl fmt::Display for LinearConstraintSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            writeln!(f, "{}    [{}]", c.display(&self.names), c.origin)?;
        }
        Ok(())
    }
}

type Row = (Vec<Rational>, Rational);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FmFailure {
    /// The system has no solution; the string names the derived contradiction.
    Empty(String),
    /// Elimination exceeded its row budget before deciding.
    Budget,
}

/// Scales a row to a primitive integer vector.
fn normalize(row: Row) -> Row {
    let den = crate::rational::denom_lcm(row.0.iter().chain(std::iter::once(&row.1)));
    let ints: Vec<BigInt> = row
        .0
        .iter()
        .chain(std::iter::once(&row.1))
        .map(|c| (c * &den).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return row;
    }
    let mut out: Vec<Rational> = ints
        .into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect();
    let constant = out.pop().expect("constant column");
    (out, constant)
}

fn too_large(row: &Row) -> bool {
    row.0
        .iter()
        .chain(std::iter::once(&row.1))
        .any(|c| c.numer().bits() > FM_MAX_BITS)
}

/// Decides `{y ∈ ℚ^k : c·y + d ≥ 0 for all rows}` and returns a member.
pub fn fourier_motzkin(k: usize, rows: Vec<Row>) -> Result<Vec<Rational>, FmFailure> {
    let mut levels: Vec<Vec<Row>> = Vec::with_capacity(k + 1);
    let mut cur: Vec<Row> = dedup(rows.into_iter().map(normalize).collect());
    if cur.iter().any(too_large) {
        return Err(FmFailure::Budget);
    }
    for var in (0..k).rev() {
        levels.push(cur.clone());
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in cur {
            if r.0[var].is_positive() {
                pos.push(r);
            } else if r.0[var].is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        if pos.len() * neg.len() + rest.len() > FM_MAX_ROWS {
            return Err(FmFailure::Budget);
        }
        for p in &pos {
            for n in &neg {
                let (sp, sn) = (p.0[var].clone(), -&n.0[var]);
                let co: Vec<Rational> =
                    p.0.iter()
                        .zip(&n.0)
                        .map(|(a, b)| a * &sn + b * &sp)
                        .collect();
                rest.push(normalize((co, &p.1 * &sn + &n.1 * &sp)));
            }
        }
        cur = dedup(rest);
        if cur.len() > FM_MAX_ROWS || cur.iter().any(too_large) {
            return Err(FmFailure::Budget);
        }
        if let Some(bad) = cur
            .iter()
            .find(|r| r.0.iter().all(Zero::is_zero) && r.1.is_negative())
        {
            return Err(FmFailure::Empty(format!(
                "elimination derives {} >= 0",
                bad.1
            )));
        }
    }
    if let Some(bad) = cur.iter().find(|r| r.1.is_negative()) {
        return Err(FmFailure::Empty(format!(
            "elimination derives {} >= 0",
            bad.1
        )));
    }
    // Back-substitute, choosing a simple value inside each interval.
    let mut y = vec![Rational::zero(); k];
    for (var, level) in (0..k).zip(levels.iter().rev()) {
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for (c, d) in level {
            let rest = (0..var).fold(d.clone(), |acc, j| acc + &c[j] * &y[j]);
            if c[var].is_positive() {
                let b = -rest / &c[var];
                lo = Some(lo.map_or(b.clone(), |l: Rational| l.max(b)));
            } else if c[var].is_negative() {
                let b = -rest / &c[var];
                hi = Some(hi.map_or(b.clone(), |h: Rational| h.min(b)));
            }
        }
        y[var] = match (lo, hi) {
            (None, None) => Rational::zero(),
            (Some(l), None) => {
                if l <= Rational::zero() {
                    Rational::zero()
                } else {
                    l
                }
            }
            (None, Some(h)) => {
                if h >= Rational::zero() {
                    Rational::zero()
                } else {
                    h
                }
            }
            (Some(l), Some(h)) => {
                debug_assert!(l <= h);
                if l <= Rational::zero() && Rational::zero() <= h {
                    Rational::zero()
                } else {
                    // Long expansions are costly; any point of [l, h] will do.
                    crate::rational::simplest_in_bounded(&l, &h, 64).unwrap_or(l)
                }
            }
        };
    }
    Ok(y)
}

fn dedup(rows: Vec<Row>) -> Vec<Row> {
    let mut seen = BTreeSet::new();
    rows.into_iter()
        .filter(|r| !(r.0.iter().all(Zero::is_zero) && !r.1.is_negative()))
        .filter(|r| seen.insert(format!("{:?}", r)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn names(k: usize) -> Vec<String> {
        (1..=k).map(|i| format!("a{i}")).collect()
    }

    #[test]
    fn fm_detects_empty_interval() {
        // a ≤ -1/2 and a ≥ -30/81.
        let rows = vec![(vec![int(-1)], rat(-1, 2)), (vec![int(1)], rat(30, 81))];
        assert!(fourier_motzkin(1, rows).is_err());
        let rows = vec![(vec![int(1)], int(-1)), (vec![int(-1)], int(3))];
        let y = fourier_motzkin(1, rows).unwrap();
        assert!(y[0] >= int(1) && y[0] <= int(3));
    }

    #[test]
    fn fm_two_dimensional() {
        // x + y ≤ 1, x ≥ 0, y ≥ 0, x - y ≥ 1/2 is feasible; adding y ≥ 1 is not.
        let mut rows = vec![
            (vec![int(-1), int(-1)], int(1)),
            (vec![int(1), int(0)], int(0)),
            (vec![int(0), int(1)], int(0)),
            (vec![int(1), int(-1)], rat(-1, 2)),
        ];
        let y = fourier_motzkin(2, rows.clone()).unwrap();
        assert!(rows
            .iter()
            .all(|(c, d)| !(&c[0] * &y[0] + &c[1] * &y[1] + d).is_negative()));
        rows.push((vec![int(0), int(1)], int(-1)));
        assert!(fourier_motzkin(2, rows).is_err());
    }

    #[test]
    fn system_with_equalities() {
        let mut s = LinearConstraintSystem::new(names(3));
        s.push(Constraint::new(
            vec![int(-1), int(0), int(0)],
            int(1),
            Relation::Eq,
            "top",
        ));
        s.push(Constraint::new(
            vec![int(0), int(0), int(-1)],
            int(0),
            Relation::Eq,
            "bottom",
        ));
        s.push(Constraint::new(
            vec![int(0), int(-1), int(0)],
            int(0),
            Relation::Ge,
            "sign",
        ));
        assert_eq!(s.pinned(), vec![(0, int(1)), (2, int(0))]);
        assert!(matches!(
            s.decide(),
            SystemStatus::Family { dimension: 1, .. }
        ));
        s.push(Constraint::new(
            vec![int(0), int(1), int(0)],
            int(-1),
            Relation::Ge,
            "extra",
        ));
        assert!(matches!(s.decide(), SystemStatus::Infeasible { .. }));
        assert_eq!(s.constraints[0].display(&s.names), "-a1 + 1 = 0");
    }
}
