//! Quadratic forms as symmetric rational matrices.
//!
//! All tests are exact. Semidefiniteness uses symmetric-pivot LDLᵀ
//! elimination; diagonalization is a rational congruence `SᵀAS = D`, so no
//! square roots or eigenvalues are ever needed.

use crate::poly::{Exponent, Polynomial};
use crate::rational::{serde_matrix, serde_vec, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type Matrix = Vec<Vec<Rational>>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadError {
    #[error("not a quadratic form: term of degree {0}")]
    NotQuadratic(u32),
    #[error("matrix is not positive semidefinite")]
    NotPsd,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not square and symmetric")]
    NotSymmetric,
}

/// Symmetric matrix `A` with `q(x) = xᵀAx`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramMatrix {
    #[serde(with = "serde_matrix")]
    entries: Matrix,
}

/// `Sᵀ·A·S = diag(d)` with `S` invertible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagonalization {
    #[serde(with = "serde_matrix")]
    pub congruence: Matrix,
    #[serde(with = "serde_vec")]
    pub diagonal: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

/// One summand `weight · v·vᵀ` of a rank-one decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOne {
    pub weight: Rational,
    pub vector: Vec<Rational>,
}

pub fn zeros(n: usize, m: usize) -> Matrix {
    vec![vec![Rational::zero(); m]; n]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn transpose(a: &Matrix) -> Matrix {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut c = zeros(n, m);
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                c[i][j] += &a[i][k] * &bk[j];
            }
        }
    }
    c
}

pub fn mat_vec(a: &Matrix, x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|r| r.iter().zip(x).map(|(u, v)| u * v).sum())
        .collect()
}

/// Gauss–Jordan inverse; `None` if singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by fraction-free-free Gaussian elimination over ℚ.
pub fn det(a: &Matrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(col, piv);
            d = -d;
        }
        d *= &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &m[col][col];
            for j in col..n {
                let t = &f * &m[col][j];
                m[r][j] -= t;
            }
        }
    }
    d
}

/// Reduced row echelon form and pivot columns.
pub fn rref(a: &Matrix) -> (Matrix, Vec<usize>) {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Basis of the null space `{x : a·x = 0}`.
pub fn null_space(a: &Matrix, ncols: usize) -> Vec<Vec<Rational>> {
    let (m, pivots) = rref(a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); ncols];
            v[fc] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][fc].clone();
            }
            v
        })
        .collect()
}

impl GramMatrix {
    pub fn new(entries: Matrix) -> Result<Self, QuadError> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(QuadError::NotSymmetric);
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(QuadError::NotSymmetric);
                }
            }
        }
        Ok(GramMatrix { entries })
    }

    pub fn zero(n: usize) -> Self {
        GramMatrix {
            entries: zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        GramMatrix {
            entries: identity(n),
        }
    }

    pub fn diag(d: &[Rational]) -> Self {
        let mut m = zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[i][i] = x.clone();
        }
        GramMatrix { entries: m }
    }

    /// `v·vᵀ`.
    pub fn outer(v: &[Rational]) -> Self {
        GramMatrix {
            entries: v
                .iter()
                .map(|a| v.iter().map(|b| a * b).collect())
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn add(&self, other: &GramMatrix) -> GramMatrix {
        GramMatrix {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect())
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> GramMatrix {
        GramMatrix {
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|a| a * c).collect())
                .collect(),
        }
    }

    /// `self − t·other`.
    pub fn pencil(&self, other: &GramMatrix, t: &Rational) -> GramMatrix {
        self.add(&other.scale(&-t))
    }

    /// `Sᵀ·A·S`.
    pub fn congruence(&self, s: &Matrix) -> GramMatrix {
        GramMatrix {
            entries: mat_mul(&mat_mul(&transpose(s), &self.entries), s),
        }
    }

    /// The form `xᵀAx`.
    pub fn to_form(&self) -> Polynomial {
        let n = self.n();
        let mut p = Polynomial::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut e = vec![0; n];
                e[i] += 1;
                e[j] += 1;
                p.add_term(Exponent(e), self.entries[i][j].clone());
            }
        }
        p
    }

    pub fn quad(&self, x: &[Rational]) -> Rational {
        x.iter()
            .zip(mat_vec(&self.entries, x))
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Exact semidefiniteness by symmetric-pivot elimination.
    pub fn is_psd(&self) -> bool {
        let n = self.n();
        let mut a = self.entries.clone();
        let mut active: Vec<usize> = (0..n).collect();
        while !active.is_empty() {
            if active.iter().any(|&i| a[i][i].is_negative()) {
                return false;
            }
            let k = *active
                .iter()
                .max_by(|&&i, &&j| a[i][i].cmp(&a[j][j]).then(j.cmp(&i)))
                .unwrap();
            if a[k][k].is_zero() {
                // Zero diagonal: semidefinite only if the whole block is zero.
                return active
                    .iter()
                    .all(|&i| active.iter().all(|&j| a[i][j].is_zero()));
            }
            active.retain(|&i| i != k);
            let piv = a[k][k].clone();
            for &i in &active {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &piv;
                for &j in &active {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
        }
        true
    }

    /// Rational congruence diagonalization.
    pub fn diagonalize(&self) -> Diagonalization {
        let n = self.n();
        let mut a = self.entries.clone();
        let mut s = identity(n);
        let mut active: Vec<usize> = (0..n).collect();
        // col_j += c·col_k and row_j += c·row_k, tracked in S.
        let add_multiple = |a: &mut Matrix, s: &mut Matrix, j: usize, k: usize, c: &Rational| {
            for r in 0..n {
                let t = &a[r][k] * c;
                a[r][j] += t;
            }
            for col in 0..n {
                let t = &a[k][col] * c;
                a[j][col] += t;
            }
            for row in s.iter_mut() {
                let t = &row[k] * c;
                row[j] += t;
            }
        };
        while !active.is_empty() {
            let k = *active
                .iter()
                .max_by(|&&i, &&j| a[i][i].abs().cmp(&a[j][j].abs()).then(j.cmp(&i)))
                .unwrap();
            let k = if a[k][k].is_zero() {
                let pair = active.iter().find_map(|&i| {
                    active
                        .iter()
                        .find(|&&j| j != i && !a[i][j].is_zero())
                        .map(|&j| (i, j))
                });
                match pair {
                    None => break,
                    Some((i, j)) => {
                        // e_i ← e_i + e_j makes the i-th diagonal 2·a_ij ≠ 0.
                        add_multiple(&mut a, &mut s, i, j, &Rational::one());
                        i
                    }
                }
            } else {
                k
            };
            active.retain(|&i| i != k);
            let piv = a[k][k].clone();
            for &j in &active {
                if a[k][j].is_zero() {
                    continue;
                }
                let c = -(&a[k][j] / &piv);
                add_multiple(&mut a, &mut s, j, k, &c);
            }
        }
        Diagonalization {
            congruence: s,
            diagonal: (0..n).map(|i| a[i][i].clone()).collect(),
        }
    }

    pub fn signature(&self) -> Signature {
        let d = self.diagonalize().diagonal;
        Signature {
            n_pos: d.iter().filter(|x| x.is_positive()).count(),
            n_neg: d.iter().filter(|x| x.is_negative()).count(),
            n_zero: d.iter().filter(|x| x.is_zero()).count(),
        }
    }

    pub fn rank(&self) -> usize {
        rref(&self.entries).1.len()
    }

    /// Exact rational basis of `ker A`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        null_space(&self.entries, self.n())
    }

    /// `A = Σ wᵢ·ℓᵢℓᵢᵀ` with `wᵢ > 0`, as many summands as `rank A`.
    /// Each `ℓᵢ` is a primitive integer vector with positive first nonzero
    /// entry.
    pub fn rank_one_decomposition(&self) -> Result<Vec<RankOne>, QuadError> {
        if !self.is_psd() {
            return Err(QuadError::NotPsd);
        }
        let n = self.n();
        let mut a = self.entries.clone();
        let mut out = Vec::new();
        loop {
            let k = (0..n)
                .max_by(|&i, &j| a[i][i].cmp(&a[j][j]).then(j.cmp(&i)))
                .filter(|&k| a[k][k].is_positive());
            let Some(k) = k else { break };
            let w = a[k][k].clone();
            let l: Vec<Rational> = (0..n).map(|i| &a[i][k] / &w).collect();
            for i in 0..n {
                for j in 0..n {
                    let t = &w * &l[i] * &l[j];
                    a[i][j] -= t;
                }
            }
            out.push(normalize_rank_one(w, l));
        }
        Ok(out)
    }

    pub fn diagonal_entries(&self) -> Vec<Rational> {
        (0..self.n()).map(|i| self.entries[i][i].clone()).collect()
    }

    /// Sums `E_k` of all principal `k×k` minors, `k = 0..=n`
    /// (Faddeev–LeVerrier on the characteristic polynomial).
    pub fn principal_minor_sums(&self) -> Vec<Rational> {
        let n = self.n();
        let a = &self.entries;
        // det(λI − A) = Σ c[i] λ^i.
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        let mut m = zeros(n, n);
        for k in 1..=n {
            let mut next = mat_mul(a, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &c[n - k + 1];
            }
            m = next;
            let am = mat_mul(a, &m);
            let tr: Rational = (0..n).map(|i| am[i][i].clone()).sum();
            c[n - k] = -tr / Rational::from_integer(BigInt::from(k));
        }
        (0..=n)
            .map(|k| {
                if k % 2 == 0 {
                    c[n - k].clone()
                } else {
                    -c[n - k].clone()
                }
            })
            .collect()
    }
}

fn normalize_rank_one(w: Rational, l: Vec<Rational>) -> RankOne {
    // Scale ℓ to a primitive integer vector; the weight absorbs the square.
    let den = l.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = l
        .iter()
        .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let first_neg = ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    let g = if first_neg { -g } else { g };
    let factor = Rational::new(den, g.clone());
    let vector: Vec<Rational> = ints
        .into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect();
    RankOne {
        weight: w / (&factor * &factor),
        vector,
    }
}

/// Gram matrix of a quadratic form.
pub fn gram_of(q: &Polynomial) -> Result<GramMatrix, QuadError> {
    let n = q.nvars();
    let mut m = zeros(n, n);
    let half = Rational::new(1.into(), 2.into());
    for (e, c) in q.terms() {
        if e.total() != 2 {
            return Err(QuadError::NotQuadratic(e.total()));
        }
        let idx: Vec<usize> =
            e.0.iter()
                .enumerate()
                .flat_map(|(i, &k)| std::iter::repeat(i).take(k as usize))
                .collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][i] = c.clone();
        } else {
            m[i][j] = c * &half;
            m[j][i] = c * &half;
        }
    }
    Ok(GramMatrix { entries: m })
}

/// `tr(A·B)`.
pub fn trace_pair(a: &GramMatrix, b: &GramMatrix) -> Result<Rational, QuadError> {
    if a.n() != b.n() {
        return Err(QuadError::DimensionMismatch(a.n(), b.n()));
    }
    let n = a.n();
    let mut s = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            s += &a.entries[i][j] * &b.entries[j][i];
        }
    }
    Ok(s)
}

/// Square-monomial part `Σ a_ii x_i²`.
pub fn diagonal_part(q: &Polynomial) -> Result<Polynomial, QuadError> {
    let g = gram_of(q)?;
    Ok(GramMatrix::diag(&g.diagonal_entries()).to_form())
}

/// `p(S·y)`: linear change of variables given by the matrix `S`.
pub fn linear_substitution(p: &Polynomial, s: &Matrix) -> Polynomial {
    let n = p.nvars();
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut img = Polynomial::zero(n);
            for j in 0..n {
                img = &img + &Polynomial::var(n, j).scale(&s[i][j]);
            }
            img
        })
        .collect();
    p.compose(&images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::rational::{int, rat, rvec};

    fn m(rows: &[&[i64]]) -> GramMatrix {
        GramMatrix::new(rows.iter().map(|r| rvec(r)).collect()).unwrap()
    }

    #[test]
    fn gram_examples() {
        let g = gram_of(&parse("x1*x3 + x2*x3 + x1*x2", 3).unwrap()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.get(i, j), &if i == j { int(0) } else { rat(1, 2) });
            }
        }
        assert_eq!(
            gram_of(&parse("x1^2 - x2^2", 2).unwrap()).unwrap(),
            m(&[&[1, 0], &[0, -1]])
        );
        assert_eq!(gram_of(&Polynomial::zero(3)).unwrap(), GramMatrix::zero(3));
        assert_eq!(
            gram_of(&parse("x1^3", 2).unwrap()),
            Err(QuadError::NotQuadratic(3))
        );
    }

    #[test]
    fn psd_examples() {
        assert!(!m(&[&[1, 0], &[0, -1]]).is_psd());
        let t = rat(3, 2);
        let q = GramMatrix::diag(&[int(2) - &t, &t - int(1)]);
        assert!(q.is_psd());
        assert!(!gram_of(&parse("x1*x2", 2).unwrap()).unwrap().is_psd());
        assert!(m(&[&[1, 1], &[1, 1]]).is_psd());
        assert!(m(&[&[0, 0], &[0, 0]]).is_psd());
    }

    #[test]
    fn signatures() {
        let g = gram_of(&parse("x1*x3 + x2*x3 + x1*x2", 3).unwrap()).unwrap();
        assert_eq!(
            g.signature(),
            Signature {
                n_pos: 1,
                n_neg: 2,
                n_zero: 0
            }
        );
        let d = g.diagonalize();
        assert_eq!(g.congruence(&d.congruence), GramMatrix::diag(&d.diagonal));
        let gbar = parse("x1^2 - 2*x1*x2 + x2^2 - 9", 2)
            .unwrap()
            .homogenize_to(2);
        let s = gram_of(&gbar).unwrap().signature();
        assert_eq!(s.n_pos, s.n_neg);
        assert_eq!(
            GramMatrix::identity(4).signature(),
            Signature {
                n_pos: 4,
                n_neg: 0,
                n_zero: 0
            }
        );
    }

    #[test]
    fn kernels_and_rank() {
        let a = m(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(a.entries(), v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rank_one_examples() {
        let a = GramMatrix::outer(&rvec(&[1, 2]));
        assert_eq!(
            a.rank_one_decomposition().unwrap(),
            vec![RankOne {
                weight: int(1),
                vector: rvec(&[1, 2])
            }]
        );
        assert_eq!(
            GramMatrix::diag(&rvec(&[2, 0, 3]))
                .rank_one_decomposition()
                .unwrap()
                .len(),
            2
        );
        let b = gram_of(&parse("x1^2 + 2*x1*x2 + 2*x2^2", 2).unwrap()).unwrap();
        let parts = b.rank_one_decomposition().unwrap();
        assert_eq!(parts.len(), 2);
        let rebuilt = parts.iter().fold(GramMatrix::zero(2), |acc, r| {
            acc.add(&GramMatrix::outer(&r.vector).scale(&r.weight))
        });
        assert_eq!(rebuilt, b);
        assert_eq!(
            m(&[&[1, 0], &[0, -1]]).rank_one_decomposition(),
            Err(QuadError::NotPsd)
        );
    }

    #[test]
    fn trace_pairing() {
        let a = gram_of(&parse("x1^2 - x2^2", 2).unwrap()).unwrap();
        let x = rvec(&[2, 1]);
        assert_eq!(trace_pair(&a, &GramMatrix::outer(&x)).unwrap(), int(3));
        assert_eq!(trace_pair(&a, &GramMatrix::identity(2)).unwrap(), int(0));
        let e1 = GramMatrix::diag(&rvec(&[1, 0]));
        let e2 = GramMatrix::diag(&rvec(&[0, 1]));
        assert_eq!(trace_pair(&e1, &e2).unwrap(), int(0));
        assert!(trace_pair(&e1, &GramMatrix::identity(3)).is_err());
    }

    #[test]
    fn diagonal_parts() {
        assert!(diagonal_part(&parse("x1*x2 + x2*x3 + x1*x3", 3).unwrap())
            .unwrap()
            .is_zero());
        assert_eq!(
            diagonal_part(&parse("-x1^2 + x1*x2", 2).unwrap()).unwrap(),
            parse("-x1^2", 2).unwrap()
        );
        let q = parse("x1^2 + x2^2", 2).unwrap();
        assert_eq!(diagonal_part(&q).unwrap(), q);
    }

    #[test]
    fn minor_sums_and_det() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let e = a.principal_minor_sums();
        assert_eq!(e[0], int(1));
        assert_eq!(e[1], int(9));
        assert_eq!(e[2], int(5 + 8 + 11));
        assert_eq!(e[3], det(a.entries()));
        assert_eq!(det(a.entries()), int(18));
        let inv = inverse(a.entries()).unwrap();
        assert_eq!(mat_mul(&inv, a.entries()), identity(3));
    }

    #[test]
    fn substitution_by_matrix() {
        let q = parse("x1^2 - x2^2", 2).unwrap();
        let s = vec![rvec(&[1, 1]), rvec(&[0, 1])];
        // (y1 + y2)^2 - y2^2
        assert_eq!(
            linear_substitution(&q, &s),
            parse("x1^2 + 2*x1*x2", 2).unwrap()
        );
        let g = gram_of(&q).unwrap().congruence(&s).to_form();
        assert_eq!(g, linear_substitution(&q, &s));
    }
}
