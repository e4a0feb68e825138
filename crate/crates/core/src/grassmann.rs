//! Exact matrix computations on `k × n` rational matrices: rank, Plücker
//! coordinates, and the bounded affine permutation `f_M` labelling the
//! positroid stratum of a full-rank matrix.

use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};
use serde::Deserialize;
use thiserror::Error;

use crate::affine::{AffineError, BoundedAffinePermutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassmannError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, found: usize, expected: usize },
    #[error("matrix has rank {rank} < {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("bad column set {cols:?} for a {k} x {n} matrix")]
    BadIndexSet { cols: Vec<usize>, k: usize, n: usize },
    #[error("matrix is {0} x {1} but the permutation lives in Bound({2}, {3})")]
    MixedParameters(usize, usize, usize, usize),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("bad matrix file: {0}")]
    Json(String),
    #[error(transparent)]
    Affine(#[from] AffineError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<BigRational>>,
}

pub fn parse_rational(s: &str) -> Result<BigRational, GrassmannError> {
    let err = || GrassmannError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| err())?)),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
struct MatrixFile {
    rows: Vec<Vec<Entry>>,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self, GrassmannError> {
        let width = rows.first().map_or(0, Vec::len);
        if width == 0 {
            return Err(GrassmannError::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != width {
                return Err(GrassmannError::Ragged { row, found: r.len(), expected: width });
            }
        }
        Ok(Self { rows })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self, GrassmannError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    /// Reads `{"rows": [[1, "2/3"], ...]}`.
    pub fn from_json(text: &str) -> Result<Self, GrassmannError> {
        let file: MatrixFile = serde_json::from_str(text).map_err(|e| GrassmannError::Json(e.to_string()))?;
        let rows = file
            .rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|e| match e {
                        Entry::Int(v) => Ok(BigRational::from_integer(v.into())),
                        Entry::Text(s) => parse_rational(&s),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rows)
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigRational {
        &self.rows[row][col]
    }

    /// Column `i` (1-based), extended periodically.
    pub fn column(&self, i: i64) -> Vec<BigRational> {
        let c = (i - 1).rem_euclid(self.n() as i64) as usize;
        self.rows.iter().map(|r| r[c].clone()).collect()
    }

    /// `T · self`.
    pub fn left_multiply(&self, t: &RationalMatrix) -> RationalMatrix {
        assert_eq!(t.n(), self.k());
        let rows = (0..t.k())
            .map(|i| {
                (0..self.n())
                    .map(|j| (0..self.k()).fold(BigRational::zero(), |acc, l| acc + &t.rows[i][l] * &self.rows[l][j]))
                    .collect()
            })
            .collect();
        RationalMatrix { rows }
    }

    pub fn scale_column(&self, col: usize, factor: &BigRational) -> RationalMatrix {
        let mut rows = self.rows.clone();
        for r in &mut rows {
            r[col - 1] = &r[col - 1] * factor;
        }
        RationalMatrix { rows }
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<BigInt>> = self.rows.iter().map(|r| clear_denominators(r)).collect();
        bareiss_rank(&mut rows)
    }

    /// Determinant of the columns `cols` (1-based, strictly increasing).
    pub fn plucker(&self, cols: &[usize]) -> Result<BigRational, GrassmannError> {
        let (k, n) = (self.k(), self.n());
        let bad = || GrassmannError::BadIndexSet { cols: cols.to_vec(), k, n };
        if cols.len() != k || cols.iter().any(|&c| c == 0 || c > n) || cols.windows(2).any(|p| p[0] >= p[1]) {
            return Err(bad());
        }
        self.minor(cols)
    }

    fn minor(&self, cols: &[usize]) -> Result<BigRational, GrassmannError> {
        // clear each column's denominators, take an integer determinant, divide back
        let mut scale = BigInt::one();
        let columns: Vec<Vec<BigInt>> = cols
            .iter()
            .map(|&c| {
                let col = self.column(c as i64);
                let l = lcm_denominators(&col);
                scale *= &l;
                col.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect();
        let mut square: Vec<Vec<BigInt>> =
            (0..self.k()).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
        Ok(BigRational::new(bareiss_det(&mut square), scale))
    }

    /// All Plücker coordinates in lexicographic order of the column sets.
    pub fn plucker_vector(&self) -> Vec<(Vec<usize>, BigRational)> {
        subsets(self.n(), self.k())
            .into_iter()
            .map(|s| {
                let v = self.minor(&s).expect("subset is a valid index set");
                (s, v)
            })
            .collect()
    }

    /// `f_M(i) = min { j >= i : M_i ∈ span(M_{i+1}, ..., M_j) }`.
    pub fn bap_of_matrix(&self) -> Result<BoundedAffinePermutation, GrassmannError> {
        let (k, n) = (self.k(), self.n());
        let rank = self.rank();
        if rank < k {
            return Err(GrassmannError::RankDeficient { rank, k });
        }
        let columns: Vec<Vec<BigInt>> = (1..=n as i64).map(|i| clear_denominators(&self.column(i))).collect();
        let mut window = Vec::with_capacity(n);
        for i in 1..=n {
            let target = &columns[i - 1];
            let mut span = IncrementalSpan::default();
            let mut j = i;
            while !span.contains(target) {
                j += 1;
                span.insert(&columns[(j - 1) % n]);
            }
            window.push(j as i64);
        }
        Ok(BoundedAffinePermutation::new(window)?)
    }

    pub fn stratum_membership(&self, f: &BoundedAffinePermutation) -> Result<bool, GrassmannError> {
        if f.k() != self.k() || f.n() != self.n() {
            return Err(GrassmannError::MixedParameters(self.k(), self.n(), f.k(), f.n()));
        }
        Ok(&self.bap_of_matrix()? == f)
    }
}

fn lcm_denominators(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scales a vector of rationals by the lcm of its denominators.
fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = BigRational::from_integer(lcm_denominators(v));
    v.iter().map(|q| (q * &l).to_integer()).collect()
}

/// Rank by fraction-free (Bareiss) elimination; destroys `rows`.
fn bareiss_rank(rows: &mut [Vec<BigInt>]) -> usize {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in rank + 1..m {
            for c in col + 1..n {
                let v = &rows[rank][col] * &rows[r][c] - &rows[r][col] * &rows[rank][c];
                rows[r][c] = v / &prev;
            }
            rows[r][col] = BigInt::zero();
        }
        prev = rows[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Determinant of a square integer matrix by Bareiss elimination.
fn bareiss_det(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for i in 0..n {
        if a[i][i].is_zero() {
            match (i + 1..n).find(|&r| !a[r][i].is_zero()) {
                Some(r) => {
                    a.swap(i, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in i + 1..n {
            for c in i + 1..n {
                let v = &a[i][i] * &a[r][c] - &a[r][i] * &a[i][c];
                a[r][c] = v / &prev;
            }
        }
        prev = a[i][i].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// Integer echelon basis that grows one vector at a time.
#[derive(Default)]
struct IncrementalSpan {
    basis: Vec<(usize, Vec<BigInt>)>,
}

impl IncrementalSpan {
    fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for (pivot, b) in &self.basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let (bp, vp) = (b[*pivot].clone(), v[*pivot].clone());
            for (x, y) in v.iter_mut().zip(b) {
                *x = &bp * &*x - &vp * y;
            }
            let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in &mut v {
                    *x /= &g;
                }
            }
        }
        v
    }

    fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    fn insert(&mut self, v: &[BigInt]) {
        let r = self.reduce(v);
        if let Some(pivot) = r.iter().position(|x| !x.is_zero()) {
            self.basis.push((pivot, r));
        }
    }
}

/// Strictly increasing `k`-subsets of `1..=n`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..=n {
            cur.push(c);
            rec(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

/// `p/q` in lowest terms, or an integer.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
