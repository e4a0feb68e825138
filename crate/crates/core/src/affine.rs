//! Bounded affine permutations in window notation.
//!
//! A permutation `f: Z -> Z` with `f(i + n) = f(i) + n` is stored by its
//! window `[f(1), ..., f(n)]`; every other value comes from the periodic
//! lift. Positions handed to or returned from this module are 1-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AffineError {
    #[error("window must contain at least one value")]
    Empty,
    #[error("f({position}) = {value} is outside [{position}, {}]", position + n)]
    BoundsViolation { position: usize, value: i64, n: usize },
    #[error("f({first}) and f({second}) share residue {residue} mod {n}")]
    ResidueCollision { first: usize, second: usize, residue: usize, n: usize },
    #[error("total displacement {total} is not a multiple of {n}")]
    BadTotal { total: i64, n: usize },
    #[error("transposition index {index} outside 1..={n}")]
    BadIndex { index: usize, n: usize },
    #[error("cannot parse window {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Which side an affine transposition multiplies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `sigma_i ∘ f`: swaps the values congruent to `i` and `i + 1`.
    Left,
    /// `f ∘ sigma_i`: swaps the values at positions `i` and `i + 1`.
    Right,
}

/// The periodic adjacent transposition `sigma_i` of size `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineTransposition {
    n: usize,
    index: usize,
}

impl AffineTransposition {
    pub fn new(n: usize, index: usize) -> Result<Self, AffineError> {
        if n == 0 || index == 0 || index > n {
            return Err(AffineError::BadIndex { index, n });
        }
        Ok(Self { n, index })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn apply(&self, m: i64) -> i64 {
        let n = self.n as i64;
        let i = self.index as i64;
        if (m - i).rem_euclid(n) == 0 {
            m + 1
        } else if (m - i - 1).rem_euclid(n) == 0 {
            m - 1
        } else {
            m
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundedAffinePermutation {
    window: Vec<i64>,
    k: usize,
}

impl BoundedAffinePermutation {
    /// Checks boundedness, distinct residues and the displacement total.
    pub fn new(values: Vec<i64>) -> Result<Self, AffineError> {
        if values.is_empty() {
            return Err(AffineError::Empty);
        }
        let n = values.len();
        let mut total = 0i64;
        for (idx, &value) in values.iter().enumerate() {
            let p = idx as i64 + 1;
            if value < p || value > p + n as i64 {
                return Err(AffineError::BoundsViolation { position: idx + 1, value, n });
            }
            total += value - p;
        }
        // Distinct residues force the total to be a multiple of n, so the
        // total is checked first to give the more specific complaint.
        if total % n as i64 != 0 {
            return Err(AffineError::BadTotal { total, n });
        }
        check_residues(&values)?;
        let k = (total / n as i64) as usize;
        Ok(Self { window: values, k })
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `f(1)` .. `f(n)` indexed from 1.
    pub fn at(&self, position: usize) -> i64 {
        self.window[position - 1]
    }

    /// Evaluates the periodic lift at any integer.
    pub fn eval(&self, i: i64) -> i64 {
        let n = self.n() as i64;
        let r = (i - 1).rem_euclid(n);
        let shift = (i - 1 - r) / n;
        self.window[r as usize] + shift * n
    }

    /// Affine inversions: pairs `i < j` with `f(i) > f(j)` or `f(i) < f(j) - n`.
    pub fn length(&self) -> usize {
        let n = self.n() as i64;
        let w = &self.window;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] || w[i] < w[j] - n {
                    count += 1;
                }
            }
        }
        count
    }

    /// Window of `sigma_i ∘ f` or `f ∘ sigma_i`. The result is not validated.
    pub fn apply_transposition(&self, index: usize, side: Side) -> Result<Vec<i64>, AffineError> {
        let sigma = AffineTransposition::new(self.n(), index)?;
        Ok(match side {
            Side::Left => self.window.iter().map(|&v| sigma.apply(v)).collect(),
            Side::Right => (1..=self.n() as i64).map(|j| self.eval(sigma.apply(j))).collect(),
        })
    }

    pub fn is_fixed(&self, position: usize) -> bool {
        self.at(position) == position as i64
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.is_fixed(i)).collect()
    }

    pub fn fix_count(&self) -> usize {
        (1..=self.n()).filter(|&i| self.is_fixed(i)).count()
    }

    /// Cycle decomposition of the induced bijection on `Z/n`, with residues
    /// written in `1..=n`.
    pub fn cycles(&self) -> CycleDecomposition {
        residue_cycles(&self.window).expect("a valid window has distinct residues")
    }

    /// Conjugation by the shift `i -> i + 1`: `g(i) = f(i - 1) + 1`.
    pub fn rotate(&self) -> Self {
        let n = self.n() as i64;
        let mut window = Vec::with_capacity(self.n());
        window.push(self.window[self.n() - 1] - n + 1);
        window.extend(self.window[..self.n() - 1].iter().map(|v| v + 1));
        Self { window, k: self.k }
    }

    /// The minimal element `[1 + k, ..., n + k]` of `Bound(k, n)`.
    pub fn minimal(k: usize, n: usize) -> Result<Self, AffineError> {
        Self::new((1..=n as i64).map(|i| i + k as i64).collect())
    }
}

impl fmt::Display for BoundedAffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_window(&self.window))
    }
}

impl FromStr for BoundedAffinePermutation {
    type Err = AffineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(parse_window(s)?)
    }
}

impl Serialize for BoundedAffinePermutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.window.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BoundedAffinePermutation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let values = Vec::<i64>::deserialize(deserializer)?;
        Self::new(values).map_err(serde::de::Error::custom)
    }
}

/// Canonical text form `[a,b,c]`.
pub fn format_window(values: &[i64]) -> String {
    let inner: Vec<String> = values.iter().map(i64::to_string).collect();
    format!("[{}]", inner.join(","))
}

/// Parses `[a, b, c]`; whitespace is allowed anywhere between tokens.
pub fn parse_window(s: &str) -> Result<Vec<i64>, AffineError> {
    let err = |reason: &str| AffineError::Parse { input: s.to_string(), reason: reason.to_string() };
    let body = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| err("expected square brackets"))?;
    if body.trim().is_empty() {
        return Err(AffineError::Empty);
    }
    body.split(',')
        .map(|tok| tok.trim().parse::<i64>().map_err(|e| err(&e.to_string())))
        .collect()
}

fn check_residues(values: &[i64]) -> Result<(), AffineError> {
    let n = values.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (idx, &value) in values.iter().enumerate() {
        let residue = value.rem_euclid(n as i64) as usize;
        if let Some(first) = owner[residue] {
            return Err(AffineError::ResidueCollision {
                first,
                second: idx + 1,
                residue: if residue == 0 { n } else { residue },
                n,
            });
        }
        owner[residue] = Some(idx + 1);
    }
    Ok(())
}

/// Cycles of `i -> w_i mod n` for any window with distinct residues,
/// bounded or not. Fixed points are positions with `w_i = i`.
pub fn residue_cycles(window: &[i64]) -> Result<CycleDecomposition, AffineError> {
    if window.is_empty() {
        return Err(AffineError::Empty);
    }
    check_residues(window)?;
    let n = window.len();
    let next = |i: usize| -> usize {
        match window[i - 1].rem_euclid(n as i64) as usize {
            0 => n,
            r => r,
        }
    };
    let is_fixed = |i: usize| window[i - 1] == i as i64;
    let mut seen = vec![false; n + 1];
    let mut cycles = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = next(i);
        }
        cycles.push(cycle);
    }
    let fixed_points: Vec<usize> = (1..=n).filter(|&i| is_fixed(i)).collect();
    let nonfixed_cycle_count = cycles.iter().filter(|c| !(c.len() == 1 && is_fixed(c[0]))).count();
    Ok(CycleDecomposition { cycles, fixed_points, nonfixed_cycle_count })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<usize>>,
    pub fixed_points: Vec<usize>,
    pub nonfixed_cycle_count: usize,
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            let inner: Vec<String> = cycle.iter().map(usize::to_string).collect();
            write!(f, "({})", inner.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bap(w: &[i64]) -> BoundedAffinePermutation {
        BoundedAffinePermutation::new(w.to_vec()).unwrap()
    }

    #[test]
    fn validate_examples() {
        let f = bap(&[3, 5, 6, 4]);
        assert_eq!((f.n(), f.k()), (4, 2));
        let id = bap(&[1, 2, 3, 4]);
        assert_eq!(id.k(), 0);
        assert_eq!(id.fixed_points(), vec![1, 2, 3, 4]);
        assert_eq!(
            BoundedAffinePermutation::new(vec![3, 4, 5, 7]),
            Err(AffineError::BadTotal { total: 9, n: 4 })
        );
    }

    #[test]
    fn validate_errors() {
        assert_eq!(BoundedAffinePermutation::new(vec![]), Err(AffineError::Empty));
        assert!(matches!(
            BoundedAffinePermutation::new(vec![0, 2]),
            Err(AffineError::BoundsViolation { position: 1, value: 0, .. })
        ));
        assert!(matches!(
            BoundedAffinePermutation::new(vec![1, 7, 3, 4]),
            Err(AffineError::BoundsViolation { position: 2, value: 7, .. })
        ));
        assert!(matches!(
            BoundedAffinePermutation::new(vec![3, 3, 5, 7]),
            Err(AffineError::ResidueCollision { first: 1, second: 2, .. })
        ));
    }

    #[test]
    fn k_extremes_are_accepted() {
        assert_eq!(bap(&[5, 6, 7, 8]).k(), 4);
        assert_eq!(bap(&[2]).k(), 1);
        assert_eq!(bap(&[1]).k(), 0);
    }

    #[test]
    fn lengths() {
        assert_eq!(bap(&[3, 5, 6, 4]).length(), 2);
        assert_eq!(bap(&[3, 4, 6, 5]).length(), 1);
        assert_eq!(bap(&[2, 5, 7, 4]).length(), 3);
        assert_eq!(bap(&[3, 4, 5, 6]).length(), 0);
    }

    #[test]
    fn transpositions() {
        let t = |w: &[i64], i, side| bap(w).apply_transposition(i, side).unwrap();
        assert_eq!(t(&[3, 4, 6, 5], 4, Side::Left), vec![3, 5, 6, 4]);
        assert_eq!(t(&[3, 5, 6, 4], 2, Side::Left), vec![2, 5, 7, 4]);
        assert_eq!(t(&[3, 4, 5, 6, 7], 1, Side::Right), vec![4, 3, 5, 6, 7]);
        // sigma_n on the right swaps f(n) with the lift f(n + 1).
        assert_eq!(t(&[3, 4, 5, 6], 4, Side::Right), vec![2, 4, 5, 7]);
        assert!(bap(&[3, 4]).apply_transposition(3, Side::Left).is_err());
    }

    #[test]
    fn transposition_is_involution() {
        let s = AffineTransposition::new(5, 5).unwrap();
        for m in -12..12 {
            assert_eq!(s.apply(s.apply(m)), m);
            assert_eq!(s.apply(m + 5), s.apply(m) + 5);
        }
    }

    #[test]
    fn cycle_examples() {
        let c = bap(&[5, 2, 7, 4]).cycles();
        assert_eq!(c.cycles, vec![vec![1], vec![2], vec![3], vec![4]]);
        assert_eq!(c.fixed_points, vec![2, 4]);
        assert_eq!(c.nonfixed_cycle_count, 2);

        // Not bounded (12 > 3 + 6), so only the residue map is available.
        let c = residue_cycles(&[3, 4, 12, 11, 8, 7]).unwrap();
        assert_eq!(c.cycles, vec![vec![1, 3, 6], vec![2, 4, 5]]);
        assert!(c.fixed_points.is_empty());
        assert_eq!(c.nonfixed_cycle_count, 2);

        let c = bap(&[1, 2, 3, 4]).cycles();
        assert_eq!(c.fixed_points.len(), 4);
        assert_eq!(c.nonfixed_cycle_count, 0);
        assert_eq!(c.to_string(), "(1)(2)(3)(4)");
    }

    #[test]
    fn parse_and_print() {
        let f: BoundedAffinePermutation = " [ 3, 5,6 ,4 ] ".parse().unwrap();
        assert_eq!(f.to_string(), "[3,5,6,4]");
        assert!(matches!(parse_window("3,5"), Err(AffineError::Parse { .. })));
        assert!(matches!(parse_window("[3,x]"), Err(AffineError::Parse { .. })));
        assert_eq!(parse_window("[]"), Err(AffineError::Empty));
    }

    #[test]
    fn eval_uses_lift() {
        let f = bap(&[3, 5, 6, 4]);
        assert_eq!(f.eval(0), 0);
        assert_eq!(f.eval(5), 7);
        assert_eq!(f.eval(-3), -1);
    }

    #[test]
    fn rotation_stays_bounded() {
        let f = bap(&[3, 5, 6, 4]);
        let g = f.rotate();
        assert_eq!(g.window(), &[1, 4, 6, 7]);
        assert!(BoundedAffinePermutation::new(g.window().to_vec()).is_ok());
    }
}
