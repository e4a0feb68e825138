//! Positive braid words on `k` strands and the facts about their closures
//! that the rest of the crate needs: the underlying permutation, component
//! counts, and an exact equivalence test for `(-1)`-closures of `β·Δ_k`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// States explored by an equivalence search before it gives up.
pub const DEFAULT_SEARCH_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("generator s{letter} is not valid on {strands} strands")]
    LetterOutOfRange { letter: usize, strands: usize },
    #[error("braid words need at least one strand")]
    NoStrands,
    #[error("cannot parse braid word {input:?}")]
    Parse { input: String },
    #[error("equivalence search exceeded {limit} states")]
    SearchExhausted { limit: usize },
}

/// Maps cut positions of one closure onto cut positions of another
/// (0-based), following the strands through an isotopy.
pub type StrandMap = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<usize>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<usize>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        if let Some(&letter) = letters.iter().find(|&&m| m == 0 || m >= strands) {
            return Err(BraidError::LetterOutOfRange { letter, strands });
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, Vec::new())
    }

    /// `Δ_k = (s1)(s2 s1)...(s_{k-1} ... s1)`.
    pub fn half_twist(strands: usize) -> Result<Self, BraidError> {
        let letters = (1..strands).flat_map(|t| (1..=t).rev()).collect();
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "concatenating braids on different strand counts");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }
    }

    /// The word with the letter at `index` removed.
    pub fn delete(&self, index: usize) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.remove(index);
        BraidWord { strands: self.strands, letters }
    }

    /// Image in the symmetric group: entry `p` is where the strand entering
    /// at position `p` (1 = top) leaves the braid.
    pub fn permutation(&self) -> Vec<usize> {
        let arrangement = self.arrangement_after(self.letters.len());
        let mut exit = vec![0; self.strands];
        for (pos, &strand) in arrangement.iter().enumerate() {
            exit[strand] = pos + 1;
        }
        exit
    }

    /// Cut labels (0-based entry positions) occupying each position after
    /// the first `count` letters.
    fn arrangement_after(&self, count: usize) -> Vec<usize> {
        let mut arrangement: Vec<usize> = (0..self.strands).collect();
        for &m in &self.letters[..count] {
            arrangement.swap(m - 1, m);
        }
        arrangement
    }

    /// Entry positions (0-based) of the two strands meeting at letter `index`.
    pub fn strands_at(&self, index: usize) -> (usize, usize) {
        let arrangement = self.arrangement_after(index);
        let m = self.letters[index];
        (arrangement[m - 1], arrangement[m])
    }

    /// Components of the plain closure, each a sorted list of 0-based entry
    /// positions.
    pub fn closure_components(&self) -> Vec<Vec<usize>> {
        cycles_of(&self.permutation().iter().map(|p| p - 1).collect::<Vec<_>>())
    }

    /// Searches for an isotopy of `(-1)`-closures taking `self·Δ` to
    /// `other·Δ`, using positive braid relations and the twisted rotation
    /// `w·s_i ~ s_{k-i}·w`. Returns the induced map from `other`'s cut
    /// positions to `self`'s. Words of different lengths are never equivalent.
    pub fn closure_equivalence(&self, other: &BraidWord, limit: usize) -> Result<Option<StrandMap>, BraidError> {
        self.search(other, true, limit)
    }

    /// Equality in the positive braid monoid (no rotations).
    pub fn braid_equivalent(&self, other: &BraidWord, limit: usize) -> Result<bool, BraidError> {
        Ok(self.search(other, false, limit)?.is_some())
    }

    fn search(&self, other: &BraidWord, rotate: bool, limit: usize) -> Result<Option<StrandMap>, BraidError> {
        if self.strands != other.strands || self.len() != other.len() {
            return Ok(None);
        }
        let k = self.strands;
        let start: Vec<u8> = self.letters.iter().map(|&m| m as u8).collect();
        let target: Vec<u8> = other.letters.iter().map(|&m| m as u8).collect();
        let identity: Vec<usize> = (0..k).collect();
        if start == target {
            return Ok(Some(identity));
        }
        let mut seen: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
        seen.insert(start.clone(), identity);
        let mut queue = VecDeque::from([start]);
        while let Some(word) = queue.pop_front() {
            let map = seen[&word].clone();
            for (next, next_map) in moves(&word, &map, k, rotate) {
                if seen.contains_key(&next) {
                    continue;
                }
                if next == target {
                    return Ok(Some(next_map));
                }
                if seen.len() >= limit {
                    return Err(BraidError::SearchExhausted { limit });
                }
                seen.insert(next.clone(), next_map);
                queue.push_back(next);
            }
        }
        Ok(None)
    }
}

fn swap_position(map: &[usize], generator: usize) -> Vec<usize> {
    let mut out = map.to_vec();
    out.swap(generator - 1, generator);
    out
}

fn moves(word: &[u8], map: &[usize], k: usize, rotate: bool) -> Vec<(Vec<u8>, Vec<usize>)> {
    let mut out = Vec::new();
    for p in 0..word.len().saturating_sub(1) {
        let (a, b) = (word[p], word[p + 1]);
        if a.abs_diff(b) >= 2 {
            let mut w = word.to_vec();
            w.swap(p, p + 1);
            out.push((w, map.to_vec()));
        }
    }
    for p in 0..word.len().saturating_sub(2) {
        let (a, b, c) = (word[p], word[p + 1], word[p + 2]);
        if a == c && a.abs_diff(b) == 1 {
            let mut w = word.to_vec();
            w[p] = b;
            w[p + 1] = a;
            w[p + 2] = b;
            out.push((w, map.to_vec()));
        }
    }
    if rotate && !word.is_empty() {
        let k8 = k as u8;
        // last s_i moves to the front as s_{k-i}; the cut crosses that letter
        let last = word[word.len() - 1];
        let mut w = Vec::with_capacity(word.len());
        w.push(k8 - last);
        w.extend_from_slice(&word[..word.len() - 1]);
        out.push((w, swap_position(map, (k8 - last) as usize)));
        // first s_j moves to the end as s_{k-j}
        let first = word[0];
        let mut w = word[1..].to_vec();
        w.push(k8 - first);
        out.push((w, swap_position(map, first as usize)));
    }
    out
}

/// Cycles of a 0-based permutation, each starting at its least element.
pub fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = perm[i];
        }
        out.push(cycle);
    }
    out
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        let tokens: Vec<String> = self.letters.iter().map(|m| format!("s{m}")).collect();
        f.write_str(&tokens.join(" "))
    }
}

impl Serialize for BraidWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl BraidWord {
    /// Parses `s1 s2 s1` (or `e`) on the given number of strands.
    pub fn parse(strands: usize, s: &str) -> Result<Self, BraidError> {
        let s = s.trim();
        if s == "e" {
            return Self::identity(strands);
        }
        let letters = s
            .split_whitespace()
            .map(|tok| {
                tok.strip_prefix('s')
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| BraidError::Parse { input: s.to_string() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(strands, letters)
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    /// Uses the smallest strand count that fits the letters.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let probe = Self::parse(usize::MAX, s)?;
        let strands = probe.letters.iter().max().map_or(1, |m| m + 1);
        Self::new(strands, probe.letters)
    }
}
