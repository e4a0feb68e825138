//! The order on `Bound(k, n)` generated by length-increasing affine
//! transpositions on either side.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::affine::{BoundedAffinePermutation, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("need 1 <= k <= n, got k = {k}, n = {n}")]
    BadParameters { k: usize, n: usize },
    #[error("permutations live in different posets: Bound({0}, {1}) vs Bound({2}, {3})")]
    MixedParameters(usize, usize, usize, usize),
    #[error("{upper} does not cover {lower}")]
    NotACover { lower: String, upper: String },
    #[error("a chain needs at least one element")]
    EmptyChain,
}

fn check_params(k: usize, n: usize) -> Result<(), PosetError> {
    if k < 1 || n < 1 || k > n {
        return Err(PosetError::BadParameters { k, n });
    }
    Ok(())
}

fn check_same(f: &BoundedAffinePermutation, g: &BoundedAffinePermutation) -> Result<(), PosetError> {
    if f.k() != g.k() || f.n() != g.n() {
        return Err(PosetError::MixedParameters(f.k(), f.n(), g.k(), g.n()));
    }
    Ok(())
}

/// All of `Bound(k, n)` in lexicographic window order.
pub fn enumerate(k: usize, n: usize) -> Result<Vec<BoundedAffinePermutation>, PosetError> {
    check_params(k, n)?;
    let target = (n * k) as i64;
    // Split on the first value so prefixes can be searched independently.
    let firsts: Vec<i64> = (1..=1 + n as i64).collect();
    let windows: Vec<Vec<Vec<i64>>> = firsts
        .par_iter()
        .map(|&first| {
            let mut out = Vec::new();
            let mut used = vec![false; n];
            used[first.rem_euclid(n as i64) as usize] = true;
            let mut prefix = vec![first];
            extend_windows(n, target, first - 1, &mut prefix, &mut used, &mut out);
            out
        })
        .collect();
    Ok(windows
        .into_iter()
        .flatten()
        .map(|w| BoundedAffinePermutation::new(w).expect("enumeration yields valid windows"))
        .collect())
}

fn extend_windows(
    n: usize,
    target: i64,
    total: i64,
    prefix: &mut Vec<i64>,
    used: &mut [bool],
    out: &mut Vec<Vec<i64>>,
) {
    let pos = prefix.len() + 1;
    if pos > n {
        if total == target {
            out.push(prefix.clone());
        }
        return;
    }
    let remaining = (n - pos) as i64;
    for d in 0..=n as i64 {
        let t = total + d;
        // each later position contributes between 0 and n
        if t > target || t + remaining * (n as i64) < target {
            continue;
        }
        let value = pos as i64 + d;
        let r = value.rem_euclid(n as i64) as usize;
        if used[r] {
            continue;
        }
        used[r] = true;
        prefix.push(value);
        extend_windows(n, target, t, prefix, used, out);
        prefix.pop();
        used[r] = false;
    }
}

/// Elements covering `f`, sorted and deduplicated.
pub fn covers_up(f: &BoundedAffinePermutation) -> Vec<BoundedAffinePermutation> {
    neighbours(f, |l| l > f.length())
}

/// Elements covered by `f`.
pub fn covers_down(f: &BoundedAffinePermutation) -> Vec<BoundedAffinePermutation> {
    neighbours(f, |l| l < f.length())
}

fn neighbours(f: &BoundedAffinePermutation, keep: impl Fn(usize) -> bool) -> Vec<BoundedAffinePermutation> {
    let mut out = Vec::with_capacity(2 * f.n());
    for i in 1..=f.n() {
        for side in [Side::Left, Side::Right] {
            let w = f.apply_transposition(i, side).expect("index in range");
            if let Ok(g) = BoundedAffinePermutation::new(w) {
                if g.k() == f.k() && keep(g.length()) {
                    out.push(g);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn is_cover(f: &BoundedAffinePermutation, g: &BoundedAffinePermutation) -> bool {
    f.k() == g.k() && f.n() == g.n() && covers_up(f).contains(g)
}

pub fn is_leq(f: &BoundedAffinePermutation, g: &BoundedAffinePermutation) -> Result<bool, PosetError> {
    Ok(find_chain(f, g)?.is_some())
}

/// A chain of covers from `f` up to `g`, if `f <= g`.
///
/// Bidirectional breadth-first search: upward from `f` through elements of
/// length at most `l(g)`, downward from `g` through elements of length at
/// least `l(f)`, always growing the smaller frontier.
pub fn find_chain(
    f: &BoundedAffinePermutation,
    g: &BoundedAffinePermutation,
) -> Result<Option<Chain>, PosetError> {
    check_same(f, g)?;
    if f == g {
        return Ok(Some(Chain(vec![f.clone()])));
    }
    let (lo, hi) = (f.length(), g.length());
    if lo >= hi {
        return Ok(None);
    }
    let mut up_parent: HashMap<BoundedAffinePermutation, Option<BoundedAffinePermutation>> = HashMap::new();
    let mut down_parent: HashMap<BoundedAffinePermutation, Option<BoundedAffinePermutation>> = HashMap::new();
    up_parent.insert(f.clone(), None);
    down_parent.insert(g.clone(), None);
    let mut up_frontier = VecDeque::from([f.clone()]);
    let mut down_frontier = VecDeque::from([g.clone()]);

    let meet = loop {
        if up_frontier.is_empty() || down_frontier.is_empty() {
            return Ok(None);
        }
        if up_frontier.len() <= down_frontier.len() {
            if let Some(m) = expand(&mut up_frontier, &mut up_parent, &down_parent, |h| {
                covers_up(h).into_iter().filter(|x| x.length() <= hi).collect()
            }) {
                break m;
            }
        } else if let Some(m) = expand(&mut down_frontier, &mut down_parent, &up_parent, |h| {
            covers_down(h).into_iter().filter(|x| x.length() >= lo).collect()
        }) {
            break m;
        }
    };

    let mut lower = vec![meet.clone()];
    let mut cur = meet.clone();
    while let Some(Some(p)) = up_parent.get(&cur) {
        lower.push(p.clone());
        cur = p.clone();
    }
    lower.reverse();
    let mut cur = meet;
    while let Some(Some(p)) = down_parent.get(&cur) {
        lower.push(p.clone());
        cur = p.clone();
    }
    Ok(Some(Chain(lower)))
}

/// Expands one whole BFS layer; returns a node seen by the other side.
fn expand(
    frontier: &mut VecDeque<BoundedAffinePermutation>,
    parent: &mut HashMap<BoundedAffinePermutation, Option<BoundedAffinePermutation>>,
    other: &HashMap<BoundedAffinePermutation, Option<BoundedAffinePermutation>>,
    step: impl Fn(&BoundedAffinePermutation) -> Vec<BoundedAffinePermutation>,
) -> Option<BoundedAffinePermutation> {
    for _ in 0..frontier.len() {
        let h = frontier.pop_front().expect("layer size was measured");
        for x in step(&h) {
            if parent.contains_key(&x) {
                continue;
            }
            parent.insert(x.clone(), Some(h.clone()));
            if other.contains_key(&x) {
                return Some(x);
            }
            frontier.push_back(x);
        }
    }
    None
}

pub fn level_statistics(k: usize, n: usize) -> Result<BTreeMap<usize, usize>, PosetError> {
    let mut levels = BTreeMap::new();
    for f in enumerate(k, n)? {
        *levels.entry(f.length()).or_insert(0) += 1;
    }
    Ok(levels)
}

/// A saturated chain `h_0 ⋖ h_1 ⋖ ... ⋖ h_m`; a single element is the empty chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Chain(Vec<BoundedAffinePermutation>);

impl Chain {
    pub fn new(elements: Vec<BoundedAffinePermutation>) -> Result<Self, PosetError> {
        let first = elements.first().ok_or(PosetError::EmptyChain)?;
        for h in &elements {
            check_same(first, h)?;
        }
        for pair in elements.windows(2) {
            if !is_cover(&pair[0], &pair[1]) {
                return Err(PosetError::NotACover { lower: pair[0].to_string(), upper: pair[1].to_string() });
            }
        }
        Ok(Self(elements))
    }

    pub fn elements(&self) -> &[BoundedAffinePermutation] {
        &self.0
    }

    pub fn bottom(&self) -> &BoundedAffinePermutation {
        &self.0[0]
    }

    pub fn top(&self) -> &BoundedAffinePermutation {
        self.0.last().expect("chains are non-empty")
    }

    /// Number of cover steps.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `Bound(k, n)` with its cover relation, as plain node and edge lists.
#[derive(Debug, Clone)]
pub struct CoverGraph {
    pub k: usize,
    pub n: usize,
    pub nodes: Vec<BoundedAffinePermutation>,
    pub lengths: Vec<usize>,
    /// `(lower, upper)` node indices, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl CoverGraph {
    pub fn build(k: usize, n: usize) -> Result<Self, PosetError> {
        let nodes = enumerate(k, n)?;
        let index: HashMap<&BoundedAffinePermutation, usize> =
            nodes.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let lengths: Vec<usize> = nodes.par_iter().map(|f| f.length()).collect();
        let mut edges: Vec<(usize, usize)> = nodes
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, f)| {
                covers_up(f).into_iter().map(|g| (i, index[&g])).collect::<Vec<_>>()
            })
            .collect();
        edges.sort_unstable();
        Ok(Self { k, n, nodes, lengths, edges })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node indices grouped by length.
    pub fn levels(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut levels: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &l) in self.lengths.iter().enumerate() {
            levels.entry(l).or_default().push(i);
        }
        levels
    }

    /// Edges that are implied by a longer path, i.e. that a transitive
    /// reduction would remove. Empty when the cover relation is already the
    /// Hasse relation.
    pub fn reduction_discrepancies(&self) -> Vec<(usize, usize)> {
        let mut succ = vec![Vec::new(); self.len()];
        for &(a, b) in &self.edges {
            succ[a].push(b);
        }
        let mut redundant = Vec::new();
        for &(a, b) in &self.edges {
            // search from a's other successors for b
            let mut seen = vec![false; self.len()];
            let mut stack: Vec<usize> = succ[a].iter().copied().filter(|&x| x != b).collect();
            let mut found = false;
            while let Some(x) = stack.pop() {
                if x == b {
                    found = true;
                    break;
                }
                if seen[x] || self.lengths[x] >= self.lengths[b] {
                    continue;
                }
                seen[x] = true;
                stack.extend(succ[x].iter().copied());
            }
            if found {
                redundant.push((a, b));
            }
        }
        redundant
    }
}
