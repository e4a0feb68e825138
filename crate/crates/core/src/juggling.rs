//! Juggling diagrams over exact rationals and the invariants read off them.
//!
//! Arc `i` is the upper semicircle through `(i, 0)` and `(f(i), 0)`. Two arcs
//! `i < j` cross exactly when `i < j < f(i) < f(j)`; a shared endpoint
//! `f(i) = j` is a smoothed cusp. The juggling braid lists crossings by
//! decreasing abscissa, and a crossing with `m - 1` arcs strictly above it
//! is the generator `s_m`.

use std::collections::BTreeMap;

use num::rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use crate::affine::BoundedAffinePermutation;
use crate::braid::{BraidError, BraidWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JugglingError {
    #[error("{window} has k = 0: its juggling braid has no strands")]
    NoStrands { window: String },
    #[error(transparent)]
    Braid(#[from] BraidError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Arc {
    pub start: i64,
    pub end: i64,
}

impl Arc {
    pub fn center(&self) -> Rational64 {
        Rational64::new(self.start + self.end, 2)
    }

    pub fn radius(&self) -> Rational64 {
        Rational64::new(self.end - self.start, 2)
    }

    /// Open interval of abscissas the arc spans.
    pub fn spans(&self, x: Rational64) -> bool {
        Rational64::from(self.start) < x && x < Rational64::from(self.end)
    }

    /// `y^2` on the arc above `x`.
    pub fn height_sq_at(&self, x: Rational64) -> Rational64 {
        let r = self.radius();
        let d = x - self.center();
        r * r - d * d
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JugglingDiagram {
    pub arcs: Vec<Arc>,
    pub dots: Vec<i64>,
}

/// Arcs for the non-fixed positions, dots for the fixed ones.
pub fn arcs(f: &BoundedAffinePermutation) -> JugglingDiagram {
    let mut arcs = Vec::new();
    let mut dots = Vec::new();
    for i in 1..=f.n() {
        let (start, end) = (i as i64, f.at(i));
        if start == end {
            dots.push(start);
        } else {
            arcs.push(Arc { start, end });
        }
    }
    JugglingDiagram { arcs, dots }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crossing {
    /// Starts of the two arcs, `pair.0 < pair.1`.
    pub pair: (i64, i64),
    #[serde(serialize_with = "ser_rational")]
    pub x: Rational64,
    #[serde(serialize_with = "ser_rational")]
    pub h_sq: Rational64,
    pub generator: usize,
}

fn ser_rational<S: serde::Serializer>(q: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(q)
}

fn interleaved(a: &Arc, b: &Arc) -> bool {
    a.start < b.start && b.start < a.end && a.end < b.end
}

/// Meeting point of two interleaved arcs: equal power with respect to both
/// circles gives a vertical radical axis.
fn meet(a: &Arc, b: &Arc) -> (Rational64, Rational64) {
    let (ca, cb) = (a.center(), b.center());
    let (ra, rb) = (a.radius(), b.radius());
    let x = (ra * ra - rb * rb + cb * cb - ca * ca) / (Rational64::from(2) * (cb - ca));
    (x, a.height_sq_at(x))
}

/// All crossings in braid order: decreasing `x`, then increasing height.
///
/// Several arcs through one point are resolved as the half twist on the
/// strands involved, which is what any small generic perturbation of the
/// point yields up to braid relations.
pub fn crossings(f: &BoundedAffinePermutation) -> Vec<Crossing> {
    let diagram = arcs(f);
    let arcs = &diagram.arcs;
    let mut points: BTreeMap<(Rational64, Rational64), Vec<usize>> = BTreeMap::new();
    for (ia, a) in arcs.iter().enumerate() {
        for (ib, b) in arcs.iter().enumerate() {
            if interleaved(a, b) {
                let members = points.entry(meet(a, b)).or_default();
                for idx in [ia, ib] {
                    if !members.contains(&idx) {
                        members.push(idx);
                    }
                }
            }
        }
    }

    let mut out = Vec::new();
    for ((x, h_sq), mut members) in points.into_iter().rev() {
        let above = arcs
            .iter()
            .enumerate()
            .filter(|(idx, arc)| !members.contains(idx) && arc.spans(x) && arc.height_sq_at(x) > h_sq)
            .count();
        // Just right of the point the arc with the larger centre is higher.
        members.sort_by(|&p, &q| arcs[q].center().cmp(&arcs[p].center()));
        let r = members.len();
        let local: Vec<usize> = (1..r).flat_map(|t| (1..=t).rev()).collect();
        let mut order = members;
        for m in local {
            let (p, q) = (order[m - 1], order[m]);
            let (s, t) = (arcs[p].start.min(arcs[q].start), arcs[p].start.max(arcs[q].start));
            out.push(Crossing { pair: (s, t), x, h_sq, generator: above + m });
            order.swap(m - 1, m);
        }
    }
    // BTreeMap in reverse gives decreasing x with decreasing h_sq; restore
    // increasing h_sq among equal x (the sort is stable within a point).
    out.sort_by(|a, b| b.x.cmp(&a.x).then(a.h_sq.cmp(&b.h_sq)));
    out
}

/// `#{(i, j) : i < j < f(i) < f(j)}`, with no geometry.
pub fn interleaving_count(f: &BoundedAffinePermutation) -> usize {
    let diagram = arcs(f);
    let a = &diagram.arcs;
    a.iter().map(|p| a.iter().filter(|q| interleaved(p, q)).count()).sum()
}

fn strands(f: &BoundedAffinePermutation) -> Result<usize, JugglingError> {
    if f.k() == 0 {
        return Err(JugglingError::NoStrands { window: f.to_string() });
    }
    Ok(f.k())
}

/// The juggling braid `J_k(f)`.
pub fn braid_word(f: &BoundedAffinePermutation) -> Result<BraidWord, JugglingError> {
    let k = strands(f)?;
    let letters = crossings(f).into_iter().map(|c| c.generator).collect();
    Ok(BraidWord::new(k, letters)?)
}

/// The positive braid `J_k(f)·Δ_k` whose `(-1)`-closure is the positroid link.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkDescriptor {
    pub permutation: BoundedAffinePermutation,
    pub juggling: BraidWord,
    pub braid: BraidWord,
}

impl LinkDescriptor {
    pub fn new(f: &BoundedAffinePermutation) -> Result<Self, JugglingError> {
        let juggling = braid_word(f)?;
        let braid = juggling.concat(&BraidWord::half_twist(f.k())?);
        Ok(Self { permutation: f.clone(), juggling, braid })
    }

    pub fn components(&self) -> usize {
        self.braid.closure_components().len()
    }
}

/// Image of `J_k(f)·Δ_k` in the symmetric group, strands 1 (top) to k.
pub fn closure_permutation(f: &BoundedAffinePermutation) -> Result<Vec<usize>, JugglingError> {
    Ok(LinkDescriptor::new(f)?.braid.permutation())
}

/// Number of components of the positroid link: cycles of `f` that are not
/// fixed points.
pub fn link_components(f: &BoundedAffinePermutation) -> Result<usize, JugglingError> {
    strands(f)?;
    Ok(f.cycles().nonfixed_cycle_count)
}

fn triangular(k: usize) -> i64 {
    (k * (k + 1) / 2) as i64
}

/// Thurston–Bennequin number `|J_k(f)| - k(k+1)/2`.
pub fn tb(f: &BoundedAffinePermutation) -> Result<i64, JugglingError> {
    Ok(braid_word(f)?.len() as i64 - triangular(f.k()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StratumDimension {
    pub dim: usize,
    pub torus_exponent: usize,
}

/// `dim = |J_k(f)| + n - k(k+1)/2 - #Fix(f)` and the torus exponent
/// `n - #Fix(f) - k`.
pub fn stratum_dim(f: &BoundedAffinePermutation) -> Result<StratumDimension, JugglingError> {
    let word = braid_word(f)?;
    let (n, fix, k) = (f.n() as i64, f.fix_count() as i64, f.k() as i64);
    let dim = word.len() as i64 + n - triangular(f.k()) - fix;
    let torus = n - fix - k;
    debug_assert!(dim >= 0 && torus >= 0);
    Ok(StratumDimension { dim: dim as usize, torus_exponent: torus as usize })
}

/// `k(n-k) - l(f)`, the dimension read from the poset rank.
pub fn dimension_from_length(f: &BoundedAffinePermutation) -> i64 {
    (f.k() * (f.n() - f.k())) as i64 - f.length() as i64
}

/// Maximum number of arcs spanning any crossing abscissa (including the
/// crossing arcs themselves).
pub fn max_arcs_over_crossings(f: &BoundedAffinePermutation) -> usize {
    let diagram = arcs(f);
    crossings(f)
        .iter()
        .map(|c| diagram.arcs.iter().filter(|a| a.spans(c.x)).count())
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bap(w: &[i64]) -> BoundedAffinePermutation {
        BoundedAffinePermutation::new(w.to_vec()).unwrap()
    }

    fn word(w: &[i64]) -> String {
        braid_word(&bap(w)).unwrap().to_string()
    }

    #[test]
    fn arc_examples() {
        let d = arcs(&bap(&[5, 2, 7, 4]));
        assert_eq!(d.arcs, vec![Arc { start: 1, end: 5 }, Arc { start: 3, end: 7 }]);
        assert_eq!(d.dots, vec![2, 4]);
        let d = arcs(&bap(&[3, 4, 5, 6]));
        assert_eq!((d.arcs.len(), d.dots.len()), (4, 0));
        let d = arcs(&bap(&[1, 2, 3, 4]));
        assert_eq!((d.arcs.len(), d.dots.len()), (0, 4));
    }

    #[test]
    fn crossing_abscissas() {
        // Solved by hand from (x - c_i)^2 - r_i^2 = (x - c_j)^2 - r_j^2.
        let cs = crossings(&bap(&[3, 6, 4, 7, 10]));
        let xs: Vec<Rational64> = cs.iter().map(|c| c.x).collect();
        assert_eq!(
            xs,
            vec![Rational64::new(11, 2), Rational64::new(38, 7), Rational64::new(16, 3), Rational64::new(9, 4)]
        );
        let pairs: Vec<(i64, i64)> = cs.iter().map(|c| c.pair).collect();
        assert_eq!(pairs, vec![(4, 5), (2, 5), (2, 4), (1, 2)]);
        assert_eq!(cs[1].h_sq, Rational64::new(96, 49));
        assert!(crossings(&bap(&[1, 2, 3, 4])).is_empty());
        assert!(crossings(&bap(&[3, 4, 5, 6])).iter().all(|c| c.generator == 1));
    }

    #[test]
    fn reference_words() {
        assert_eq!(word(&[3, 4, 5, 6]), "s1 s1 s1");
        assert_eq!(word(&[5, 2, 7, 4]), "s1");
        assert_eq!(word(&[4, 6, 7, 8, 10]), "s1 s2 s1 s3 s2 s1 s2 s1");
        assert_eq!(word(&[3, 6, 4, 7, 10]), "s1 s2 s1 s1");
    }

    #[test]
    fn cusps_are_not_crossings() {
        // f(1) = 2 is where arc 2 starts
        assert_eq!(crossings(&bap(&[2, 4, 5, 7])).iter().filter(|c| c.pair.0 == 1).count(), 0);
    }

    #[test]
    fn triple_point_resolves_to_half_twist() {
        // some window of Bound(3,6) has three arcs through a single point
        let f = crate::poset::enumerate(3, 6)
            .unwrap()
            .into_iter()
            .find(|f| {
                let cs = crossings(f);
                cs.windows(2).any(|p| p[0].x == p[1].x && p[0].h_sq == p[1].h_sq)
            })
            .expect("Bound(3,6) has a triple point");
        let cs = crossings(&f);
        assert_eq!(cs.len(), interleaving_count(&f));
        let w = braid_word(&f).unwrap();
        assert!(w.letters().iter().all(|&m| (1..3).contains(&m)));
    }

    #[test]
    fn k_zero_has_no_braid() {
        assert!(matches!(braid_word(&bap(&[1, 2])), Err(JugglingError::NoStrands { .. })));
    }

    #[test]
    fn closure_permutations() {
        let p = closure_permutation(&bap(&[3, 4, 5, 6])).unwrap();
        assert_eq!(p, vec![1, 2]);
        let f7 = bap(&[7, 2, 8, 6, 5, 9, 11, 12]);
        let p = closure_permutation(&f7).unwrap();
        assert_eq!(crate::braid::cycles_of(&p.iter().map(|x| x - 1).collect::<Vec<_>>()).len(), 1);
        assert!(p.iter().enumerate().all(|(i, &v)| v != i + 1));
        assert_eq!(closure_permutation(&bap(&[2, 3, 4])).unwrap(), vec![1]);
    }

    #[test]
    fn components() {
        assert_eq!(link_components(&bap(&[3, 4, 5, 7, 8, 6])).unwrap(), 1);
        assert_eq!(link_components(&bap(&[3, 4, 7, 5, 6, 8])).unwrap(), 2);
        assert_eq!(link_components(&bap(&[3, 4, 6, 5, 8, 7])).unwrap(), 2);
        assert_eq!(link_components(&bap(&[5, 2, 7, 4])).unwrap(), 2);
        assert_eq!(LinkDescriptor::new(&bap(&[3, 4, 6, 5, 8, 7])).unwrap().components(), 2);
    }

    #[test]
    fn tb_and_dimension() {
        let f7 = bap(&[7, 2, 8, 6, 5, 9, 11, 12]);
        assert_eq!(tb(&bap(&[3, 4, 5, 6])).unwrap(), 0);
        assert_eq!(tb(&bap(&[5, 2, 7, 4])).unwrap(), -2);
        assert_eq!(tb(&f7).unwrap(), 1);
        assert_eq!(stratum_dim(&bap(&[3, 4, 5, 6])).unwrap().dim, 4);
        assert_eq!(stratum_dim(&bap(&[3, 4, 5, 7, 8, 6])).unwrap().dim, 6);
        assert_eq!(stratum_dim(&bap(&[3, 4, 7, 5, 6, 8])).unwrap().dim, 6);
        let d = stratum_dim(&f7).unwrap();
        assert_eq!((d.dim, d.torus_exponent), (7, 3));
    }
}
