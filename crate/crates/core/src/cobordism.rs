//! Compiling a cover chain `f = h_0 ⋖ h_1 ⋖ ... ⋖ h_m = g` into the
//! bookkeeping of an exact Lagrangian cobordism from `Λ_g` to `Λ_f`.
//!
//! Each cover step is either trivial (the two links are isotopic and a
//! fixed point appears) or a pinch (one crossing of `J_k(h_j)` is removed,
//! a saddle). Euler characteristic, boundary and genus follow from the
//! steps; the surface's connectivity is decided by following individual
//! strands through every isotopy and saddle.

use serde::Serialize;
use thiserror::Error;

use crate::affine::BoundedAffinePermutation;
use crate::braid::{BraidError, BraidWord, StrandMap, DEFAULT_SEARCH_LIMIT};
use crate::juggling::{self, Crossing, JugglingError, LinkDescriptor};
use crate::poset::{self, Chain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CobordismError {
    #[error("{upper} does not cover {lower}")]
    NotACover { lower: String, upper: String },
    #[error("{0}")]
    ClassificationAnomaly(Box<Anomaly>),
    #[error(
        "Euler characteristic {chi} disagrees with dim(g) - dim(f) + #Fix(g) - #Fix(f) = \
         {dim_upper} - {dim_lower} + {fix_upper} - {fix_lower}"
    )]
    EulerMismatch { chi: i64, dim_lower: i64, dim_upper: i64, fix_lower: usize, fix_upper: usize },
    #[error("step {step} ({kind:?}) changes the component count from {before} to {after}")]
    SaddleAnomaly { step: usize, kind: StepKind, before: usize, after: usize },
    #[error("genus formula gives a non-integer or negative value for chi = {chi}, boundary = {boundary}")]
    BadGenus { chi: i64, boundary: usize },
    #[error(transparent)]
    Juggling(#[from] JugglingError),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// Everything known about a cover that fits neither step pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anomaly {
    pub lower: String,
    pub upper: String,
    pub lower_word: String,
    pub upper_word: String,
    pub lower_fix: usize,
    pub upper_fix: usize,
    pub reason: String,
}

impl std::fmt::Display for Anomaly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "cover {} ⋖ {} fits neither step pattern: {} (words {:?} / {:?}, #Fix {} / {})",
            self.lower, self.upper, self.reason, self.lower_word, self.upper_word, self.lower_fix, self.upper_fix
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Trivial,
    Pinch,
}

/// The crossing of the lower diagram removed by a pinch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PinchSite {
    /// Position of the pinched letter in `J_k(lower)`.
    pub letter_index: usize,
    pub crossing: Crossing,
    /// The swap wraps around the period, so the two swapped arcs do not
    /// cross in the drawn diagram; the letter was located by search.
    pub wrapped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverStep {
    pub lower: BoundedAffinePermutation,
    pub upper: BoundedAffinePermutation,
    pub kind: StepKind,
    /// 1-based window positions where `lower` and `upper` differ.
    pub swapped_positions: (usize, usize),
    pub pinch_site: Option<PinchSite>,
    /// Whether `J_k(upper)` is literally `J_k(lower)` (minus the pinch
    /// letter), rather than only isotopic to it.
    pub verbatim: bool,
    /// Cut positions of `upper`'s closure mapped to those of `lower`'s.
    pub strand_map: StrandMap,
}

fn anomaly(
    f: &BoundedAffinePermutation,
    g: &BoundedAffinePermutation,
    wf: &BraidWord,
    wg: &BraidWord,
    reason: &str,
) -> CobordismError {
    CobordismError::ClassificationAnomaly(Box::new(Anomaly {
        lower: f.to_string(),
        upper: g.to_string(),
        lower_word: wf.to_string(),
        upper_word: wg.to_string(),
        lower_fix: f.fix_count(),
        upper_fix: g.fix_count(),
        reason: reason.to_string(),
    }))
}

/// Classifies a cover `f ⋖ g` as trivial or pinch by comparing juggling braids.
pub fn classify_step(f: &BoundedAffinePermutation, g: &BoundedAffinePermutation) -> Result<CoverStep, CobordismError> {
    if !poset::is_cover(f, g) {
        return Err(CobordismError::NotACover { lower: f.to_string(), upper: g.to_string() });
    }
    let wf = juggling::braid_word(f)?;
    let wg = juggling::braid_word(g)?;
    let differ: Vec<usize> = (1..=f.n()).filter(|&i| f.at(i) != g.at(i)).collect();
    let [a, b] = differ[..] else {
        return Err(anomaly(f, g, &wf, &wg, "windows differ in other than two positions"));
    };
    let delta_fix = g.fix_count() as i64 - f.fix_count() as i64;

    if wf.len() == wg.len() {
        if delta_fix != 1 {
            return Err(anomaly(f, g, &wf, &wg, "equal word lengths without a new fixed point"));
        }
        let Some(strand_map) = wf.closure_equivalence(&wg, DEFAULT_SEARCH_LIMIT)? else {
            return Err(anomaly(f, g, &wf, &wg, "words of equal length are not isotopic"));
        };
        return Ok(CoverStep {
            lower: f.clone(),
            upper: g.clone(),
            kind: StepKind::Trivial,
            swapped_positions: (a, b),
            pinch_site: None,
            verbatim: wf == wg,
            strand_map,
        });
    }

    if wf.len() != wg.len() + 1 {
        return Err(anomaly(f, g, &wf, &wg, "word lengths differ by more than one"));
    }
    if delta_fix != 0 {
        return Err(anomaly(f, g, &wf, &wg, "a crossing vanished while #Fix changed"));
    }
    let crossings = juggling::crossings(f);
    let pair = (a as i64, b as i64);
    let (letter_index, strand_map, wrapped) = match crossings.iter().position(|c| c.pair == pair) {
        Some(p) => match wf.delete(p).closure_equivalence(&wg, DEFAULT_SEARCH_LIMIT)? {
            Some(map) => (p, map, false),
            None => return Err(anomaly(f, g, &wf, &wg, "pinching the swapped arcs does not give the upper word")),
        },
        None => {
            let mut found = None;
            for p in 0..wf.len() {
                if let Some(map) = wf.delete(p).closure_equivalence(&wg, DEFAULT_SEARCH_LIMIT)? {
                    found = Some((p, map, true));
                    break;
                }
            }
            found.ok_or_else(|| anomaly(f, g, &wf, &wg, "no single pinch gives the upper word"))?
        }
    };
    let verbatim = wf.delete(letter_index) == wg;
    if !verbatim {
        log::debug!("pinch {f} ⋖ {g}: deleting letter {letter_index} of {wf} is isotopic but not equal to {wg}");
    }
    Ok(CoverStep {
        lower: f.clone(),
        upper: g.clone(),
        kind: StepKind::Pinch,
        swapped_positions: (a, b),
        pinch_site: Some(PinchSite { letter_index, crossing: crossings[letter_index].clone(), wrapped }),
        verbatim,
        strand_map,
    })
}

/// One connected piece of a disconnected cobordism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub chi: i64,
    /// Boundary components at the `Λ_f` end and the `Λ_g` end.
    pub boundary: (usize, usize),
    pub genus: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CobordismPlan {
    pub chain: Chain,
    pub steps: Vec<CoverStep>,
    pub chi: i64,
    pub epsilon: i64,
    /// Components of `Λ_g` and of `Λ_f`.
    pub boundary_components: (usize, usize),
    pub connected: bool,
    pub genus: Option<usize>,
    pub pieces: Vec<Piece>,
}

impl CobordismPlan {
    pub fn pinch_count(&self) -> usize {
        self.steps.iter().filter(|s| s.kind == StepKind::Pinch).count()
    }

    pub fn kinds(&self) -> Vec<StepKind> {
        self.steps.iter().map(|s| s.kind).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PlanJson::from(self)).expect("plan serializes")
    }

    /// Compact JSON text with keys in their documented order.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&PlanJson::from(self)).expect("plan serializes")
    }
}

pub fn compile_path(chain: &Chain) -> Result<CobordismPlan, CobordismError> {
    let steps = chain
        .elements()
        .windows(2)
        .map(|p| classify_step(&p[0], &p[1]))
        .collect::<Result<Vec<_>, _>>()?;
    let (f, g) = (chain.bottom(), chain.top());
    let pinches = steps.iter().filter(|s| s.kind == StepKind::Pinch).count() as i64;
    let chi = -pinches;
    let epsilon = g.fix_count() as i64 - f.fix_count() as i64;

    let (dim_lower, dim_upper) = (juggling::dimension_from_length(f), juggling::dimension_from_length(g));
    if chi != dim_upper - dim_lower + epsilon {
        return Err(CobordismError::EulerMismatch {
            chi,
            dim_lower,
            dim_upper,
            fix_lower: f.fix_count(),
            fix_upper: g.fix_count(),
        });
    }

    let boundary_components = (juggling::link_components(g)?, juggling::link_components(f)?);
    let mut plan = CobordismPlan {
        chain: chain.clone(),
        steps,
        chi,
        epsilon,
        boundary_components,
        connected: false,
        genus: None,
        pieces: Vec::new(),
    };
    let track = track_components(&plan)?;
    plan.connected = track.connected;
    if track.connected {
        let b = (boundary_components.0 + boundary_components.1) as i64;
        let twice = 2 - chi - b;
        if twice < 0 || twice % 2 != 0 {
            return Err(CobordismError::BadGenus { chi, boundary: b as usize });
        }
        plan.genus = Some((twice / 2) as usize);
    } else {
        plan.pieces = track.pieces;
    }
    Ok(plan)
}

/// Component counts of every slice `Λ_{h_0}, ..., Λ_{h_m}` and the pieces
/// of the surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentTrack {
    pub slices: Vec<usize>,
    pub connected: bool,
    pub pieces: Vec<Piece>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Union-find over `(slice, strand)` nodes: strands of one closure
/// component are joined within a slice, and each step joins a strand of
/// the upper slice to its image in the lower one.
pub fn track_components(plan: &CobordismPlan) -> Result<ComponentTrack, CobordismError> {
    let elements = plan.chain.elements();
    let k = elements[0].k();
    let slices_n = elements.len();
    let node = |slice: usize, strand: usize| slice * k + strand;
    let mut uf = UnionFind::new(slices_n * k);

    let mut components = Vec::with_capacity(slices_n);
    for (s, h) in elements.iter().enumerate() {
        let comps = LinkDescriptor::new(h)?.braid.closure_components();
        for c in &comps {
            for &p in &c[1..] {
                uf.union(node(s, c[0]), node(s, p));
            }
        }
        components.push(comps);
    }
    let slices: Vec<usize> = components.iter().map(Vec::len).collect();

    let mut saddle_nodes = Vec::new();
    for (s, step) in plan.steps.iter().enumerate() {
        let (before, after) = (slices[s], slices[s + 1]);
        let ok = match step.kind {
            StepKind::Trivial => before == after,
            StepKind::Pinch => before.abs_diff(after) == 1,
        };
        if !ok {
            return Err(CobordismError::SaddleAnomaly { step: s, kind: step.kind, before, after });
        }
        for (q, &p) in step.strand_map.iter().enumerate() {
            uf.union(node(s + 1, q), node(s, p));
        }
        if let Some(site) = &step.pinch_site {
            let (c1, _) = juggling::braid_word(&step.lower)?.strands_at(site.letter_index);
            saddle_nodes.push(node(s, c1));
        }
    }

    // Tally chi and both boundary ends per piece, numbering pieces in the
    // order their roots are first met.
    let last = slices_n - 1;
    let mut roots: Vec<usize> = Vec::new();
    let mut tally: Vec<(i64, usize, usize)> = Vec::new();
    let events = components[0]
        .iter()
        .map(|c| (node(0, c[0]), 1))
        .chain(components[last].iter().map(|c| (node(last, c[0]), 2)))
        .chain(saddle_nodes.iter().map(|&x| (x, 0)));
    for (x, field) in events {
        let r = uf.find(x);
        let i = roots.iter().position(|&y| y == r).unwrap_or_else(|| {
            roots.push(r);
            tally.push((0, 0, 0));
            roots.len() - 1
        });
        match field {
            0 => tally[i].0 -= 1,
            1 => tally[i].1 += 1,
            _ => tally[i].2 += 1,
        }
    }
    let pieces: Vec<Piece> = tally
        .into_iter()
        .map(|(chi, top, bottom)| Piece { chi, boundary: (top, bottom), genus: (2 - chi - (top + bottom) as i64) / 2 })
        .collect();
    Ok(ComponentTrack { slices, connected: pieces.len() == 1, pieces })
}

#[derive(Serialize)]
struct StepJson {
    kind: StepKind,
    positions: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    letter_index: Option<usize>,
}

#[derive(Serialize)]
struct PlanJson {
    chain: Vec<Vec<i64>>,
    steps: Vec<StepJson>,
    chi: i64,
    epsilon: i64,
    boundary: [usize; 2],
    connected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    genus: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pieces: Vec<Piece>,
}

impl From<&CobordismPlan> for PlanJson {
    fn from(p: &CobordismPlan) -> Self {
        PlanJson {
            chain: p.chain.elements().iter().map(|h| h.window().to_vec()).collect(),
            steps: p
                .steps
                .iter()
                .map(|s| StepJson {
                    kind: s.kind,
                    positions: [s.swapped_positions.0, s.swapped_positions.1],
                    letter_index: s.pinch_site.as_ref().map(|site| site.letter_index),
                })
                .collect(),
            chi: p.chi,
            epsilon: p.epsilon,
            boundary: [p.boundary_components.0, p.boundary_components.1],
            connected: p.connected,
            genus: p.genus,
            pieces: p.pieces.clone(),
        }
    }
}
