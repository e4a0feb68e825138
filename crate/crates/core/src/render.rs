//! Text renderers: Graphviz DOT for Hasse diagrams, SVG for juggling
//! diagrams and cobordism schematics.
//!
//! Output is a pure function of the input and the [`RenderSpec`], so the
//! same call always produces the same bytes. Coordinates are computed as
//! exact rationals and only converted to decimals when written out.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num::rational::Ratio;
use num::ToPrimitive;
use num::Signed;
use thiserror::Error;

use crate::affine::BoundedAffinePermutation;
use crate::cobordism::{CobordismPlan, StepKind};
use crate::juggling::{self, JugglingError};
use crate::poset::{self, CoverGraph, PosetError};

/// Default cap on the number of nodes drawn in a Hasse diagram.
pub const DEFAULT_HASSE_CAP: usize = 5000;

/// User units per unit of the juggling diagram at scale 1.
const UNIT: i64 = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("Bound({k}, {n}) has {size} elements, more than the cap of {cap}")]
    TooLarge { k: usize, n: usize, size: usize, cap: usize },
    #[error("render scale must be positive, got {0}")]
    BadScale(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Juggling(#[from] JugglingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderTarget {
    Juggling,
    Hasse,
    Cobordism,
}

/// What to draw and how large. `highlight` holds crossing indices for
/// juggling diagrams, node indices for Hasse diagrams and step indices for
/// cobordisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    target: RenderTarget,
    scale: Ratio<i64>,
    highlight: BTreeSet<usize>,
    labels: bool,
}

impl RenderSpec {
    pub fn new(target: RenderTarget, scale: Ratio<i64>) -> Result<Self, RenderError> {
        if !scale.is_positive() {
            return Err(RenderError::BadScale(scale.to_string()));
        }
        Ok(Self { target, scale, highlight: BTreeSet::new(), labels: false })
    }

    pub fn with_highlight(mut self, items: impl IntoIterator<Item = usize>) -> Self {
        self.highlight.extend(items);
        self
    }

    /// Print generator labels next to crossing markers.
    pub fn with_labels(mut self, labels: bool) -> Self {
        self.labels = labels;
        self
    }

    pub fn target(&self) -> RenderTarget {
        self.target
    }

    pub fn scale(&self) -> Ratio<i64> {
        self.scale
    }

    fn unit(&self) -> Ratio<i64> {
        self.scale * UNIT
    }
}

/// Fixed-point decimal with three places, rounded half away from zero.
fn dec(q: Ratio<i64>) -> String {
    let scaled = (q * 1000).round().to_integer();
    let sign = if scaled < 0 { "-" } else { "" };
    let abs = scaled.unsigned_abs();
    let (int, frac) = (abs / 1000, abs % 1000);
    if frac == 0 {
        format!("{sign}{int}")
    } else {
        let frac = format!("{frac:03}");
        format!("{sign}{int}.{}", frac.trim_end_matches('0'))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// The cover relation of `Bound(k, n)` as a DOT digraph, one rank per
/// length with the minimal element at the bottom.
pub fn render_hasse(k: usize, n: usize, cap: usize, spec: &RenderSpec) -> Result<String, RenderError> {
    let size = poset::enumerate(k, n)?.len();
    if size > cap {
        return Err(RenderError::TooLarge { k, n, size, cap });
    }
    let graph = CoverGraph::build(k, n)?;
    Ok(hasse_dot(&graph, spec))
}

pub fn hasse_dot(graph: &CoverGraph, spec: &RenderSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"Bound({},{})\" {{", graph.k, graph.n);
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
    for (length, members) in graph.levels() {
        let _ = write!(out, "  {{ rank=same;");
        for i in members {
            let style = if spec.highlight.contains(&i) { ", style=filled, fillcolor=\"#ffd27f\"" } else { "" };
            let _ = write!(out, " n{i} [label=\"{}\", tooltip=\"length {length}\"{style}];", graph.nodes[i]);
        }
        let _ = writeln!(out, " }}");
    }
    for &(a, b) in &graph.edges {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// The juggling diagram of `f`: upper semicircles, fixed-point dots and a
/// marker at every crossing.
pub fn render_juggling(f: &BoundedAffinePermutation, spec: &RenderSpec) -> String {
    let diagram = juggling::arcs(f);
    let crossings = juggling::crossings(f);
    let u = spec.unit();
    let max = f.window().iter().copied().max().unwrap_or(1);
    let reach = Ratio::from(max);
    let width = (reach + 1) * u;
    let height = (reach / 2 + 1) * u;
    let base = height - u / 2;
    let px = |x: Ratio<i64>| x * u;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = dec(width),
        h = dec(height)
    );
    let _ = writeln!(svg, "  <title>juggling diagram of {f}</title>");
    let _ = writeln!(
        svg,
        "  <line class=\"axis\" x1=\"{}\" y1=\"{b}\" x2=\"{}\" y2=\"{b}\" stroke=\"#999\"/>",
        dec(u / 2),
        dec(width - u / 2),
        b = dec(base)
    );
    for i in 1..=max {
        let _ = writeln!(
            svg,
            "  <text class=\"tick\" x=\"{}\" y=\"{}\" font-size=\"{}\" text-anchor=\"middle\">{i}</text>",
            dec(px(Ratio::from(i))),
            dec(base + u * Ratio::new(2, 5)),
            dec(u * Ratio::new(3, 10))
        );
    }
    for arc in &diagram.arcs {
        let r = px(arc.radius());
        let _ = writeln!(
            svg,
            "  <path class=\"arc\" d=\"M {} {b} A {r} {r} 0 0 1 {} {b}\" fill=\"none\" stroke=\"black\"/>",
            dec(px(Ratio::from(arc.start))),
            dec(px(Ratio::from(arc.end))),
            b = dec(base),
            r = dec(r)
        );
    }
    for &p in &diagram.dots {
        let _ = writeln!(
            svg,
            "  <circle class=\"dot\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>",
            dec(px(Ratio::from(p))),
            dec(base),
            dec(u / 10)
        );
    }
    for (idx, c) in crossings.iter().enumerate() {
        // Heights are square roots; they are only needed as drawing
        // positions, so the conversion happens here and nowhere else.
        let h = c.h_sq.to_f64().unwrap_or(0.0).sqrt() * u.to_f64().unwrap_or(0.0);
        let cx = dec(px(c.x));
        let cy = format!("{:.3}", base.to_f64().unwrap_or(0.0) - h);
        let colour = if spec.highlight.contains(&idx) { "red" } else { "blue" };
        let _ = writeln!(
            svg,
            "  <circle class=\"crossing\" data-index=\"{idx}\" cx=\"{cx}\" cy=\"{cy}\" r=\"{}\" fill=\"none\" stroke=\"{colour}\"/>",
            dec(u / 8)
        );
        if spec.labels {
            let _ = writeln!(
                svg,
                "  <text class=\"label\" x=\"{cx}\" y=\"{cy}\" dy=\"{}\" font-size=\"{}\" text-anchor=\"middle\">s{}</text>",
                dec(-u / 5),
                dec(u * Ratio::new(3, 10)),
                c.generator
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}

/// A schematic of a cobordism plan: one row per slice from `Λ_f` at the
/// top to `Λ_g` at the bottom, with the step between consecutive rows.
pub fn render_cobordism(plan: &CobordismPlan, spec: &RenderSpec) -> Result<String, RenderError> {
    let u = spec.unit();
    let elements = plan.chain.elements();
    let rows = elements.len() as i64;
    let row_h = u * 2;
    let width = u * 16;
    let height = row_h * rows + u;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = dec(width),
        h = dec(height)
    );
    let _ = writeln!(
        svg,
        "  <title>cobordism from {} to {}</title>",
        plan.chain.top(),
        plan.chain.bottom()
    );
    let font = dec(u * Ratio::new(2, 5));
    for (row, h) in elements.iter().enumerate() {
        let y = row_h * row as i64 + u;
        let word = juggling::braid_word(h)?;
        let comps = juggling::link_components(h)?;
        let _ = writeln!(
            svg,
            "  <rect class=\"slice\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#eef\" stroke=\"black\"/>",
            dec(u / 2),
            dec(y - u / 2),
            dec(width - u),
            dec(u)
        );
        let _ = writeln!(
            svg,
            "  <text class=\"slice-label\" x=\"{}\" y=\"{}\" font-size=\"{font}\">{}  J = {}  ({} component{})</text>",
            dec(u),
            dec(y + u / 8),
            h,
            escape(&word.to_string()),
            comps,
            if comps == 1 { "" } else { "s" }
        );
        if row + 1 < elements.len() {
            let step = &plan.steps[row];
            let text = match (step.kind, &step.pinch_site) {
                (StepKind::Pinch, Some(site)) => format!(
                    "pinch: letter {} (arcs {},{})",
                    site.letter_index, step.swapped_positions.0, step.swapped_positions.1
                ),
                _ => format!("trivial: fixed point at {}", trivial_position(step)),
            };
            let colour = if spec.highlight.contains(&row) { "red" } else { "black" };
            let _ = writeln!(
                svg,
                "  <text class=\"step {}\" x=\"{}\" y=\"{}\" font-size=\"{font}\" fill=\"{colour}\">{}</text>",
                match step.kind {
                    StepKind::Pinch => "pinch",
                    StepKind::Trivial => "trivial",
                },
                dec(u * 2),
                dec(y + u),
                text
            );
        }
    }
    let summary = match plan.genus {
        Some(g) => format!("chi = {}, epsilon = {}, genus {g}", plan.chi, plan.epsilon),
        None => format!("chi = {}, epsilon = {}, {} pieces", plan.chi, plan.epsilon, plan.pieces.len()),
    };
    let _ = writeln!(
        svg,
        "  <text class=\"summary\" x=\"{}\" y=\"{}\" font-size=\"{font}\">{summary}</text>",
        dec(u / 2),
        dec(height - u / 4)
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn trivial_position(step: &crate::cobordism::CoverStep) -> usize {
    let (a, b) = step.swapped_positions;
    if step.upper.is_fixed(a) && !step.lower.is_fixed(a) {
        a
    } else {
        b
    }
}
