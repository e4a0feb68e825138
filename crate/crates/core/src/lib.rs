//! Bounded affine permutations and the machinery built on them: the affine
//! Bruhat-type order on `Bound(k, n)`, positroid strata of rational matrices,
//! juggling braids with their link invariants, and the compilation of cover
//! chains into Lagrangian cobordism plans.
//!
//! Every computation is exact. Matrices live over `BigRational`, juggling
//! geometry over `Rational64`; nothing in the pipeline compares floats.

pub mod affine;
pub mod braid;
pub mod cobordism;
pub mod grassmann;
pub mod juggling;
pub mod poset;
pub mod render;
pub mod shell;

pub use affine::{AffineError, AffineTransposition, BoundedAffinePermutation, CycleDecomposition, Side};
pub use braid::{BraidError, BraidWord, StrandMap};
pub use cobordism::{CobordismError, CobordismPlan, ComponentTrack, CoverStep, StepKind};
pub use grassmann::{GrassmannError, RationalMatrix};
pub use juggling::{Arc, Crossing, JugglingDiagram, JugglingError, LinkDescriptor, StratumDimension};
pub use poset::{Chain, CoverGraph, PosetError};
