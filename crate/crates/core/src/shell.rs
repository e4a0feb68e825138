//! The `positroid` command line.
//!
//! [`run`] takes the argument vector and two output streams and returns the
//! exit code: 0 on success, 1 on a domain error (reported as one JSON
//! object on the error stream) and 2 on a usage error.

use std::fs;
use std::io::Write;
use std::path::Path;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num::rational::Ratio;
use serde::Serialize;
use serde_json::json;

use crate::affine::{format_window, BoundedAffinePermutation};
use crate::cobordism;
use crate::grassmann::{format_rational, RationalMatrix};
use crate::juggling;
use crate::poset::{self, Chain, CoverGraph};
use crate::render::{self, RenderSpec, RenderTarget};

#[derive(Debug, Parser)]
#[command(name = "positroid", version, about = "Bounded affine permutations, juggling braids and positroid cobordisms")]
struct Cli {
    /// Worker threads for the parallel parts of enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a window and print it in canonical form with k and n.
    Validate { window: String },
    /// Print the length of a bounded affine permutation.
    Length { window: String },
    /// Print the cycles of the induced permutation of residues.
    Cycles { window: String },
    /// List every element of Bound(k, n).
    Enumerate {
        k: usize,
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Print how many elements of Bound(k, n) have each length.
    Levels { k: usize, n: usize },
    /// Write the Hasse diagram of Bound(k, n) as DOT.
    Hasse {
        k: usize,
        n: usize,
        /// Output file, or `-` for standard output.
        #[arg(long)]
        dot: String,
        #[arg(long, default_value_t = render::DEFAULT_HASSE_CAP)]
        cap: usize,
        /// Also report edges a transitive reduction would remove.
        #[arg(long)]
        verify: bool,
    },
    /// Decide whether f <= g.
    Leq { f: String, g: String },
    /// Print a chain of covers from f up to g.
    Chain {
        f: String,
        g: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the juggling braid word.
    Braid { window: String },
    /// Print length, fixed points, components, tb, dimension and braid.
    Invariants {
        window: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the bounded affine permutation of a matrix given as JSON.
    FromMatrix { file: String },
    /// Print Plücker coordinates of a matrix given as JSON.
    Plucker {
        file: String,
        /// Comma-separated 1-based columns; all minors when omitted.
        #[arg(long, value_delimiter = ',')]
        cols: Option<Vec<usize>>,
    },
    /// Compile a chain from f up to g into a cobordism plan.
    Cobordism {
        f: String,
        g: String,
        #[arg(long)]
        json: Option<String>,
        #[arg(long)]
        svg: Option<String>,
    },
    /// Draw a diagram.
    #[command(subcommand)]
    Render(RenderCommand),
}

#[derive(Debug, Subcommand)]
enum RenderCommand {
    /// SVG of the juggling diagram of a window.
    Juggling {
        window: String,
        #[arg(long)]
        svg: String,
        /// Label crossing markers with their generators.
        #[arg(long)]
        labels: bool,
        /// Scale factor, an integer or `p/q`.
        #[arg(long, default_value = "1")]
        scale: String,
    },
}

/// A failure that maps to exit code 1.
struct DomainError {
    kind: &'static str,
    message: String,
}

impl DomainError {
    fn new(kind: &'static str, message: impl ToString) -> Self {
        Self { kind, message: message.to_string() }
    }
}

macro_rules! domain_from {
    ($($ty:path => $kind:literal),* $(,)?) => {
        $(impl From<$ty> for DomainError {
            fn from(e: $ty) -> Self {
                DomainError::new($kind, e)
            }
        })*
    };
}

domain_from! {
    crate::affine::AffineError => "affine",
    crate::poset::PosetError => "poset",
    crate::juggling::JugglingError => "juggling",
    crate::grassmann::GrassmannError => "grassmann",
    crate::cobordism::CobordismError => "cobordism",
    crate::render::RenderError => "render",
    std::io::Error => "io",
}

type Outcome = Result<(), DomainError>;

#[derive(Serialize)]
struct Invariants<'a> {
    window: &'a [i64],
    n: usize,
    k: usize,
    length: usize,
    fix: usize,
    components: usize,
    tb: i64,
    dim: usize,
    torus_exponent: usize,
    braid: String,
}

/// Runs the command line on `argv` (without the program name).
pub fn run<S: AsRef<str>>(argv: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let args = std::iter::once("positroid").chain(argv.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        // A pool may already exist when run is called more than once in a
        // process; the first configuration wins.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", json!({ "error": e.kind, "message": e.message }));
            1
        }
    }
}

fn window(s: &str) -> Result<BoundedAffinePermutation, DomainError> {
    Ok(s.parse::<BoundedAffinePermutation>()?)
}

fn emit(path: &str, text: &str, out: &mut dyn Write) -> Outcome {
    if path == "-" {
        out.write_all(text.as_bytes())?;
    } else {
        fs::write(Path::new(path), text)?;
    }
    Ok(())
}

fn chain_between(f: &BoundedAffinePermutation, g: &BoundedAffinePermutation) -> Result<Chain, DomainError> {
    poset::find_chain(f, g)?
        .ok_or_else(|| DomainError::new("not-comparable", format!("{f} is not below {g}")))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Validate { window: w } => {
            let f = window(&w)?;
            writeln!(out, "{f} k={} n={}", f.k(), f.n())?;
        }
        Command::Length { window: w } => writeln!(out, "{}", window(&w)?.length())?,
        Command::Cycles { window: w } => {
            let c = window(&w)?.cycles();
            writeln!(out, "{c}")?;
            let fixed: Vec<i64> = c.fixed_points.iter().map(|&p| p as i64).collect();
            writeln!(out, "fixed points: {}", format_window(&fixed))?;
            writeln!(out, "non-fixed cycles: {}", c.nonfixed_cycle_count)?;
        }
        Command::Enumerate { k, n, count_only } => {
            let all = poset::enumerate(k, n)?;
            if count_only {
                writeln!(out, "{}", all.len())?;
            } else {
                for f in all {
                    writeln!(out, "{f}")?;
                }
            }
        }
        Command::Levels { k, n } => {
            for (length, count) in poset::level_statistics(k, n)? {
                writeln!(out, "{length} {count}")?;
            }
        }
        Command::Hasse { k, n, dot, cap, verify } => {
            let size = poset::enumerate(k, n)?.len();
            if size > cap {
                return Err(render::RenderError::TooLarge { k, n, size, cap }.into());
            }
            let graph = CoverGraph::build(k, n)?;
            let spec = RenderSpec::new(RenderTarget::Hasse, Ratio::from(1))?;
            emit(&dot, &render::hasse_dot(&graph, &spec), out)?;
            if dot != "-" {
                writeln!(out, "{} nodes, {} edges", graph.len(), graph.edges.len())?;
            }
            if verify {
                let extra = graph.reduction_discrepancies();
                writeln!(out, "transitive reduction discrepancies: {}", extra.len())?;
                for (a, b) in extra {
                    writeln!(out, "  {} -> {}", graph.nodes[a], graph.nodes[b])?;
                }
            }
        }
        Command::Leq { f, g } => {
            let (f, g) = (window(&f)?, window(&g)?);
            writeln!(out, "{}", poset::is_leq(&f, &g)?)?;
        }
        Command::Chain { f, g, json } => {
            let chain = chain_between(&window(&f)?, &window(&g)?)?;
            if json {
                let windows: Vec<&[i64]> = chain.elements().iter().map(|h| h.window()).collect();
                writeln!(out, "{}", serde_json::to_string(&windows).expect("windows serialize"))?;
            } else {
                for h in chain.elements() {
                    writeln!(out, "{h}")?;
                }
            }
        }
        Command::Braid { window: w } => writeln!(out, "{}", juggling::braid_word(&window(&w)?)?)?,
        Command::Invariants { window: w, json } => {
            let f = window(&w)?;
            let dim = juggling::stratum_dim(&f)?;
            let report = Invariants {
                window: f.window(),
                n: f.n(),
                k: f.k(),
                length: f.length(),
                fix: f.fix_count(),
                components: juggling::link_components(&f)?,
                tb: juggling::tb(&f)?,
                dim: dim.dim,
                torus_exponent: dim.torus_exponent,
                braid: juggling::braid_word(&f)?.to_string(),
            };
            if json {
                writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))?;
            } else {
                writeln!(out, "window: {f}")?;
                writeln!(out, "n: {}\nk: {}", report.n, report.k)?;
                writeln!(out, "length: {}\nfix: {}", report.length, report.fix)?;
                writeln!(out, "components: {}\ntb: {}", report.components, report.tb)?;
                writeln!(out, "dim: {}\ntorus_exponent: {}", report.dim, report.torus_exponent)?;
                writeln!(out, "braid: {}", report.braid)?;
            }
        }
        Command::FromMatrix { file } => {
            let m = RationalMatrix::from_json(&fs::read_to_string(&file)?)?;
            writeln!(out, "{}", m.bap_of_matrix()?)?;
        }
        Command::Plucker { file, cols } => {
            let m = RationalMatrix::from_json(&fs::read_to_string(&file)?)?;
            match cols {
                Some(cols) => writeln!(out, "{}", format_rational(&m.plucker(&cols)?))?,
                None => {
                    for (cols, value) in m.plucker_vector() {
                        let label: Vec<String> = cols.iter().map(usize::to_string).collect();
                        writeln!(out, "{} {}", label.join(","), format_rational(&value))?;
                    }
                }
            }
        }
        Command::Cobordism { f, g, json, svg } => {
            let chain = chain_between(&window(&f)?, &window(&g)?)?;
            let plan = cobordism::compile_path(&chain)?;
            let kinds: Vec<&str> = plan
                .steps
                .iter()
                .map(|s| match s.kind {
                    cobordism::StepKind::Pinch => "pinch",
                    cobordism::StepKind::Trivial => "trivial",
                })
                .collect();
            writeln!(out, "steps: {}", if kinds.is_empty() { "none".to_string() } else { kinds.join(" ") })?;
            writeln!(out, "chi: {}", plan.chi)?;
            writeln!(out, "epsilon: {}", plan.epsilon)?;
            writeln!(out, "boundary: {} {}", plan.boundary_components.0, plan.boundary_components.1)?;
            writeln!(out, "connected: {}", plan.connected)?;
            match plan.genus {
                Some(genus) => writeln!(out, "genus: {genus}")?,
                None => {
                    for (i, piece) in plan.pieces.iter().enumerate() {
                        writeln!(
                            out,
                            "piece {i}: chi {} boundary {} {} genus {}",
                            piece.chi, piece.boundary.0, piece.boundary.1, piece.genus
                        )?;
                    }
                }
            }
            if let Some(path) = json {
                let text = plan.to_json_string() + "\n";
                emit(&path, &text, out)?;
            }
            if let Some(path) = svg {
                let spec = RenderSpec::new(RenderTarget::Cobordism, Ratio::from(1))?;
                emit(&path, &render::render_cobordism(&plan, &spec)?, out)?;
            }
        }
        Command::Render(RenderCommand::Juggling { window: w, svg, labels, scale }) => {
            let f = window(&w)?;
            let scale: Ratio<i64> = scale
                .trim()
                .parse()
                .map_err(|_| DomainError::new("render", format!("bad scale {scale:?}")))?;
            let spec = RenderSpec::new(RenderTarget::Juggling, scale)?.with_labels(labels);
            emit(&svg, &render::render_juggling(&f, &spec), out)?;
        }
    }
    Ok(())
}
