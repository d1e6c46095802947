use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use flipflat::angles::{gauss_bonnet_check, DEFAULT_PRECISION, DEFAULT_TOLERANCE};
use flipflat::corpus;
use flipflat::delaunay::DelaunayOptions;
use flipflat::io::{parse_polygon, parse_surface, write_surface, NamedSurface};
use flipflat::polygon::{MAX_ENUMERATION_VERTICES, MAX_FLIP_GRAPH_VERTICES};
use flipflat::*;

use crate::checks;

#[derive(Parser, Debug)]
#[command(name = "flipflat", version, about = "Exact flips on triangulated flat surfaces")]
pub struct Cli {
    /// Seed for randomized corpora.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Search cap: vertex budget for polygon enumeration, node budget for
    /// co-circular searches.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Bits of precision for angle diagnostics.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a surface and report counts and the Gauss-Bonnet residual.
    Validate { surface: PathBuf },
    /// Triangulate a polygon by corner cutting.
    Triangulate { polygon: PathBuf },
    /// Flip one edge and print the resulting surface.
    Flip {
        surface: PathBuf,
        #[arg(long)]
        edge: EdgeId,
    },
    /// Flip to a Delaunay triangulation.
    Delaunay { surface: PathBuf },
    /// Print certificate digests of the surface and of its canonical form.
    Canon { surface: PathBuf },
    /// Print a flip sequence taking the first surface to the second.
    Path { from: PathBuf, to: PathBuf },
    /// List every triangulation of a polygon.
    Enumerate { polygon: PathBuf },
    /// Print the flip graph of a polygon's triangulations.
    Flipgraph { polygon: PathBuf },
    /// Check the crossing pattern on every pair of triangulations.
    #[command(name = "verify-lemma24")]
    VerifyCrossings { polygon: PathBuf },
    /// Run the acceptance checks on the built-in corpus.
    Selftest,
}

/// Domain failures that still produced output.
struct Failed(String);

type Outcome = std::result::Result<(), Failed>;

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        Failed(e.to_string())
    }
}

impl From<io::Error> for Failed {
    fn from(e: io::Error) -> Self {
        Failed(e.to_string())
    }
}

/// Reads a file, falling back to the built-in corpus entry of the same
/// file name when the path does not exist.
fn read_input(path: &Path, table: &[(&str, &str)]) -> std::result::Result<String, Failed> {
    match fs::read_to_string(path) {
        Ok(text) => Ok(text),
        Err(e) if e.kind() == io::ErrorKind::NotFound => {
            let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
            table
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, text)| text.to_string())
                .ok_or_else(|| Failed(format!("{}: {e}", path.display())))
        }
        Err(e) => Err(Failed(format!("{}: {e}", path.display()))),
    }
}

fn load_surface(path: &Path) -> std::result::Result<NamedSurface, Failed> {
    let text = read_input(path, corpus::SURFACE_FILES)?;
    parse_surface(&text).map_err(|e| Failed(format!("{}: {e}", path.display())))
}

fn load_polygon(path: &Path) -> std::result::Result<Polygon, Failed> {
    let text = read_input(path, corpus::POLYGON_FILES)?;
    parse_polygon(&text).map_err(|e| Failed(format!("{}: {e}", path.display())))
}

/// Parses `args` (including the program name) and executes the command.
/// Returns the process exit code: 0 success, 1 domain error, 2 usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn delaunay_options(cli: &Cli) -> DelaunayOptions {
    let mut opts = DelaunayOptions::default();
    if let Some(b) = cli.budget {
        opts.node_budget = b;
    }
    opts
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Validate { surface } => {
            let named = load_surface(surface)?;
            let s = &named.surface;
            writeln!(out, "OK {}", s.counts())?;
            let r = gauss_bonnet_check(s, DEFAULT_TOLERANCE, cli.precision);
            for c in &r.cone_angles {
                let kind = if c.interior { "interior" } else { "boundary" };
                writeln!(out, "vertex {} {kind} angle={:.12}pi", c.label, c.over_pi)?;
            }
            writeln!(
                out,
                "gauss-bonnet residual={:.3e} triangle-residual={:.3e} precision={} {}",
                r.residual,
                r.triangle_residual,
                r.precision,
                if r.pass { "pass" } else { "FAIL" }
            )?;
            if !r.pass {
                return Err(Failed(format!("Gauss-Bonnet residual {:.3e} exceeds {:.0e}", r.residual, r.tolerance)));
            }
        }
        Command::Triangulate { polygon } => {
            let p = load_polygon(polygon)?;
            for d in triangulate(&p)?.diagonals() {
                writeln!(out, "diagonal {} {}", d.i, d.j)?;
            }
        }
        Command::Flip { surface, edge } => {
            let named = load_surface(surface)?;
            let t = flip(&named.surface, *edge)?;
            out.write_all(write_surface(&named.name, &t).as_bytes())?;
        }
        Command::Delaunay { surface } => {
            let named = load_surface(surface)?;
            let r = delaunay::make_delaunay_with(&named.surface, &delaunay_options(cli))?;
            writeln!(out, "# flips={}", r.sequence.len())?;
            write!(out, "{}", r.sequence)?;
            writeln!(out, "# degenerate={}", r.degenerate_edge_count)?;
            writeln!(out, "# certificate={}", r.canonical.digest())?;
        }
        Command::Canon { surface } => {
            let named = load_surface(surface)?;
            let r = delaunay::canonical_delaunay_with(&named.surface, &delaunay_options(cli))?;
            writeln!(out, "certificate {}", certificate(&named.surface).digest())?;
            writeln!(out, "canonical {}", r.canonical.digest())?;
        }
        Command::Path { from, to } => {
            let (s, t) = (load_surface(from)?, load_surface(to)?);
            let seq = delaunay::flip_path_with(&s.surface, &t.surface, &delaunay_options(cli))?;
            writeln!(out, "# flips={}", seq.len())?;
            write!(out, "{seq}")?;
        }
        Command::Enumerate { polygon } => {
            let p = load_polygon(polygon)?;
            let budget = cli.budget.unwrap_or(MAX_ENUMERATION_VERTICES);
            let all = polygon::enumerate_with_budget(&p, budget)?;
            for t in &all {
                writeln!(out, "{t}")?;
            }
            writeln!(out, "count={}", all.len())?;
        }
        Command::Flipgraph { polygon } => {
            let p = load_polygon(polygon)?;
            let budget = cli.budget.unwrap_or(MAX_FLIP_GRAPH_VERTICES);
            let g = polygon::build_flip_graph_with_budget(&p, budget)?;
            out.write_all(g.to_text().as_bytes())?;
        }
        Command::VerifyCrossings { polygon } => {
            let p = load_polygon(polygon)?;
            let budget = cli.budget.unwrap_or(MAX_ENUMERATION_VERTICES);
            let r = verify_crossing_pattern(&p, budget)?;
            for (a, b) in &r.counterexamples {
                writeln!(out, "counterexample {a} {b}")?;
            }
            writeln!(out, "{}", r.line())?;
            if !r.counterexamples.is_empty() {
                return Err(Failed(format!("{} counterexamples", r.counterexamples.len())));
            }
        }
        Command::Selftest => {
            let mut config = checks::Config::standard()?;
            config.precision = cli.precision;
            if let Some(seed) = cli.seed {
                config.seed = seed;
                config.random_polygons =
                    corpus::random_corpus(seed, corpus::RANDOM_CORPUS_SIZE, corpus::RANDOM_CORPUS_MAX_N);
            }
            let mut failed = 0;
            for c in checks::run_all(&config) {
                writeln!(out, "{c}")?;
                failed += !c.pass as usize;
            }
            if failed > 0 {
                return Err(Failed(format!("{failed} criteria failed")));
            }
        }
    }
    Ok(())
}
