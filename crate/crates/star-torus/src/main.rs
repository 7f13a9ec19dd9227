//! Command-line interface for constructing, verifying, and deciding star
//! colorings of torus grids.
//!
//! Exit codes: 0 for success, 1 for a negative mathematical result (invalid
//! coloring, no coloring within the palette bound), 2 for usage or input
//! errors, 3 for internal failures such as exhausted search budgets.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use star_torus::compose::{construct, ConstructionPlan};
use star_torus::graph::{make_torus, parse_dimacs, Graph};
use star_torus::render::render_torus_svg;
use star_torus::solve::{
    exists_star_coloring, SearchStatus, SolverConfig, VertexOrder,
};
use star_torus::tiles::{catalog_tile, tile_catalog};
use star_torus::verify::{verify_star, Coloring, ColoringDoc, Verdict};
use star_torus::Error;

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "star-torus",
    about = "Star colorings of Cartesian products of cycles",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Coloring document as JSON.
    Json,
    /// DIMACS-style coloring: `s k` then one `v vertex color` line each.
    DimacsCol,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a verified star coloring of the m x n torus grid.
    Construct {
        /// Number of rows (cycle length m), at least 3.
        m: usize,
        /// Number of columns (cycle length n), at least 3.
        n: usize,
        /// File the coloring is written to.
        #[arg(long)]
        out: PathBuf,
        /// Output format.
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Verify a coloring document against a graph.
    Verify {
        /// Graph in DIMACS edge format.
        #[arg(long, value_name = "PATH", conflicts_with = "torus")]
        graph: Option<PathBuf>,
        /// Torus grid dimensions.
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        torus: Option<Vec<usize>>,
        /// Coloring document (JSON).
        #[arg(long, value_name = "PATH")]
        coloring: PathBuf,
    },
    /// Decide the star chromatic number by sweeping palette sizes.
    Chi {
        /// Graph in DIMACS edge format.
        #[arg(long, value_name = "PATH", conflicts_with = "torus")]
        graph: Option<PathBuf>,
        /// Torus grid dimensions.
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        torus: Option<Vec<usize>>,
        /// Largest palette size to test.
        #[arg(long)]
        kmax: u32,
        /// Node budget per palette size; unlimited when absent.
        #[arg(long)]
        budget: Option<u64>,
        /// Write the witness coloring document here on success.
        #[arg(long, value_name = "PATH")]
        witness_out: Option<PathBuf>,
    },
    /// Inspect the built-in catalog of verified torus colorings.
    Tiles {
        #[command(subcommand)]
        action: TilesAction,
    },
    /// Render a torus coloring document to SVG.
    Render {
        /// Coloring document (JSON) with torus dimensions.
        #[arg(long, value_name = "PATH")]
        coloring: PathBuf,
        /// File the SVG is written to.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum TilesAction {
    /// List every catalog entry as `source rows columns palette`.
    List,
    /// Print one catalog entry as a coloring document (JSON).
    Dump {
        /// Catalog key, for example Fig2(i).
        source: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests land here too; clap exits 0 for
            // those and 2 for genuine usage errors.
            err.exit();
        }
    };
    match cli.command {
        Command::Construct { m, n, out, format } => cmd_construct(m, n, &out, format),
        Command::Verify { graph, torus, coloring } => cmd_verify(graph, torus, &coloring),
        Command::Chi { graph, torus, kmax, budget, witness_out } => {
            cmd_chi(graph, torus, kmax, budget, witness_out)
        }
        Command::Tiles { action } => match action {
            TilesAction::List => cmd_tiles_list(),
            TilesAction::Dump { source } => cmd_tiles_dump(&source),
        },
        Command::Render { coloring, out } => cmd_render(&coloring, &out),
    }
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE)
}

fn internal_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_INTERNAL)
}

fn read_text(path: &Path) -> Result<String, ExitCode> {
    std::fs::read_to_string(path)
        .map_err(|err| usage_error(format_args!("cannot read {}: {err}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), ExitCode> {
    std::fs::write(path, text)
        .map_err(|err| internal_error(format_args!("cannot write {}: {err}", path.display())))
}

/// Thread count taken from `STAR_TORUS_THREADS` when set.
fn env_thread_hint() -> Result<Option<usize>, ExitCode> {
    match std::env::var("STAR_TORUS_THREADS") {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(usage_error(format_args!(
                "STAR_TORUS_THREADS must be a positive integer, got {raw:?}"
            ))),
            Ok(threads) => Ok(Some(threads)),
        },
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(err) => Err(usage_error(format_args!("STAR_TORUS_THREADS: {err}"))),
    }
}

fn dimacs_col_text(doc: &ColoringDoc) -> String {
    let mut text = format!("s {}\n", doc.k);
    for (vertex, color) in doc.colors.iter().enumerate() {
        text.push_str(&format!("v {} {color}\n", vertex + 1));
    }
    text
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

fn cmd_construct(m: usize, n: usize, out: &Path, format: OutputFormat) -> ExitCode {
    let (coloring, plan) = match construct(m, n) {
        Ok(result) => result,
        Err(err @ Error::Domain(_)) => return usage_error(err),
        Err(err) => return internal_error(err),
    };
    let ConstructionPlan { trace, .. } = plan;
    let mut doc = ColoringDoc::for_torus(m, n, &coloring);
    doc.plan = Some(trace.clone());
    let text = match format {
        OutputFormat::Json => doc.to_json(),
        OutputFormat::DimacsCol => dimacs_col_text(&doc),
    };
    if let Err(code) = write_text(out, &text) {
        return code;
    }
    println!("{m} {n} {} verified plan={}", coloring.palette_size(), trace.join("; "));
    ExitCode::SUCCESS
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

/// Builds the graph a coloring document is checked against, enforcing that
/// explicitly given torus dimensions agree with the document's own.
fn resolve_graph(
    graph: Option<PathBuf>,
    torus: Option<Vec<usize>>,
    doc: &ColoringDoc,
) -> Result<Graph, ExitCode> {
    match (graph, torus) {
        (Some(path), None) => {
            let text = read_text(&path)?;
            parse_dimacs(&text).map_err(usage_error)
        }
        (None, Some(dims)) => {
            let (m, n) = (dims[0], dims[1]);
            if let (Some(doc_m), Some(doc_n)) = (doc.m, doc.n) {
                if (doc_m, doc_n) != (m, n) {
                    return Err(usage_error(format_args!(
                        "coloring was produced for a {doc_m}x{doc_n} torus, not {m}x{n}"
                    )));
                }
            }
            make_torus(m, n).map_err(usage_error)
        }
        _ => Err(usage_error("exactly one of --graph and --torus is required")),
    }
}

fn load_doc(path: &Path) -> Result<ColoringDoc, ExitCode> {
    let text = read_text(path)?;
    ColoringDoc::from_json(&text).map_err(usage_error)
}

fn bind_coloring(doc: &ColoringDoc, graph: &Graph) -> Result<Coloring, ExitCode> {
    doc.coloring_for(graph).map_err(usage_error)
}

fn cmd_verify(graph: Option<PathBuf>, torus: Option<Vec<usize>>, coloring: &Path) -> ExitCode {
    let doc = match load_doc(coloring) {
        Ok(doc) => doc,
        Err(code) => return code,
    };
    let graph = match resolve_graph(graph, torus, &doc) {
        Ok(graph) => graph,
        Err(code) => return code,
    };
    let coloring = match bind_coloring(&doc, &graph) {
        Ok(coloring) => coloring,
        Err(code) => return code,
    };
    let report = match verify_star(&graph, &coloring) {
        Ok(report) => report,
        Err(err) => return usage_error(err),
    };
    match report.verdict {
        Verdict::Valid => {
            println!("valid colors_used={}", report.colors_used);
            ExitCode::SUCCESS
        }
        Verdict::Improper { edge: (u, v) } => {
            println!("improper edge=({u},{v})");
            ExitCode::from(EXIT_NEGATIVE)
        }
        Verdict::BicoloredP4 { path: (a, b, c, d) } => {
            println!("bicolored_p4 path=({a},{b},{c},{d})");
            ExitCode::from(EXIT_NEGATIVE)
        }
    }
}

// ---------------------------------------------------------------------------
// chi
// ---------------------------------------------------------------------------

fn cmd_chi(
    graph: Option<PathBuf>,
    torus: Option<Vec<usize>>,
    kmax: u32,
    budget: Option<u64>,
    witness_out: Option<PathBuf>,
) -> ExitCode {
    if kmax < 1 {
        return usage_error("--kmax must be at least 1");
    }
    let thread_hint = match env_thread_hint() {
        Ok(hint) => hint,
        Err(code) => return code,
    };
    let (graph, torus_dims, vertex_order) = match (graph, torus) {
        (Some(path), None) => {
            let text = match read_text(&path) {
                Ok(text) => text,
                Err(code) => return code,
            };
            match parse_dimacs(&text) {
                Ok(graph) => (graph, None, VertexOrder::DegreeDescending),
                Err(err) => return usage_error(err),
            }
        }
        (None, Some(dims)) => {
            let (m, n) = (dims[0], dims[1]);
            match make_torus(m, n) {
                Ok(graph) => (graph, Some((m, n)), VertexOrder::RowMajor),
                Err(err) => return usage_error(err),
            }
        }
        _ => return usage_error("exactly one of --graph and --torus is required"),
    };

    for k in 1..=kmax {
        let mut config = SolverConfig::new(k);
        config.vertex_order = vertex_order;
        config.node_budget = budget;
        config.thread_hint = thread_hint;
        let outcome = match exists_star_coloring(&graph, &config) {
            Ok(outcome) => outcome,
            Err(err) => return usage_error(err),
        };
        match outcome.status {
            SearchStatus::Satisfiable => {
                println!("{k}");
                if let Some(path) = witness_out {
                    let witness = outcome
                        .witness
                        .expect("satisfiable outcome always carries a witness");
                    let doc = match torus_dims {
                        Some((m, n)) => ColoringDoc::for_torus(m, n, &witness),
                        None => ColoringDoc::for_graph(&witness),
                    };
                    if let Err(code) = write_text(&path, &doc.to_json()) {
                        return code;
                    }
                    println!("witness {}", path.display());
                }
                return ExitCode::SUCCESS;
            }
            SearchStatus::Unsatisfiable => {}
            SearchStatus::BudgetExhausted => {
                println!(
                    "budget exhausted at k={k} after {} nodes; k<{k} unsatisfiable",
                    outcome.nodes_explored
                );
                return ExitCode::from(EXIT_INTERNAL);
            }
        }
    }
    println!("UNSAT up to kmax={kmax}");
    ExitCode::from(EXIT_NEGATIVE)
}

// ---------------------------------------------------------------------------
// tiles
// ---------------------------------------------------------------------------

fn cmd_tiles_list() -> ExitCode {
    for tile in tile_catalog() {
        println!("{} {} {} {}", tile.source(), tile.m(), tile.w(), tile.palette_size());
    }
    ExitCode::SUCCESS
}

fn cmd_tiles_dump(source: &str) -> ExitCode {
    match catalog_tile(source) {
        Ok(tile) => {
            print!("{}", tile.to_doc().to_json());
            ExitCode::SUCCESS
        }
        Err(err) => usage_error(err),
    }
}

// ---------------------------------------------------------------------------
// render
// ---------------------------------------------------------------------------

fn cmd_render(coloring: &Path, out: &Path) -> ExitCode {
    let doc = match load_doc(coloring) {
        Ok(doc) => doc,
        Err(code) => return code,
    };
    let svg = match render_torus_svg(&doc) {
        Ok(svg) => svg,
        Err(err) => return usage_error(err),
    };
    if let Err(code) = write_text(out, &svg) {
        return code;
    }
    ExitCode::SUCCESS
}
