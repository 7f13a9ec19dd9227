//! Star colorings of torus grids: construction, verification, and exact
//! decision.
//!
//! A *star coloring* is a proper vertex coloring in which no path on four
//! vertices alternates between exactly two colors (equivalently, the union
//! of any two color classes induces a star forest). This crate decides and
//! constructs such colorings for the torus grids C_m □ C_n — Cartesian
//! products of two cycles — where five colors always suffice except for
//! C_3 □ C_3 and C_3 □ C_5, which need six.
//!
//! The crate is organized as a pipeline of small modules:
//!
//! - [`graph`]: immutable simple graphs in canonical adjacency form, with
//!   cycle/path/product/torus constructors and DIMACS ingestion.
//! - [`verify`]: the star-coloring verifier with concrete witnesses, plus a
//!   brute-force path enumerator used as an independent oracle.
//! - [`tiles`]: a catalog of hand-checked torus colorings used as assembly
//!   blocks, with concatenation and stacking primitives.
//! - [`compose`]: builds a verified coloring for every m,n ≥ 3 by
//!   dispatching on (m,n) and assembling catalog tiles, with a search
//!   fallback for anything the tile routes miss.
//! - [`solve`]: an exact backtracking solver that decides k-star-colorability
//!   and computes star chromatic numbers at desk scale.
//! - [`render`]: deterministic SVG emission for torus colorings.
//!
//! The `star-torus` binary exposes the same functionality on the command
//! line; see the crate README for invocations.

pub mod compose;
pub mod graph;
pub mod render;
pub mod solve;
pub mod tiles;
pub mod verify;

pub use graph::{Graph, TorusCoord};
pub use verify::{Coloring, ColoringDoc, VerifyReport};

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported across the crate.
///
/// The variants are grouped by how callers are expected to react: `Domain`
/// covers violated preconditions (bad sizes, mismatched shapes, out-of-range
/// colors), the parse variants carry enough position information to point at
/// the offending input, and the remaining variants report negative or failed
/// outcomes from the long-running operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A precondition on an operation was violated (sizes, shapes, ranges).
    Domain(String),
    /// A DIMACS graph file failed to parse; `line` is 1-based.
    DimacsParse { line: usize, message: String },
    /// A coloring JSON document failed to parse or is internally inconsistent.
    Json(String),
    /// No star coloring with at most `kmax` colors exists.
    NoColoringWithin { kmax: u32 },
    /// Construction failed for the named torus (all tile routes and the
    /// search fallback were exhausted).
    ConstructionFailed { m: usize, n: usize, detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::DimacsParse { line, message } => {
                write!(f, "DIMACS parse error at line {line}: {message}")
            }
            Error::Json(msg) => write!(f, "coloring document error: {msg}"),
            Error::NoColoringWithin { kmax } => {
                write!(f, "no star coloring exists with at most {kmax} colors")
            }
            Error::ConstructionFailed { m, n, detail } => {
                write!(f, "construction failed for C_{m} x C_{n}: {detail}")
            }
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    /// Shorthand for a `Domain` error from anything displayable.
    pub(crate) fn domain(msg: impl fmt::Display) -> Self {
        Error::Domain(msg.to_string())
    }
}
