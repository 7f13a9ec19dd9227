//! Graph construction and ingestion.
//!
//! Everything downstream operates on [`Graph`]: an immutable, simple,
//! undirected graph held in canonical adjacency form (sorted, deduplicated
//! neighbor lists). Canonical form makes graph equality a plain `==`, which
//! the test suite leans on for bit-exact golden comparisons.
//!
//! The constructors cover the families the algorithms work over — cycles,
//! paths, general Cartesian products, and the torus grids C_m □ C_n that are
//! the central object. External graphs come in through [`parse_dimacs`] and
//! go back out through [`write_dimacs`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::{Error, Result};

/// Immutable simple undirected graph in canonical adjacency form.
///
/// Invariants (checked by [`Graph::validate`], upheld by every constructor):
/// neighbor lists are sorted ascending with no duplicates, adjacency is
/// symmetric, and there are no self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Option<BTreeMap<usize, String>>,
}

impl Graph {
    /// Builds a graph from an edge list over `vertex_count` vertices.
    ///
    /// Edges may appear in either orientation and more than once; duplicates
    /// collapse. Self-loops and out-of-range endpoints are domain errors.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::domain(format!(
                    "edge ({u}, {v}) out of range for {vertex_count} vertices"
                )));
            }
            if u == v {
                return Err(Error::domain(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adjacency, labels: None })
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of edges (each counted once).
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Degree of `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Whether `{u, v}` is an edge (binary search on the canonical list).
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Display label attached to `v`, if any.
    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().and_then(|m| m.get(&v)).map(String::as_str)
    }

    /// Attaches a display label to `v` (decoration only; ignored by equality
    /// of the underlying structure checks that use [`Graph::structural_hash`]).
    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        assert!(v < self.vertex_count(), "label target {v} out of range");
        self.labels.get_or_insert_with(BTreeMap::new).insert(v, label.into());
    }

    /// Checks the structural invariants: sorted deduplicated neighbor lists,
    /// symmetry, and simplicity. Constructors uphold these; the validator
    /// exists so tests can assert them independently.
    pub fn validate(&self) -> Result<()> {
        for (v, list) in self.adjacency.iter().enumerate() {
            for window in list.windows(2) {
                if window[0] >= window[1] {
                    return Err(Error::domain(format!(
                        "neighbor list of {v} not sorted/deduplicated"
                    )));
                }
            }
            for &u in list {
                if u == v {
                    return Err(Error::domain(format!("self-loop at vertex {v}")));
                }
                if u >= self.vertex_count() {
                    return Err(Error::domain(format!("neighbor {u} of {v} out of range")));
                }
                if self.adjacency[u].binary_search(&v).is_err() {
                    return Err(Error::domain(format!("edge ({v}, {u}) not symmetric")));
                }
            }
        }
        Ok(())
    }

    /// Deterministic structural hash (FNV-1a over the adjacency stream).
    ///
    /// Two graphs with identical vertex counts and identical canonical
    /// adjacency hash identically; the hash is stable across runs and
    /// platforms, so colorings can carry it as a shape fingerprint.
    pub fn structural_hash(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        let mut mix = |x: u64| {
            for byte in x.to_le_bytes() {
                h ^= u64::from(byte);
                h = h.wrapping_mul(PRIME);
            }
        };
        mix(self.adjacency.len() as u64);
        for list in &self.adjacency {
            mix(list.len() as u64);
            for &u in list {
                mix(u as u64);
            }
        }
        h
    }
}

/// Coordinate of a torus vertex. The row-major vertex id is `row * n + col`
/// where `n` is the column count; the mapping is a bijection onto
/// `[0, m * n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusCoord {
    pub row: usize,
    pub col: usize,
}

impl TorusCoord {
    /// Row-major vertex id in a torus with `n` columns.
    pub fn to_index(self, n: usize) -> usize {
        debug_assert!(self.col < n, "column {} out of range for n={n}", self.col);
        self.row * n + self.col
    }

    /// Inverse of [`TorusCoord::to_index`].
    pub fn from_index(id: usize, n: usize) -> Self {
        debug_assert!(n > 0);
        TorusCoord { row: id / n, col: id % n }
    }
}

/// The cycle C_n: vertex `i` adjacent to `(i ± 1) mod n`.
pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::domain("cycle requires >= 3 vertices"));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// The path P_n: vertices `0..n`, vertex `i` adjacent to `i + 1`.
pub fn make_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::domain("path requires >= 1 vertex"));
    }
    Graph::from_edges(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)))
}

/// Cartesian product g □ h.
///
/// The vertex set is the ordered pairs with id of `(a, b)` equal to
/// `a * |V(h)| + b`; `(a, b) ~ (c, d)` iff `a = c` and `b ~ d`, or `b = d`
/// and `a ~ c`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.vertex_count() == 0 || h.vertex_count() == 0 {
        return Err(Error::domain("Cartesian product requires nonempty operands"));
    }
    let nh = h.vertex_count();
    let mut edges = Vec::with_capacity(g.vertex_count() * h.edge_count() + h.vertex_count() * g.edge_count());
    for a in 0..g.vertex_count() {
        for (b, d) in h.edges() {
            edges.push((a * nh + b, a * nh + d));
        }
    }
    for (a, c) in g.edges() {
        for b in 0..nh {
            edges.push((a * nh + b, c * nh + b));
        }
    }
    Graph::from_edges(g.vertex_count() * nh, edges)
}

/// The torus grid C_m □ C_n: `m * n` vertices in row-major order with
/// `(i, j)` adjacent to `(i ± 1 mod m, j)` and `(i, j ± 1 mod n)`.
///
/// Built directly from the wrap arithmetic rather than through
/// [`cartesian_product`]; the test suite asserts the two constructions agree
/// bit-exactly.
pub fn make_torus(m: usize, n: usize) -> Result<Graph> {
    if m < 3 || n < 3 {
        return Err(Error::domain("torus requires m >= 3 and n >= 3"));
    }
    let mut edges = Vec::with_capacity(2 * m * n);
    for i in 0..m {
        for j in 0..n {
            let v = i * n + j;
            edges.push((v, ((i + 1) % m) * n + j));
            edges.push((v, i * n + (j + 1) % n));
        }
    }
    Graph::from_edges(m * n, edges)
}

/// Parses a graph in DIMACS edge format.
///
/// Accepted lines: `c ...` comments, exactly one `p edge V E` header, and
/// `e u v` edges with 1-based endpoints. Duplicate edges collapse; the
/// declared edge count is not enforced (some published instances get it
/// wrong). Self-loops, out-of-range ids, and unknown directives are parse
/// errors carrying the 1-based line number.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut vertex_count: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut tokens = trimmed.split_ascii_whitespace();
        match tokens.next() {
            Some("c") => continue,
            Some("p") => {
                if vertex_count.is_some() {
                    return Err(Error::DimacsParse {
                        line,
                        message: "duplicate 'p' line".into(),
                    });
                }
                if tokens.next() != Some("edge") {
                    return Err(Error::DimacsParse {
                        line,
                        message: "expected 'p edge <vertices> <edges>'".into(),
                    });
                }
                let v = parse_count(tokens.next(), line, "vertex count")?;
                let _declared_edges = parse_count(tokens.next(), line, "edge count")?;
                if tokens.next().is_some() {
                    return Err(Error::DimacsParse {
                        line,
                        message: "trailing tokens after 'p edge V E'".into(),
                    });
                }
                vertex_count = Some(v);
            }
            Some("e") => {
                let n = vertex_count.ok_or(Error::DimacsParse {
                    line,
                    message: "'e' line before the 'p' header".into(),
                })?;
                let u = parse_count(tokens.next(), line, "edge endpoint")?;
                let v = parse_count(tokens.next(), line, "edge endpoint")?;
                if tokens.next().is_some() {
                    return Err(Error::DimacsParse {
                        line,
                        message: "trailing tokens after 'e u v'".into(),
                    });
                }
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(Error::DimacsParse {
                        line,
                        message: format!("endpoint out of range 1..={n}"),
                    });
                }
                if u == v {
                    return Err(Error::DimacsParse {
                        line,
                        message: format!("self-loop at vertex {u}"),
                    });
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => {
                return Err(Error::DimacsParse {
                    line,
                    message: format!("unknown directive '{other}'"),
                });
            }
            None => unreachable!("empty lines are skipped above"),
        }
    }
    let n = vertex_count.ok_or(Error::DimacsParse {
        line: last_line.max(1),
        message: "missing 'p edge' header".into(),
    })?;
    Graph::from_edges(n, edges)
}

fn parse_count(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::DimacsParse {
        line,
        message: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| Error::DimacsParse {
        line,
        message: format!("invalid {what} '{token}'"),
    })
}

/// Serializes a graph in the same DIMACS edge format accepted by
/// [`parse_dimacs`]: one `p edge V E` header, then one `e u v` line per edge
/// with `u < v`, 1-based, ascending. Deterministic byte-for-byte.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}
