//! Seeded instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};

/// Rejection rounds for the pairing model and for connected G(n, p).
pub const MAX_RETRIES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Grid {
        rows: usize,
        cols: usize,
    },
    RandomRegular {
        d: usize,
        n: usize,
    },
    GnpConnected {
        n: usize,
        p: f64,
    },
    /// Random `d`-regular graph on `0..n` plus vertex `n` adjacent to all of them.
    ApexExpander {
        d: usize,
        n: usize,
    },
}

impl Family {
    pub const NAMES: [&'static str; 7] = [
        "path",
        "cycle",
        "complete",
        "grid",
        "random_regular",
        "gnp_connected",
        "apex_expander",
    ];

    /// Build from a family name and the CLI-style parameters. `grid` takes
    /// `n` rows and `cols` columns (square when `cols` is absent).
    pub fn from_name(
        name: &str,
        n: usize,
        d: Option<usize>,
        p: Option<f64>,
        cols: Option<usize>,
    ) -> Result<Family> {
        let need_d = || d.ok_or_else(|| Error::InvalidParams(format!("{name} needs --d")));
        Ok(match name {
            "path" => Family::Path { n },
            "cycle" => Family::Cycle { n },
            "complete" => Family::Complete { n },
            "grid" => Family::Grid {
                rows: n,
                cols: cols.unwrap_or(n),
            },
            "random_regular" => Family::RandomRegular { d: need_d()?, n },
            "gnp_connected" => Family::GnpConnected {
                n,
                p: p.ok_or_else(|| Error::InvalidParams("gnp_connected needs --p".into()))?,
            },
            "apex_expander" => Family::ApexExpander { d: need_d()?, n },
            other => return Err(Error::InvalidParams(format!("unknown family {other:?}"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Path { .. } => "path",
            Family::Cycle { .. } => "cycle",
            Family::Complete { .. } => "complete",
            Family::Grid { .. } => "grid",
            Family::RandomRegular { .. } => "random_regular",
            Family::GnpConnected { .. } => "gnp_connected",
            Family::ApexExpander { .. } => "apex_expander",
        }
    }
}

/// Deterministic for a fixed `(family, seed)`.
pub fn generate(family: &Family, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *family {
        Family::Path { n } => path(n),
        Family::Cycle { n } => cycle(n),
        Family::Complete { n } => complete(n),
        Family::Grid { rows, cols } => grid(rows, cols),
        Family::RandomRegular { d, n } => random_regular(d, n, &mut rng),
        Family::GnpConnected { n, p } => gnp_connected(n, p, &mut rng),
        Family::ApexExpander { d, n } => with_apex(&random_regular(d, n, &mut rng)?),
    }
}

fn positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be positive".into()));
    }
    Ok(())
}

pub fn path(n: usize) -> Result<Graph> {
    positive(n)?;
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParams(
            "a cycle needs at least 3 vertices".into(),
        ));
    }
    Graph::from_edges(n, (0..n).map(|i| edge(i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph> {
    positive(n)?;
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `rows x cols` grid, vertex `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    positive(rows * cols)?;
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, edges)
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push(edge(i, (i + 1) % 5));
        edges.push(edge(i, i + 5));
        edges.push(edge(5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).expect("petersen is simple")
}

/// Add vertex `n` adjacent to every existing vertex.
pub fn with_apex(g: &Graph) -> Result<Graph> {
    let n = g.n();
    Graph::from_edges(n + 1, g.edges().chain((0..n).map(|v| (v, n))))
}

/// Pairing model: `d` stubs per vertex, random perfect matching, rejected
/// and redrawn while it yields a loop or a multi-edge.
pub fn random_regular<R: Rng>(d: usize, n: usize, rng: &mut R) -> Result<Graph> {
    positive(n)?;
    if d >= n {
        return Err(Error::InvalidParams(format!(
            "degree {d} must be below n = {n}"
        )));
    }
    if (d * n) % 2 == 1 {
        return Err(Error::InvalidParams(format!("d * n = {} is odd", d * n)));
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut seen = std::collections::HashSet::new();
    'attempt: for _ in 0..MAX_RETRIES {
        stubs.shuffle(rng);
        seen.clear();
        let mut edges: Vec<Edge> = Vec::with_capacity(stubs.len() / 2);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !seen.insert(edge(u, v)) {
                continue 'attempt;
            }
            edges.push(edge(u, v));
        }
        return Graph::from_edges(n, edges);
    }
    Err(Error::GenerationFailed(format!(
        "no simple {d}-regular pairing on {n} vertices after {MAX_RETRIES} attempts"
    )))
}

/// G(n, p) redrawn until connected.
pub fn gnp_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    positive(n)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!(
            "p = {p} is not a probability"
        )));
    }
    for _ in 0..MAX_RETRIES {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed(format!(
        "G({n}, {p}) stayed disconnected after {MAX_RETRIES} draws"
    )))
}
