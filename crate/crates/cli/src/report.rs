//! JSON documents written by `solve`, `exact` and `bounds`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use stc_core::cuts::Guarantee;
use stc_core::decomposer::{DecompositionTree, RecurrenceCheck};
use stc_core::graph::parse_graph;
use stc_core::{BoundCertificate, CongestionReport, Edge, Graph, OracleKind, VertexSet};

use crate::fail::{CliResult, Failure};

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

pub const TOOL: Tool = Tool {
    name: "stc",
    version: env!("CARGO_PKG_VERSION"),
};

#[derive(Debug, Serialize)]
pub struct Limits {
    pub exact: usize,
    pub hereditary: usize,
}

impl Limits {
    pub fn current() -> Limits {
        let l = stc_core::limits::limits();
        Limits {
            exact: l.exact,
            hereditary: l.hereditary,
        }
    }
}

/// Where the graph came from: `family` and `seed` are read back from the
/// comment `gen` writes, and are null for hand-written files.
#[derive(Debug, Serialize)]
pub struct Instance {
    pub path: PathBuf,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub family: Option<String>,
    pub seed: Option<u64>,
}

pub const GEN_MARKER: &str = "# stc gen";

pub fn read_instance(path: &Path) -> CliResult<(Graph, Instance)> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    let g = parse_graph(&text).map_err(|e| Failure::io(path, e))?;
    let mut family = None;
    let mut seed = None;
    if let Some(line) = text.lines().find(|l| l.starts_with(GEN_MARKER)) {
        for field in line[GEN_MARKER.len()..].split_whitespace() {
            match field.split_once('=') {
                Some(("family", v)) => family = Some(v.to_string()),
                Some(("seed", v)) => seed = v.parse().ok(),
                _ => {}
            }
        }
    }
    let instance = Instance {
        path: path.to_path_buf(),
        n: g.n(),
        m: g.m(),
        max_degree: g.max_degree(),
        family,
        seed,
    };
    Ok((g, instance))
}

#[derive(Debug, Serialize)]
pub struct EdgeLoad {
    pub edge: Edge,
    pub congestion: usize,
}

pub fn edge_loads(report: &CongestionReport) -> Vec<EdgeLoad> {
    report
        .per_edge
        .iter()
        .map(|&(edge, congestion)| EdgeLoad { edge, congestion })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct NodeSummary {
    pub id: usize,
    pub parent: Option<usize>,
    pub size: usize,
    pub vertices: VertexSet,
    pub cut_size: usize,
    pub cut_edges: Vec<Edge>,
    pub connector_edges: Vec<Edge>,
    pub children: Vec<usize>,
    pub height: usize,
    pub congestion: usize,
}

#[derive(Debug, Serialize)]
pub struct DecompositionSummary {
    pub oracle: OracleKind,
    pub guarantee: Guarantee,
    pub node_count: usize,
    pub height: usize,
    pub height_limit: usize,
    pub root_cut_size: usize,
    pub recurrence: Vec<RecurrenceCheck>,
    pub nodes: Vec<NodeSummary>,
}

impl DecompositionSummary {
    pub fn new(d: &DecompositionTree, n: usize, recurrence: Vec<RecurrenceCheck>) -> Self {
        DecompositionSummary {
            oracle: d.oracle.kind,
            guarantee: d.oracle.guarantee(),
            node_count: d.nodes.len(),
            height: d.height(),
            height_limit: stc_core::decomposer::log_three_halves_ceil(n),
            root_cut_size: d.root_node().cut_edges.len(),
            recurrence,
            nodes: d
                .nodes
                .iter()
                .map(|t| NodeSummary {
                    id: t.id,
                    parent: t.parent,
                    size: t.vertex_set.len(),
                    vertices: t.vertex_set.clone(),
                    cut_size: t.cut_edges.len(),
                    cut_edges: t.cut_edges.clone(),
                    connector_edges: t.connector_edges.clone(),
                    children: t.children.clone(),
                    height: t.height,
                    congestion: t.congestion,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Ratio {
    /// `max_congestion / value` of the named bound.
    pub congestion_over_bound: f64,
    pub bound_kind: String,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub millis: u128,
}

#[derive(Debug, Serialize)]
pub struct SolveConfig {
    pub input: PathBuf,
    pub oracle: &'static str,
    pub seed: u64,
    pub tree_out: Option<PathBuf>,
    pub dot: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub timing: bool,
    pub limits: Limits,
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: &'static str,
    pub config: SolveConfig,
    pub instance: Instance,
    pub tree: Vec<Edge>,
    pub max_congestion: usize,
    pub argmax_edge: Option<Edge>,
    pub per_edge: Vec<EdgeLoad>,
    pub decomposition: DecompositionSummary,
    pub bounds: Vec<BoundCertificate>,
    pub best_bound: BoundCertificate,
    pub ratio: Ratio,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Debug, Serialize)]
pub struct ExactConfig {
    pub input: PathBuf,
    pub budget: u64,
    pub tree_out: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct ExactReport {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: &'static str,
    pub config: ExactConfig,
    pub instance: Instance,
    pub stc: usize,
    pub witness_tree: Vec<Edge>,
    pub per_edge: Vec<EdgeLoad>,
    /// Decimal string; the count outgrows 64 bits quickly.
    pub spanning_tree_count: String,
}

#[derive(Debug, Serialize)]
pub struct BoundsConfig {
    pub input: PathBuf,
    pub mode: &'static str,
    pub effort: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub limits: Limits,
}

#[derive(Debug, Serialize)]
pub struct BoundsReport {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: &'static str,
    pub config: BoundsConfig,
    pub instance: Instance,
    pub certificates: Vec<BoundCertificate>,
    pub best: BoundCertificate,
}

/// Pretty JSON with a trailing newline, to `out` or stdout.
pub fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> CliResult {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::new(crate::fail::INVARIANT, format!("serializing report: {e}")))?;
    text.push('\n');
    write_or_print(&text, out)
}

pub fn write_or_print(text: &str, out: Option<&Path>) -> CliResult {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
