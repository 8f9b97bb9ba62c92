//! Divide-and-conquer spanning tree construction.
//!
//! A graph on one vertex is its own tree. Otherwise a 2/3-balanced cut `F` is
//! taken from the oracle, every connected component of `H \ F` is solved
//! recursively, and the component trees are joined by edges of `F`: `F` is
//! scanned in sorted order and an edge is kept when its endpoints are still
//! in different parts (union-find).
//!
//! The recursion is recorded as a [`DecompositionTree`]: one node per
//! recursive call, with its vertex set, cut, connectors, height and the
//! congestion of the tree built for its induced subgraph. A tree edge inside
//! a child only sees congestion from the child's own edges plus `F`, and a
//! connector only from `F`, so at every node
//! `c(G_t, T_t) <= max_i c(G_ti, T_ti) + |F_t|`.
//! [`verify_recurrence`] checks that inequality on a finished run.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bounds::{best_certificate, hereditary_bisection_exact, DEFAULT_EFFORT};
use crate::cuts::{balance_cap, CutOracle, OracleKind};
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex, VertexSet};
use crate::rational::{self, Rational};
use crate::spantree::{exact_stc, tree_congestion, SpanningTree};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionNode {
    pub id: usize,
    pub parent: Option<usize>,
    /// Original vertex ids.
    pub vertex_set: VertexSet,
    /// Side of the cut holding the smallest vertex; empty at leaves.
    pub cut_side: VertexSet,
    /// `F_t`, sorted, original ids.
    pub cut_edges: Vec<Edge>,
    /// The edges of `F_t` used to join the children's trees.
    pub connector_edges: Vec<Edge>,
    pub children: Vec<usize>,
    pub height: usize,
    /// `c(G_t, T_t)`.
    pub congestion: usize,
}

impl DecompositionNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// Per-node check of `c(G_t, T_t) <= max_i c(G_ti, T_ti) + |F_t|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceCheck {
    pub node: usize,
    pub congestion: usize,
    pub max_child_congestion: usize,
    pub cut_size: usize,
    pub slack: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTree {
    pub oracle: CutOracle,
    pub root: usize,
    /// Indexed by node id, pre-order.
    pub nodes: Vec<DecompositionNode>,
    #[serde(
        serialize_with = "tree_edges",
        skip_deserializing,
        default = "SpanningTree::trivial"
    )]
    pub final_tree: SpanningTree,
    pub recurrence: Vec<RecurrenceCheck>,
}

fn tree_edges<S: serde::Serializer>(
    t: &SpanningTree,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    t.edges().serialize(s)
}

impl DecompositionTree {
    pub fn root_node(&self) -> &DecompositionNode {
        &self.nodes[self.root]
    }

    pub fn height(&self) -> usize {
        self.root_node().height
    }

    pub fn congestion(&self) -> usize {
        self.root_node().congestion
    }

    /// Graphviz rendering: one box per node with `|V_t|`, `|F_t|`, `c`, `h`.
    pub fn to_dot(&self) -> String {
        let mut out =
            String::from("digraph decomposition {\n  node [shape=box, fontname=monospace];\n");
        for node in &self.nodes {
            let members = if node.vertex_set.len() <= 8 {
                let ids: Vec<String> = node.vertex_set.iter().map(|v| v.to_string()).collect();
                format!("{{{}}}", ids.join(","))
            } else {
                format!("|V|={}", node.vertex_set.len())
            };
            let _ = writeln!(
                out,
                "  t{} [label=\"t{} {}\\n|F|={} c={} h={}\"];",
                node.id,
                node.id,
                members,
                node.cut_edges.len(),
                node.congestion,
                node.height
            );
        }
        for node in &self.nodes {
            for &child in &node.children {
                let _ = writeln!(out, "  t{} -> t{};", node.id, child);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Smallest `k` with `(3/2)^k >= n`.
pub fn log_three_halves_ceil(n: usize) -> usize {
    let mut k = 0;
    let (mut num, mut den) = (1u128, 1u128);
    while num < (n as u128) * den {
        num *= 3;
        den *= 2;
        k += 1;
    }
    k
}

/// Recursion deeper than this means the oracle broke the balance contract.
pub fn depth_guard(n: usize) -> usize {
    4 * log_three_halves_ceil(n) + 8
}

/// Build a spanning tree of connected `g` by recursive balanced cuts.
pub fn cong_span_tree(g: &Graph, oracle: &CutOracle) -> Result<(SpanningTree, DecompositionTree)> {
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let mut builder = Builder {
        g,
        oracle,
        nodes: Vec::new(),
        guard: depth_guard(g.n()),
    };
    let (root, edges) = builder.build(VertexSet::full(g.n()), None, 0)?;
    let final_tree = SpanningTree::new(g.n(), edges)?;
    let mut decomposition = DecompositionTree {
        oracle: *oracle,
        root,
        nodes: builder.nodes,
        final_tree: final_tree.clone(),
        recurrence: Vec::new(),
    };
    decomposition.recurrence = recurrence_checks(&decomposition);
    Ok((final_tree, decomposition))
}

struct Builder<'a> {
    g: &'a Graph,
    oracle: &'a CutOracle,
    nodes: Vec<DecompositionNode>,
    guard: usize,
}

impl Builder<'_> {
    fn build(
        &mut self,
        set: VertexSet,
        parent: Option<usize>,
        depth: usize,
    ) -> Result<(usize, Vec<Edge>)> {
        if depth > self.guard {
            return Err(Error::OracleFailure(format!(
                "recursion depth {depth} exceeds {}; cuts are not balanced",
                self.guard
            )));
        }
        let id = self.nodes.len();
        self.nodes.push(DecompositionNode {
            id,
            parent,
            vertex_set: set.clone(),
            cut_side: VertexSet::default(),
            cut_edges: Vec::new(),
            connector_edges: Vec::new(),
            children: Vec::new(),
            height: 0,
            congestion: 0,
        });
        if set.len() == 1 {
            return Ok((id, Vec::new()));
        }

        let (sub, map) = self.g.induced_subgraph(&set)?;
        let k = sub.n();
        let cut = self.oracle.balanced_cut(&sub)?;
        let (a, b) = cut.sides(k);
        let cap = balance_cap(k);
        if a == 0 || b == 0 || a > cap || b > cap {
            return Err(Error::OracleFailure(format!(
                "cut {a}|{b} of {k} vertices is not 2/3-balanced"
            )));
        }
        let remainder = sub.remove_edges(&cut.crossing)?;
        let components = remainder.connected_components();

        let mut children = Vec::with_capacity(components.len());
        let mut edges = Vec::with_capacity(k - 1);
        let mut max_child_height = 0;
        // union-find over local ids, seeded with the components
        let mut uf = UnionFind::new(k);
        for comp in &components {
            let (child, child_edges) = self.build(comp.lift(&map), Some(id), depth + 1)?;
            max_child_height = max_child_height.max(self.nodes[child].height);
            children.push(child);
            edges.extend(child_edges);
            for w in comp.as_slice().windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let mut connectors = Vec::new();
        for &(u, v) in &cut.crossing {
            if uf.union(u, v) {
                connectors.push(edge(map[u], map[v]));
            }
        }
        edges.extend(connectors.iter().copied());

        let local_tree = SpanningTree::new(
            k,
            edges
                .iter()
                .map(|&(u, v)| (local_id(&map, u), local_id(&map, v)))
                .collect(),
        )?;
        let congestion = tree_congestion(&sub, &local_tree)?.max_congestion;

        let node = &mut self.nodes[id];
        node.cut_side = cut.side.lift(&map);
        node.cut_edges = cut
            .crossing
            .iter()
            .map(|&(u, v)| edge(map[u], map[v]))
            .collect();
        node.connector_edges = connectors;
        node.children = children;
        node.height = max_child_height + 1;
        node.congestion = congestion;
        Ok((id, edges))
    }
}

fn local_id(map: &[Vertex], v: Vertex) -> Vertex {
    map.binary_search(&v).expect("vertex inside the node's set")
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

fn recurrence_checks(d: &DecompositionTree) -> Vec<RecurrenceCheck> {
    d.nodes
        .iter()
        .filter(|n| !n.is_leaf())
        .map(|node| {
            let max_child = node
                .children
                .iter()
                .map(|&c| d.nodes[c].congestion)
                .max()
                .unwrap_or(0);
            let bound = (max_child + node.cut_edges.len()) as i64;
            RecurrenceCheck {
                node: node.id,
                congestion: node.congestion,
                max_child_congestion: max_child,
                cut_size: node.cut_edges.len(),
                slack: bound - node.congestion as i64,
            }
        })
        .collect()
}

/// Structural invariants: the root spans `V(G)`, children partition their
/// parent into connected pieces of `G_t \ F_t`, every cut is 2/3-balanced and
/// is exactly `E(S, V_t \ S)`, leaves are singletons, heights are consistent,
/// and the final tree is the union of all connectors.
pub fn verify_structure(d: &DecompositionTree, g: &Graph) -> Result<()> {
    let fail = |msg: String| Err(Error::VerificationFailed(msg));
    let root = d.root_node();
    if root.vertex_set != VertexSet::full(g.n()) {
        return fail("root does not span the graph".into());
    }
    let mut connectors = Vec::new();
    for node in &d.nodes {
        let t = node.id;
        if node.is_leaf() {
            if node.vertex_set.len() != 1 || node.height != 0 || !node.cut_edges.is_empty() {
                return fail(format!("node {t}: leaf is not a bare singleton"));
            }
            continue;
        }
        let (sub, map) = g.induced_subgraph(&node.vertex_set)?;
        if !sub.is_connected() {
            return fail(format!("node {t}: G_t is disconnected"));
        }
        let k = sub.n();
        let side: Vec<Vertex> = node.cut_side.iter().map(|&v| local_id(&map, v)).collect();
        let side = VertexSet::new(side, k)?;
        let cap = balance_cap(k);
        if side.is_empty() || side.len() == k || side.len() > cap || k - side.len() > cap {
            return fail(format!(
                "node {t}: cut {}|{} is not 2/3-balanced",
                side.len(),
                k - side.len()
            ));
        }
        let crossing: Vec<Edge> = sub
            .crossing_edges(&side)
            .iter()
            .map(|&(u, v)| edge(map[u], map[v]))
            .collect();
        if crossing != node.cut_edges {
            return fail(format!("node {t}: F_t differs from E(S, V_t \\ S)"));
        }
        let remainder = sub.remove_edges(&sub.crossing_edges(&side))?;
        let expected: Vec<VertexSet> = remainder
            .connected_components()
            .iter()
            .map(|c| c.lift(&map))
            .collect();
        let actual: Vec<VertexSet> = node
            .children
            .iter()
            .map(|&c| d.nodes[c].vertex_set.clone())
            .collect();
        if expected != actual {
            return fail(format!(
                "node {t}: children are not the components of G_t \\ F_t"
            ));
        }
        let child_cap = (2 * k).div_ceil(3);
        if actual.iter().any(|c| c.len() > child_cap) {
            return fail(format!("node {t}: child exceeds ceil(2|V_t|/3)"));
        }
        let h = 1 + node
            .children
            .iter()
            .map(|&c| d.nodes[c].height)
            .max()
            .unwrap_or(0);
        if h != node.height {
            return fail(format!("node {t}: height {} should be {h}", node.height));
        }
        if node
            .connector_edges
            .iter()
            .any(|e| node.cut_edges.binary_search(e).is_err())
        {
            return fail(format!("node {t}: connector outside F_t"));
        }
        if node.connector_edges.len() + 1 != node.children.len() {
            return fail(format!(
                "node {t}: {} connectors for {} children",
                node.connector_edges.len(),
                node.children.len()
            ));
        }
        connectors.extend(node.connector_edges.iter().copied());
    }
    connectors.sort_unstable();
    if connectors != d.final_tree.edges() {
        return fail("final tree is not the union of connector edges".into());
    }
    if d.final_tree.edges().iter().any(|&(u, v)| !g.has_edge(u, v))
        || d.final_tree.host_n() != g.n()
    {
        return fail("final tree is not a spanning tree of G".into());
    }
    Ok(())
}

/// Recompute `c(G_t, T_t)` for every node from `g` and the final tree
/// (`T_t` is the final tree restricted to `V_t`) and check
/// `c(G_t, T_t) <= max_i c(G_ti, T_ti) + |F_t|` with the actual cut size.
pub fn verify_recurrence(d: &DecompositionTree, g: &Graph) -> Result<Vec<RecurrenceCheck>> {
    let mut congestion = vec![0usize; d.nodes.len()];
    for node in &d.nodes {
        if node.is_leaf() {
            continue;
        }
        let (sub, map) = g.induced_subgraph(&node.vertex_set)?;
        let inner: Vec<Edge> = d
            .final_tree
            .edges()
            .iter()
            .filter(|&&(u, v)| node.vertex_set.contains(u) && node.vertex_set.contains(v))
            .map(|&(u, v)| (local_id(&map, u), local_id(&map, v)))
            .collect();
        let tree = SpanningTree::new(sub.n(), inner).map_err(|e| {
            Error::VerificationFailed(format!(
                "node {}: T_t is not a spanning tree of G_t ({e})",
                node.id
            ))
        })?;
        congestion[node.id] = tree_congestion(&sub, &tree)?.max_congestion;
        if congestion[node.id] != node.congestion {
            return Err(Error::VerificationFailed(format!(
                "node {}: recorded congestion {} but recomputed {}",
                node.id, node.congestion, congestion[node.id]
            )));
        }
    }
    let mut checks = Vec::new();
    for node in d.nodes.iter().filter(|n| !n.is_leaf()) {
        let max_child = node
            .children
            .iter()
            .map(|&c| congestion[c])
            .max()
            .unwrap_or(0);
        let slack = (max_child + node.cut_edges.len()) as i64 - congestion[node.id] as i64;
        if slack < 0 {
            return Err(Error::VerificationFailed(format!(
                "node {}: c = {} exceeds max child {} + |F| {}",
                node.id,
                congestion[node.id],
                max_child,
                node.cut_edges.len()
            )));
        }
        checks.push(RecurrenceCheck {
            node: node.id,
            congestion: congestion[node.id],
            max_child_congestion: max_child,
            cut_size: node.cut_edges.len(),
            slack,
        });
    }
    Ok(checks)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalBoundReport {
    pub congestion: usize,
    pub height: usize,
    pub height_limit: usize,
    pub hereditary_bisection: usize,
}

/// With the exact oracle every `|F_t| <= b(G_t) <= hb(G)`, so
/// `c(G, T) <= h(root) · hb(G)`; balance gives `h(root) <= ceil(log_{3/2} n)`.
pub fn verify_global_bound(d: &DecompositionTree, g: &Graph) -> Result<GlobalBoundReport> {
    if d.oracle.kind != OracleKind::Exact {
        return Err(Error::InvalidParams(
            "the h(root) * hb(G) bound needs the exact oracle".into(),
        ));
    }
    let height = d.height();
    let height_limit = log_three_halves_ceil(g.n());
    let congestion = d.congestion();
    let hb = if g.n() >= 2 {
        hereditary_bisection_exact(g)?.value
    } else {
        0
    };
    let report = GlobalBoundReport {
        congestion,
        height,
        height_limit,
        hereditary_bisection: hb,
    };
    if height > height_limit {
        return Err(Error::VerificationFailed(format!(
            "height {height} exceeds ceil(log_1.5 n) = {height_limit}"
        )));
    }
    if congestion > height * hb {
        return Err(Error::VerificationFailed(format!(
            "congestion {congestion} exceeds h(root) * hb = {height} * {hb}"
        )));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproximationRecord {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub congestion: usize,
    /// `STC(G)` when the exhaustive search fits the budget, else the best certificate.
    #[serde(with = "rational::num_den")]
    pub denominator: Rational,
    /// `"exact"` or the certificate kind.
    pub denominator_kind: String,
    /// True when the denominator is only a certified lower bound.
    pub certified_lower_bound_ratio: bool,
    pub ratio: f64,
    pub height: usize,
    pub hereditary_bisection: Option<usize>,
}

/// Compare the constructed tree against `STC(G)` (or a certified lower bound
/// on it when the exhaustive search would exceed `budget`).
pub fn approximation_report(
    g: &Graph,
    oracle: &CutOracle,
    budget: u64,
) -> Result<ApproximationRecord> {
    let (_, d) = cong_span_tree(g, oracle)?;
    let congestion = d.congestion();
    let (denominator, kind, lower) = match exact_stc(g, budget) {
        Ok(exact) => (
            Rational::from_integer(exact.value as i64),
            "exact".to_string(),
            false,
        ),
        Err(Error::BudgetExceeded { .. }) => {
            let cert = best_certificate(g, DEFAULT_EFFORT);
            (cert.value, cert.kind.as_str().to_string(), true)
        }
        Err(e) => return Err(e),
    };
    let ratio = if denominator == Rational::from_integer(0) {
        // only the one-vertex graph, where both sides are 0
        1.0
    } else {
        rational::to_f64(&(Rational::from_integer(congestion as i64) / denominator))
    };
    let hb = if g.n() >= 2 {
        hereditary_bisection_exact(g).ok().map(|h| h.value)
    } else {
        None
    };
    Ok(ApproximationRecord {
        n: g.n(),
        m: g.m(),
        max_degree: g.max_degree(),
        congestion,
        denominator,
        denominator_kind: kind,
        certified_lower_bound_ratio: lower,
        ratio,
        height: d.height(),
        hereditary_bisection: hb,
    })
}
