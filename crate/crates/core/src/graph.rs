//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// An undirected edge, always stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

#[inline]
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Undirected simple graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n >= 1` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidParams(
                "a graph needs at least one vertex".into(),
            ));
        }
        Ok(Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.adj[u].push(v);
            g.adj[v].push(u);
            g.m += 1;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        for (u, list) in g.adj.iter().enumerate() {
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = edge(u, w[0]);
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges in ascending `(min, max)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Maximum degree; 0 for edgeless graphs.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Components as sorted vertex sets, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut members = Vec::new();
            while let Some(u) = queue.pop_front() {
                members.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(VertexSet(members));
        }
        out
    }

    /// `G[S]` relabeled to `0..|S|`, plus the map from new ids to original ids.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<Vertex>)> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        if let Some(&v) = s.as_slice().last() {
            if v >= self.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n(),
                });
            }
        }
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in s.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); s.len()];
        let mut m = 0;
        for (i, &v) in s.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX {
                    adj[i].push(j);
                    if j > i {
                        m += 1;
                    }
                }
            }
        }
        // `local` is monotone on sorted `s`, so lists stay sorted.
        Ok((Graph { adj, m }, s.0.clone()))
    }

    /// `G \ F`: same vertices, listed edges removed.
    pub fn remove_edges(&self, f: &[Edge]) -> Result<Graph> {
        let mut g = self.clone();
        for &(a, b) in f {
            let (u, v) = edge(a, b);
            if !self.has_edge(u, v) {
                return Err(Error::MissingEdge(u, v));
            }
            match (g.adj[u].binary_search(&v), g.adj[v].binary_search(&u)) {
                (Ok(i), Ok(j)) => {
                    g.adj[u].remove(i);
                    g.adj[v].remove(j);
                    g.m -= 1;
                }
                // listed twice in `f`
                _ => return Err(Error::MissingEdge(u, v)),
            }
        }
        Ok(g)
    }

    /// `E(S, V \ S)`, sorted.
    pub fn crossing_edges(&self, s: &VertexSet) -> Vec<Edge> {
        let mut inside = vec![false; self.n()];
        for &v in s.iter() {
            inside[v] = true;
        }
        self.edges()
            .filter(|&(u, v)| inside[u] != inside[v])
            .collect()
    }

    /// Adjacency as bitmasks; only valid for `n <= 64`.
    pub(crate) fn masks(&self) -> Vec<u64> {
        debug_assert!(self.n() <= 64);
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |acc, &v| acc | (1u64 << v)))
            .collect()
    }

    pub(crate) fn from_masks(masks: &[u64]) -> Graph {
        let adj: Vec<Vec<Vertex>> = masks
            .iter()
            .map(|&mask| (0..masks.len()).filter(|&v| mask >> v & 1 == 1).collect())
            .collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, m }
    }

    /// Relabel vertex `v` to `perm[v]`.
    pub fn permute(&self, perm: &[Vertex]) -> Result<Graph> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidParams(
                "not a permutation of the vertex set".into(),
            ));
        }
        Graph::from_edges(n, self.edges().map(|(u, v)| edge(perm[u], perm[v])))
    }

    pub fn parse(text: &str) -> Result<Graph> {
        parse_graph(text)
    }

    pub fn to_edge_list(&self) -> String {
        serialize_graph(self)
    }
}

/// Parse the edge-list format: header `"<n> <m>"`, then `m` lines `"<u> <v>"`.
/// Lines starting with `#` and blank lines are skipped.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("missing header line".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, declared) = match fields.as_slice() {
        [n, m] => match (n.parse::<usize>(), m.parse::<usize>()) {
            (Ok(n), Ok(m)) => (n, m),
            _ => return Err(Error::MalformedHeader(header.to_string())),
        },
        _ => return Err(Error::MalformedHeader(header.to_string())),
    };
    if n == 0 {
        return Err(Error::MalformedHeader(
            "vertex count must be positive".into(),
        ));
    }

    let mut edges = Vec::with_capacity(declared);
    for (line, text) in lines {
        let parsed: Option<(usize, usize)> = {
            let mut it = text.split_whitespace();
            match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => a.parse().ok().zip(b.parse().ok()),
                _ => None,
            }
        };
        let (u, v) = parsed.ok_or_else(|| Error::MalformedEdge {
            line,
            text: text.to_string(),
        })?;
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange {
                vertex: u.max(v),
                n,
            });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        edges.push(edge(u, v));
    }
    if edges.len() != declared {
        return Err(Error::EdgeCountMismatch {
            declared,
            found: edges.len(),
        });
    }
    Graph::from_edges(n, edges)
}

/// Canonical edge-list document, edges sorted, no trailing newline.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push('\n');
        out.push_str(&u.to_string());
        out.push(' ');
        out.push_str(&v.to_string());
    }
    out
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_graph(self))
    }
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    /// Validates against a host of `n` vertices.
    pub fn new(mut ids: Vec<Vertex>, n: usize) -> Result<VertexSet> {
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidParams(format!(
                "vertex {} listed twice",
                w[0]
            )));
        }
        if let Some(&v) = ids.last() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        Ok(VertexSet(ids))
    }

    pub fn full(n: usize) -> VertexSet {
        VertexSet((0..n).collect())
    }

    pub(crate) fn from_sorted(ids: Vec<Vertex>) -> VertexSet {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        VertexSet(ids)
    }

    pub(crate) fn from_mask(mask: u64) -> VertexSet {
        VertexSet((0..64).filter(|&v| mask >> v & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vertex> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    /// Map local ids through `map` (as returned by [`Graph::induced_subgraph`]).
    pub fn lift(&self, map: &[Vertex]) -> VertexSet {
        let mut ids: Vec<Vertex> = self.0.iter().map(|&v| map[v]).collect();
        ids.sort_unstable();
        VertexSet(ids)
    }

    /// `V \ S` in a host of `n` vertices.
    pub fn complement(&self, n: usize) -> VertexSet {
        let mut inside = vec![false; n];
        for &v in &self.0 {
            inside[v] = true;
        }
        VertexSet((0..n).filter(|&v| !inside[v]).collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a Vertex;
    type IntoIter = std::slice::Iter<'a, Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// A bipartition `(S, V \ S)` together with `E(S, V \ S)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub side: VertexSet,
    pub crossing: Vec<Edge>,
}

impl Cut {
    pub fn new(g: &Graph, side: VertexSet) -> Cut {
        let crossing = g.crossing_edges(&side);
        Cut { side, crossing }
    }

    pub fn width(&self) -> usize {
        self.crossing.len()
    }

    /// Sizes of `S` and `V \ S` in a host of `n` vertices.
    pub fn sides(&self, n: usize) -> (usize, usize) {
        (self.side.len(), n - self.side.len())
    }
}
