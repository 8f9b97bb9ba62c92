//! Spanning trees, their congestion, and the exhaustive minimum-congestion search.
//!
//! For a tree edge `uv`, removing it splits the tree into `S_u` and `S_v`; the
//! congestion of `uv` is the number of host edges between the two sides. The
//! congestion of the tree is the maximum over its edges.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex, VertexSet};

/// Default cap on the Kirchhoff count accepted by [`exact_stc`].
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A spanning tree on `0..host_n`, rooted at vertex 0 for traversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
    parent: Vec<Option<Vertex>>,
    depth: Vec<usize>,
    /// BFS order from the root.
    order: Vec<Vertex>,
}

impl SpanningTree {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<SpanningTree> {
        if n == 0 {
            return Err(Error::NotSpanningTree("empty vertex set".into()));
        }
        if edges.len() + 1 != n {
            return Err(Error::NotSpanningTree(format!(
                "{} edges for {} vertices",
                edges.len(),
                n
            )));
        }
        let mut edges: Vec<Edge> = edges.into_iter().map(|(u, v)| edge(u, v)).collect();
        edges.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if order.len() != n {
            // n - 1 edges and not connected means a cycle somewhere
            return Err(Error::NotSpanningTree(
                "edges do not connect all vertices".into(),
            ));
        }
        Ok(SpanningTree {
            edges,
            adj,
            parent,
            depth,
            order,
        })
    }

    /// The empty tree of the one-vertex graph.
    pub fn trivial() -> SpanningTree {
        SpanningTree::new(1, Vec::new()).expect("single vertex")
    }

    /// Star centred at `center`.
    pub fn star(n: usize, center: Vertex) -> Result<SpanningTree> {
        SpanningTree::new(
            n,
            (0..n)
                .filter(|&v| v != center)
                .map(|v| edge(center, v))
                .collect(),
        )
    }

    pub fn host_n(&self) -> usize {
        self.adj.len()
    }

    /// Tree edges, sorted.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    /// Parse the `n - 1` line `"<u> <v>"` body used by `--tree-out`.
    pub fn parse(text: &str, n: usize) -> Result<SpanningTree> {
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let parsed = match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => a.parse::<usize>().ok().zip(b.parse::<usize>().ok()),
                _ => None,
            };
            let (u, v) = parsed.ok_or_else(|| Error::MalformedEdge {
                line: i + 1,
                text: line.into(),
            })?;
            edges.push((u, v));
        }
        SpanningTree::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        self.edges
            .iter()
            .map(|(u, v)| format!("{u} {v}\n"))
            .collect()
    }

    fn lca(&self, mut a: Vertex, mut b: Vertex) -> Vertex {
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].unwrap();
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].unwrap();
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        a
    }
}

/// Congestion of every tree edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongestionReport {
    /// `(tree edge, congestion)`, in sorted edge order.
    pub per_edge: Vec<(Edge, usize)>,
    pub max_congestion: usize,
    /// First tree edge attaining the maximum; `None` for the one-vertex tree.
    pub argmax_edge: Option<Edge>,
}

impl CongestionReport {
    fn from_counts(per_edge: Vec<(Edge, usize)>) -> CongestionReport {
        let mut max_congestion = 0;
        let mut argmax_edge = None;
        for &(e, c) in &per_edge {
            if argmax_edge.is_none() || c > max_congestion {
                max_congestion = c;
                argmax_edge = Some(e);
            }
        }
        CongestionReport {
            per_edge,
            max_congestion,
            argmax_edge,
        }
    }

    pub fn get(&self, e: Edge) -> Option<usize> {
        let e = edge(e.0, e.1);
        self.per_edge
            .binary_search_by_key(&e, |&(x, _)| x)
            .ok()
            .map(|i| self.per_edge[i].1)
    }
}

fn check_pair(g: &Graph, t: &SpanningTree) -> Result<()> {
    if t.host_n() != g.n() {
        return Err(Error::NotSpanningTree(format!(
            "tree spans {} vertices, graph has {}",
            t.host_n(),
            g.n()
        )));
    }
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    if let Some(&(u, v)) = t.edges().iter().find(|&&(u, v)| !g.has_edge(u, v)) {
        return Err(Error::TreeEdgeNotInGraph(u, v));
    }
    Ok(())
}

/// Congestion by path accumulation: every host edge adds one to each tree
/// edge on its tree path (a tree edge's path is itself).
pub fn tree_congestion(g: &Graph, t: &SpanningTree) -> Result<CongestionReport> {
    check_pair(g, t)?;
    let n = g.n();
    // +1 at both endpoints, -2 at the LCA; the subtree sum below `v` is the
    // number of host edges crossing `(parent(v), v)`.
    let mut acc = vec![0i64; n];
    for (u, v) in g.edges() {
        acc[u] += 1;
        acc[v] += 1;
        acc[t.lca(u, v)] -= 2;
    }
    for &v in t.order.iter().rev() {
        if let Some(p) = t.parent[v] {
            acc[p] += acc[v];
        }
    }
    let per_edge = t
        .edges()
        .iter()
        .map(|&(u, v)| {
            let child = if t.parent[v] == Some(u) { v } else { u };
            ((u, v), acc[child] as usize)
        })
        .collect();
    Ok(CongestionReport::from_counts(per_edge))
}

/// Congestion by definition: drop each tree edge, label one side, count
/// host edges with exactly one labeled endpoint.
pub fn tree_congestion_naive(g: &Graph, t: &SpanningTree) -> Result<CongestionReport> {
    check_pair(g, t)?;
    let n = g.n();
    let mut per_edge = Vec::with_capacity(t.edges().len());
    let mut side = vec![false; n];
    let mut stack = Vec::new();
    for &(u, v) in t.edges() {
        side.iter_mut().for_each(|s| *s = false);
        side[u] = true;
        stack.push(u);
        while let Some(x) = stack.pop() {
            for &y in t.neighbors(x) {
                if !side[y] && !(x == u && y == v) {
                    side[y] = true;
                    stack.push(y);
                }
            }
        }
        let crossing = g.edges().filter(|&(a, b)| side[a] != side[b]).count();
        per_edge.push(((u, v), crossing));
    }
    Ok(CongestionReport::from_counts(per_edge))
}

/// Number of spanning trees by the matrix-tree theorem (fraction-free
/// Gaussian elimination on a reduced Laplacian).
pub fn spanning_tree_count(g: &Graph) -> BigUint {
    let n = g.n();
    if n == 1 {
        return BigUint::one();
    }
    let k = n - 1;
    let mut a: Vec<Vec<BigInt>> = (1..n)
        .map(|i| {
            (1..n)
                .map(|j| {
                    if i == j {
                        BigInt::from(g.degree(i))
                    } else if g.has_edge(i, j) {
                        BigInt::from(-1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();

    let mut negate = false;
    let mut prev = BigInt::one();
    for p in 0..k {
        if a[p][p].is_zero() {
            match (p + 1..k).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    negate = !negate;
                }
                None => return BigUint::zero(),
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let v = (&a[i][j] * &a[p][p] - &a[i][p] * &a[p][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[p][p].clone();
    }
    let det = if negate { -prev } else { prev };
    match det.sign() {
        Sign::Minus => unreachable!("Laplacian minors are positive semidefinite"),
        _ => det.to_biguint().unwrap_or_default(),
    }
}

/// Result of the exhaustive minimum-congestion search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactStc {
    pub value: usize,
    pub witness: SpanningTree,
    pub tree_count: BigUint,
}

/// Minimum congestion over all spanning trees.
///
/// Trees are grown from vertex 0 by branching on the first frontier edge
/// (include it, or exclude it for good). Once a vertex set `W` is spanned,
/// host edges inside `W` are routed on fixed paths, so their loads are a
/// lower bound for the finished tree; branches whose load reaches the best
/// value so far are cut.
pub fn exact_stc(g: &Graph, budget: u64) -> Result<ExactStc> {
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let tree_count = spanning_tree_count(g);
    if tree_count > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            count: tree_count,
            budget,
        });
    }
    let n = g.n();
    if n == 1 {
        return Ok(ExactStc {
            value: 0,
            witness: SpanningTree::trivial(),
            tree_count,
        });
    }

    let mut search = Search::new(g);
    search.grow();
    let (value, edges) = search.best.expect("a connected graph has a spanning tree");
    let witness = SpanningTree::new(n, edges)?;
    Ok(ExactStc {
        value,
        witness,
        tree_count,
    })
}

struct Search<'g> {
    g: &'g Graph,
    /// Edge id by adjacency position.
    eid: Vec<Vec<usize>>,
    excluded: Vec<bool>,
    in_tree: Vec<bool>,
    parent: Vec<usize>,
    depth: Vec<usize>,
    /// `load[v]`: host edges inside the spanned set routed through `(parent(v), v)`.
    load: Vec<usize>,
    tree_edges: Vec<Edge>,
    spanned: usize,
    /// No tree can beat the averaging bound.
    floor: usize,
    best: Option<(usize, Vec<Edge>)>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.n();
        let mut ids = std::collections::HashMap::new();
        for (i, e) in g.edges().enumerate() {
            ids.insert(e, i);
        }
        let eid = (0..n)
            .map(|u| g.neighbors(u).iter().map(|&v| ids[&edge(u, v)]).collect())
            .collect();
        let mut in_tree = vec![false; n];
        in_tree[0] = true;
        Search {
            g,
            eid,
            excluded: vec![false; g.m()],
            in_tree,
            parent: vec![usize::MAX; n],
            depth: vec![0; n],
            load: vec![0; n],
            tree_edges: Vec::with_capacity(n - 1),
            spanned: 1,
            floor: g.m().div_ceil(n - 1),
            best: None,
        }
    }

    fn done(&self) -> bool {
        matches!(self.best, Some((v, _)) if v <= self.floor)
    }

    fn bound(&self) -> usize {
        self.best.as_ref().map_or(usize::MAX, |(v, _)| *v)
    }

    fn frontier_edge(&self) -> Option<(Vertex, Vertex, usize)> {
        for u in 0..self.g.n() {
            if !self.in_tree[u] {
                continue;
            }
            for (k, &x) in self.g.neighbors(u).iter().enumerate() {
                let id = self.eid[u][k];
                if !self.in_tree[x] && !self.excluded[id] {
                    return Some((u, x, id));
                }
            }
        }
        None
    }

    /// Walk the tree path between `a` and `b`, adjusting loads.
    fn route(&mut self, mut a: Vertex, mut b: Vertex, delta: isize) {
        while a != b {
            let step = if self.depth[a] >= self.depth[b] {
                &mut a
            } else {
                &mut b
            };
            let v = *step;
            self.load[v] = (self.load[v] as isize + delta) as usize;
            *step = self.parent[v];
        }
    }

    fn grow(&mut self) {
        if self.done() {
            return;
        }
        let worst = self.tree_loads_max();
        if worst >= self.bound() {
            return;
        }
        if self.spanned == self.g.n() {
            self.best = Some((worst, self.tree_edges.clone()));
            return;
        }
        let Some((u, x, id)) = self.frontier_edge() else {
            return;
        };

        // include u-x
        self.in_tree[x] = true;
        self.parent[x] = u;
        self.depth[x] = self.depth[u] + 1;
        self.spanned += 1;
        self.tree_edges.push(edge(u, x));
        let inner: Vec<Vertex> = self
            .g
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&y| self.in_tree[y] && y != x)
            .collect();
        for &y in &inner {
            self.route(x, y, 1);
        }
        self.grow();
        for &y in &inner {
            self.route(x, y, -1);
        }
        self.tree_edges.pop();
        self.spanned -= 1;
        self.in_tree[x] = false;
        self.parent[x] = usize::MAX;

        // exclude u-x
        if self.done() {
            return;
        }
        self.excluded[id] = true;
        if self.still_connected() {
            self.grow();
        }
        self.excluded[id] = false;
    }

    fn tree_loads_max(&self) -> usize {
        self.load.iter().copied().max().unwrap_or(0)
    }

    fn still_connected(&self) -> bool {
        let n = self.g.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for (k, &v) in self.g.neighbors(u).iter().enumerate() {
                if !seen[v] && !self.excluded[self.eid[u][k]] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }
}

/// A vertex whose removal leaves at most `floor(|marked| / 2)` marked vertices
/// in every component of `T - z`.
///
/// Starts at vertex 0 and keeps stepping into the unique component holding a
/// strict majority of the marks.
pub fn marked_centroid(t: &SpanningTree, marked: &VertexSet) -> Result<Vertex> {
    if marked.is_empty() {
        return Err(Error::EmptyMarkSet);
    }
    let n = t.host_n();
    if let Some(&v) = marked.as_slice().last() {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    let total = marked.len();
    // marks in the subtree below each vertex (rooted at 0)
    let mut below = vec![0usize; n];
    for &v in marked {
        below[v] = 1;
    }
    for &v in t.order.iter().rev() {
        if let Some(p) = t.parent[v] {
            below[p] += below[v];
        }
    }
    let component_marks = |z: Vertex, w: Vertex| -> usize {
        if t.parent[w] == Some(z) {
            below[w]
        } else {
            total - below[z]
        }
    };

    let mut z = 0;
    loop {
        let heavy = t
            .neighbors(z)
            .iter()
            .copied()
            .find(|&w| 2 * component_marks(z, w) > total);
        match heavy {
            Some(w) => z = w,
            None => return Ok(z),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[Edge]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| edge(i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn path_tree(n: usize) -> SpanningTree {
        SpanningTree::new(n, (1..n).map(|i| (i - 1, i)).collect()).unwrap()
    }

    #[test]
    fn tree_validation() {
        assert!(SpanningTree::new(3, vec![(0, 1)]).is_err());
        assert!(SpanningTree::new(4, vec![(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(SpanningTree::new(3, vec![(0, 1), (1, 3)]).is_err());
        let t = SpanningTree::new(3, vec![(2, 1), (1, 0)]).unwrap();
        assert_eq!(t.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(t.parent(2), Some(1));
        assert_eq!(SpanningTree::parse(&t.to_text(), 3).unwrap(), t);
    }

    #[test]
    fn congestion_examples() {
        let r = tree_congestion(&path(3), &path_tree(3)).unwrap();
        assert_eq!(r.per_edge, vec![((0, 1), 1), ((1, 2), 1)]);
        assert_eq!(r.max_congestion, 1);

        let r = tree_congestion(&cycle(4), &path_tree(4)).unwrap();
        assert!(r.per_edge.iter().all(|&(_, c)| c == 2));
        assert_eq!(r.max_congestion, 2);

        let k5 = complete(5);
        let star = SpanningTree::star(5, 4).unwrap();
        let fast = tree_congestion(&k5, &star).unwrap();
        let naive = tree_congestion_naive(&k5, &star).unwrap();
        assert_eq!(fast, naive);
        assert!(fast.per_edge.iter().all(|&(_, c)| c == 4));
        assert_eq!(fast.max_congestion, 4);
        assert_eq!(fast.argmax_edge, Some((0, 4)));
        assert_eq!(fast.get((4, 2)), Some(4));
    }

    #[test]
    fn congestion_errors() {
        let t = path_tree(3);
        assert!(matches!(
            tree_congestion(&path(4), &t),
            Err(Error::NotSpanningTree(_))
        ));
        let star = graph(3, &[(0, 1), (0, 2)]);
        assert_eq!(
            tree_congestion(&star, &t),
            Err(Error::TreeEdgeNotInGraph(1, 2))
        );
        let split = graph(3, &[(0, 1)]);
        assert_eq!(tree_congestion(&split, &t), Err(Error::DisconnectedInput));
    }

    #[test]
    fn single_vertex_congestion_is_zero() {
        let g = Graph::empty(1).unwrap();
        let r = tree_congestion(&g, &SpanningTree::trivial()).unwrap();
        assert_eq!(r.max_congestion, 0);
        assert_eq!(r.argmax_edge, None);
        assert_eq!(exact_stc(&g, 1).unwrap().value, 0);
    }

    #[test]
    fn exact_stc_examples() {
        for n in 2..8 {
            assert_eq!(exact_stc(&path(n), DEFAULT_BUDGET).unwrap().value, 1);
        }
        for n in 3..9 {
            assert_eq!(exact_stc(&cycle(n), DEFAULT_BUDGET).unwrap().value, 2);
        }
        let k4 = exact_stc(&complete(4), DEFAULT_BUDGET).unwrap();
        assert_eq!(k4.value, 3);
        assert_eq!(k4.tree_count, BigUint::from(16u32));
        let check = tree_congestion(&complete(4), &k4.witness).unwrap();
        assert_eq!(check.max_congestion, 3);
    }

    #[test]
    fn exact_stc_errors() {
        let split = graph(4, &[(0, 1), (2, 3)]);
        assert_eq!(
            exact_stc(&split, 100).unwrap_err(),
            Error::DisconnectedInput
        );
        match exact_stc(&complete(5), 100) {
            Err(Error::BudgetExceeded { count, budget }) => {
                assert_eq!(count, BigUint::from(125u32));
                assert_eq!(budget, 100);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn counts() {
        assert_eq!(spanning_tree_count(&path(6)), BigUint::one());
        assert_eq!(spanning_tree_count(&cycle(5)), BigUint::from(5u32));
        assert_eq!(spanning_tree_count(&complete(4)), BigUint::from(16u32));
        assert_eq!(
            spanning_tree_count(&graph(4, &[(0, 1), (2, 3)])),
            BigUint::zero()
        );
        assert_eq!(
            spanning_tree_count(&Graph::empty(1).unwrap()),
            BigUint::one()
        );
        // K_{2,3}: 2^(3-1) * 3^(2-1)
        let k23 = graph(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert_eq!(spanning_tree_count(&k23), BigUint::from(12u32));
    }

    /// Brute-force check of the centroid property.
    fn is_centroid(t: &SpanningTree, marked: &VertexSet, z: Vertex) -> bool {
        let n = t.host_n();
        let mut seen = vec![false; n];
        seen[z] = true;
        for &start in t.neighbors(z) {
            let mut stack = vec![start];
            seen[start] = true;
            let mut marks = 0;
            while let Some(x) = stack.pop() {
                marks += usize::from(marked.contains(x));
                for &y in t.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            if marks > marked.len() / 2 {
                return false;
            }
        }
        true
    }

    #[test]
    fn centroid_examples() {
        let p3 = path_tree(3);
        assert_eq!(marked_centroid(&p3, &VertexSet::full(3)).unwrap(), 1);

        let star = SpanningTree::star(5, 0).unwrap();
        assert_eq!(marked_centroid(&star, &VertexSet::full(5)).unwrap(), 0);

        let p5 = path_tree(5);
        let marks = VertexSet::new(vec![0, 4], 5).unwrap();
        let valid: Vec<Vertex> = (0..5).filter(|&z| is_centroid(&p5, &marks, z)).collect();
        assert_eq!(valid, vec![0, 1, 2, 3, 4]);
        assert_eq!(marked_centroid(&p5, &marks).unwrap(), 0);
        let marks = VertexSet::new(vec![0, 3, 4], 5).unwrap();
        let valid: Vec<Vertex> = (0..5).filter(|&z| is_centroid(&p5, &marks, z)).collect();
        assert_eq!(valid, vec![3]);
        assert_eq!(marked_centroid(&p5, &marks).unwrap(), 3);

        assert_eq!(
            marked_centroid(&p5, &VertexSet::default()),
            Err(Error::EmptyMarkSet)
        );
    }

    #[test]
    fn centroid_on_every_mark_set_of_small_trees() {
        let trees = [
            path_tree(7),
            SpanningTree::star(7, 3).unwrap(),
            SpanningTree::new(7, vec![(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]).unwrap(),
        ];
        for t in &trees {
            for mask in 1u64..(1 << 7) {
                let marked = VertexSet::from_mask(mask);
                let z = marked_centroid(t, &marked).unwrap();
                assert!(is_centroid(t, &marked, z), "mask {mask:b} z {z}");
            }
        }
    }
}
