//! Fixed instances shared by the criterion benchmarks.

use stc_core::generators::generate;
use stc_core::{Family, Graph, SpanningTree};

/// A seeded connected instance for each benchmark size.
pub fn instance(family: Family, seed: u64) -> Graph {
    generate(&family, seed).expect("benchmark families are valid")
}

/// BFS tree from vertex 0.
pub fn bfs_tree(g: &Graph) -> SpanningTree {
    let mut seen = vec![false; g.n()];
    let mut queue = std::collections::VecDeque::from([0]);
    let mut edges = Vec::with_capacity(g.n() - 1);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                edges.push((v, w));
                queue.push_back(w);
            }
        }
    }
    SpanningTree::new(g.n(), edges).expect("connected instance")
}
