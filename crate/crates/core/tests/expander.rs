use stc_core::cuts::{balance_cap, bisection_exact, edge_expansion_exact, extract_expander};
use stc_core::generators::{complete, cycle};
use stc_core::rational::ratio;
use stc_core::{Graph, VertexSet};

fn target(g: &Graph) -> stc_core::Rational {
    ratio(bisection_exact(g).unwrap().width(), g.n())
}

#[test]
fn extraction_keeps_everything_on_expanders() {
    for g in [complete(4).unwrap(), cycle(6).unwrap()] {
        let x = extract_expander(&g, target(&g)).unwrap();
        assert_eq!(x.vertices, VertexSet::full(g.n()));
        assert!(x.certified);
        assert!(x.removed.is_empty());
    }
}

#[test]
fn two_triangles_and_a_bridge_stay_whole() {
    let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
    assert_eq!(target(&g), ratio(1, 6));
    let x = extract_expander(&g, target(&g)).unwrap();
    assert_eq!(x.vertices.len(), 6);
    assert_eq!(x.expansion.unwrap().value, ratio(1, 3));
}

/// Smallest-first peeling drops a pendant triple in one step and ends below
/// two thirds, although a larger expanding subgraph exists.
#[test]
fn smallest_first_peeling_can_overshoot() {
    let g = Graph::from_edges(
        8,
        [
            (0, 6),
            (1, 6),
            (6, 7),
            (2, 7),
            (3, 7),
            (4, 7),
            (2, 5),
            (3, 5),
            (4, 5),
        ],
    )
    .unwrap();
    let t = target(&g);
    assert_eq!(t, ratio(3, 8));
    let x = extract_expander(&g, t).unwrap();
    assert_eq!(x.removed, vec![VertexSet::new(vec![0, 1, 6], 8).unwrap()]);
    assert_eq!(x.vertices.as_slice(), &[2, 3, 4, 5, 7]);
    assert!(x.certified);
    assert!(x.vertices.len() < balance_cap(8));

    let keep = VertexSet::new(vec![1, 2, 3, 4, 5, 6, 7], 8).unwrap();
    let (h, _) = g.induced_subgraph(&keep).unwrap();
    assert!(edge_expansion_exact(&h).unwrap().value >= t);
}
