//! Bipartitioners: exact bisection, 2/3-balanced cuts, edge expansion, and the
//! extraction of a well-expanding induced subgraph.
//!
//! A cut is 2/3-balanced when both sides are nonempty and hold at most
//! `ceil(2n/3)` vertices. Every ratio is compared exactly by cross-multiplying.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::{self, popcount};
use crate::error::{Error, Result};
use crate::graph::{Cut, Graph, Vertex, VertexSet};
use crate::limits::{limits, HARD_CAP};
use crate::rational::{self, Rational};

/// Largest side a 2/3-balanced cut of `n` vertices may have.
pub fn balance_cap(n: usize) -> usize {
    (2 * n).div_ceil(3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    /// Exhaustive minimum-width balanced cut.
    Exact,
    /// Fiedler sweep refined by swap local search.
    SpectralKl,
}

/// Approximation guarantee attached to an oracle's cuts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Guarantee {
    /// Width at most the bisection width (`alpha = 1`).
    Exact,
    Uncertified,
}

/// A balanced-cut provider.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutOracle {
    pub kind: OracleKind,
    pub seed: u64,
    pub exact_limit: usize,
}

impl CutOracle {
    pub fn exact() -> CutOracle {
        CutOracle {
            kind: OracleKind::Exact,
            seed: 0,
            exact_limit: limits().exact,
        }
    }

    pub fn spectral(seed: u64) -> CutOracle {
        CutOracle {
            kind: OracleKind::SpectralKl,
            seed,
            exact_limit: limits().exact,
        }
    }

    pub fn guarantee(&self) -> Guarantee {
        match self.kind {
            OracleKind::Exact => Guarantee::Exact,
            OracleKind::SpectralKl => Guarantee::Uncertified,
        }
    }

    pub fn balanced_cut(&self, g: &Graph) -> Result<Cut> {
        match self.kind {
            OracleKind::Exact => balanced_cut_exact_with_limit(g, self.exact_limit),
            OracleKind::SpectralKl => balanced_cut_spectral(g, self.seed),
        }
    }
}

fn check_exact_size(n: usize, limit: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::TooSmall { n, min });
    }
    let limit = limit.min(HARD_CAP);
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    Ok(())
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Minimum bisection: `|S| = floor(n/2)`, width `b(G)`, lexicographically
/// smallest optimal `S`.
pub fn bisection_exact(g: &Graph) -> Result<Cut> {
    check_exact_size(g.n(), limits().exact, 2)?;
    let (_, side) = bits::bisection(&g.masks(), full_mask(g.n()));
    Ok(Cut::new(g, VertexSet::from_mask(side)))
}

/// Minimum-width 2/3-balanced cut, reported with `S` the side holding vertex
/// 0; ties go to the lexicographically smallest `S`.
pub fn balanced_cut_exact(g: &Graph) -> Result<Cut> {
    balanced_cut_exact_with_limit(g, limits().exact)
}

fn balanced_cut_exact_with_limit(g: &Graph, limit: usize) -> Result<Cut> {
    let n = g.n();
    check_exact_size(n, limit, 2)?;
    let adj = g.masks();
    let cap = balance_cap(n);
    let free: Vec<Vertex> = (1..n).collect();
    let mut best: Option<(usize, u64)> = None;
    bits::for_each_subset(&adj, full_mask(n), 1, &free, |s, w| {
        let size = popcount(s);
        if size > cap || n - size > cap || size == n {
            return;
        }
        let better = match best {
            None => true,
            Some((bw, bs)) => w < bw || (w == bw && bits::lex_less(s, bs)),
        };
        if better {
            best = Some((w, s));
        }
    });
    let (_, side) = best.ok_or_else(|| Error::OracleFailure("no balanced bipartition".into()))?;
    Ok(Cut::new(g, VertexSet::from_mask(side)))
}

/// Power-iteration rounds for the Fiedler vector.
const POWER_ITERATIONS: usize = 600;
/// Prefix sizes tried along the spectral order.
const SWEEP_THRESHOLDS: usize = 64;

/// Heuristic 2/3-balanced cut: sweep the Fiedler order, then apply the best
/// single move or boundary swap until no move lowers the width.
pub fn balanced_cut_spectral(g: &Graph, seed: u64) -> Result<Cut> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let cap = balance_cap(n);
    let fiedler = fiedler_vector(g, seed)?;
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by(|&a, &b| fiedler[a].total_cmp(&fiedler[b]).then(a.cmp(&b)));

    // widths of every prefix of the order, in one pass
    let mut in_prefix = vec![false; n];
    let mut prefix_width = vec![0usize; n + 1];
    let mut width = 0isize;
    for (k, &v) in order.iter().enumerate() {
        let inside = g.neighbors(v).iter().filter(|&&w| in_prefix[w]).count() as isize;
        width += g.degree(v) as isize - 2 * inside;
        in_prefix[v] = true;
        prefix_width[k + 1] = width as usize;
    }

    let lo = (n - cap).max(1);
    let hi = cap.min(n - 1);
    let span = hi - lo;
    let thresholds: Vec<usize> = if span < SWEEP_THRESHOLDS {
        (lo..=hi).collect()
    } else {
        (0..SWEEP_THRESHOLDS)
            .map(|i| lo + i * span / (SWEEP_THRESHOLDS - 1))
            .collect()
    };
    let k = thresholds
        .iter()
        .copied()
        .min_by_key(|&k| (prefix_width[k], k))
        .ok_or_else(|| Error::OracleFailure("no feasible sweep threshold".into()))?;

    let mut side = vec![false; n];
    for &v in &order[..k] {
        side[v] = true;
    }
    refine(g, &mut side, cap);

    if !side[0] {
        side.iter_mut().for_each(|s| *s = !*s);
    }
    let members: Vec<Vertex> = (0..n).filter(|&v| side[v]).collect();
    Ok(Cut::new(g, VertexSet::from_sorted(members)))
}

/// Second-smallest Laplacian eigenvector by power iteration on `c I - L`,
/// with the constant vector projected out every round.
fn fiedler_vector(g: &Graph, seed: u64) -> Result<Vec<f64>> {
    let n = g.n();
    let shift = 2.0 * g.max_degree() as f64 + 1.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    if !normalize(&mut x) {
        x = (0..n).map(|i| i as f64).collect();
        normalize(&mut x);
    }
    let mut y = vec![0.0; n];
    for _ in 0..POWER_ITERATIONS {
        for v in 0..n {
            let nb: f64 = g.neighbors(v).iter().map(|&w| x[w]).sum();
            y[v] = (shift - g.degree(v) as f64) * x[v] + nb;
        }
        std::mem::swap(&mut x, &mut y);
        if !normalize(&mut x) {
            return Err(Error::OracleFailure("power iteration collapsed".into()));
        }
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::OracleFailure("non-finite Fiedler vector".into()));
    }
    Ok(x)
}

/// Centre and scale to unit length; false when the vector vanishes.
fn normalize(x: &mut [f64]) -> bool {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= mean);
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm.is_nan() || norm <= 1e-12 {
        return false;
    }
    x.iter_mut().for_each(|v| *v /= norm);
    true
}

/// Best-improvement local search over single moves and boundary swaps.
fn refine(g: &Graph, side: &mut [bool], cap: usize) {
    let n = g.n();
    let mut size = side.iter().filter(|&&s| s).count();
    // gain of moving v = external - internal degree
    let gain = |side: &[bool], v: Vertex| -> isize {
        g.neighbors(v)
            .iter()
            .map(|&w| if side[w] != side[v] { 1 } else { -1 })
            .sum()
    };
    for _ in 0..4 * n {
        let gains: Vec<isize> = (0..n).map(|v| gain(side, v)).collect();
        let mut best: Option<(isize, Vertex, Option<Vertex>)> = None;
        for v in 0..n {
            let new_size = if side[v] { size - 1 } else { size + 1 };
            if new_size == 0 || new_size == n || new_size > cap || n - new_size > cap {
                continue;
            }
            if gains[v] > 0 && best.is_none_or(|(b, _, _)| gains[v] > b) {
                best = Some((gains[v], v, None));
            }
        }
        let boundary: Vec<Vertex> = (0..n)
            .filter(|&v| g.neighbors(v).iter().any(|&w| side[w] != side[v]))
            .collect();
        for (i, &u) in boundary.iter().enumerate() {
            for &v in &boundary[i + 1..] {
                if side[u] == side[v] {
                    continue;
                }
                let total = gains[u] + gains[v] - if g.has_edge(u, v) { 2 } else { 0 };
                if total > 0 && best.is_none_or(|(b, _, _)| total > b) {
                    best = Some((total, u, Some(v)));
                }
            }
        }
        let Some((_, u, other)) = best else { break };
        for v in std::iter::once(u).chain(other) {
            size = if side[v] { size - 1 } else { size + 1 };
            side[v] = !side[v];
        }
    }
}

/// Exact edge expansion with the set attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionCertificate {
    #[serde(with = "rational::num_den")]
    pub value: Rational,
    /// Smaller side of an optimal split.
    pub witness: VertexSet,
}

impl ExpansionCertificate {
    /// Recompute `e(A, V \ A) / min(|A|, |V \ A|)` for the witness.
    pub fn recompute(&self, g: &Graph) -> Rational {
        let a = self.witness.len();
        let den = a.min(g.n() - a);
        rational::ratio(g.crossing_edges(&self.witness).len(), den)
    }
}

/// `min_A e(A, V \ A) / min(|A|, |V \ A|)` over nonempty proper subsets `A`.
pub fn edge_expansion_exact(g: &Graph) -> Result<ExpansionCertificate> {
    let n = g.n();
    if n < 2 {
        return Err(Error::SingleVertex);
    }
    check_exact_size(n, limits().exact, 2)?;
    let (w, d, witness) = bits::expansion(&g.masks(), full_mask(n));
    Ok(ExpansionCertificate {
        value: rational::ratio(w, d),
        witness: VertexSet::from_mask(witness),
    })
}

/// Outcome of [`extract_expander`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpanderExtraction {
    pub vertices: VertexSet,
    pub certified: bool,
    /// Exact expansion of the retained induced subgraph.
    pub expansion: Option<ExpansionCertificate>,
    /// Sparse sets peeled off, in removal order.
    pub removed: Vec<VertexSet>,
}

/// Repeatedly peel off the smallest sparse set: while some `A` with
/// `|A| <= |U|/2` has `e(A, U \ A) < target * |A|` inside `G[U]`, remove the
/// smallest such `A` (lexicographically first among equals).
pub fn extract_expander(g: &Graph, target: Rational) -> Result<ExpanderExtraction> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    check_exact_size(n, limits().exact, 2)?;
    if target < Rational::from_integer(0) {
        return Err(Error::InvalidParams(
            "target expansion must be nonnegative".into(),
        ));
    }
    let adj = g.masks();
    let (num, den) = (*target.numer() as u64, *target.denom() as u64);
    let mut current = full_mask(n);
    let mut removed = Vec::new();

    while let Some(a) = smallest_sparse_set(&adj, current, num, den) {
        current &= !a;
        removed.push(VertexSet::from_mask(a));
    }

    let vertices = VertexSet::from_mask(current);
    if vertices.len() < 2 {
        if num > 0 {
            return Err(Error::Exhausted);
        }
        return Ok(ExpanderExtraction {
            vertices,
            certified: true,
            expansion: None,
            removed,
        });
    }
    let (w, d, witness) = bits::expansion(&adj, current);
    let beta = rational::ratio(w, d);
    Ok(ExpanderExtraction {
        vertices,
        certified: beta >= target,
        expansion: Some(ExpansionCertificate {
            value: beta,
            witness: VertexSet::from_mask(witness),
        }),
        removed,
    })
}

fn smallest_sparse_set(adj: &[u64], within: u64, num: u64, den: u64) -> Option<u64> {
    let k = popcount(within);
    let free: Vec<Vertex> = bits::bit_iter(within).collect();
    let mut best: Option<u64> = None;
    bits::for_each_subset(adj, within, 0, &free, |s, w| {
        let size = popcount(s);
        if size == 0 || 2 * size > k || (w as u64) * den >= num * size as u64 {
            return;
        }
        let better = match best {
            None => true,
            Some(b) => size < popcount(b) || (size == popcount(b) && bits::lex_less(s, b)),
        };
        if better {
            best = Some(s);
        }
    });
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::edge;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| edge(i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn barbell() -> Graph {
        Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap()
    }

    /// Independent enumeration over explicit vertex lists.
    fn brute_min_cut(g: &Graph, feasible: impl Fn(usize) -> bool) -> usize {
        let n = g.n();
        (1u64..(1 << n) - 1)
            .filter(|&m| feasible(m.count_ones() as usize))
            .map(|m| g.crossing_edges(&VertexSet::from_mask(m)).len())
            .min()
            .unwrap()
    }

    #[test]
    fn bisection_examples() {
        let p5 = bisection_exact(&path(5)).unwrap();
        assert_eq!(p5.width(), 1);
        assert_eq!(p5.side.len(), 2);

        assert_eq!(bisection_exact(&cycle(6)).unwrap().width(), 2);

        let k4 = bisection_exact(&complete(4)).unwrap();
        assert_eq!(k4.width(), 4);
        assert_eq!(k4.side.as_slice(), &[0, 1]);

        assert_eq!(
            bisection_exact(&Graph::empty(1).unwrap()),
            Err(Error::TooSmall { n: 1, min: 2 })
        );
        assert!(matches!(
            bisection_exact(&path(25)),
            Err(Error::TooLarge { n: 25, .. })
        ));
    }

    #[test]
    fn bisection_matches_brute_force() {
        for g in [path(7), cycle(7), complete(6), barbell()] {
            let n = g.n();
            let b = brute_min_cut(&g, |s| s <= n.div_ceil(2) && n - s <= n.div_ceil(2));
            assert_eq!(bisection_exact(&g).unwrap().width(), b);
        }
    }

    #[test]
    fn balanced_cut_examples() {
        let p4 = balanced_cut_exact(&path(4)).unwrap();
        assert_eq!(p4.width(), 1);
        assert_eq!(p4.side.as_slice(), &[0]);

        let k5 = balanced_cut_exact(&complete(5)).unwrap();
        // 1|4 is within ceil(10/3) = 4, so a single vertex beats the bisection
        assert_eq!(k5.width(), 4);
        assert_eq!(k5.side.as_slice(), &[0]);

        let c6 = balanced_cut_spectral(&cycle(6), 7).unwrap();
        assert_eq!(c6.width(), 2);
        assert_eq!(c6.width(), bisection_exact(&cycle(6)).unwrap().width());
    }

    #[test]
    fn balanced_cut_tiny_graphs() {
        let k2 = complete(2);
        for cut in [
            balanced_cut_exact(&k2).unwrap(),
            balanced_cut_spectral(&k2, 0).unwrap(),
        ] {
            assert_eq!(cut.side.as_slice(), &[0]);
            assert_eq!(cut.width(), 1);
        }
        assert!(balanced_cut_spectral(&Graph::empty(1).unwrap(), 0).is_err());
    }

    #[test]
    fn balanced_cut_respects_cap() {
        for g in [path(9), cycle(8), complete(7), barbell()] {
            let n = g.n();
            let cap = balance_cap(n);
            let brute = brute_min_cut(&g, |s| s <= cap && n - s <= cap);
            let exact = balanced_cut_exact(&g).unwrap();
            assert_eq!(exact.width(), brute);
            for cut in [exact, balanced_cut_spectral(&g, 3).unwrap()] {
                let (a, b) = cut.sides(n);
                assert!(a >= 1 && b >= 1 && a <= cap && b <= cap);
                assert!(cut.side.contains(0));
            }
        }
    }

    #[test]
    fn spectral_is_seed_deterministic() {
        let g = barbell();
        assert_eq!(
            balanced_cut_spectral(&g, 11).unwrap(),
            balanced_cut_spectral(&g, 11).unwrap()
        );
        assert_eq!(balanced_cut_spectral(&g, 11).unwrap().width(), 1);
    }

    #[test]
    fn expansion_examples() {
        let k2 = edge_expansion_exact(&complete(2)).unwrap();
        assert_eq!(k2.value, Rational::from_integer(1));

        let k4 = edge_expansion_exact(&complete(4)).unwrap();
        assert_eq!(k4.value, Rational::from_integer(2));
        assert_eq!(k4.recompute(&complete(4)), k4.value);

        let c6 = edge_expansion_exact(&cycle(6)).unwrap();
        assert_eq!(c6.value, Rational::new(2, 3));
        assert_eq!(c6.witness.len(), 3);
        assert_eq!(c6.recompute(&cycle(6)), c6.value);

        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            edge_expansion_exact(&split).unwrap().value,
            Rational::from_integer(0)
        );

        assert_eq!(
            edge_expansion_exact(&Graph::empty(1).unwrap()),
            Err(Error::SingleVertex)
        );
    }

    #[test]
    fn expansion_matches_brute_force() {
        for g in [path(6), cycle(7), complete(5), barbell()] {
            let n = g.n();
            let best = (1u64..(1 << n) - 1)
                .map(|m| {
                    let a = VertexSet::from_mask(m);
                    rational::ratio(g.crossing_edges(&a).len(), a.len().min(n - a.len()))
                })
                .min()
                .unwrap();
            assert_eq!(edge_expansion_exact(&g).unwrap().value, best);
        }
    }

    #[test]
    fn extract_expander_examples() {
        let k4 = extract_expander(&complete(4), Rational::from_integer(1)).unwrap();
        assert_eq!(k4.vertices, VertexSet::full(4));
        assert!(k4.certified);
        assert_eq!(k4.expansion.unwrap().value, Rational::from_integer(2));

        let c6 = extract_expander(&cycle(6), Rational::new(2, 6)).unwrap();
        assert_eq!(c6.vertices, VertexSet::full(6));
        assert!(c6.certified);

        let bb = extract_expander(&barbell(), Rational::new(1, 6)).unwrap();
        assert_eq!(bb.vertices, VertexSet::full(6));
        assert!(bb.certified);
        assert_eq!(bb.expansion.unwrap().value, Rational::new(1, 3));
    }

    #[test]
    fn extract_expander_peels_sparse_pieces() {
        // K4 with a pendant path 3-4-5
        let g = Graph::from_edges(
            6,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 4),
                (4, 5),
            ],
        )
        .unwrap();
        let out = extract_expander(&g, Rational::from_integer(1)).unwrap();
        assert_eq!(out.removed, vec![VertexSet::from_sorted(vec![4, 5])]);
        assert_eq!(out.vertices.as_slice(), &[0, 1, 2, 3]);
        assert!(out.certified);
    }

    #[test]
    fn extract_expander_exhausts_on_unreachable_target() {
        assert_eq!(
            extract_expander(&path(4), Rational::from_integer(5)),
            Err(Error::Exhausted)
        );
    }
}
