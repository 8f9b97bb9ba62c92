//! Lower bounds on the spanning tree congestion, each carried as an exact
//! rational together with the witness that reproduces it.
//!
//! Three certificates are produced:
//!
//! * **Subgraph expansion.** Let `T` be any spanning tree and `H` a vertex
//!   set with `n' = |H|`. Mark `H` in `T` and take a vertex `z` whose removal
//!   leaves at most `n'/2` marks per component ([`marked_centroid`]). The
//!   components hold at least `n' - 1` marks between them (`z` may be marked)
//!   and there are at most `Δ` of them, so one component `C` holds at least
//!   `(n' - 1)/Δ` marks, and never more than half. Every edge of `G[H]`
//!   leaving `C` runs through the single tree edge joining `C` to `z`, so
//!   `c(G, T) >= β(G[H]) · (n' - 1) / Δ`.
//!
//!   The `n' - 1` matters: with `n'` in its place the inequality fails on the
//!   path with three vertices (`β = 1`, `Δ = 2`, yet the tree itself has
//!   congestion 1).
//!
//! * **Hereditary bisection.** `c(G, T) >= 2 · hb(G) / (3 Δ)`, where `hb(G)`
//!   is the largest bisection width of any subgraph of `G`.
//!
//! * **Averaging.** The `m` host edges each load at least one of the `n - 1`
//!   tree edges, so some tree edge carries `ceil(m / (n - 1))`.
//!
//! # Induced subgraphs suffice for `hb`
//!
//! A subgraph `H` and the induced subgraph `G[V(H)]` share their vertex set,
//! hence their feasible bisections; the induced one has a superset of the
//! edges, so each bisection is at least as wide in it. Thus
//! `b(H) <= b(G[V(H)])` and the maximum over all subgraphs is attained by an
//! induced one. [`hereditary_bisection_exact`] searches only those.
//!
//! [`marked_centroid`]: crate::spantree::marked_centroid

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::{self, popcount};
use crate::cuts::ExpansionCertificate;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::limits::{limits, HARD_CAP};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    LemmaLb1,
    CorollaryLb2,
    Averaging,
}

impl BoundKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::LemmaLb1 => "lemma_lb1",
            BoundKind::CorollaryLb2 => "corollary_lb2",
            BoundKind::Averaging => "averaging",
        }
    }
}

/// `hb(G)` with the induced subgraph attaining it and an optimal bisection
/// side inside that subgraph (original vertex ids).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HereditaryBisection {
    pub value: usize,
    pub witness: VertexSet,
    pub side: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub kind: BoundKind,
    #[serde(with = "rational::num_den")]
    pub value: Rational,
    pub max_degree: usize,
    /// `H` for expansion certificates.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subgraph: Option<VertexSet>,
    /// Expansion of `G[H]`, witness in original ids.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expansion: Option<ExpansionCertificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hereditary: Option<HereditaryBisection>,
}

/// `β · (n' - 1) / Δ`.
pub fn lemma1_value(beta: Rational, size: usize, max_degree: usize) -> Rational {
    beta * rational::ratio(size.saturating_sub(1), max_degree)
}

/// `2 · hb / (3 Δ)`.
pub fn corollary_value(hb: usize, max_degree: usize) -> Rational {
    rational::ratio(2 * hb, 3 * max_degree)
}

fn check_subset(g: &Graph, h: &VertexSet) -> Result<()> {
    match h.as_slice().last() {
        None => Err(Error::EmptySet),
        Some(&v) if v >= g.n() => Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        }),
        _ => Ok(()),
    }
}

fn delta(g: &Graph) -> Result<usize> {
    match g.max_degree() {
        0 => Err(Error::EdgelessGraph),
        d => Ok(d),
    }
}

/// Subgraph-expansion certificate for the given `H`. A single vertex gives 0.
pub fn lemma1_bound(g: &Graph, h: &VertexSet) -> Result<BoundCertificate> {
    check_subset(g, h)?;
    let max_degree = delta(g)?;
    let limit = limits().exact.min(HARD_CAP);
    if h.len() > limit {
        return Err(Error::TooLarge { n: h.len(), limit });
    }
    let expansion = expansion_of(g, h);
    let beta = expansion
        .as_ref()
        .map_or(Rational::from_integer(0), |e| e.value);
    Ok(BoundCertificate {
        kind: BoundKind::LemmaLb1,
        value: lemma1_value(beta, h.len(), max_degree),
        max_degree,
        subgraph: Some(h.clone()),
        expansion,
        hereditary: None,
    })
}

/// Exact expansion of `G[h]`, `None` for a single vertex.
fn expansion_of(g: &Graph, h: &VertexSet) -> Option<ExpansionCertificate> {
    if h.len() < 2 {
        return None;
    }
    let (sub, map) = g.induced_subgraph(h).expect("validated subset");
    let masks = sub.masks();
    let (w, d, witness) = bits::expansion(&masks, (1u64 << sub.n()) - 1);
    Some(ExpansionCertificate {
        value: rational::ratio(w, d),
        witness: VertexSet::from_mask(witness).lift(&map),
    })
}

/// `hb(G)`: the largest minimum-bisection width over induced subgraphs on at
/// least two vertices. Ties keep the first subgraph in mask order.
pub fn hereditary_bisection_exact(g: &Graph) -> Result<HereditaryBisection> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let limit = limits().hereditary.min(HARD_CAP);
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    let adj = g.masks();
    let mut best: Option<(usize, u64, u64)> = None;
    for h in 3u64..(1u64 << n) {
        if popcount(h) < 2 {
            continue;
        }
        let (w, side) = bits::bisection(&adj, h);
        if best.is_none_or(|(bw, _, _)| w > bw) {
            best = Some((w, h, side));
        }
    }
    let (value, h, side) = best.expect("n >= 2");
    Ok(HereditaryBisection {
        value,
        witness: VertexSet::from_mask(h),
        side: VertexSet::from_mask(side),
    })
}

pub fn corollary_bound(g: &Graph) -> Result<BoundCertificate> {
    let max_degree = delta(g)?;
    let hb = hereditary_bisection_exact(g)?;
    Ok(BoundCertificate {
        kind: BoundKind::CorollaryLb2,
        value: corollary_value(hb.value, max_degree),
        max_degree,
        subgraph: None,
        expansion: None,
        hereditary: Some(hb),
    })
}

/// `ceil(m / (n - 1))`; 0 on a single vertex.
pub fn averaging_bound(g: &Graph) -> BoundCertificate {
    let value = if g.n() < 2 {
        0
    } else {
        g.m().div_ceil(g.n() - 1)
    };
    BoundCertificate {
        kind: BoundKind::Averaging,
        value: Rational::from_integer(value as i64),
        max_degree: g.max_degree(),
        subgraph: None,
        expansion: None,
        hereditary: None,
    }
}

/// Best subgraph-expansion certificate over every vertex subset.
pub fn best_lemma1_exhaustive(g: &Graph) -> Result<BoundCertificate> {
    let n = g.n();
    let max_degree = delta(g)?;
    let limit = limits().hereditary.min(HARD_CAP);
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    let adj = g.masks();
    let mut best: Option<(Rational, u64)> = None;
    for h in 3u64..(1u64 << n) {
        let size = popcount(h);
        if size < 2 {
            continue;
        }
        let (w, d, _) = bits::expansion(&adj, h);
        let value = lemma1_value(rational::ratio(w, d), size, max_degree);
        if best.is_none_or(|(bv, _)| value > bv) {
            best = Some((value, h));
        }
    }
    let (_, h) = best.expect("an edge exists, so n >= 2");
    lemma1_bound(g, &VertexSet::from_mask(h))
}

/// Largest subset the local search will evaluate exactly.
const SEARCH_SUBSET_CAP: usize = 12;

/// Seeded hill climbing over vertex subsets grown from BFS balls; `effort`
/// caps the number of exact expansion evaluations.
pub fn best_lemma1_search(g: &Graph, effort: usize, seed: u64) -> Result<BoundCertificate> {
    let n = g.n();
    let max_degree = delta(g)?;
    let cap = SEARCH_SUBSET_CAP.min(limits().exact).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evals = 0usize;
    let eval = |h: &[Vertex], evals: &mut usize| -> Rational {
        *evals += 1;
        let set = VertexSet::new(h.to_vec(), n).expect("subset of V");
        let beta = expansion_of(g, &set).map_or(Rational::from_integer(0), |e| e.value);
        lemma1_value(beta, set.len(), max_degree)
    };

    let mut best: Option<(Rational, Vec<Vertex>)> = None;
    while evals < effort.max(1) && cap >= 2 {
        let size = rng.gen_range(2..=cap);
        let mut current = bfs_ball(g, rng.gen_range(0..n), size);
        let mut value = eval(&current, &mut evals);
        'climb: while evals < effort {
            let mut moves: Vec<(bool, Vertex)> = Vec::new();
            if current.len() < cap {
                let mut frontier: Vec<Vertex> = current
                    .iter()
                    .flat_map(|&v| g.neighbors(v).iter().copied())
                    .filter(|w| !current.contains(w))
                    .collect();
                frontier.sort_unstable();
                frontier.dedup();
                moves.extend(frontier.into_iter().map(|w| (true, w)));
            }
            if current.len() > 2 {
                moves.extend(current.iter().map(|&v| (false, v)));
            }
            moves.shuffle(&mut rng);
            for (add, v) in moves {
                if evals >= effort {
                    break 'climb;
                }
                let mut candidate = current.clone();
                if add {
                    candidate.push(v);
                } else {
                    candidate.retain(|&w| w != v);
                }
                let cv = eval(&candidate, &mut evals);
                if cv > value {
                    current = candidate;
                    value = cv;
                    continue 'climb;
                }
            }
            break;
        }
        if best.as_ref().is_none_or(|(bv, _)| value > *bv) {
            best = Some((value, current));
        }
    }
    match best {
        Some((_, h)) => lemma1_bound(g, &VertexSet::new(h, n)?),
        None => lemma1_bound(g, &VertexSet::new(vec![0], n)?),
    }
}

fn bfs_ball(g: &Graph, start: Vertex, size: usize) -> Vec<Vertex> {
    let mut seen = vec![false; g.n()];
    let mut out = vec![start];
    seen[start] = true;
    let mut i = 0;
    while i < out.len() && out.len() < size {
        let u = out[i];
        i += 1;
        for &w in g.neighbors(u) {
            if out.len() == size {
                break;
            }
            if !seen[w] {
                seen[w] = true;
                out.push(w);
            }
        }
    }
    out
}

/// Default number of expansion evaluations for [`best_certificate`].
pub const DEFAULT_EFFORT: usize = 400;

/// The strongest certificate available: averaging always, subgraph expansion
/// (exhaustive when `n` is within the hereditary limit, searched otherwise),
/// and the hereditary-bisection bound when computable. Ties keep the earlier
/// kind in that order.
pub fn best_certificate(g: &Graph, effort: usize) -> BoundCertificate {
    let mut best = averaging_bound(g);
    if g.max_degree() == 0 {
        return best;
    }
    let exhaustive = g.n() <= limits().hereditary.min(HARD_CAP);
    let lemma = if exhaustive {
        best_lemma1_exhaustive(g)
    } else {
        best_lemma1_search(g, effort, 0)
    };
    let corollary = if exhaustive {
        corollary_bound(g).ok()
    } else {
        None
    };
    for cert in lemma.ok().into_iter().chain(corollary) {
        if cert.value > best.value {
            best = cert;
        }
    }
    best
}

impl BoundCertificate {
    /// Recompute the value from the attached witness.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::VerificationFailed(format!(
                "{}: {what}",
                self.kind.as_str()
            )))
        };
        if self.max_degree != g.max_degree() {
            return fail("max degree mismatch");
        }
        match self.kind {
            BoundKind::Averaging => {
                if self.value != averaging_bound(g).value {
                    return fail("averaging value mismatch");
                }
            }
            BoundKind::LemmaLb1 => {
                let Some(h) = &self.subgraph else {
                    return fail("missing subgraph");
                };
                check_subset(g, h)?;
                let beta = match &self.expansion {
                    None if h.len() == 1 => Rational::from_integer(0),
                    None => return fail("missing expansion witness"),
                    Some(e) => {
                        if e.witness.iter().any(|v| !h.contains(*v)) || e.witness.is_empty() {
                            return fail("expansion witness outside H");
                        }
                        let (sub, map) = g.induced_subgraph(h)?;
                        let local: Vec<usize> = e
                            .witness
                            .iter()
                            .map(|v| map.binary_search(v).expect("inside H"))
                            .collect();
                        let a = VertexSet::new(local, sub.n())?;
                        let den = a.len().min(sub.n() - a.len());
                        if den == 0 {
                            return fail("expansion witness is all of H");
                        }
                        let recomputed = rational::ratio(sub.crossing_edges(&a).len(), den);
                        if recomputed != e.value {
                            return fail("expansion ratio mismatch");
                        }
                        e.value
                    }
                };
                if lemma1_value(beta, h.len(), self.max_degree) != self.value {
                    return fail("value mismatch");
                }
            }
            BoundKind::CorollaryLb2 => {
                let Some(hb) = &self.hereditary else {
                    return fail("missing hb witness");
                };
                check_subset(g, &hb.witness)?;
                if hb.side.iter().any(|v| !hb.witness.contains(*v)) {
                    return fail("bisection side outside witness");
                }
                let k = hb.witness.len();
                if hb.side.len() != k / 2 {
                    return fail("witness side is not a bisection");
                }
                let (sub, map) = g.induced_subgraph(&hb.witness)?;
                let local: Vec<usize> = hb
                    .side
                    .iter()
                    .map(|v| map.binary_search(v).expect("inside witness"))
                    .collect();
                let width = sub.crossing_edges(&VertexSet::new(local, sub.n())?).len();
                if width != hb.value {
                    return fail("bisection width mismatch");
                }
                if corollary_value(hb.value, self.max_degree) != self.value {
                    return fail("value mismatch");
                }
            }
        }
        Ok(())
    }
}
