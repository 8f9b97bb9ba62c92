//! Every small graph up to isomorphism.
//!
//! Graphs on `n` vertices are produced by attaching a new vertex to each
//! graph on `n - 1` vertices in every possible way and keeping one
//! representative per canonical form. Connected graphs always have a vertex
//! whose removal keeps them connected, so the connected catalog can be grown
//! from the connected catalog one size down; trees likewise grow by leaves.
//!
//! Canonical forms come from colour refinement followed by individualization
//! of the first non-singleton cell, keeping the lexicographically largest
//! adjacency code. Twins (vertices with equal neighbourhoods apart from each
//! other) are interchangeable, so only one twin per cell is individualized.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order the catalog will build (the code must fit in 64 bits).
pub const MAX_ORDER: usize = 11;

type Adj = Vec<u16>;

/// Canonical code: upper-triangle adjacency bits in `(0,1), (0,2), (1,2), (0,3)...`
/// order under the canonical labeling, most significant first.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    if g.n() > MAX_ORDER {
        return Err(Error::TooLarge {
            n: g.n(),
            limit: MAX_ORDER,
        });
    }
    let adj: Adj = (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u16, |a, &w| a | (1 << w)))
        .collect();
    Ok(canonical(&adj))
}

/// Rebuild the canonically labeled graph on `n` vertices from its code.
pub fn decode(n: usize, code: u64) -> Graph {
    let mut masks = vec![0u64; n];
    let total = n * n.saturating_sub(1) / 2;
    let mut bit = total;
    for j in 1..n {
        for i in 0..j {
            bit -= 1;
            if code >> bit & 1 == 1 {
                masks[i] |= 1 << j;
                masks[j] |= 1 << i;
            }
        }
    }
    Graph::from_masks(&masks)
}

fn canonical(adj: &[u16]) -> u64 {
    let n = adj.len();
    if n <= 1 {
        return 0;
    }
    let mut best = None;
    let cells = vec![(0..n as u8).collect::<Vec<u8>>()];
    search(adj, cells, &mut best);
    best.expect("search visits at least one leaf")
}

fn search(adj: &[u16], mut cells: Vec<Vec<u8>>, best: &mut Option<u64>) {
    refine(adj, &mut cells);
    let Some(k) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<u8> = cells.iter().map(|c| c[0]).collect();
        let code = encode(adj, &order);
        if best.is_none_or(|b| code > b) {
            *best = Some(code);
        }
        return;
    };
    let cell = &cells[k];
    let mut tried: Vec<u8> = Vec::with_capacity(cell.len());
    for &v in cell {
        if tried.iter().any(|&u| twins(adj, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..k]);
        next.push(vec![v]);
        next.push(cell.iter().copied().filter(|&u| u != v).collect());
        next.extend_from_slice(&cells[k + 1..]);
        search(adj, next, best);
    }
}

#[inline]
fn twins(adj: &[u16], u: u8, v: u8) -> bool {
    let (bu, bv) = (1u16 << u, 1u16 << v);
    adj[u as usize] & !bv == adj[v as usize] & !bu
}

/// Split cells by neighbour counts into every cell until stable. Cell order
/// is preserved and sub-cells are ordered by their count signature.
fn refine(adj: &[u16], cells: &mut Vec<Vec<u8>>) {
    let n = adj.len();
    let mut cell_mask = Vec::with_capacity(n);
    loop {
        cell_mask.clear();
        cell_mask.extend(
            cells
                .iter()
                .map(|c| c.iter().fold(0u16, |a, &v| a | (1 << v))),
        );
        let mut next: Vec<Vec<u8>> = Vec::with_capacity(n);
        let mut changed = false;
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(u64, u8)> = cell
                .iter()
                .map(|&v| {
                    let row = adj[v as usize];
                    let sig = cell_mask
                        .iter()
                        .fold(0u64, |acc, &m| (acc << 4) | (row & m).count_ones() as u64);
                    (sig, v)
                })
                .collect();
            keyed.sort_unstable();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
            changed |= keyed[0].0 != keyed[keyed.len() - 1].0;
        }
        *cells = next;
        if !changed {
            return;
        }
    }
}

fn encode(adj: &[u16], order: &[u8]) -> u64 {
    let mut code = 0u64;
    for j in 1..order.len() {
        let row = adj[order[j] as usize];
        for &i in &order[..j] {
            code = (code << 1) | (row >> i & 1) as u64;
        }
    }
    code
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams("order must be positive".into()));
    }
    if n > MAX_ORDER {
        return Err(Error::TooLarge {
            n,
            limit: MAX_ORDER,
        });
    }
    Ok(())
}

/// Grow canonical codes on `n - 1` vertices to `n`; `attach` lists the
/// neighbourhoods allowed for the new vertex.
fn extend(prev: &[u64], n: usize, attach: impl Fn(usize) -> Vec<u16>) -> Vec<u64> {
    let mut seen = HashSet::new();
    let choices = attach(n - 1);
    for &code in prev {
        let base = decode(n - 1, code);
        let mut adj: Adj = (0..n - 1)
            .map(|v| base.neighbors(v).iter().fold(0u16, |a, &w| a | (1 << w)))
            .collect();
        adj.push(0);
        let fresh = (n - 1) as u16;
        for &x in &choices {
            for (v, row) in adj[..n - 1].iter_mut().enumerate() {
                *row = (*row & !(1 << fresh)) | (((x >> v) & 1) << fresh);
            }
            adj[n - 1] = x;
            seen.insert(canonical(&adj));
        }
    }
    let mut out: Vec<u64> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

fn ladder(n: usize, attach: impl Fn(usize) -> Vec<u16>) -> Vec<u64> {
    let mut codes = vec![0u64];
    for k in 2..=n {
        codes = extend(&codes, k, &attach);
    }
    codes
}

fn decode_all(n: usize, codes: Vec<u64>) -> Vec<Graph> {
    codes.into_iter().map(|c| decode(n, c)).collect()
}

/// All graphs on `n` vertices up to isomorphism, in canonical-code order.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    check_order(n)?;
    Ok(decode_all(n, ladder(n, |k| (0..1u16 << k).collect())))
}

/// All connected graphs on `n` vertices up to isomorphism.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    check_order(n)?;
    Ok(decode_all(n, ladder(n, |k| (1..1u16 << k).collect())))
}

/// All trees on `n` vertices up to isomorphism.
pub fn trees(n: usize) -> Result<Vec<Graph>> {
    check_order(n)?;
    Ok(decode_all(
        n,
        ladder(n, |k| (0..k).map(|v| 1u16 << v).collect()),
    ))
}

/// Connected graphs on `1..=max_n` vertices, smallest first.
pub fn connected_graphs_up_to(max_n: usize) -> Result<Vec<Graph>> {
    check_order(max_n)?;
    let mut out = vec![decode(1, 0)];
    let mut codes = vec![0u64];
    for k in 2..=max_n {
        codes = extend(&codes, k, |j| (1..1u16 << j).collect());
        out.extend(codes.iter().map(|&c| decode(k, c)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    // OEIS A000088, A001349, A000055
    const ALL: [usize; 8] = [1, 2, 4, 11, 34, 156, 1044, 12346];
    const CONNECTED: [usize; 8] = [1, 1, 2, 6, 21, 112, 853, 11117];
    const TREES: [usize; 10] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];

    #[test]
    fn known_counts() {
        for n in 1..=7 {
            assert_eq!(all_graphs(n).unwrap().len(), ALL[n - 1], "all n={n}");
            assert_eq!(
                connected_graphs(n).unwrap().len(),
                CONNECTED[n - 1],
                "connected n={n}"
            );
        }
        for n in 1..=10 {
            assert_eq!(trees(n).unwrap().len(), TREES[n - 1], "trees n={n}");
        }
    }

    #[test]
    fn catalog_members_have_expected_shape() {
        for g in connected_graphs(6).unwrap() {
            assert!(g.is_connected());
        }
        for g in trees(8).unwrap() {
            assert!(g.is_connected());
            assert_eq!(g.m(), 7);
        }
        let up_to = connected_graphs_up_to(5).unwrap();
        assert_eq!(up_to.len(), 1 + 1 + 2 + 6 + 21);
    }

    #[test]
    fn code_is_a_labeling_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for g in connected_graphs(7).unwrap().iter().step_by(17) {
            let code = canonical_code(g).unwrap();
            assert_eq!(canonical_code(&decode(7, code)).unwrap(), code);
            for _ in 0..5 {
                let mut perm: Vec<usize> = (0..7).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_code(&g.permute(&perm).unwrap()).unwrap(), code);
            }
        }
    }

    #[test]
    fn order_limits() {
        assert!(all_graphs(0).is_err());
        assert!(matches!(trees(12), Err(Error::TooLarge { .. })));
    }
}
