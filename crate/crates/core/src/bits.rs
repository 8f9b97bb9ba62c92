//! Bitmask kernels shared by the exhaustive searches. Vertex `v` is bit `v`.

#[inline]
pub(crate) fn popcount(x: u64) -> usize {
    x.count_ones() as usize
}

/// `e(S, W \ S)` counted inside the vertex set `W`.
#[inline]
pub(crate) fn cut_width(adj: &[u64], s: u64, within: u64) -> usize {
    let outside = within & !s;
    bit_iter(s).map(|v| popcount(adj[v] & outside)).sum()
}

pub(crate) fn bit_iter(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let v = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(v)
        }
    })
}

/// Lexicographic order on the sorted member lists of two sets.
#[inline]
pub(crate) fn lex_less(a: u64, b: u64) -> bool {
    if a == b {
        return false;
    }
    let d = a ^ b;
    let low = d & d.wrapping_neg();
    let at_or_above = !(low - 1);
    if a & low != 0 {
        // b continues with something larger than `low`, or stops here
        b & at_or_above != 0
    } else {
        a & at_or_above == 0
    }
}

/// Visit every `S` with `fixed ⊆ S ⊆ fixed ∪ free` in Gray-code order,
/// passing `e(S, within \ S)` maintained incrementally.
pub(crate) fn for_each_subset<F>(adj: &[u64], within: u64, fixed: u64, free: &[usize], mut visit: F)
where
    F: FnMut(u64, usize),
{
    debug_assert!(free.len() < 64);
    let mut s = fixed;
    let mut width = cut_width(adj, s, within) as i64;
    visit(s, width as usize);
    let total: u64 = 1u64 << free.len();
    for i in 1..total {
        let v = free[i.trailing_zeros() as usize];
        let bit = 1u64 << v;
        let nb = adj[v] & within;
        if s & bit == 0 {
            width += popcount(nb & !s) as i64 - popcount(nb & s) as i64;
            s |= bit;
        } else {
            s &= !bit;
            width -= popcount(nb & !s) as i64 - popcount(nb & s) as i64;
        }
        visit(s, width as usize);
    }
}

/// Minimum bisection of `G[within]`: `|S| = floor(k/2)`, ties to the
/// lexicographically smallest `S`. Requires `|within| >= 2`.
pub(crate) fn bisection(adj: &[u64], within: u64) -> (usize, u64) {
    let k = popcount(within);
    debug_assert!(k >= 2);
    let half = k / 2;
    let free: Vec<usize> = bit_iter(within).collect();
    let mut best: Option<(usize, u64)> = None;
    for_each_subset(adj, within, 0, &free, |s, w| {
        if popcount(s) != half {
            return;
        }
        best = match best {
            Some((bw, bs)) if bw < w || (bw == w && !lex_less(s, bs)) => Some((bw, bs)),
            _ => Some((w, s)),
        };
    });
    best.expect("a set with at least two vertices has a bisection")
}

/// Exact edge expansion of `G[within]` as `(crossing, smaller side, witness)`.
/// The witness is the smaller side of an optimal split. Requires `|within| >= 2`.
pub(crate) fn expansion(adj: &[u64], within: u64) -> (usize, usize, u64) {
    let k = popcount(within);
    debug_assert!(k >= 2);
    let top = 63 - within.leading_zeros() as usize;
    let free: Vec<usize> = bit_iter(within & !(1u64 << top)).collect();
    let mut best: Option<(usize, usize, u64)> = None;
    for_each_subset(adj, within, 0, &free, |s, w| {
        if s == 0 {
            return;
        }
        let size = popcount(s);
        let (den, witness) = if 2 * size <= k {
            (size, s)
        } else {
            (k - size, within & !s)
        };
        let better = match best {
            None => true,
            Some((bw, bd, _)) => (w as u64) * (bd as u64) < (bw as u64) * (den as u64),
        };
        if better {
            best = Some((w, den, witness));
        }
    });
    best.expect("a set with at least two vertices has a proper subset")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_members(x: u64) -> Vec<usize> {
        bit_iter(x).collect()
    }

    #[test]
    fn lex_less_matches_vec_ordering() {
        for a in 0u64..64 {
            for b in 0u64..64 {
                assert_eq!(
                    lex_less(a, b),
                    sorted_members(a) < sorted_members(b),
                    "{a:b} {b:b}"
                );
            }
        }
    }

    #[test]
    fn gray_widths_match_direct_count() {
        // C5 plus chord 0-2
        let mut adj = vec![0u64; 5];
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2)] {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let within = 0b11111;
        let free = [0, 1, 2, 3, 4];
        let mut visited = 0;
        for_each_subset(&adj, within, 0, &free, |s, w| {
            assert_eq!(w, cut_width(&adj, s, within));
            visited += 1;
        });
        assert_eq!(visited, 32);
        // restricted to a subset
        let within = 0b01111;
        for_each_subset(&adj, within, 0b1, &[1, 2, 3], |s, w| {
            assert_eq!(w, cut_width(&adj, s, within));
        });
    }
}
