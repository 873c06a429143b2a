//! Vertex orderings and the decompositions they induce.
//!
//! A *layout* `v_1, ..., v_n` gives the path decomposition with bags
//! `{v_i} ∪ ∂(S_{i-1})`, where `S_i` is the prefix and `∂S` the vertices of
//! `S` with a neighbour outside `S`. An *elimination ordering* gives the tree
//! decomposition with bags `{v_i} ∪ Q(S_{i-1}, v_i)`, where `Q(S, v)` is the
//! set of vertices outside `S ∪ {v}` reachable from `v` through `S`.

use crate::decomposition::Decomposition;
use crate::graph::Graph;
use crate::VertexSet;

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            v
        })
    })
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// `∂S`: members of `s` with a neighbour outside `s`.
pub(crate) fn boundary(adj: &[u64], s: u64) -> u64 {
    let outside = full_mask(adj.len()) & !s;
    bits(s).filter(|&v| adj[v] & outside != 0).fold(0, |acc, v| acc | 1 << v)
}

/// `Q(S, v)` for `v ∉ S`.
pub(crate) fn elimination_reach(adj: &[u64], s: u64, v: usize) -> u64 {
    let mut seen = 1u64 << v;
    let mut frontier = seen;
    let mut reach = 0;
    while frontier != 0 {
        let nb = bits(frontier).fold(0, |acc, u| acc | adj[u]);
        reach |= nb & !s;
        frontier = nb & s & !seen;
        seen |= frontier;
    }
    reach & !(1u64 << v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Style {
    /// Layouts and path decompositions.
    Path,
    /// Elimination orderings and tree decompositions.
    Tree,
}

/// Bag introduced when `v` follows the prefix `s`.
pub(crate) fn bag_after(adj: &[u64], style: Style, s: u64, v: usize) -> u64 {
    let rest = match style {
        Style::Path => boundary(adj, s),
        Style::Tree => elimination_reach(adj, s, v),
    };
    rest | 1 << v
}

/// Bags of an ordering, one per position.
pub(crate) fn ordering_bags(adj: &[u64], style: Style, order: &[usize]) -> Vec<u64> {
    let mut s = 0u64;
    order
        .iter()
        .map(|&v| {
            let bag = bag_after(adj, style, s, v);
            s |= 1 << v;
            bag
        })
        .collect()
}

/// The decomposition of an ordering, with nested neighbouring bags contracted.
pub(crate) fn decomposition_from_ordering(g: &Graph, style: Style, order: &[usize]) -> Decomposition {
    let adj = g.adjacency_masks().expect("orderings are only built for n <= 64");
    let bags = ordering_bags(&adj, style, order);
    let sets: Vec<VertexSet> = bags.iter().map(|&b| VertexSet::from_mask(b)).collect();
    match style {
        Style::Path => Decomposition::path(sets).normalized(),
        Style::Tree => {
            let n = order.len();
            let mut position = vec![0; adj.len()];
            for (i, &v) in order.iter().enumerate() {
                position[v] = i;
            }
            // each bag hangs below the bag of the first-eliminated vertex of
            // its reach set, or below the last bag
            let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1))
                .map(|i| {
                    let rest = bags[i] & !(1u64 << order[i]);
                    let parent = bits(rest).map(|u| position[u]).min().unwrap_or(n - 1);
                    (i, parent)
                })
                .collect();
            let host = Graph::from_edges(n, edges).expect("parents come later in the ordering");
            Decomposition::tree(host, sets).expect("one bag per node").normalized()
        }
    }
}

/// Optimal ordering by dynamic programming over prefixes:
/// `f(S) = min_{v ∈ S} max(f(S \ v), |bag_after(S \ v, v)|)`.
/// Returns the optimal largest bag and an ordering attaining it; among
/// optimal choices the smallest vertex is placed last at every step.
pub(crate) fn optimal_ordering(adj: &[u64], style: Style) -> (usize, Vec<usize>) {
    let n = adj.len();
    if n == 0 {
        return (0, Vec::new());
    }
    let size = 1usize << n;
    let mut f = vec![0u8; size];
    for s in 1..size as u64 {
        f[s as usize] = bits(s)
            .map(|v| {
                let prev = s & !(1u64 << v);
                f[prev as usize].max(bag_after(adj, style, prev, v).count_ones() as u8)
            })
            .min()
            .unwrap();
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full_mask(n);
    while s != 0 {
        let target = f[s as usize];
        let v = bits(s)
            .find(|&v| {
                let prev = s & !(1u64 << v);
                f[prev as usize].max(bag_after(adj, style, prev, v).count_ones() as u8) == target
            })
            .expect("the optimum is attained");
        order.push(v);
        s &= !(1u64 << v);
    }
    order.reverse();
    (f[full_mask(n) as usize] as usize, order)
}

/// Greedy ordering: repeatedly append the vertex whose new bag is smallest
/// (ties to the smallest vertex). Used only for upper bounds.
pub(crate) fn greedy_ordering(adj: &[u64], style: Style) -> (usize, Vec<usize>) {
    let n = adj.len();
    let mut s = 0u64;
    let mut order = Vec::with_capacity(n);
    let mut width = 0;
    for _ in 0..n {
        let remaining = full_mask(n) & !s;
        let (_, v) = bits(remaining)
            .map(|v| {
                let score = match style {
                    Style::Path => boundary(adj, s | 1 << v).count_ones() as usize,
                    Style::Tree => elimination_reach(adj, s, v).count_ones() as usize,
                };
                (score, v)
            })
            .min()
            .unwrap();
        width = width.max(bag_after(adj, style, s, v).count_ones() as usize);
        order.push(v);
        s |= 1 << v;
    }
    (width, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn all_orders(n: usize) -> Vec<Vec<usize>> {
        fn go(cur: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for v in 0..n {
                if !cur.contains(&v) {
                    cur.push(v);
                    go(cur, n, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), n, &mut out);
        out
    }

    #[test]
    fn dp_matches_all_orders() {
        for bits_seed in [0u64, 0x5a5a, 0xffff, 0x1234_5678, 0xdead_beef] {
            let g = generators::random_gnp_bits(6, bits_seed);
            let adj = g.adjacency_masks().unwrap();
            for style in [Style::Path, Style::Tree] {
                let brute = all_orders(6)
                    .iter()
                    .map(|o| ordering_bags(&adj, style, o).iter().map(|b| b.count_ones()).max().unwrap())
                    .min()
                    .unwrap() as usize;
                let (w, order) = optimal_ordering(&adj, style);
                assert_eq!(w, brute);
                let d = decomposition_from_ordering(&g, style, &order);
                assert_eq!(d.validate(&g), Ok(()));
                assert_eq!(d.width().max_bag, w);
                let (gw, gorder) = greedy_ordering(&adj, style);
                assert!(gw >= w);
                assert_eq!(decomposition_from_ordering(&g, style, &gorder).validate(&g), Ok(()));
            }
        }
    }

    #[test]
    fn reach_sets() {
        let p4 = generators::path(4);
        let adj = p4.adjacency_masks().unwrap();
        // eliminating 2 after {1}: reach through 1 gets 0, directly 3
        assert_eq!(elimination_reach(&adj, 0b0010, 2), 0b1001);
        assert_eq!(boundary(&adj, 0b0011), 0b0010);
    }
}
