//! Enumeration of all inclusion-minimal interval completions (for the
//! lattice hierarchy) or chordal completions (for the median hierarchy).
//!
//! The largest transversal intersection of decompositions `D^1, ..., D^i`
//! equals `ω(H^1 ∩ ... ∩ H^i)`, where `H^j` joins two vertices whenever they
//! share a bag of `D^j`. Shrinking any `H^j` to a minimal completion never
//! hurts, and every minimal interval (chordal) completion is the graph of
//! some layout (elimination ordering), so the search runs over those graphs.
//!
//! The enumeration walks prefixes level by level. A state is a prefix set
//! plus the edges created so far; the bags still to come depend only on the
//! prefix set, so a state whose edges contain another state's edges (same
//! prefix) can be dropped.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::ordering::{bag_after, bits, Style};
use crate::cliques::clique_number_masks;

/// Edge sets on at most 16 vertices; pair `u < v` is bit `v(v-1)/2 + u`.
pub(crate) type EdgeBits = u128;

pub(crate) fn pair_bit(u: usize, v: usize) -> EdgeBits {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    1u128 << (v * (v - 1) / 2 + u)
}

pub(crate) fn clique_bits(mask: u64) -> EdgeBits {
    let mut out = 0;
    for v in bits(mask) {
        for u in bits(mask & ((1u64 << v) - 1)) {
            out |= pair_bit(u, v);
        }
    }
    out
}

pub(crate) fn all_pairs(n: usize) -> EdgeBits {
    clique_bits(super::ordering::full_mask(n))
}

#[cfg(test)]
pub(crate) fn edge_bits_of(adj: &[u64]) -> EdgeBits {
    let mut out = 0;
    for (v, &nb) in adj.iter().enumerate() {
        for u in bits(nb & ((1u64 << v) - 1)) {
            out |= pair_bit(u, v);
        }
    }
    out
}

pub(crate) fn masks_of(n: usize, edges: EdgeBits) -> Vec<u64> {
    let mut adj = vec![0u64; n];
    for v in 0..n {
        for u in 0..v {
            if edges & pair_bit(u, v) != 0 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
    }
    adj
}

pub(crate) fn omega(n: usize, edges: EdgeBits) -> usize {
    clique_number_masks(&masks_of(n, edges))
}

/// One minimal completion with the least ordering (lexicographically) that
/// produces it among those the enumeration kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Completion {
    pub edges: EdgeBits,
    pub order: Vec<u8>,
    pub omega: usize,
}

#[derive(Clone, Debug)]
struct State {
    prefix: u64,
    edges: EdgeBits,
    order: Vec<u8>,
}

/// Keeps the ⊆-minimal edge sets of one prefix; equal sets keep the least
/// ordering. Input order does not affect the result.
fn minimal_states(mut states: Vec<State>) -> Vec<State> {
    states.sort_by(|a, b| {
        a.edges.count_ones().cmp(&b.edges.count_ones()).then(a.edges.cmp(&b.edges)).then(a.order.cmp(&b.order))
    });
    let mut kept: Vec<State> = Vec::new();
    for s in states {
        if kept.iter().any(|k| k.edges & s.edges == k.edges) {
            continue;
        }
        kept.push(s);
    }
    kept
}

/// All minimal completions of the graph with neighbourhood masks `adj`,
/// sorted by (ω, edge count, edge bits). `style` selects interval
/// completions (`Path`) or chordal completions (`Tree`).
pub(crate) fn minimal_completions(adj: &[u64], style: Style, parallel: bool) -> Vec<Completion> {
    let n = adj.len();
    assert!(n <= 16, "edge sets are stored in 128 bits");
    let mut level = vec![State { prefix: 0, edges: 0, order: Vec::new() }];
    for _ in 0..n {
        let expand = |s: &State| -> Vec<State> {
            let full = super::ordering::full_mask(n);
            bits(full & !s.prefix)
                .map(|v| {
                    let bag = bag_after(adj, style, s.prefix, v);
                    let mut order = s.order.clone();
                    order.push(v as u8);
                    State { prefix: s.prefix | 1 << v, edges: s.edges | clique_bits(bag), order }
                })
                .collect()
        };
        let candidates: Vec<State> = if parallel {
            level.par_iter().flat_map_iter(expand).collect()
        } else {
            level.iter().flat_map(expand).collect()
        };
        let mut groups: BTreeMap<u64, Vec<State>> = BTreeMap::new();
        for c in candidates {
            groups.entry(c.prefix).or_default().push(c);
        }
        let groups: Vec<Vec<State>> = groups.into_values().collect();
        level = if parallel {
            groups.into_par_iter().flat_map_iter(minimal_states).collect()
        } else {
            groups.into_iter().flat_map(minimal_states).collect()
        };
    }
    let mut out: Vec<Completion> = level
        .into_iter()
        .map(|s| Completion { omega: omega(n, s.edges), edges: s.edges, order: s.order })
        .collect();
    out.sort_by(|a, b| {
        a.omega
            .cmp(&b.omega)
            .then(a.edges.count_ones().cmp(&b.edges.count_ones()))
            .then(a.edges.cmp(&b.edges))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn cycle_completions() {
        // minimal triangulations of C4: the two chords
        let adj = generators::cycle(4).adjacency_masks().unwrap();
        let fam = minimal_completions(&adj, Style::Tree, false);
        assert_eq!(fam.len(), 2);
        assert!(fam.iter().all(|c| c.omega == 3 && c.edges.count_ones() == 5));
        // minimal triangulations of C5: one per apex, five in total
        let adj = generators::cycle(5).adjacency_masks().unwrap();
        assert_eq!(minimal_completions(&adj, Style::Tree, false).len(), 5);
        // a path is its own interval completion
        let adj = generators::path(4).adjacency_masks().unwrap();
        let fam = minimal_completions(&adj, Style::Path, false);
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].edges, edge_bits_of(&adj));
    }

    #[test]
    fn parallel_is_identical() {
        let g = generators::random_gnp(8, 0.4, 11);
        let adj = g.adjacency_masks().unwrap();
        for style in [Style::Path, Style::Tree] {
            assert_eq!(minimal_completions(&adj, style, false), minimal_completions(&adj, style, true));
        }
    }

    #[test]
    fn edge_bit_round_trip() {
        let g = generators::random_gnp(9, 0.5, 2);
        let adj = g.adjacency_masks().unwrap();
        assert_eq!(masks_of(9, edge_bits_of(&adj)), adj);
        assert_eq!(all_pairs(5).count_ones(), 10);
        assert_eq!(omega(5, all_pairs(5)), 5);
    }
}
