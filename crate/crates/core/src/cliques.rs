//! Exact clique number and chromatic number by branch and bound on `u64`
//! neighbourhood masks. Both refuse graphs with more than 64 vertices.

use crate::graph::{Graph, GraphError};

/// Size of a largest clique of the graph given by neighbourhood masks.
pub fn clique_number_masks(adj: &[u64]) -> usize {
    let n = adj.len();
    if n == 0 {
        return 0;
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    expand(adj, 0, all, &mut best);
    best
}

fn expand(adj: &[u64], size: usize, mut candidates: u64, best: &mut usize) {
    if candidates == 0 {
        *best = (*best).max(size);
        return;
    }
    while candidates != 0 {
        if size + candidates.count_ones() as usize <= *best {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        expand(adj, size + 1, candidates & adj[v], best);
    }
}

/// A maximum clique as a mask.
pub fn maximum_clique_masks(adj: &[u64]) -> u64 {
    fn go(adj: &[u64], current: u64, mut candidates: u64, best: &mut u64) {
        if candidates == 0 {
            if current.count_ones() > best.count_ones() {
                *best = current;
            }
            return;
        }
        while candidates != 0 {
            if current.count_ones() + candidates.count_ones() <= best.count_ones() {
                return;
            }
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            go(adj, current | 1 << v, candidates & adj[v], best);
        }
    }
    let n = adj.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    if n > 0 {
        go(adj, 0, all, &mut best);
    }
    best
}

pub fn clique_number(g: &Graph) -> Result<usize, GraphError> {
    Ok(clique_number_masks(&g.adjacency_masks()?))
}

pub fn chromatic_number(g: &Graph) -> Result<usize, GraphError> {
    Ok(chromatic_colouring(g)?.into_iter().max().unwrap_or(0))
}

/// An optimal proper colouring with colours `1..=χ`. Among colourings
/// produced by the search the first found is returned; colour of vertex 0
/// is always 1.
pub fn chromatic_colouring(g: &Graph) -> Result<Vec<usize>, GraphError> {
    let adj = g.adjacency_masks()?;
    let n = adj.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let lower = clique_number_masks(&adj).max(1);
    let mut colours = vec![0usize; n];
    for k in lower..=n {
        if colour_with(&adj, 0, k, 0, &mut colours) {
            return Ok(colours);
        }
    }
    unreachable!("n colours always suffice")
}

fn colour_with(adj: &[u64], v: usize, k: usize, used: usize, colours: &mut [usize]) -> bool {
    if v == adj.len() {
        return true;
    }
    // symmetry breaking: a vertex may open at most one new colour
    for c in 1..=k.min(used + 1) {
        let clash = (0..v).any(|u| adj[v] >> u & 1 == 1 && colours[u] == c);
        if clash {
            continue;
        }
        colours[v] = c;
        if colour_with(adj, v + 1, k, used.max(c), colours) {
            return true;
        }
    }
    colours[v] = 0;
    false
}

/// Checks that `colouring` is proper; returns a monochromatic edge otherwise.
pub fn monochromatic_edge(g: &Graph, colouring: &[usize]) -> Option<(usize, usize)> {
    g.edges().find(|&(u, v)| colouring[u] == colouring[v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use proptest::prelude::*;

    #[test]
    fn named_values() {
        let k5 = generators::complete(5);
        assert_eq!(clique_number(&k5).unwrap(), 5);
        assert_eq!(chromatic_number(&k5).unwrap(), 5);
        let c5 = generators::cycle(5);
        assert_eq!(clique_number(&c5).unwrap(), 2);
        assert_eq!(chromatic_number(&c5).unwrap(), 3);
        let k33 = generators::complete_multipartite(&[3, 3]);
        assert_eq!(clique_number(&k33).unwrap(), 2);
        assert_eq!(chromatic_number(&k33).unwrap(), 2);
        assert_eq!(clique_number(&Graph::empty(0)).unwrap(), 0);
        assert_eq!(clique_number(&Graph::empty(3)).unwrap(), 1);
        assert_eq!(chromatic_number(&Graph::empty(3)).unwrap(), 1);
    }

    #[test]
    fn too_large_rejected() {
        assert!(matches!(clique_number(&Graph::empty(65)), Err(GraphError::TooLarge { .. })));
    }

    fn brute_clique(adj: &[u64]) -> usize {
        let n = adj.len();
        (0u64..1 << n)
            .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || (s & !(1 << v)) & !adj[v] == 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    proptest! {
        #[test]
        fn clique_matches_brute_force(n in 1usize..9, bits in any::<u64>(), seed in any::<u64>()) {
            let g = generators::random_gnp_bits(n, bits ^ seed.rotate_left(17));
            let adj = g.adjacency_masks().unwrap();
            prop_assert_eq!(clique_number_masks(&adj), brute_clique(&adj));
            let q = maximum_clique_masks(&adj);
            prop_assert_eq!(q.count_ones() as usize, brute_clique(&adj));
            let col = chromatic_colouring(&g).unwrap();
            prop_assert!(monochromatic_edge(&g, &col).is_none());
        }

        #[test]
        fn clique_number_hereditary(n in 1usize..9, bits in any::<u64>(), keep in any::<u16>()) {
            let g = generators::random_gnp_bits(n, bits);
            let s = crate::VertexSet::from_mask(keep as u64).intersection(&g.vertices());
            let (h, _) = g.induced_subgraph(&s);
            prop_assert!(clique_number(&h).unwrap() <= clique_number(&g).unwrap());
            prop_assert!(chromatic_number(&h).unwrap() <= chromatic_number(&g).unwrap());
        }
    }
}
