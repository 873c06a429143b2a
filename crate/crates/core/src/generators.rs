//! Named graph families and seeded random graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

/// `C_n` for `n >= 3`; smaller `n` degrade to paths.
pub fn cycle(n: usize) -> Graph {
    if n < 3 {
        return path(n);
    }
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))).unwrap()
}

/// `K_{n_1,...,n_p}`; parts are consecutive blocks of labels.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let mut part_of = Vec::new();
    for (i, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, size));
    }
    let n = part_of.len();
    let edges = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .filter(|&(u, v)| part_of[u] != part_of[v])
        .collect::<Vec<_>>();
    Graph::from_edges(n, edges).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
}

/// `rows x cols` grid; vertex `(r, c)` is `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::from_edges(rows * cols, edges).unwrap()
}

/// `Q_d`; vertex labels are the binary tuples read as integers.
pub fn hypercube(d: usize) -> Graph {
    let n = 1usize << d;
    let edges = (0..n)
        .flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect::<Vec<_>>();
    Graph::from_edges(n, edges).unwrap()
}

/// Random recursive tree: vertex `v > 0` hangs below a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    Graph::from_edges(n, edges).unwrap()
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Graph on `n <= 11` vertices whose edge set is read off the bits of `bits`
/// in lexicographic pair order (bit `i` = `i`-th pair). Used by property tests.
pub fn random_gnp_bits(n: usize, bits: u64) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if i < 64 && bits >> i & 1 == 1 {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        assert_eq!(hypercube(3).order(), 8);
        assert_eq!(hypercube(3).size(), 12);
        assert_eq!(grid(2, 3).size(), 7);
        // K_{2,2} with parts {0,1} and {2,3} is the 4-cycle 0-2-1-3-0
        assert_eq!(
            complete_multipartite(&[2, 2]),
            Graph::from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap()
        );
        assert_eq!(complete_multipartite(&[3, 3]).size(), 9);
        assert_eq!(cycle(5).size(), 5);
        assert!(random_tree(12, 7).is_tree());
        assert_eq!(random_tree(12, 7), random_tree(12, 7));
        assert_eq!(random_gnp(8, 0.5, 3), random_gnp(8, 0.5, 3));
    }
}
