//! Small exhaustive graph corpora for cross-checks: every graph on a few
//! vertices up to isomorphism, listed in a fixed order.

use crate::generators;
use crate::graph::Graph;

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Least edge code over all relabellings; bit `k` is the `k`-th pair in
/// lexicographic order.
fn canonical_code(code: u64, pairs: &[(usize, usize)], perms: &[Vec<usize>], slot: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|p| {
            pairs.iter().enumerate().filter(|(k, _)| code >> k & 1 == 1).fold(0u64, |acc, (_, &(u, v))| {
                acc | 1 << slot[p[u]][p[v]]
            })
        })
        .min()
        .unwrap_or(0)
}

/// One representative per isomorphism class of graphs on `n <= 7`
/// vertices, ordered by edge count and then by canonical code. Each
/// representative is relabelled to its canonical form.
pub fn graphs_on(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "exhaustive enumeration is only meant for tiny graphs");
    let pairs = pair_index(n);
    let perms = permutations(n);
    let mut slot = vec![vec![0usize; n]; n];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        slot[u][v] = k;
        slot[v][u] = k;
    }
    let mut codes: Vec<u64> = (0u64..1 << pairs.len())
        .filter(|&code| canonical_code(code, &pairs, &perms, &slot) == code)
        .collect();
    codes.sort_by_key(|&c| (c.count_ones(), c));
    codes
        .into_iter()
        .map(|code| {
            let edges = pairs.iter().enumerate().filter(|(k, _)| code >> k & 1 == 1).map(|(_, &e)| e);
            Graph::from_edges(n, edges).unwrap()
        })
        .collect()
}

/// All graphs with `1..=n_max` vertices up to isomorphism.
pub fn all_graphs_up_to(n_max: usize) -> Vec<Graph> {
    (1..=n_max).flat_map(graphs_on).collect()
}

/// All connected graphs with `1..=n_max` vertices up to isomorphism.
pub fn connected_graphs_up_to(n_max: usize) -> Vec<Graph> {
    all_graphs_up_to(n_max).into_iter().filter(Graph::is_connected).collect()
}

/// Non-decreasing part-size tuples of the given length with entries from
/// `sizes` (sorted ascending); complete multipartite graphs do not depend on
/// the order of their parts.
pub fn part_tuples(len: usize, sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                let least = t.last().copied().unwrap_or(0);
                sizes.iter().filter(move |&&s| s >= least).map(move |&s| {
                    let mut t = t.clone();
                    t.push(s);
                    t
                })
            })
            .collect();
    }
    out
}

/// Named families used alongside the exhaustive corpus.
pub fn named_families() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 3..=6 {
        out.push((format!("cycle {n}"), generators::cycle(n)));
        out.push((format!("path {n}"), generators::path(n)));
        out.push((format!("complete {n}"), generators::complete(n)));
    }
    out.push(("grid 2 3".into(), generators::grid(2, 3)));
    out.push(("hypercube 2".into(), generators::hypercube(2)));
    out.push(("star 4".into(), generators::star(4)));
    out.push(("multipartite 2 2 2".into(), generators::complete_multipartite(&[2, 2, 2])));
    out.push(("multipartite 3 3".into(), generators::complete_multipartite(&[3, 3])));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| graphs_on(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34]);
        let connected: Vec<usize> =
            (1..=5).map(|n| graphs_on(n).into_iter().filter(Graph::is_connected).count()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn tuples() {
        assert_eq!(part_tuples(2, &[1, 2, 3]).len(), 6);
        assert_eq!(part_tuples(3, &[1, 2, 3]).len(), 10);
        assert_eq!(part_tuples(1, &[1, 2])[1], vec![2]);
    }
}
