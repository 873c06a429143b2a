//! Direct search over lattice decompositions, independent of the completion
//! machinery: every vertex gets a box (a product of intervals) in a grid of
//! `i` paths, boxes of adjacent vertices must meet, and no cell may hold
//! more than `k` vertices. Occurrence sets are boxes, hence convex, so any
//! assignment found is a median decomposition on the grid.
//!
//! The search assumes every coordinate value of every axis is where some
//! interval starts and where some interval ends: a value where nothing starts
//! holds a subset of the previous value and can be deleted without
//! separating any pair of boxes (symmetrically for ends). With that, axis
//! lengths never exceed `n`.

use crate::decomposition::Decomposition;
use crate::generators;
use crate::graph::Graph;
use crate::median::cartesian_product_many;
use crate::VertexSet;

#[derive(Clone, Debug)]
struct Box {
    lo: Vec<usize>,
    hi: Vec<usize>,
}

impl Box {
    fn meets(&self, other: &Box) -> bool {
        (0..self.lo.len()).all(|j| self.lo[j] <= other.hi[j] && other.lo[j] <= self.hi[j])
    }
}

struct Grid {
    lens: Vec<usize>,
    boxes: Vec<Box>,
    /// Cells of each box as flat indices.
    cells: Vec<Vec<usize>>,
    cell_count: usize,
}

impl Grid {
    fn new(lens: &[usize]) -> Grid {
        let mut boxes = vec![Box { lo: Vec::new(), hi: Vec::new() }];
        for &l in lens {
            let mut next = Vec::new();
            for b in &boxes {
                for lo in 0..l {
                    for hi in lo..l {
                        let mut nb = b.clone();
                        nb.lo.push(lo);
                        nb.hi.push(hi);
                        next.push(nb);
                    }
                }
            }
            boxes = next;
        }
        let cell_count = lens.iter().product();
        let cells = boxes
            .iter()
            .map(|b| {
                let mut out = vec![0usize];
                for (j, &l) in lens.iter().enumerate() {
                    out = out
                        .iter()
                        .flat_map(|&base| (b.lo[j]..=b.hi[j]).map(move |c| base * l + c))
                        .collect();
                }
                out
            })
            .collect();
        Grid { lens: lens.to_vec(), boxes, cells, cell_count }
    }
}

struct Assign<'a> {
    g: &'a Graph,
    grid: &'a Grid,
    order: Vec<usize>,
    k: usize,
    load: Vec<usize>,
    chosen: Vec<Option<usize>>,
}

impl Assign<'_> {
    fn normalized(&self) -> bool {
        (0..self.grid.lens.len()).all(|j| {
            (0..self.grid.lens[j]).all(|c| {
                let boxes = self.chosen.iter().flatten().map(|&b| &self.grid.boxes[b]);
                boxes.clone().any(|b| b.lo[j] == c) && boxes.clone().any(|b| b.hi[j] == c)
            })
        })
    }

    fn uncovered_starts_fit(&self, remaining: usize) -> bool {
        (0..self.grid.lens.len()).all(|j| {
            let hit: VertexSet = self.chosen.iter().flatten().map(|&b| self.grid.boxes[b].lo[j]).collect();
            self.grid.lens[j] - hit.len() <= remaining
        })
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return self.normalized();
        }
        if !self.uncovered_starts_fit(self.order.len() - depth) {
            return false;
        }
        let v = self.order[depth];
        'boxes: for b in 0..self.grid.boxes.len() {
            let bx = &self.grid.boxes[b];
            // axis reversal symmetry: the first box sits in the lower half
            if depth == 0 && (0..bx.lo.len()).any(|j| bx.lo[j] + bx.hi[j] > self.grid.lens[j] - 1) {
                continue;
            }
            for u in self.g.neighbors(v).iter() {
                if let Some(ub) = self.chosen[u] {
                    if !bx.meets(&self.grid.boxes[ub]) {
                        continue 'boxes;
                    }
                }
            }
            if self.grid.cells[b].iter().any(|&c| self.load[c] >= self.k) {
                continue;
            }
            for &c in &self.grid.cells[b] {
                self.load[c] += 1;
            }
            self.chosen[v] = Some(b);
            if self.run(depth + 1) {
                return true;
            }
            self.chosen[v] = None;
            for &c in &self.grid.cells[b] {
                self.load[c] -= 1;
            }
        }
        false
    }
}

fn axis_tuples(i: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..i {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                let start = t.last().copied().unwrap_or(1);
                (start..=max).map(move |l| {
                    let mut t = t.clone();
                    t.push(l);
                    t
                })
            })
            .collect();
    }
    out
}

/// Least width of a median decomposition of `g` whose host is a product of
/// `i` paths, with a decomposition attaining it. Exponential; meant for
/// `n <= 5`.
pub fn lattice_oracle(g: &Graph, i: usize) -> (usize, Decomposition) {
    let n = g.order();
    if n == 0 {
        return (0, Decomposition::trivial(crate::decomposition::Kind::Median, g));
    }
    // visit vertices so that each one after the first has an earlier neighbour when possible
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = VertexSet::new();
    while order.len() < n {
        let next = (0..n)
            .filter(|v| !placed.contains(*v))
            .max_by_key(|&v| (g.neighbors(v).intersection(&placed).len(), g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed.insert(next);
        order.push(next);
    }
    for k in 1..=n {
        for lens in axis_tuples(i, n) {
            let grid = Grid::new(&lens);
            let mut a = Assign {
                g,
                grid: &grid,
                order: order.clone(),
                k,
                load: vec![0; grid.cell_count],
                chosen: vec![None; n],
            };
            if a.run(0) {
                let paths: Vec<Graph> = lens.iter().map(|&l| generators::path(l)).collect();
                let refs: Vec<&Graph> = paths.iter().collect();
                let product = cartesian_product_many(&refs);
                let mut bags = vec![VertexSet::new(); grid.cell_count];
                for v in 0..n {
                    for &c in &grid.cells[a.chosen[v].unwrap()] {
                        bags[c].insert(v);
                    }
                }
                let d = Decomposition::median(product.graph, bags).expect("one bag per cell");
                return (k, d);
            }
        }
    }
    unreachable!("a single cell holding every vertex always works")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let (w, d) = lattice_oracle(&generators::cycle(4), 2);
        assert_eq!(w, 2);
        assert_eq!(d.validate(&generators::cycle(4)), Ok(()));
        assert_eq!(d.width().max_bag, 2);
        let (w, _) = lattice_oracle(&generators::cycle(5), 2);
        assert_eq!(w, 2);
        let (w, _) = lattice_oracle(&generators::complete(4), 2);
        assert_eq!(w, 4);
        let (w, _) = lattice_oracle(&generators::cycle(5), 1);
        assert_eq!(w, 3);
        assert_eq!(lattice_oracle(&Graph::empty(3), 2).0, 1);
    }
}
