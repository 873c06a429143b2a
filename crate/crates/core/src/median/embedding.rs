use std::fmt::Write as _;

use super::theta::{classify_pair, theta_classes, PairRelation, Side, ThetaClass};
use super::{check_median, MedianError};
use crate::graph::Graph;
use crate::VertexSet;

/// Pairwise laminar Θ-classes whose oriented W-sets form a ⊆-chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongDirection {
    /// Ordered so that `classes[0].w(sides[0]) ⊂ classes[1].w(sides[1]) ⊂ ...`.
    pub classes: Vec<ThetaClass>,
    pub sides: Vec<Side>,
}

impl StrongDirection {
    /// Oriented chain members, smallest first.
    pub fn chain(&self) -> impl Iterator<Item = &VertexSet> + '_ {
        self.classes.iter().zip(&self.sides).map(|(c, &s)| c.w(s))
    }

    /// Tries to orient `classes` into a chain. Returns `None` if they do not
    /// form a strong direction.
    pub fn from_classes(classes: Vec<ThetaClass>, n: usize) -> Option<StrongDirection> {
        let sides = orient(&classes, n)?;
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by_key(|&i| classes[i].w(sides[i]).len());
        Some(StrongDirection {
            sides: order.iter().map(|&i| sides[i]).collect(),
            classes: order.iter().map(|&i| classes[i].clone()).collect(),
        })
    }
}

/// A chain exists iff some vertex `v` lies in the smallest member; then every
/// member is the side containing `v`.
fn orient(classes: &[ThetaClass], n: usize) -> Option<Vec<Side>> {
    let len = classes.len();
    let class = |i: usize| &classes[i];
    'vertex: for v in 0..n {
        let sides: Vec<Side> = (0..len).map(|i| class(i).side_of(v)).collect();
        for i in 0..len {
            for j in (i + 1)..len {
                let a = class(i).w(sides[i]);
                let b = class(j).w(sides[j]);
                if !a.is_subset(b) && !b.is_subset(a) {
                    continue 'vertex;
                }
            }
        }
        return Some(sides);
    }
    if len == 0 {
        Some(Vec::new())
    } else {
        None
    }
}

/// Minimum partition of the Θ-classes into strong directions, found by
/// branch and bound. Classes that cross pairwise need distinct directions,
/// which gives the lower bound.
pub fn strong_direction_partition(g: &Graph) -> Result<Vec<StrongDirection>, MedianError> {
    check_median(g)?;
    let classes = theta_classes(g)?;
    let m = classes.len();
    let n = g.order();
    let mut crosses = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                crosses[i][j] = classify_pair(&classes[i], &classes[j])? == PairRelation::Cross;
            }
        }
    }
    let lower = crossing_clique_bound(&crosses);
    let mut search = PartitionSearch {
        classes: &classes,
        crosses: &crosses,
        n,
        lower,
        groups: Vec::new(),
        best: None,
    };
    search.run(0);
    let best = search.best.expect("singleton directions always work");
    Ok(best
        .into_iter()
        .map(|group| {
            let members: Vec<ThetaClass> = group.iter().map(|&i| classes[i].clone()).collect();
            StrongDirection::from_classes(members, n).expect("search only keeps strong groups")
        })
        .collect())
}

fn crossing_clique_bound(crosses: &[Vec<bool>]) -> usize {
    let m = crosses.len();
    if m == 0 {
        return 0;
    }
    if m <= 64 {
        let adj: Vec<u64> = (0..m)
            .map(|i| (0..m).filter(|&j| crosses[i][j]).fold(0u64, |acc, j| acc | 1 << j))
            .collect();
        crate::cliques::clique_number_masks(&adj)
    } else {
        1
    }
}

struct PartitionSearch<'a> {
    classes: &'a [ThetaClass],
    crosses: &'a [Vec<bool>],
    n: usize,
    lower: usize,
    groups: Vec<Vec<usize>>,
    best: Option<Vec<Vec<usize>>>,
}

impl PartitionSearch<'_> {
    fn best_len(&self) -> usize {
        self.best.as_ref().map_or(usize::MAX, Vec::len)
    }

    fn run(&mut self, next: usize) {
        if self.best_len() <= self.lower {
            return;
        }
        if next == self.classes.len() {
            if self.groups.len() < self.best_len() {
                self.best = Some(self.groups.clone());
            }
            return;
        }
        for gi in 0..self.groups.len() {
            if self.groups[gi].iter().any(|&c| self.crosses[c][next]) {
                continue;
            }
            self.groups[gi].push(next);
            let members: Vec<ThetaClass> =
                self.groups[gi].iter().map(|&c| self.classes[c].clone()).collect();
            if orient(&members, self.n).is_some() {
                self.run(next + 1);
            }
            self.groups[gi].pop();
        }
        if self.groups.len() + 1 < self.best_len() {
            self.groups.push(vec![next]);
            self.run(next + 1);
            self.groups.pop();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEmbedding {
    /// Vertex count of each axis path.
    pub path_lengths: Vec<usize>,
    /// `coordinates[v][j]` lies in `0..path_lengths[j]`.
    pub coordinates: Vec<Vec<usize>>,
}

impl LatticeEmbedding {
    pub fn dimension(&self) -> usize {
        self.path_lengths.len()
    }

    pub fn l1_distance(&self, u: usize, v: usize) -> usize {
        self.coordinates[u].iter().zip(&self.coordinates[v]).map(|(a, b)| a.abs_diff(*b)).sum()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        write!(out, "lattice {}", self.dimension()).unwrap();
        for l in &self.path_lengths {
            write!(out, " {l}").unwrap();
        }
        out.push('\n');
        for (v, c) in self.coordinates.iter().enumerate() {
            write!(out, "{v}").unwrap();
            for x in c {
                write!(out, " {x}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Coordinate `j` of `v` counts the members of direction `j`'s chain that
/// miss `v`. Axes are then canonicalized: each axis is reversed if that makes
/// its coordinate column (listed by vertex) lexicographically smaller, and
/// axes are sorted by column.
pub fn build_lattice_embedding(
    g: &Graph,
    directions: &[StrongDirection],
) -> Result<LatticeEmbedding, MedianError> {
    check_median(g)?;
    let classes = theta_classes(g)?;
    let n = g.order();
    let mut seen: Vec<(usize, usize)> =
        directions.iter().flat_map(|d| d.classes.iter().map(|c| c.defining_edge)).collect();
    seen.sort_unstable();
    let expected: Vec<(usize, usize)> = classes.iter().map(|c| c.defining_edge).collect();
    if seen != expected {
        return Err(MedianError::InvalidPartition(
            "directions do not partition the Θ-classes".into(),
        ));
    }
    let mut columns: Vec<(usize, Vec<usize>)> = Vec::with_capacity(directions.len());
    for (j, d) in directions.iter().enumerate() {
        if d.classes.len() != d.sides.len() || d.classes.is_empty() {
            return Err(MedianError::InvalidPartition(format!("direction {j} is malformed")));
        }
        let chain: Vec<&VertexSet> = d.chain().collect();
        if chain.windows(2).any(|w| !w[0].is_subset(w[1]) || w[0] == w[1]) {
            return Err(MedianError::InvalidPartition(format!("direction {j} is not a chain")));
        }
        let column: Vec<usize> =
            (0..n).map(|v| chain.iter().filter(|w| !w.contains(v)).count()).collect();
        let len = chain.len() + 1;
        let reversed: Vec<usize> = column.iter().map(|&c| len - 1 - c).collect();
        columns.push((len, column.min(reversed)));
    }
    columns.sort_by(|a, b| a.1.cmp(&b.1));
    let emb = LatticeEmbedding {
        path_lengths: columns.iter().map(|c| c.0).collect(),
        coordinates: (0..n).map(|v| columns.iter().map(|c| c.1[v]).collect()).collect(),
    };
    let d = g.distances();
    for u in 0..n {
        for v in (u + 1)..n {
            if emb.l1_distance(u, v) != d.raw(u, v) as usize {
                return Err(MedianError::InvalidPartition(format!(
                    "embedding distorts the distance between {u} and {v}"
                )));
            }
        }
    }
    for (j, &len) in emb.path_lengths.iter().enumerate() {
        for value in 0..len {
            if !emb.coordinates.iter().any(|c| c[j] == value) {
                return Err(MedianError::InvalidPartition(format!(
                    "axis {j} value {value} is not hit"
                )));
            }
        }
    }
    Ok(emb)
}

pub fn lattice_dimension(g: &Graph) -> Result<usize, MedianError> {
    Ok(strong_direction_partition(g)?.len())
}
