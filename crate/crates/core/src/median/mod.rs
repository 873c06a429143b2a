//! Median-graph structure: medians, convexity, Θ-classes, Cartesian
//! products, strong directions and lattice embeddings.

mod embedding;
mod theta;

pub use embedding::{
    build_lattice_embedding, lattice_dimension, strong_direction_partition, LatticeEmbedding,
    StrongDirection,
};
pub use theta::{classify_pair, theta_classes, theta_report, PairRelation, Side, ThetaClass};

use thiserror::Error;

use crate::graph::{Distances, Graph, UNREACHABLE};
use crate::VertexSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MedianError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("Θ is not transitive: {first:?} Θ {middle:?} Θ {last:?} but not {first:?} Θ {last:?}")]
    NotPartialCube { first: (usize, usize), middle: (usize, usize), last: (usize, usize) },
    #[error("graph is not median: {0}")]
    NotMedian(MedianWitness),
    #[error("cannot classify a Θ-class against itself")]
    IdenticalClasses,
    #[error("Θ-classes {0:?} and {1:?} are laminar in both orientations")]
    AmbiguousLaminarity((usize, usize), (usize, usize)),
    #[error("invalid direction partition: {0}")]
    InvalidPartition(String),
    #[error("family member {0} is not convex")]
    NonConvexMember(usize),
}

/// A triple whose interval intersection does not have exactly one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MedianWitness {
    pub triple: [usize; 3],
    pub medians: VertexSet,
}

impl std::fmt::Display for MedianWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [u, v, w] = self.triple;
        write!(f, "triple ({u}, {v}, {w}) has {} medians {{{}}}", self.medians.len(), self.medians)
    }
}

/// Distances plus every interval `I(u, v)`, for repeated metric queries on
/// one graph (median checks, convexity of many sets).
#[derive(Clone, Debug)]
pub struct MetricCache {
    distances: Distances,
    intervals: Vec<VertexSet>,
    n: usize,
}

impl MetricCache {
    pub fn new(g: &Graph) -> Self {
        let n = g.order();
        let distances = g.distances();
        let mut intervals = vec![VertexSet::new(); n * n];
        for u in 0..n {
            for v in u..n {
                let duv = distances.raw(u, v);
                if duv == UNREACHABLE {
                    continue;
                }
                let iv: VertexSet = (0..n)
                    .filter(|&x| {
                        let (a, b) = (distances.raw(u, x), distances.raw(x, v));
                        a != UNREACHABLE && b != UNREACHABLE && a + b == duv
                    })
                    .collect();
                intervals[v * n + u] = iv.clone();
                intervals[u * n + v] = iv;
            }
        }
        MetricCache { distances, intervals, n }
    }

    pub fn distances(&self) -> &Distances {
        &self.distances
    }

    /// `I(u, v)`; empty when `u` and `v` lie in different components.
    pub fn interval(&self, u: usize, v: usize) -> &VertexSet {
        &self.intervals[u * self.n + v]
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && (0..self.n).all(|v| self.distances.raw(0, v) != UNREACHABLE)
    }

    pub fn triple_medians(&self, u: usize, v: usize, w: usize) -> VertexSet {
        self.interval(u, v).intersection(self.interval(v, w)).intersection(self.interval(w, u))
    }

    /// First triple (lexicographic) without a unique median.
    pub fn median_witness(&self) -> Option<MedianWitness> {
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                let uv = self.interval(u, v);
                for w in (v + 1)..self.n {
                    let m = uv.intersection(self.interval(v, w)).intersection(self.interval(w, u));
                    if m.len() != 1 {
                        return Some(MedianWitness { triple: [u, v, w], medians: m });
                    }
                }
            }
        }
        None
    }

    pub fn is_median(&self) -> bool {
        self.is_connected() && self.median_witness().is_none()
    }

    /// Geodesic convexity; the empty set and singletons are convex.
    pub fn is_convex(&self, s: &VertexSet) -> bool {
        self.convexity_witness(s).is_none()
    }

    /// `(u, v, x)` with `u, v` in `s` and `x` in `I(u, v)` outside `s`.
    pub fn convexity_witness(&self, s: &VertexSet) -> Option<(usize, usize, usize)> {
        let members: Vec<usize> = s.iter().collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if self.distances.raw(u, v) == UNREACHABLE {
                    // geodesically disconnected sets are not convex
                    return Some((u, v, usize::MAX));
                }
                if let Some(x) = self.interval(u, v).difference(s).first() {
                    return Some((u, v, x));
                }
            }
        }
        None
    }
}

/// The set `I(u,v) ∩ I(v,w) ∩ I(w,u)`; the caller inspects its size.
pub fn median_of_triple(g: &Graph, u: usize, v: usize, w: usize) -> Result<VertexSet, MedianError> {
    if !g.is_connected() {
        return Err(MedianError::Disconnected);
    }
    let d = g.distances();
    let iv = |a, b| d.interval(a, b).map_err(|_| MedianError::Disconnected);
    Ok(iv(u, v)?.intersection(&iv(v, w)?).intersection(&iv(w, u)?))
}

pub fn is_median_graph(g: &Graph) -> bool {
    check_median(g).is_ok()
}

/// `Ok` for median graphs, otherwise the reason (disconnection or a triple).
pub fn check_median(g: &Graph) -> Result<(), MedianError> {
    let cache = MetricCache::new(g);
    if !cache.is_connected() {
        return Err(MedianError::Disconnected);
    }
    match cache.median_witness() {
        None => Ok(()),
        Some(w) => Err(MedianError::NotMedian(w)),
    }
}

pub fn is_convex(g: &Graph, s: &VertexSet) -> bool {
    MetricCache::new(g).is_convex(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HellyOutcome {
    /// Some pair of members is disjoint; the property holds vacuously.
    NotPairwiseIntersecting { pair: (usize, usize) },
    /// Pairwise intersecting with a common vertex (the least one).
    CommonVertex(usize),
    /// Pairwise intersecting with empty total intersection.
    Violated,
}

impl HellyOutcome {
    pub fn holds(&self) -> bool {
        !matches!(self, HellyOutcome::Violated)
    }
}

/// Helly check for a family of convex sets of a median graph.
pub fn helly_check(g: &Graph, family: &[VertexSet]) -> Result<HellyOutcome, MedianError> {
    let cache = MetricCache::new(g);
    if let Some(i) = family.iter().position(|s| !cache.is_convex(s)) {
        return Err(MedianError::NonConvexMember(i));
    }
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            if !family[i].intersects(&family[j]) {
                return Ok(HellyOutcome::NotPairwiseIntersecting { pair: (i, j) });
            }
        }
    }
    let mut common = g.vertices();
    for s in family {
        common.intersect_with(s);
    }
    Ok(match common.first() {
        Some(v) => HellyOutcome::CommonVertex(v),
        None => HellyOutcome::Violated,
    })
}

/// `G □ H` with vertex `(a, x)` at index `a * |H| + x`.
#[derive(Clone, Debug)]
pub struct Product {
    pub graph: Graph,
    /// Coordinates per product vertex, one entry per factor.
    pub coords: Vec<Vec<usize>>,
    pub factor_orders: Vec<usize>,
}

impl Product {
    /// Index of the product vertex with the given coordinates.
    pub fn index_of(&self, coords: &[usize]) -> usize {
        mixed_radix_index(&self.factor_orders, coords)
    }
}

pub fn mixed_radix_index(radices: &[usize], coords: &[usize]) -> usize {
    coords.iter().zip(radices).fold(0, |acc, (&c, &r)| acc * r + c)
}

pub fn cartesian_product(g1: &Graph, g2: &Graph) -> Product {
    cartesian_product_many(&[g1, g2])
}

/// k-fold product with the first factor most significant. The empty
/// product is `K1`.
pub fn cartesian_product_many(factors: &[&Graph]) -> Product {
    let orders: Vec<usize> = factors.iter().map(|f| f.order()).collect();
    let total: usize = orders.iter().product();
    let mut coords = Vec::with_capacity(total);
    for idx in 0..total {
        let mut c = vec![0; orders.len()];
        let mut rest = idx;
        for j in (0..orders.len()).rev() {
            c[j] = rest % orders[j];
            rest /= orders[j];
        }
        coords.push(c);
    }
    let mut edges = Vec::new();
    for (idx, c) in coords.iter().enumerate() {
        for (j, f) in factors.iter().enumerate() {
            for w in f.neighbors(c[j]).iter().filter(|&w| w > c[j]) {
                let mut d = c.clone();
                d[j] = w;
                edges.push((idx, mixed_radix_index(&orders, &d)));
            }
        }
    }
    let graph = Graph::from_edges(total, edges).expect("product edges are simple");
    Product { graph, coords, factor_orders: orders }
}
