//! Tree, path and median decompositions: validation, widths, text format,
//! and the constructions relating them (products, chromatic lattices,
//! projections onto lattice axes, separations).

mod construct;
mod text;

pub use construct::{
    chromatic_median_decomposition, chromatic_path_decompositions, edge_separation,
    extract_path_decompositions, laminar_separation_check, max_transversal_intersection,
    product_decomposition, y_z_separation_check, EdgeSeparation, Extraction, LaminarWitness,
    YzWitness,
};
pub use text::{parse_decompositions, write_decompositions};

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;
use crate::median::{MedianError, MetricCache};
use crate::{generators, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Tree,
    Path,
    Median,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Tree => "tree",
            Kind::Path => "path",
            Kind::Median => "median",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        match s {
            "tree" => Some(Kind::Tree),
            "path" => Some(Kind::Path),
            "median" => Some(Kind::Median),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A host graph with one bag per host node. For [`Kind::Path`] the host is
/// always the path `0 - 1 - ... - (m-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    kind: Kind,
    host: Graph,
    bags: Vec<VertexSet>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("host has {host} nodes but {bags} bags were given")]
    BagCount { host: usize, bags: usize },
    #[error("path kind requires the host to be the path on its nodes")]
    HostNotPath,
    #[error("expected a tree or path decomposition, found {0}")]
    WrongKind(Kind),
    #[error("decomposition {index} is invalid: {violation}")]
    Invalid { index: usize, violation: Violation },
    #[error("improper colouring: edge {0} {1} is monochromatic")]
    ImproperColouring(usize, usize),
    #[error("colouring: {0}")]
    BadColouring(String),
    #[error(transparent)]
    Median(#[from] MedianError),
    #[error("X_{node} differs from the intersection of its axis bags")]
    IntersectionMismatch { node: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no decompositions given")]
    Empty,
}

/// The first axiom a decomposition fails, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    HostNotTree,
    HostNotMedian(String),
    BagCount { host: usize, bags: usize },
    /// A bag mentions a vertex that is not in the decomposed graph.
    BagOutOfRange { node: usize, vertex: usize },
    /// (T1)/(M1): no bag contains both ends of the edge.
    EdgeUncovered { axiom: &'static str, edge: (usize, usize) },
    /// (T2)/(M2): the vertex occurs in no bag.
    EmptyOccurrence { axiom: &'static str, vertex: usize },
    /// (T2): the occurrence set is not connected in the host tree.
    DisconnectedOccurrence { vertex: usize },
    /// (M2): `x` lies on a host geodesic between occurrences `u` and `w` of
    /// `vertex` but its bag misses `vertex`.
    NonConvexOccurrence { vertex: usize, witness: (usize, usize, usize) },
}

impl Violation {
    /// Name of the violated axiom, as printed by `validate`.
    pub fn axiom(&self) -> &'static str {
        match self {
            Violation::HostNotTree => "host-not-tree",
            Violation::HostNotMedian(_) => "host-not-median",
            Violation::BagCount { .. } | Violation::BagOutOfRange { .. } => "bags",
            Violation::EdgeUncovered { axiom, .. } | Violation::EmptyOccurrence { axiom, .. } => axiom,
            Violation::DisconnectedOccurrence { .. } => "T2",
            Violation::NonConvexOccurrence { .. } => "M2",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::HostNotTree => write!(f, "host-not-tree: host graph is not a tree"),
            Violation::HostNotMedian(why) => write!(f, "host-not-median: {why}"),
            Violation::BagCount { host, bags } => {
                write!(f, "bags: {bags} bags for {host} host nodes")
            }
            Violation::BagOutOfRange { node, vertex } => {
                write!(f, "bags: bag {node} contains unknown vertex {vertex}")
            }
            Violation::EdgeUncovered { axiom, edge: (u, v) } => {
                write!(f, "{axiom}: edge {u} {v} is in no bag")
            }
            Violation::EmptyOccurrence { axiom, vertex } => {
                write!(f, "{axiom}: vertex {vertex} is in no bag")
            }
            Violation::DisconnectedOccurrence { vertex } => {
                write!(f, "T2: bags containing vertex {vertex} are not connected")
            }
            Violation::NonConvexOccurrence { vertex, witness: (u, w, x) } => write!(
                f,
                "M2: bags containing vertex {vertex} are not convex (node {x} between {u} and {w})"
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Width {
    pub max_bag: usize,
    /// `max_bag - 1` for tree and path decompositions, `max_bag` for median
    /// decompositions. An empty tree decomposition has width `-1`.
    pub convention_width: i64,
    pub kind: Kind,
}

impl Decomposition {
    pub fn new(kind: Kind, host: Graph, bags: Vec<VertexSet>) -> Result<Self, DecompositionError> {
        if host.order() != bags.len() {
            return Err(DecompositionError::BagCount { host: host.order(), bags: bags.len() });
        }
        if kind == Kind::Path && host != generators::path(bags.len()) {
            return Err(DecompositionError::HostNotPath);
        }
        Ok(Decomposition { kind, host, bags })
    }

    pub fn path(bags: Vec<VertexSet>) -> Self {
        Decomposition { kind: Kind::Path, host: generators::path(bags.len()), bags }
    }

    pub fn tree(host: Graph, bags: Vec<VertexSet>) -> Result<Self, DecompositionError> {
        Decomposition::new(Kind::Tree, host, bags)
    }

    pub fn median(host: Graph, bags: Vec<VertexSet>) -> Result<Self, DecompositionError> {
        Decomposition::new(Kind::Median, host, bags)
    }

    /// One bag holding every vertex, on a single host node.
    pub fn trivial(kind: Kind, g: &Graph) -> Self {
        Decomposition { kind, host: Graph::empty(1), bags: vec![g.vertices()] }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn bag(&self, node: usize) -> &VertexSet {
        &self.bags[node]
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Same host and bags under another kind tag (e.g. a path as a tree).
    pub fn with_kind(&self, kind: Kind) -> Result<Self, DecompositionError> {
        Decomposition::new(kind, self.host.clone(), self.bags.clone())
    }

    /// Host nodes whose bag contains `v`.
    pub fn occurrences(&self, v: usize) -> VertexSet {
        (0..self.bags.len()).filter(|&a| self.bags[a].contains(v)).collect()
    }

    pub fn width(&self) -> Width {
        let max_bag = self.bags.iter().map(VertexSet::len).max().unwrap_or(0);
        let convention_width = match self.kind {
            Kind::Median => max_bag as i64,
            Kind::Tree | Kind::Path => max_bag as i64 - 1,
        };
        Width { max_bag, convention_width, kind: self.kind }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), Violation> {
        self.validate_on(g, &g.vertices())
    }

    /// Validation for the subgraph of `g` induced by `present`: bags may only
    /// hold vertices of `present`, and only those vertices and the edges
    /// between them are checked.
    pub fn validate_on(&self, g: &Graph, present: &VertexSet) -> Result<(), Violation> {
        if self.host.order() != self.bags.len() {
            return Err(Violation::BagCount { host: self.host.order(), bags: self.bags.len() });
        }
        let n_host = self.host.order();
        if n_host == 0 {
            return match present.first() {
                None => Ok(()),
                Some(v) => Err(Violation::EmptyOccurrence { axiom: self.occurrence_axiom(), vertex: v }),
            };
        }
        let metric = match self.kind {
            Kind::Tree | Kind::Path => {
                if !self.host.is_tree() {
                    return Err(Violation::HostNotTree);
                }
                None
            }
            Kind::Median => {
                let cache = MetricCache::new(&self.host);
                if !cache.is_connected() {
                    return Err(Violation::HostNotMedian("host is not connected".into()));
                }
                if let Some(w) = cache.median_witness() {
                    return Err(Violation::HostNotMedian(w.to_string()));
                }
                Some(cache)
            }
        };
        for (node, bag) in self.bags.iter().enumerate() {
            if let Some(vertex) = bag.difference(present).first() {
                return Err(Violation::BagOutOfRange { node, vertex });
            }
        }
        let edge_axiom = if self.kind == Kind::Median { "M1" } else { "T1" };
        for (u, v) in g.edges() {
            if !present.contains(u) || !present.contains(v) {
                continue;
            }
            if !self.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
                return Err(Violation::EdgeUncovered { axiom: edge_axiom, edge: (u, v) });
            }
        }
        for v in present {
            let occ = self.occurrences(v);
            let Some(start) = occ.first() else {
                return Err(Violation::EmptyOccurrence { axiom: self.occurrence_axiom(), vertex: v });
            };
            match &metric {
                None => {
                    let blocked = self.host.vertices().difference(&occ);
                    if self.host.component_of(start, &blocked) != occ {
                        return Err(Violation::DisconnectedOccurrence { vertex: v });
                    }
                }
                Some(cache) => {
                    if let Some(witness) = cache.convexity_witness(&occ) {
                        return Err(Violation::NonConvexOccurrence { vertex: v, witness });
                    }
                }
            }
        }
        Ok(())
    }

    fn occurrence_axiom(&self) -> &'static str {
        if self.kind == Kind::Median {
            "M2"
        } else {
            "T2"
        }
    }

    /// Intersects every bag with `keep`; the host, including nodes whose bag
    /// becomes empty, is unchanged.
    pub fn restrict(&self, keep: &VertexSet) -> Decomposition {
        Decomposition {
            kind: self.kind,
            host: self.host.clone(),
            bags: self.bags.iter().map(|b| b.intersection(keep)).collect(),
        }
    }

    /// Drops nodes whose bag is contained in a neighbouring bag, repeatedly,
    /// contracting each dropped node into that neighbour. Only for tree and
    /// path decompositions; validity and width are preserved and afterwards
    /// no two adjacent bags are nested.
    pub fn normalized(&self) -> Decomposition {
        if self.kind == Kind::Median {
            return self.clone();
        }
        let mut nodes: Vec<Option<VertexSet>> = self.bags.iter().cloned().map(Some).collect();
        let mut adj: Vec<VertexSet> = (0..nodes.len()).map(|a| self.host.neighbors(a).clone()).collect();
        loop {
            let mut merged = false;
            'outer: for a in 0..nodes.len() {
                let Some(bag) = nodes[a].as_ref() else { continue };
                for b in adj[a].iter() {
                    if bag.is_subset(nodes[b].as_ref().unwrap()) {
                        for c in adj[a].clone().iter() {
                            adj[c].remove(a);
                            if c != b {
                                adj[c].insert(b);
                                adj[b].insert(c);
                            }
                        }
                        adj[a] = VertexSet::new();
                        nodes[a] = None;
                        merged = true;
                        break 'outer;
                    }
                }
            }
            if !merged {
                break;
            }
        }
        let alive: Vec<usize> = (0..nodes.len()).filter(|&a| nodes[a].is_some()).collect();
        if self.kind == Kind::Path {
            // contraction keeps the path order
            return Decomposition::path(alive.iter().map(|&a| nodes[a].clone().unwrap()).collect());
        }
        let mut index = vec![usize::MAX; nodes.len()];
        for (i, &a) in alive.iter().enumerate() {
            index[a] = i;
        }
        let edges: Vec<(usize, usize)> = alive
            .iter()
            .flat_map(|&a| adj[a].iter().filter(move |&b| b > a).map(move |b| (a, b)))
            .map(|(a, b)| (index[a], index[b]))
            .collect();
        Decomposition {
            kind: self.kind,
            host: Graph::from_edges(alive.len(), edges).expect("contraction of a tree is a tree"),
            bags: alive.iter().map(|&a| nodes[a].clone().unwrap()).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        write_decompositions(std::slice::from_ref(self))
    }
}

/// Some bag contains the clique; used by property tests.
pub fn clique_in_some_bag(d: &Decomposition, clique: &VertexSet) -> bool {
    d.bags().iter().any(|b| clique.is_subset(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vset;

    #[test]
    fn trivial_is_valid() {
        let g = generators::complete(4);
        for kind in [Kind::Tree, Kind::Path, Kind::Median] {
            let d = Decomposition::trivial(kind, &g);
            assert_eq!(d.validate(&g), Ok(()));
            assert_eq!(d.width().max_bag, 4);
        }
        assert_eq!(Decomposition::trivial(Kind::Median, &g).width().convention_width, 4);
        assert_eq!(Decomposition::trivial(Kind::Tree, &g).width().convention_width, 3);
    }

    #[test]
    fn path_of_p4() {
        let g = generators::path(4);
        let d = Decomposition::path(vec![vset![0, 1], vset![1, 2], vset![2, 3]]);
        assert_eq!(d.validate(&g), Ok(()));
        assert_eq!(d.width().convention_width, 1);
        let gap = Decomposition::path(vec![vset![0, 1], vset![2, 3], vset![1, 2]]);
        assert_eq!(gap.validate(&g), Err(Violation::DisconnectedOccurrence { vertex: 1 }));
        let missing = Decomposition::path(vec![vset![0, 1], vset![2, 3]]);
        assert_eq!(
            missing.validate(&g),
            Err(Violation::EdgeUncovered { axiom: "T1", edge: (1, 2) })
        );
    }

    #[test]
    fn host_checks() {
        let g = generators::path(2);
        let bags = vec![vset![0, 1]; 3];
        let t = Decomposition::tree(generators::cycle(3), bags.clone()).unwrap();
        assert_eq!(t.validate(&g), Err(Violation::HostNotTree));
        let m = Decomposition::median(generators::cycle(3), bags).unwrap();
        assert!(matches!(m.validate(&g), Err(Violation::HostNotMedian(_))));
        assert!(matches!(
            Decomposition::new(Kind::Path, generators::star(2), vec![VertexSet::new(); 3]),
            Err(DecompositionError::HostNotPath)
        ));
        let out = Decomposition::path(vec![vset![0, 1, 5]]);
        assert_eq!(out.validate(&g), Err(Violation::BagOutOfRange { node: 0, vertex: 5 }));
    }

    #[test]
    fn empty_graph() {
        let g = Graph::empty(0);
        assert_eq!(Decomposition::path(Vec::new()).validate(&g), Ok(()));
        assert_eq!(Decomposition::trivial(Kind::Median, &g).validate(&g), Ok(()));
        assert!(Decomposition::path(Vec::new()).validate(&Graph::empty(1)).is_err());
    }

    #[test]
    fn normalization_contracts_nested_bags() {
        let g = generators::path(3);
        let d = Decomposition::path(vec![vset![0], vset![0, 1], vset![1], vset![1, 2], vset![2]]);
        let n = d.normalized();
        assert_eq!(n.bags(), &[vset![0, 1], vset![1, 2]]);
        assert_eq!(n.validate(&g), Ok(()));
        let star = generators::star(3);
        let t = Decomposition::tree(
            generators::star(3),
            vec![vset![0], vset![0, 1], vset![0, 2], vset![0, 3]],
        )
        .unwrap();
        let n = t.normalized();
        assert_eq!(n.node_count(), 3);
        assert_eq!(n.validate(&star), Ok(()));
        assert!(n.host().is_tree());
    }
}
