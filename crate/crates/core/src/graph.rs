//! Finite simple undirected graphs over dense vertex identifiers `0..n`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::VertexSet;

/// Hop distance used for pairs in different components.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("no geodesic between {0} and {1}: different components")]
    Disconnected(usize, usize),
    #[error("graph on {n} vertices exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
    edge_count: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![VertexSet::new(); n], edge_count: 0 }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.push_edge(u, v)?;
        }
        Ok(g)
    }

    /// Like [`Graph::from_edges`] but silently drops duplicates.
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            match g.push_edge(u, v) {
                Ok(()) | Err(GraphError::DuplicateEdge(..)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(g)
    }

    /// Builds a graph from per-vertex neighbourhood masks (`n <= 64`).
    pub fn from_adjacency_masks(masks: &[u64]) -> Self {
        let n = masks.len();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if masks[u] >> v & 1 == 1 {
                    g.push_edge(u, v).expect("valid mask");
                }
            }
        }
        g
    }

    fn push_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.order();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u].contains(v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Open neighbourhood of a set, excluding the set itself.
    pub fn neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for v in s {
            out.union_with(&self.adj[v]);
        }
        out.difference(s)
    }

    /// Neighbourhood masks, for algorithms that work on `u64` sets.
    pub fn adjacency_masks(&self) -> Result<Vec<u64>, GraphError> {
        if self.order() > 64 {
            return Err(GraphError::TooLarge { n: self.order(), limit: 64 });
        }
        Ok(self.adj.iter().map(|s| s.as_mask().expect("n <= 64")).collect())
    }

    pub fn is_connected(&self) -> bool {
        self.order() > 0 && self.component_of(0, &VertexSet::new()).len() == self.order()
    }

    /// Vertices reachable from `start` without entering `blocked`.
    pub fn component_of(&self, start: usize, blocked: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for w in &self.adj[u] {
                if !blocked.contains(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Vertices connected to some member of `from` by a path avoiding `blocked`.
    /// Members of `from` that are themselves blocked are ignored.
    pub fn reach(&self, from: &VertexSet, blocked: &VertexSet) -> VertexSet {
        let mut seen = from.difference(blocked);
        let mut queue: VecDeque<usize> = seen.iter().collect();
        while let Some(u) = queue.pop_front() {
            for w in &self.adj[u] {
                if !blocked.contains(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn components(&self) -> Vec<VertexSet> {
        flaps(self, &VertexSet::new())
    }

    /// Two-colouring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.order();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_forest(&self) -> bool {
        self.size() + self.components().len() == self.order()
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.size() + 1 == self.order()
    }

    /// Hop distances from every vertex by breadth-first search.
    pub fn distances(&self) -> Distances {
        let n = self.order();
        let mut d = vec![UNREACHABLE; n * n];
        for s in 0..n {
            let row = &mut d[s * n..(s + 1) * n];
            row[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let du = row[u];
                for w in &self.adj[u] {
                    if row[w] == UNREACHABLE {
                        row[w] = du + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        Distances { n, d }
    }

    /// `I(u, v)`: all vertices on some shortest `(u, v)`-path.
    pub fn interval(&self, u: usize, v: usize) -> Result<VertexSet, GraphError> {
        self.distances().interval(u, v)
    }

    /// Subgraph induced by `s`, relabelled to `0..|s|`; the map sends new
    /// labels to old ones (ascending).
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = s.iter().filter(|&v| v < self.order()).collect();
        let mut inverse = vec![usize::MAX; self.order()];
        for (new, &old) in map.iter().enumerate() {
            inverse[old] = new;
        }
        let mut h = Graph::empty(map.len());
        for (u, v) in self.edges() {
            if inverse[u] != usize::MAX && inverse[v] != usize::MAX {
                h.push_edge(inverse[u], inverse[v]).expect("induced edge");
            }
        }
        (h, map)
    }

    /// The graph minus one vertex, relabelled.
    pub fn delete_vertex(&self, v: usize) -> Graph {
        let mut keep = self.vertices();
        keep.remove(v);
        self.induced_subgraph(&keep).0
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let mut h = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if !self.has_edge(u, v) {
                    h.push_edge(u, v).unwrap();
                }
            }
        }
        h
    }

    /// Canonical text form: `graph <n>` then `e <u> <v>` lines, sorted.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "graph {}", self.order()).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "e {u} {v}").unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut graph: Option<Graph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let err = |message: String| GraphError::Parse { line: line_no, message };
            let mut tokens = line.split_whitespace();
            match (tokens.next(), graph.as_mut()) {
                (Some("graph"), None) => {
                    let n = parse_number(tokens.next(), "vertex count").map_err(err)?;
                    if tokens.next().is_some() {
                        return Err(err("trailing tokens after vertex count".into()));
                    }
                    graph = Some(Graph::empty(n));
                }
                (Some("graph"), Some(_)) => return Err(err("duplicate `graph` header".into())),
                (Some("e"), Some(g)) => {
                    let u = parse_number(tokens.next(), "edge endpoint").map_err(err)?;
                    let v = parse_number(tokens.next(), "edge endpoint").map_err(err)?;
                    if tokens.next().is_some() {
                        return Err(err("trailing tokens after edge".into()));
                    }
                    if u >= v {
                        return Err(err(format!("edge endpoints must satisfy u < v, got {u} {v}")));
                    }
                    g.push_edge(u, v).map_err(|e| err(e.to_string()))?;
                }
                (Some("e"), None) => return Err(err("edge before `graph` header".into())),
                (Some(tok), _) => return Err(err(format!("unknown record `{tok}`"))),
                (None, _) => unreachable!(),
            }
        }
        graph.ok_or(GraphError::Parse { line: 0, message: "missing `graph` header".into() })
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

pub(crate) fn parse_number(tok: Option<&str>, what: &str) -> Result<usize, String> {
    let tok = tok.ok_or_else(|| format!("missing {what}"))?;
    tok.parse::<usize>().map_err(|_| format!("invalid {what} `{tok}`"))
}

/// All-pairs hop distances.
#[derive(Clone, Debug)]
pub struct Distances {
    n: usize,
    d: Vec<u32>,
}

impl Distances {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Raw distance; [`UNREACHABLE`] for different components.
    pub fn raw(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        let d = self.raw(u, v);
        (d != UNREACHABLE).then_some(d)
    }

    pub fn interval(&self, u: usize, v: usize) -> Result<VertexSet, GraphError> {
        let duv = self.get(u, v).ok_or(GraphError::Disconnected(u, v))?;
        Ok((0..self.n)
            .filter(|&x| {
                let (a, b) = (self.raw(u, x), self.raw(x, v));
                a != UNREACHABLE && b != UNREACHABLE && a + b == duv
            })
            .collect())
    }
}

/// Vertex sets of the components of `G - x`, ordered by least member.
pub fn flaps(g: &Graph, x: &VertexSet) -> Vec<VertexSet> {
    let mut remaining = g.vertices().difference(x);
    let mut out = Vec::new();
    while let Some(v) = remaining.first() {
        let comp = g.component_of(v, x);
        remaining = remaining.difference(&comp);
        out.push(comp);
    }
    out
}

/// `(a, b)` is a separation: `a ∪ b = V` and no edge joins `a \ b` to `b \ a`.
pub fn is_separation(g: &Graph, a: &VertexSet, b: &VertexSet) -> bool {
    if a.union(b) != g.vertices() {
        return false;
    }
    let a_only = a.difference(b);
    let b_only = b.difference(a);
    a_only.iter().all(|u| !g.neighbors(u).intersects(&b_only))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::vset;
    use proptest::prelude::*;

    #[test]
    fn distances_examples() {
        let p4 = generators::path(4);
        let d = p4.distances();
        assert_eq!(d.get(0, 3), Some(3));
        assert_eq!(generators::path(1).distances().get(0, 0), Some(0));
        let two = Graph::empty(2);
        assert_eq!(two.distances().get(0, 1), None);
        assert_eq!(two.distances().raw(0, 1), UNREACHABLE);
    }

    #[test]
    fn interval_examples() {
        let c4 = generators::cycle(4);
        assert_eq!(c4.interval(0, 2).unwrap(), vset![0, 1, 2, 3]);
        assert_eq!(c4.interval(1, 1).unwrap(), vset![1]);
        let c5 = generators::cycle(5);
        assert_eq!(c5.interval(0, 2).unwrap(), vset![0, 1, 2]);
        assert_eq!(Graph::empty(2).interval(0, 1), Err(GraphError::Disconnected(0, 1)));
    }

    #[test]
    fn flap_examples() {
        let p3 = generators::path(3);
        assert_eq!(flaps(&p3, &vset![1]), vec![vset![0], vset![2]]);
        let c5 = generators::cycle(5);
        assert!(flaps(&c5, &c5.vertices()).is_empty());
        assert_eq!(flaps(&c5, &vset![0]), vec![vset![1, 2, 3, 4]]);
    }

    #[test]
    fn separation_examples() {
        let p3 = generators::path(3);
        assert!(is_separation(&p3, &vset![0, 1], &vset![1, 2]));
        assert!(!is_separation(&p3, &vset![0], &vset![2]));
        let k3 = generators::complete(3);
        assert!(!is_separation(&k3, &vset![0, 1], &vset![1, 2]));
    }

    #[test]
    fn induced_examples() {
        let c5 = generators::cycle(5);
        let (h, map) = c5.induced_subgraph(&vset![0, 1, 2]);
        assert_eq!(h, generators::path(3));
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(c5.induced_subgraph(&VertexSet::new()).0, Graph::empty(0));
        let k4 = generators::complete(4);
        assert_eq!(k4.induced_subgraph(&vset![0, 2, 3]).0, generators::complete(3));
    }

    #[test]
    fn invalid_edges_rejected() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::from_edges(3, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn text_format() {
        let text = "graph 4\ne 0 1\ne 0 3\ne 1 2\n";
        let g = Graph::parse(text).unwrap();
        assert_eq!(g.to_text(), text);
        let commented = "# a comment\ngraph 4 # header\n\ne 1 2\ne 0 1\ne 0 3\n";
        assert_eq!(Graph::parse(commented).unwrap().to_text(), text);
        assert!(matches!(Graph::parse("graph 3\ne 2 1\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse("e 0 1\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(Graph::parse("graph 2\ne 0 1\ne 0 1\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(Graph::parse(""), Err(GraphError::Parse { .. })));
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut it = bits.into_iter();
                for u in 0..n {
                    for v in (u + 1)..n {
                        if it.next().unwrap() {
                            edges.push((u, v));
                        }
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn interval_is_definitional(g in arb_graph(8)) {
            let d = g.distances();
            for u in 0..g.order() {
                for v in 0..g.order() {
                    match d.interval(u, v) {
                        Ok(iv) => {
                            let duv = d.raw(u, v);
                            for x in 0..g.order() {
                                let on = d.get(u, x).zip(d.get(x, v)).map(|(a, b)| a + b == duv).unwrap_or(false);
                                prop_assert_eq!(iv.contains(x), on);
                            }
                            prop_assert!(iv.contains(u) && iv.contains(v));
                        }
                        Err(_) => prop_assert_eq!(d.get(u, v), None),
                    }
                }
            }
        }

        #[test]
        fn distance_metric(g in arb_graph(8)) {
            let d = g.distances();
            for u in 0..g.order() {
                prop_assert_eq!(d.raw(u, u), 0);
                for v in 0..g.order() {
                    prop_assert_eq!(d.raw(u, v), d.raw(v, u));
                    for w in 0..g.order() {
                        if let (Some(a), Some(b)) = (d.get(u, w), d.get(w, v)) {
                            prop_assert!(d.raw(u, v) <= a + b);
                        }
                    }
                }
            }
        }

        #[test]
        fn flaps_partition(g in arb_graph(8), xmask in any::<u8>()) {
            let x = VertexSet::from_mask(xmask as u64).intersection(&g.vertices());
            let fs = flaps(&g, &x);
            let mut union = VertexSet::new();
            for (i, f) in fs.iter().enumerate() {
                prop_assert!(!f.is_empty());
                prop_assert!(!f.intersects(&union));
                union.union_with(f);
                for h in &fs[i + 1..] {
                    prop_assert!(!g.neighborhood(f).intersects(h));
                }
                let a = f.union(&g.neighborhood(f)).union(&x);
                let b = g.vertices().difference(f);
                prop_assert!(is_separation(&g, &a, &b));
            }
            prop_assert_eq!(union, g.vertices().difference(&x));
        }

        #[test]
        fn text_round_trip(g in arb_graph(9)) {
            prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        }
    }
}
