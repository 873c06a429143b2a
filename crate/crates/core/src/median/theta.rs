use std::collections::VecDeque;
use std::fmt::Write as _;

use super::MedianError;
use crate::graph::{Distances, Graph};
use crate::VertexSet;

/// One Djokovic–Winkler class `F_ab` together with its half-spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaClass {
    /// Least edge of the class, `a < b`.
    pub defining_edge: (usize, usize),
    /// Edges of the class as `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// `W_ab = {v : d(v,a) < d(v,b)}`.
    pub w_ab: VertexSet,
    pub w_ba: VertexSet,
    /// `U_ab = W_ab ∩ N(W_ba)`.
    pub u_ab: VertexSet,
    pub u_ba: VertexSet,
}

/// Selects `W_ab` (`A`) or `W_ba` (`B`) of a class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl ThetaClass {
    pub fn w(&self, side: Side) -> &VertexSet {
        match side {
            Side::A => &self.w_ab,
            Side::B => &self.w_ba,
        }
    }

    pub fn u(&self, side: Side) -> &VertexSet {
        match side {
            Side::A => &self.u_ab,
            Side::B => &self.u_ba,
        }
    }

    /// Side containing vertex `v`.
    pub fn side_of(&self, v: usize) -> Side {
        if self.w_ab.contains(v) {
            Side::A
        } else {
            Side::B
        }
    }
}

fn theta_related(d: &Distances, e: (usize, usize), f: (usize, usize)) -> bool {
    let (x, y) = e;
    let (u, v) = f;
    d.raw(x, u) + d.raw(y, v) != d.raw(x, v) + d.raw(y, u)
}

/// Θ-classes of a connected bipartite graph, ordered by defining edge.
///
/// Fails with [`MedianError::NotPartialCube`] when Θ is not transitive,
/// naming three edges `e Θ f Θ g` with `e` and `g` unrelated.
pub fn theta_classes(g: &Graph) -> Result<Vec<ThetaClass>, MedianError> {
    if !g.is_connected() {
        return Err(MedianError::Disconnected);
    }
    if !g.is_bipartite() {
        return Err(MedianError::NotBipartite);
    }
    let d = g.distances();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len();
    let related: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| theta_related(&d, edges[i], edges[j])).collect())
        .collect();

    let mut class_of = vec![usize::MAX; m];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for s in 0..m {
        if class_of[s] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut members = vec![s];
        class_of[s] = id;
        let mut queue = VecDeque::from([s]);
        while let Some(e) = queue.pop_front() {
            for f in 0..m {
                if related[e][f] && class_of[f] == usize::MAX {
                    class_of[f] = id;
                    members.push(f);
                    queue.push_back(f);
                }
            }
        }
        members.sort_unstable();
        if let Some((a, c)) = first_unrelated_pair(&members, &related) {
            let path = relation_path(a, c, &members, &related);
            return Err(MedianError::NotPartialCube {
                first: edges[path[0]],
                middle: edges[path[1]],
                last: edges[path[2]],
            });
        }
        groups.push(members);
    }

    Ok(groups
        .into_iter()
        .map(|members| {
            let class_edges: Vec<(usize, usize)> = members.iter().map(|&i| edges[i]).collect();
            let (a, b) = class_edges[0];
            let n = g.order();
            let w_ab: VertexSet = (0..n).filter(|&v| d.raw(v, a) < d.raw(v, b)).collect();
            let w_ba = g.vertices().difference(&w_ab);
            let u_ab = w_ab.intersection(&g.neighborhood(&w_ba));
            let u_ba = w_ba.intersection(&g.neighborhood(&w_ab));
            ThetaClass { defining_edge: (a, b), edges: class_edges, w_ab, w_ba, u_ab, u_ba }
        })
        .collect())
}

fn first_unrelated_pair(members: &[usize], related: &[Vec<bool>]) -> Option<(usize, usize)> {
    for (i, &a) in members.iter().enumerate() {
        for &c in &members[i + 1..] {
            if !related[a][c] {
                return Some((a, c));
            }
        }
    }
    None
}

/// Shortest relation path from `a` to `c`; its first three edges witness
/// non-transitivity because `a` and `c` are unrelated.
fn relation_path(a: usize, c: usize, members: &[usize], related: &[Vec<bool>]) -> Vec<usize> {
    let mut prev = vec![usize::MAX; related.len()];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(e) = queue.pop_front() {
        if e == c {
            break;
        }
        for &f in members {
            if related[e][f] && prev[f] == usize::MAX {
                prev[f] = e;
                queue.push_back(f);
            }
        }
    }
    let mut path = vec![c];
    let mut cur = c;
    while cur != a {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairRelation {
    Cross,
    /// `W(first side)` of the first class is contained in `W(second side)`
    /// of the second; the complements are nested the other way.
    Laminar { first: Side, second: Side },
}

pub fn classify_pair(c1: &ThetaClass, c2: &ThetaClass) -> Result<PairRelation, MedianError> {
    if c1.defining_edge == c2.defining_edge {
        return Err(MedianError::IdenticalClasses);
    }
    let sides = [Side::A, Side::B];
    if sides.iter().all(|&s| sides.iter().all(|&t| c1.w(s).intersects(c2.w(t)))) {
        return Ok(PairRelation::Cross);
    }
    let mut found = None;
    for &s in &sides {
        for &t in &sides {
            if c1.w(s).is_subset(c2.w(t)) && c2.w(t.flip()).is_subset(c1.w(s.flip())) {
                if found.is_some() {
                    return Err(MedianError::AmbiguousLaminarity(c1.defining_edge, c2.defining_edge));
                }
                found = Some(PairRelation::Laminar { first: s, second: t });
            }
        }
    }
    // in a bipartite host one of the four nestings holds once a quadrant is empty
    found.ok_or(MedianError::AmbiguousLaminarity(c1.defining_edge, c2.defining_edge))
}

/// One class per line: `theta a b : e u v, e u v, ...`.
pub fn theta_report(classes: &[ThetaClass]) -> String {
    let mut out = String::new();
    for c in classes {
        let (a, b) = c.defining_edge;
        let list: Vec<String> = c.edges.iter().map(|(u, v)| format!("e {u} {v}")).collect();
        writeln!(out, "theta {a} {b} : {}", list.join(", ")).unwrap();
    }
    out
}
