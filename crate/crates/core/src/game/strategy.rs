//! Cop strategies: each team answers its own last `(Z, R)` with its next `Z`.

use std::collections::{HashMap, HashSet, VecDeque};

use super::{verify_cop_strategy, Game, GameError, Position, Variant, Verdict};
use crate::decomposition::{product_decomposition, Decomposition, Kind};
use crate::graph::Graph;
use crate::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TeamStrategy {
    /// Explicit answers; a missing entry means the team stays where it is.
    Table(HashMap<(VertexSet, VertexSet), VertexSet>),
    /// Descent in a rooted tree of bags: the root bag first, then the child
    /// whose subtree holds the robber territory.
    Tree {
        bags: Vec<VertexSet>,
        children: Vec<Vec<usize>>,
        /// Union of the bags in each subtree.
        below: Vec<VertexSet>,
        root: usize,
    },
    /// The bags in order, one per turn; the last bag is kept forever.
    Sequence(Vec<VertexSet>),
}

impl TeamStrategy {
    /// Next cop set for `team` given its last pair.
    pub fn next(&self, team: usize, z: &VertexSet, r: &VertexSet) -> Result<VertexSet, GameError> {
        match self {
            TeamStrategy::Table(map) => Ok(map.get(&(z.clone(), r.clone())).cloned().unwrap_or_else(|| z.clone())),
            TeamStrategy::Sequence(bags) => {
                if bags.is_empty() {
                    return Ok(z.clone());
                }
                Ok(match bags.iter().position(|b| b == z) {
                    Some(l) => bags[(l + 1).min(bags.len() - 1)].clone(),
                    None => bags[0].clone(),
                })
            }
            TeamStrategy::Tree { bags, children, below, root } => {
                if bags.is_empty() {
                    return Ok(z.clone());
                }
                let mut answer: Option<VertexSet> = None;
                for t in (0..bags.len()).filter(|&t| &bags[t] == z) {
                    let next = match children[t].iter().find(|&&s| r.is_subset(&below[s])) {
                        Some(&s) => bags[s].clone(),
                        None => bags[t].clone(),
                    };
                    match &answer {
                        Some(a) if *a != next => {
                            return Err(GameError::Collision { team, z: z.clone(), r: r.clone() })
                        }
                        _ => answer = Some(next),
                    }
                }
                Ok(answer.unwrap_or_else(|| bags[*root].clone()))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopStrategy {
    pub teams: Vec<TeamStrategy>,
}

impl CopStrategy {
    pub fn new(teams: Vec<TeamStrategy>) -> Self {
        CopStrategy { teams }
    }

    pub fn next(&self, team: usize, z: &VertexSet, r: &VertexSet) -> Result<VertexSet, GameError> {
        self.teams[team].next(team, z, r)
    }
}

fn rooted(d: &Decomposition, root: usize) -> TeamStrategy {
    let m = d.node_count();
    let host = d.host();
    let mut parent = vec![usize::MAX; m];
    let mut order = Vec::with_capacity(m);
    let mut seen = VertexSet::singleton(root);
    let mut queue = VecDeque::from([root]);
    while let Some(t) = queue.pop_front() {
        order.push(t);
        for s in host.neighbors(t).iter() {
            if seen.insert(s) {
                parent[s] = t;
                queue.push_back(s);
            }
        }
    }
    let mut children = vec![Vec::new(); m];
    for &t in &order[1..] {
        children[parent[t]].push(t);
    }
    let mut below: Vec<VertexSet> = d.bags().to_vec();
    for &t in order.iter().rev().filter(|&&t| t != root) {
        let sub = below[t].clone();
        below[parent[t]].union_with(&sub);
    }
    TeamStrategy::Tree { bags: d.bags().to_vec(), children, below, root }
}

/// Visible-robber strategy: every team descends its own decomposition,
/// rooted at node 0. Path decompositions are accepted as trees.
pub fn strategy_from_tree_decompositions(decs: &[Decomposition]) -> Result<CopStrategy, GameError> {
    decs.iter()
        .map(|d| match d.kind() {
            Kind::Median => Err(GameError::WrongKind("median")),
            _ if d.node_count() == 0 => Ok(TeamStrategy::Sequence(Vec::new())),
            _ => Ok(rooted(d, 0)),
        })
        .collect::<Result<_, _>>()
        .map(CopStrategy::new)
}

/// Invisible-robber strategy: every team plays the bags of its path in order.
pub fn strategy_from_path_decompositions(decs: &[Decomposition]) -> Result<CopStrategy, GameError> {
    decs.iter()
        .map(|d| match d.kind() {
            Kind::Path => Ok(TeamStrategy::Sequence(d.bags().to_vec())),
            other => Err(GameError::WrongKind(other.name())),
        })
        .collect::<Result<_, _>>()
        .map(CopStrategy::new)
}

/// Bags playable by one team against a lone robber, with the moves between
/// them; node 0 is the empty starting set.
struct DecisionGraph {
    bags: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

fn explore_team(g: &Graph, strategy: &CopStrategy, team: usize, variant: Variant) -> Result<DecisionGraph, GameError> {
    let solo = Game::new(g, variant, 1, g.order());
    let mut index: HashMap<VertexSet, usize> = HashMap::from([(VertexSet::new(), 0)]);
    let mut out = DecisionGraph { bags: vec![VertexSet::new()], edges: Vec::new() };
    let mut seen: HashSet<Position> = HashSet::new();
    let mut queue: VecDeque<Position> = solo.initial_positions().into();
    while let Some(pos) = queue.pop_front() {
        if !seen.insert(pos.clone()) || !pos.selectable(0) {
            continue;
        }
        let (z, r) = &pos.pairs[0];
        let new_z = strategy.next(team, z, r)?;
        if &new_z == z {
            continue;
        }
        let next_node = *index.entry(new_z.clone()).or_insert_with(|| {
            out.bags.push(new_z.clone());
            out.bags.len() - 1
        });
        let from = index[z];
        let edge = (from.min(next_node), from.max(next_node));
        if !out.edges.contains(&edge) {
            out.edges.push(edge);
        }
        for reply in solo.replies(&pos, 0, &new_z)? {
            queue.push_back(Position::new(vec![(new_z.clone(), reply)]));
        }
    }
    Ok(out)
}

/// Contracts the empty start node into its first neighbour.
fn contract_start(dg: &DecisionGraph) -> Result<(Vec<VertexSet>, Vec<(usize, usize)>), GameError> {
    let m = dg.bags.len();
    if m == 1 {
        return Ok((Vec::new(), Vec::new()));
    }
    let first = dg.edges.iter().find(|e| e.0 == 0).map(|e| e.1).expect("every bag is reached from the start");
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in &dg.edges {
        let a = if a == 0 { first } else { a };
        let (a, b) = (a.min(b) - 1, a.max(b) - 1);
        if a != b && !edges.contains(&(a, b)) {
            edges.push((a, b));
        }
    }
    Ok((dg.bags[1..].to_vec(), edges))
}

/// Reads the decompositions back out of a strategy that wins monotonely
/// with cooperation at most `k`: the bags a team plays against a lone robber
/// and the moves between them. Returns path decompositions for the
/// invisible robber and tree decompositions for the visible one.
pub fn decompositions_from_strategy(
    strategy: &CopStrategy,
    g: &Graph,
    variant: Variant,
    k: usize,
    max_states: usize,
) -> Result<Vec<Decomposition>, GameError> {
    match verify_cop_strategy(g, strategy, k, variant, max_states)? {
        Verdict::WinsMonotone { .. } => {}
        Verdict::WinsNonMonotone { .. } => return Err(GameError::NotMonotoneWinning("robber can force recontamination".into())),
        Verdict::Loses(t) => return Err(GameError::NotMonotoneWinning(format!("robber wins ({})", t.outcome))),
    }
    let mut decs = Vec::with_capacity(strategy.teams.len());
    for team in 0..strategy.teams.len() {
        let dg = explore_team(g, strategy, team, variant)?;
        let (bags, edges) = contract_start(&dg)?;
        let d = match variant {
            Variant::Invisible => {
                let is_path = edges.len() + 1 == bags.len().max(1) && edges.iter().all(|&(a, b)| b == a + 1);
                if !is_path {
                    return Err(GameError::Extraction(format!("team {} does not play a fixed sequence", team + 1)));
                }
                Decomposition::path(bags)
            }
            Variant::Visible => {
                let host = Graph::from_edges(bags.len(), edges).map_err(|e| GameError::Extraction(e.to_string()))?;
                if bags.is_empty() {
                    Decomposition::trivial(Kind::Tree, g)
                } else {
                    Decomposition::tree(host, bags).map_err(|e| GameError::Extraction(e.to_string()))?
                }
            }
        };
        let d = if d.node_count() == 0 { Decomposition::trivial(d.kind(), g) } else { d };
        d.validate(g).map_err(|v| GameError::Extraction(format!("team {}: {v}", team + 1)))?;
        decs.push(d);
    }
    let product = product_decomposition(&decs, g).map_err(|e| GameError::Extraction(e.to_string()))?;
    if product.width().max_bag > k {
        return Err(GameError::Extraction(format!(
            "transversal intersection {} exceeds budget {k}",
            product.width().max_bag
        )));
    }
    Ok(decs)
}
