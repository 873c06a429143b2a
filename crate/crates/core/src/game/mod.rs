//! The i-team cops and robber game. A position holds, for every team `j`,
//! the cop set `Z^j` it occupies and the robber territory `R^j` it faces.
//! The robber picks a team, that team moves to a new cop set, and the
//! robber territory of that team is updated: chosen by the robber among the
//! legal flaps when the robber is visible, forced by contamination when it
//! is not. The robber wins when the teams share more than `k` vertices at
//! once, or when play never ends.

mod strategy;
mod transcript;
mod verify;

pub use strategy::{
    decompositions_from_strategy, strategy_from_path_decompositions, strategy_from_tree_decompositions,
    CopStrategy, TeamStrategy,
};
pub use transcript::{interactive_play, replay, Transcript};
pub use verify::{verify_cop_strategy, Verdict};

use std::fmt;

use thiserror::Error;

use crate::graph::{flaps, Graph};
use crate::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Visible,
    Invisible,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Visible => "visible",
            Variant::Invisible => "invisible",
        }
    }

    pub fn from_name(s: &str) -> Option<Variant> {
        match s {
            "visible" => Some(Variant::Visible),
            "invisible" => Some(Variant::Invisible),
            _ => None,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("team {} does not exist (there are {teams})", .team + 1)]
    TeamOutOfRange { team: usize, teams: usize },
    #[error("team {} cannot be chosen: its robber territory is already covered", .team + 1)]
    TeamNotSelectable { team: usize },
    #[error("vertex {vertex} is not in the graph")]
    VertexOutOfRange { vertex: usize },
    #[error("robber reply {{{reply}}} is not a legal flap for team {}", .team + 1)]
    IllegalReply { team: usize, reply: VertexSet },
    #[error("team {} must face {{{expected}}} after contamination, not {{{got}}}", .team + 1)]
    WrongUpdate { team: usize, expected: VertexSet, got: VertexSet },
    #[error("the game is already over")]
    GameOver,
    #[error("state space exceeds {limit} positions")]
    StateCap { limit: usize },
    #[error("tree strategy of team {} is ambiguous at Z = {{{z}}}, R = {{{r}}}", .team + 1)]
    Collision { team: usize, z: VertexSet, r: VertexSet },
    #[error("cannot build a strategy from a {0} decomposition")]
    WrongKind(&'static str),
    #[error("strategy is not a monotone win: {0}")]
    NotMonotoneWinning(String),
    #[error("extracted decomposition is invalid: {0}")]
    Extraction(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("transcript does not replay: {0}")]
    Replay(String),
    #[error("i/o error: {0}")]
    Io(String),
}

/// One `(Z, R)` pair per team. Teams are indexed from 0 here and from 1 in
/// text.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    pub pairs: Vec<(VertexSet, VertexSet)>,
}

impl Position {
    pub fn new(pairs: Vec<(VertexSet, VertexSet)>) -> Self {
        Position { pairs }
    }

    /// Every team starts with no cops facing robber territory `r`.
    pub fn initial(i: usize, r: VertexSet) -> Self {
        Position { pairs: vec![(VertexSet::new(), r); i] }
    }

    pub fn teams(&self) -> usize {
        self.pairs.len()
    }

    /// `⋂ Z^j`.
    pub fn shared_cops(&self) -> VertexSet {
        intersect_all(self.pairs.iter().map(|(z, _)| z))
    }

    /// `|⋂ Z^j|`.
    pub fn cooperation(&self) -> usize {
        self.shared_cops().len()
    }

    pub fn selectable(&self, team: usize) -> bool {
        self.pairs.get(team).is_some_and(|(z, r)| !r.is_subset(z))
    }

    pub fn selectable_teams(&self) -> Vec<usize> {
        (0..self.teams()).filter(|&j| self.selectable(j)).collect()
    }

    pub fn all_caught(&self) -> bool {
        self.pairs.iter().all(|(z, r)| r.is_subset(z))
    }

    /// `⋂ R^{j'}` over the teams other than `team`; `None` when there are none.
    fn others_territory(&self, team: usize) -> Option<VertexSet> {
        let mut it = self.pairs.iter().enumerate().filter(|&(j, _)| j != team).map(|(_, (_, r))| r);
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, r| acc.intersection(r)))
    }
}

fn intersect_all<'a>(mut sets: impl Iterator<Item = &'a VertexSet>) -> VertexSet {
    match sets.next() {
        Some(first) => sets.fold(first.clone(), |acc, s| acc.intersection(s)),
        None => VertexSet::new(),
    }
}

/// The robber picks `team`; its cops move to `new_z` and the robber
/// territory of that team becomes `new_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameMove {
    pub team: usize,
    pub new_z: VertexSet,
    pub new_r: VertexSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ongoing,
    CopsWin,
    RobberWinsCooperation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    CopsWin,
    RobberWinsCooperation,
    RobberWinsNontermination,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::CopsWin => "cops_win",
            Outcome::RobberWinsCooperation => "robber_wins_cooperation",
            Outcome::RobberWinsNontermination => "robber_wins_nontermination",
        }
    }

    pub fn from_name(s: &str) -> Option<Outcome> {
        [Outcome::CopsWin, Outcome::RobberWinsCooperation, Outcome::RobberWinsNontermination]
            .into_iter()
            .find(|o| o.name() == s)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of [`Game::apply`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub position: Position,
    pub status: Status,
    /// The moved team's robber territory did not grow.
    pub monotone: bool,
}

fn check_team(position: &Position, team: usize) -> Result<(), GameError> {
    if team >= position.teams() {
        return Err(GameError::TeamOutOfRange { team, teams: position.teams() });
    }
    if !position.selectable(team) {
        return Err(GameError::TeamNotSelectable { team });
    }
    Ok(())
}

fn check_vertices(g: &Graph, s: &VertexSet) -> Result<(), GameError> {
    match s.iter().find(|&v| v >= g.order()) {
        Some(vertex) => Err(GameError::VertexOutOfRange { vertex }),
        None => Ok(()),
    }
}

/// Robber replies when `team` moves to `new_z` and the robber is visible.
/// An empty list means the robber may not pick this team now.
pub fn legal_robber_replies_visible(
    g: &Graph,
    position: &Position,
    team: usize,
    new_z: &VertexSet,
) -> Result<Vec<VertexSet>, GameError> {
    check_team(position, team)?;
    check_vertices(g, new_z)?;
    let (z_old, r_old) = &position.pairs[team];
    if r_old.is_subset(new_z) {
        return Ok(vec![r_old.clone()]);
    }
    // the (Z_old ∩ new_z)-flap holding all of R_old, if there is one
    let kept = z_old.intersection(new_z);
    let Some(start) = r_old.difference(&kept).first() else { return Ok(Vec::new()) };
    let common = g.component_of(start, &kept);
    if !r_old.is_subset(&common) {
        return Ok(Vec::new());
    }
    let others = position.others_territory(team);
    Ok(flaps(g, new_z)
        .into_iter()
        .filter(|f| f.is_subset(&common) && others.as_ref().is_none_or(|o| f.intersects(o)))
        .collect())
}

/// New robber territory of `team` when it moves to `new_z` and the robber is
/// invisible: everything the robber could reach from `R_old` while the
/// vertices kept by the team block it, minus the new cop set.
pub fn invisible_update(
    g: &Graph,
    position: &Position,
    team: usize,
    new_z: &VertexSet,
) -> Result<VertexSet, GameError> {
    check_team(position, team)?;
    check_vertices(g, new_z)?;
    let (z_old, r_old) = &position.pairs[team];
    if r_old.is_subset(new_z) {
        return Ok(r_old.clone());
    }
    Ok(g.reach(r_old, &z_old.intersection(new_z)).difference(new_z))
}

/// A graph with a game variant, team count and cooperation budget.
#[derive(Clone, Copy, Debug)]
pub struct Game<'g> {
    pub g: &'g Graph,
    pub variant: Variant,
    pub teams: usize,
    pub k: usize,
}

impl<'g> Game<'g> {
    pub fn new(g: &'g Graph, variant: Variant, teams: usize, k: usize) -> Self {
        Game { g, variant, teams, k }
    }

    /// Starting positions the robber may choose from: one per component
    /// with vision, the whole vertex set without.
    pub fn initial_positions(&self) -> Vec<Position> {
        match self.variant {
            Variant::Visible => {
                let comps = self.g.components();
                if comps.is_empty() {
                    return vec![Position::initial(self.teams, VertexSet::new())];
                }
                comps.into_iter().map(|c| Position::initial(self.teams, c)).collect()
            }
            Variant::Invisible => vec![Position::initial(self.teams, self.g.vertices())],
        }
    }

    /// With vision the robber is also caught once no vertex lies in every
    /// territory.
    pub fn status(&self, position: &Position) -> Status {
        let cornered = self.variant == Variant::Visible
            && intersect_all(position.pairs.iter().map(|(_, r)| r)).is_empty();
        if position.cooperation() > self.k {
            Status::RobberWinsCooperation
        } else if cornered || position.all_caught() {
            Status::CopsWin
        } else {
            Status::Ongoing
        }
    }

    /// Every legal robber territory after `team` moves to `new_z`. With
    /// vision, a move that leaves the robber no flap still happens: the
    /// robber is caught there, with territory `∅`, and the budget is checked
    /// against the new cop set.
    pub fn replies(&self, position: &Position, team: usize, new_z: &VertexSet) -> Result<Vec<VertexSet>, GameError> {
        match self.variant {
            Variant::Visible => {
                let replies = legal_robber_replies_visible(self.g, position, team, new_z)?;
                Ok(if replies.is_empty() { vec![VertexSet::new()] } else { replies })
            }
            Variant::Invisible => invisible_update(self.g, position, team, new_z).map(|r| vec![r]),
        }
    }

    pub fn apply(&self, position: &Position, mv: &GameMove) -> Result<Step, GameError> {
        if self.status(position) != Status::Ongoing {
            return Err(GameError::GameOver);
        }
        check_vertices(self.g, &mv.new_r)?;
        match self.variant {
            Variant::Visible => {
                if !self.replies(position, mv.team, &mv.new_z)?.contains(&mv.new_r) {
                    return Err(GameError::IllegalReply { team: mv.team, reply: mv.new_r.clone() });
                }
            }
            Variant::Invisible => {
                let expected = invisible_update(self.g, position, mv.team, &mv.new_z)?;
                if expected != mv.new_r {
                    return Err(GameError::WrongUpdate { team: mv.team, expected, got: mv.new_r.clone() });
                }
            }
        }
        let monotone = mv.new_r.is_subset(&position.pairs[mv.team].1);
        let mut next = position.clone();
        next.pairs[mv.team] = (mv.new_z.clone(), mv.new_r.clone());
        let status = self.status(&next);
        Ok(Step { position: next, status, monotone })
    }
}
