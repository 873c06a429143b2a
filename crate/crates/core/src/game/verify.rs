//! Exhaustive check of a cop strategy against every robber behaviour.
//!
//! Cop answers depend only on the current position, so the play graph over
//! positions is finite and the robber wins exactly when some reachable move
//! breaks the budget or some reachable position repeats. A depth-first
//! search with on-stack marks finds either, and the stack is the witness.

use std::collections::HashMap;

use super::{CopStrategy, Game, GameError, GameMove, Outcome, Position, Status, Transcript, Variant};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every play is won and every territory only shrinks.
    WinsMonotone { cooperation: usize },
    /// Every play is won, but the robber can force some territory to grow.
    WinsNonMonotone { cooperation: usize },
    Loses(Transcript),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::WinsMonotone { .. } => "wins_monotone",
            Verdict::WinsNonMonotone { .. } => "wins_nonmonotone",
            Verdict::Loses(_) => "loses",
        }
    }

    pub fn cooperation(&self) -> Option<usize> {
        match self {
            Verdict::WinsMonotone { cooperation } | Verdict::WinsNonMonotone { cooperation } => Some(*cooperation),
            Verdict::Loses(_) => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    OnStack,
    Done,
}

struct Successor {
    mv: GameMove,
    step: super::Step,
}

fn successors(game: &Game, strategy: &CopStrategy, pos: &Position) -> Result<Vec<Successor>, GameError> {
    let mut out = Vec::new();
    for team in pos.selectable_teams() {
        let (z, r) = &pos.pairs[team];
        let new_z = strategy.next(team, z, r)?;
        for new_r in game.replies(pos, team, &new_z)? {
            let mv = GameMove { team, new_z: new_z.clone(), new_r };
            let step = game.apply(pos, &mv)?;
            out.push(Successor { mv, step });
        }
    }
    Ok(out)
}

struct Frame {
    position: Position,
    /// Move that led here, with its monotone flag.
    arrived_by: Option<(GameMove, bool)>,
    successors: Vec<Successor>,
    next: usize,
}

fn witness(
    game: &Game,
    stack: &[Frame],
    last: (GameMove, Position, bool),
    outcome: Outcome,
) -> Transcript {
    let mut t = Transcript::new(game.variant, game.teams, game.k, stack[0].position.clone());
    for f in &stack[1..] {
        let (mv, monotone) = f.arrived_by.clone().expect("only the root frame has no move");
        t.push(mv, f.position.clone(), monotone);
    }
    t.push(last.0, last.1, last.2);
    t.outcome = outcome;
    t
}

/// Plays `strategy` (one rule per team) against every robber choice of
/// teams and replies, from every starting position. When the robber cannot
/// legally move at all, the cops are declared winners.
pub fn verify_cop_strategy(
    g: &Graph,
    strategy: &CopStrategy,
    k: usize,
    variant: Variant,
    max_states: usize,
) -> Result<Verdict, GameError> {
    let teams = strategy.teams.len();
    let game = Game::new(g, variant, teams, k);
    let mut marks: HashMap<Position, Mark> = HashMap::new();
    let mut cooperation = 0;
    let mut monotone = true;
    for start in game.initial_positions() {
        if marks.contains_key(&start) {
            continue;
        }
        match game.status(&start) {
            Status::CopsWin => {
                marks.insert(start, Mark::Done);
                continue;
            }
            Status::RobberWinsCooperation => {
                let mut t = Transcript::new(variant, teams, k, start);
                t.outcome = Outcome::RobberWinsCooperation;
                return Ok(Verdict::Loses(t));
            }
            Status::Ongoing => {}
        }
        marks.insert(start.clone(), Mark::OnStack);
        let succ = successors(&game, strategy, &start)?;
        let mut stack = vec![Frame { position: start, arrived_by: None, successors: succ, next: 0 }];
        while let Some(top) = stack.last_mut() {
            cooperation = cooperation.max(top.position.cooperation());
            if top.next == top.successors.len() {
                let done = stack.pop().unwrap();
                marks.insert(done.position, Mark::Done);
                continue;
            }
            let Successor { mv, step } = {
                let s = &top.successors[top.next];
                Successor { mv: s.mv.clone(), step: s.step.clone() }
            };
            top.next += 1;
            monotone &= step.monotone;
            match step.status {
                Status::RobberWinsCooperation => {
                    let t = witness(&game, &stack, (mv, step.position, step.monotone), Outcome::RobberWinsCooperation);
                    return Ok(Verdict::Loses(t));
                }
                Status::CopsWin => {
                    cooperation = cooperation.max(step.position.cooperation());
                    marks.insert(step.position, Mark::Done);
                }
                Status::Ongoing => match marks.get(&step.position) {
                    Some(Mark::OnStack) => {
                        let t =
                            witness(&game, &stack, (mv, step.position, step.monotone), Outcome::RobberWinsNontermination);
                        return Ok(Verdict::Loses(t));
                    }
                    Some(Mark::Done) => {}
                    None => {
                        if marks.len() >= max_states {
                            return Err(GameError::StateCap { limit: max_states });
                        }
                        marks.insert(step.position.clone(), Mark::OnStack);
                        let succ = successors(&game, strategy, &step.position)?;
                        stack.push(Frame {
                            position: step.position,
                            arrived_by: Some((mv, step.monotone)),
                            successors: succ,
                            next: 0,
                        });
                    }
                },
            }
        }
    }
    Ok(if monotone { Verdict::WinsMonotone { cooperation } } else { Verdict::WinsNonMonotone { cooperation } })
}
