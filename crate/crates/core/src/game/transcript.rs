//! Play transcripts, replay and the interactive referee.
//!
//! ```text
//! game invisible i=1 k=2
//! move 1 : Z = 0 1 ; R = 2
//! move 1 : Z = 1 2 ; R = 2
//! outcome cops_win monotone=true
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::{BufRead, Write};

use super::{CopStrategy, Game, GameError, GameMove, Outcome, Position, Status, Variant};
use crate::graph::{strip_comment, Graph};
use crate::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub variant: Variant,
    pub teams: usize,
    pub k: usize,
    pub initial: Position,
    /// Each move with the position it produced.
    pub moves: Vec<(GameMove, Position)>,
    pub outcome: Outcome,
    /// Every move kept its team's robber territory from growing.
    pub monotone: bool,
}

fn write_set(out: &mut String, s: &VertexSet) {
    for v in s {
        let _ = write!(out, " {v}");
    }
}

impl Transcript {
    pub fn new(variant: Variant, teams: usize, k: usize, initial: Position) -> Self {
        Transcript { variant, teams, k, initial, moves: Vec::new(), outcome: Outcome::CopsWin, monotone: true }
    }

    pub fn push(&mut self, mv: GameMove, position: Position, monotone: bool) {
        self.monotone &= monotone;
        self.moves.push((mv, position));
    }

    pub fn final_position(&self) -> &Position {
        self.moves.last().map_or(&self.initial, |(_, p)| p)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("game {} i={} k={}\n", self.variant, self.teams, self.k);
        for (mv, _) in &self.moves {
            out.push_str(&move_line(mv));
            out.push('\n');
        }
        let _ = writeln!(out, "outcome {} monotone={}", self.outcome, self.monotone);
        out
    }
}

fn move_line(mv: &GameMove) -> String {
    let mut out = format!("move {} : Z =", mv.team + 1);
    write_set(&mut out, &mv.new_z);
    out.push_str(" ; R =");
    write_set(&mut out, &mv.new_r);
    out
}

fn parse_set(s: &str) -> Result<VertexSet, String> {
    s.split_whitespace().map(|t| t.parse::<usize>().map_err(|_| format!("invalid vertex `{t}`"))).collect()
}

fn parse_move(rest: &str) -> Result<GameMove, String> {
    let (team, rest) = rest.split_once(':').ok_or("expected `move j : Z = .. ; R = ..`")?;
    let team: usize = team.trim().parse().map_err(|_| format!("invalid team `{}`", team.trim()))?;
    if team == 0 {
        return Err("teams are numbered from 1".into());
    }
    let (z, r) = rest.split_once(';').ok_or("missing `;` between Z and R")?;
    let z = z.trim().strip_prefix("Z =").or_else(|| z.trim().strip_prefix("Z=")).ok_or("expected `Z =`")?;
    let r = r.trim().strip_prefix("R =").or_else(|| r.trim().strip_prefix("R=")).ok_or("expected `R =`")?;
    Ok(GameMove { team: team - 1, new_z: parse_set(z)?, new_r: parse_set(r)? })
}

struct Parsed {
    variant: Variant,
    teams: usize,
    k: usize,
    moves: Vec<GameMove>,
    outcome: Outcome,
    monotone: bool,
}

fn parse(text: &str) -> Result<Parsed, GameError> {
    let err = |line: usize, message: String| GameError::Parse { line, message };
    let mut header = None;
    let mut moves = Vec::new();
    let mut trailer = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        let no = idx + 1;
        if line.is_empty() {
            continue;
        }
        if trailer.is_some() {
            return Err(err(no, "content after the outcome line".into()));
        }
        let (word, rest) = line.split_once(' ').unwrap_or((line, ""));
        match word {
            "game" => {
                if header.is_some() {
                    return Err(err(no, "second `game` header".into()));
                }
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [variant, i, k] = toks[..] else {
                    return Err(err(no, "expected `game <variant> i=<i> k=<k>`".into()));
                };
                let variant = Variant::from_name(variant).ok_or_else(|| err(no, format!("unknown variant `{variant}`")))?;
                let num = |t: &str, key: &str| {
                    t.strip_prefix(key).and_then(|v| v.parse::<usize>().ok()).ok_or_else(|| err(no, format!("expected `{key}<n>`")))
                };
                header = Some((variant, num(i, "i=")?, num(k, "k=")?));
            }
            "move" if header.is_some() => moves.push(parse_move(rest).map_err(|m| err(no, m))?),
            "outcome" if header.is_some() => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [outcome, monotone] = toks[..] else {
                    return Err(err(no, "expected `outcome <verdict> monotone=<bool>`".into()));
                };
                let outcome = Outcome::from_name(outcome).ok_or_else(|| err(no, format!("unknown outcome `{outcome}`")))?;
                let monotone = match monotone {
                    "monotone=true" => true,
                    "monotone=false" => false,
                    _ => return Err(err(no, "expected `monotone=true` or `monotone=false`".into())),
                };
                trailer = Some((outcome, monotone));
            }
            _ if header.is_none() => return Err(err(no, "expected `game` header".into())),
            other => return Err(err(no, format!("unknown record `{other}`"))),
        }
    }
    let (variant, teams, k) = header.ok_or_else(|| err(0, "missing `game` header".into()))?;
    let (outcome, monotone) = trailer.ok_or_else(|| err(0, "missing `outcome` line".into()))?;
    Ok(Parsed { variant, teams, k, moves, outcome, monotone })
}

/// Re-referees a transcript on `g`: every move must be legal, and the
/// recorded outcome and monotone flag must be what the moves produce.
pub fn replay(g: &Graph, text: &str) -> Result<Transcript, GameError> {
    let p = parse(text)?;
    let game = Game::new(g, p.variant, p.teams, p.k);
    let starts = game.initial_positions();
    let initial = match (p.variant, p.moves.first().and_then(|m| m.new_r.first())) {
        (Variant::Visible, Some(v)) => starts
            .iter()
            .find(|s| s.pairs[0].1.contains(v))
            .cloned()
            .ok_or(GameError::VertexOutOfRange { vertex: v })?,
        _ => starts[0].clone(),
    };
    let mut t = Transcript::new(p.variant, p.teams, p.k, initial.clone());
    let mut seen = vec![initial];
    let mut status = game.status(&seen[0]);
    for mv in p.moves {
        let step = game.apply(t.final_position(), &mv)?;
        status = step.status;
        t.push(mv, step.position.clone(), step.monotone);
        seen.push(step.position);
    }
    let last = seen.last().unwrap();
    let repeated = seen[..seen.len() - 1].contains(last);
    let consistent = match p.outcome {
        Outcome::RobberWinsCooperation => status == Status::RobberWinsCooperation,
        Outcome::RobberWinsNontermination => status == Status::Ongoing && repeated,
        // an ongoing play ends for the cops when the robber concedes
        Outcome::CopsWin => status != Status::RobberWinsCooperation,
    };
    if !consistent {
        return Err(GameError::Replay(format!("moves do not end in {}", p.outcome)));
    }
    if p.monotone != t.monotone {
        return Err(GameError::Replay(format!("monotone flag should be {}", t.monotone)));
    }
    t.outcome = p.outcome;
    Ok(t)
}

fn io(e: std::io::Error) -> GameError {
    GameError::Io(e.to_string())
}

enum Command {
    Team(usize),
    Flap(usize),
    Quit,
}

fn read_command(input: &mut impl BufRead) -> Result<Option<Result<Command, String>>, GameError> {
    let mut line = String::new();
    if input.read_line(&mut line).map_err(io)? == 0 {
        return Ok(None);
    }
    let toks: Vec<&str> = line.split_whitespace().collect();
    let number = |t: &str| t.parse::<usize>().map_err(|_| format!("`{t}` is not a number"));
    Ok(Some(match toks[..] {
        ["quit"] => Ok(Command::Quit),
        ["team", j] => number(j).map(Command::Team),
        ["flap", v] => number(v).map(Command::Flap),
        _ => Err(format!("expected `team j`, `flap v` or `quit`, got `{}`", line.trim())),
    }))
}

fn show_position(out: &mut impl Write, pos: &Position) -> Result<(), GameError> {
    for (j, (z, r)) in pos.pairs.iter().enumerate() {
        writeln!(out, "team {} : Z = {{{z}}} ; R = {{{r}}}", j + 1).map_err(io)?;
    }
    Ok(())
}

/// Referee for a human robber against `strategy`. Commands are read one per
/// line: `team j` picks a team, `flap v` picks the reply containing `v` (or
/// the starting component), `quit` concedes. Bad input is reported and
/// asked again. End of input counts as conceding.
pub fn interactive_play(
    g: &Graph,
    strategy: &CopStrategy,
    variant: Variant,
    k: usize,
    input: &mut impl BufRead,
    out: &mut impl Write,
) -> Result<Transcript, GameError> {
    let teams = strategy.teams.len();
    let game = Game::new(g, variant, teams, k);
    let starts = game.initial_positions();
    writeln!(out, "game {variant} i={teams} k={k}").map_err(io)?;
    let mut conceded = false;
    let start = if starts.len() > 1 {
        let names: Vec<String> = starts.iter().map(|s| format!("{{{}}}", s.pairs[0].1)).collect();
        writeln!(out, "components: {}", names.join(" | ")).map_err(io)?;
        loop {
            writeln!(out, "choose a component with `flap v`").map_err(io)?;
            match read_command(input)? {
                None | Some(Ok(Command::Quit)) => {
                    conceded = true;
                    break starts[0].clone();
                }
                Some(Ok(Command::Flap(v))) => match starts.iter().find(|s| s.pairs[0].1.contains(v)) {
                    Some(s) => break s.clone(),
                    None => writeln!(out, "? vertex {v} is not in the graph").map_err(io)?,
                },
                Some(Ok(Command::Team(_))) => writeln!(out, "? choose a component first").map_err(io)?,
                Some(Err(m)) => writeln!(out, "? {m}").map_err(io)?,
            }
        }
    } else {
        starts[0].clone()
    };
    let mut t = Transcript::new(variant, teams, k, start.clone());
    let mut seen: HashSet<Position> = HashSet::from([start]);
    let mut status = game.status(t.final_position());
    'play: while !conceded && status == Status::Ongoing {
        let pos = t.final_position().clone();
        let mut options = Vec::new();
        for team in pos.selectable_teams() {
            let (z, r) = &pos.pairs[team];
            let new_z = strategy.next(team, z, r)?;
            let replies = game.replies(&pos, team, &new_z)?;
            if !replies.is_empty() {
                options.push((team, new_z, replies));
            }
        }
        if options.is_empty() {
            writeln!(out, "the robber has no legal move").map_err(io)?;
            break;
        }
        show_position(out, &pos)?;
        let names: Vec<String> = options.iter().map(|o| (o.0 + 1).to_string()).collect();
        writeln!(out, "legal teams: {}", names.join(" ")).map_err(io)?;
        let (team, new_z, replies) = loop {
            match read_command(input)? {
                None | Some(Ok(Command::Quit)) => {
                    conceded = true;
                    break 'play;
                }
                Some(Ok(Command::Team(j))) => match options.iter().find(|o| o.0 + 1 == j) {
                    Some(o) => break o.clone(),
                    None => writeln!(out, "? team {j} cannot be chosen").map_err(io)?,
                },
                Some(Ok(Command::Flap(_))) => writeln!(out, "? choose a team first").map_err(io)?,
                Some(Err(m)) => writeln!(out, "? {m}").map_err(io)?,
            }
        };
        let new_r = if replies.len() == 1 {
            replies[0].clone()
        } else {
            writeln!(out, "team {} moves to Z = {{{new_z}}}", team + 1).map_err(io)?;
            for r in &replies {
                writeln!(out, "flap {} : {{{r}}}", r.first().unwrap()).map_err(io)?;
            }
            loop {
                match read_command(input)? {
                    None | Some(Ok(Command::Quit)) => {
                        conceded = true;
                        break 'play;
                    }
                    Some(Ok(Command::Flap(v))) => match replies.iter().find(|r| r.contains(v)) {
                        Some(r) => break r.clone(),
                        None => writeln!(out, "? no legal flap contains {v}").map_err(io)?,
                    },
                    Some(Ok(Command::Team(_))) => writeln!(out, "? choose a flap first").map_err(io)?,
                    Some(Err(m)) => writeln!(out, "? {m}").map_err(io)?,
                }
            }
        };
        let mv = GameMove { team, new_z, new_r };
        let step = game.apply(&pos, &mv)?;
        writeln!(out, "{}", move_line(&mv)).map_err(io)?;
        status = step.status;
        let repeated = !seen.insert(step.position.clone());
        t.push(mv, step.position, step.monotone);
        if status == Status::Ongoing && repeated {
            t.outcome = Outcome::RobberWinsNontermination;
            writeln!(out, "position repeated").map_err(io)?;
            break;
        }
    }
    if conceded {
        writeln!(out, "robber concedes").map_err(io)?;
    }
    if status == Status::RobberWinsCooperation {
        t.outcome = Outcome::RobberWinsCooperation;
    }
    writeln!(out, "outcome {} monotone={}", t.outcome, t.monotone).map_err(io)?;
    Ok(t)
}
