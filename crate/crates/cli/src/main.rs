//! `widthlab`: generators, width solvers, validators, median-graph reports
//! and the cops-and-robber referee behind one command.
//!
//! Exit codes: 0 success, 1 validation or verdict failure, 2 usage error,
//! 3 a size or state cap was exceeded.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use widthlab::decomposition::{parse_decompositions, write_decompositions};
use widthlab::game::{
    interactive_play, strategy_from_path_decompositions, strategy_from_tree_decompositions, verify_cop_strategy,
    CopStrategy, GameError, Variant, Verdict,
};
use widthlab::generators;
use widthlab::limits::Limits;
use widthlab::median::{build_lattice_embedding, check_median, strong_direction_partition, theta_classes, theta_report};
use widthlab::solver::{self, Parameter, SolveOptions, SolverError};
use widthlab::Graph;

#[derive(Parser)]
#[command(name = "widthlab", version, about = "Latticewidth, medianwidth and the i-Cops-and-Robber game on small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph from a named family.
    Gen {
        kind: GenKind,
        /// Family parameters, e.g. part sizes for multipartite or `rows cols` for grid.
        params: Vec<String>,
        /// Required by the random families.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute a width parameter with its certificate.
    Width {
        /// Graph file, `-` for standard input.
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "tw")]
        param: ParamArg,
        #[arg(long, default_value_t = 1)]
        i: usize,
        /// Both hierarchies for i = 1..=imax instead of a single value.
        #[arg(long)]
        profile: bool,
        #[arg(long, default_value_t = 3)]
        imax: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Fall back to heuristic upper bounds above the exact caps.
        #[arg(long)]
        bound: bool,
        /// Write the certificate here and print only the summary.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check decompositions against their axioms.
    Validate { graph: PathBuf, decomposition: PathBuf },
    /// Synthesize, verify or play cop strategies.
    Game {
        graph: PathBuf,
        #[arg(long, value_enum)]
        mode: GameMode,
        #[arg(long, value_enum, default_value = "visible")]
        variant: VariantArg,
        /// Number of cop teams when synthesizing.
        #[arg(long, default_value_t = 1)]
        i: usize,
        /// Cooperation budget; defaults to the synthesized width.
        #[arg(long)]
        k: Option<usize>,
        /// Decomposition file defining the strategy (one decomposition per team).
        #[arg(long)]
        strategy: Option<PathBuf>,
        #[arg(long)]
        max_states: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Median-graph reports.
    Median {
        graph: PathBuf,
        #[arg(value_enum)]
        report: MedianReport,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Multipartite,
    Cycle,
    Path,
    Tree,
    Grid,
    Hypercube,
    Complete,
    Star,
    Gnp,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParamArg {
    Tw,
    Pw,
    Lw,
    Mw,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GameMode {
    Verify,
    Play,
    Synthesize,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Visible,
    Invisible,
}

#[derive(Clone, Copy, ValueEnum)]
enum MedianReport {
    Check,
    Theta,
    Embed,
}

enum Failure {
    /// Exit 1, with the message on stdout after any partial report.
    Fail(String),
    Usage(String),
    Cap(String),
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::TooLarge { .. } => Failure::Cap(e.to_string()),
            SolverError::ZeroI => Failure::Usage(e.to_string()),
            other => Failure::Fail(other.to_string()),
        }
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        match e {
            GameError::StateCap { .. } => Failure::Cap(e.to_string()),
            other => Failure::Fail(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    let result = match cli.command {
        Command::Gen { kind, params, seed, output } => gen(kind, &params, seed).and_then(|t| emit(output, t)),
        Command::Width { graph, param, i, profile, imax, jobs, bound, output } => {
            width(&graph, param, i, profile.then_some(imax), jobs, bound, output)
        }
        Command::Validate { graph, decomposition } => validate(&graph, &decomposition),
        Command::Game { graph, mode, variant, i, k, strategy, max_states, jobs, output } => {
            let variant = match variant {
                VariantArg::Visible => Variant::Visible,
                VariantArg::Invisible => Variant::Invisible,
            };
            game(&graph, mode, variant, i, k, strategy, max_states, jobs, output, &mut stdout)
        }
        Command::Median { graph, report } => median(&graph, report),
    };
    match result {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Fail(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("widthlab: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("widthlab: {msg}");
            ExitCode::from(3)
        }
    }
}

fn read_text(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Fail(format!("stdin: {e}\n")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Fail(format!("{}: {e}\n", path.display())))
}

fn read_graph(path: &PathBuf) -> Result<Graph, Failure> {
    Graph::parse(&read_text(path)?).map_err(|e| Failure::Fail(format!("{}: {e}\n", path.display())))
}

/// Writes `text` to `output` when given, returning what still goes to stdout.
fn emit(output: Option<PathBuf>, text: String) -> Outcome {
    match output {
        Some(path) => {
            fs::write(&path, text).map_err(|e| Failure::Fail(format!("{}: {e}\n", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn options(jobs: usize, bound: bool) -> SolveOptions {
    SolveOptions { limits: Limits::from_env(), jobs, bound }
}

fn gen(kind: GenKind, params: &[String], seed: Option<u64>) -> Outcome {
    let numbers = || -> Result<Vec<usize>, Failure> {
        params
            .iter()
            .map(|p| p.parse::<usize>().map_err(|_| Failure::Usage(format!("`{p}` is not a non-negative integer"))))
            .collect()
    };
    let exactly = |count: usize| -> Result<Vec<usize>, Failure> {
        let v = numbers()?;
        if v.len() != count {
            return Err(Failure::Usage(format!("expected {count} parameter(s), got {}", v.len())));
        }
        Ok(v)
    };
    let seed = || seed.ok_or_else(|| Failure::Usage("random families need --seed".into()));
    let g = match kind {
        GenKind::Multipartite => {
            let parts = numbers()?;
            if parts.is_empty() {
                return Err(Failure::Usage("multipartite needs at least one part size".into()));
            }
            generators::complete_multipartite(&parts)
        }
        GenKind::Cycle => {
            let n = exactly(1)?[0];
            if n < 3 {
                return Err(Failure::Usage("a cycle needs at least 3 vertices".into()));
            }
            generators::cycle(n)
        }
        GenKind::Path => generators::path(exactly(1)?[0]),
        GenKind::Tree => generators::random_tree(exactly(1)?[0], seed()?),
        GenKind::Grid => {
            let v = exactly(2)?;
            generators::grid(v[0], v[1])
        }
        GenKind::Hypercube => {
            let d = exactly(1)?[0];
            if d > 16 {
                return Err(Failure::Usage("hypercube dimension is limited to 16".into()));
            }
            generators::hypercube(d)
        }
        GenKind::Complete => generators::complete(exactly(1)?[0]),
        GenKind::Star => generators::star(exactly(1)?[0]),
        GenKind::Gnp => {
            let [n, p] = params else {
                return Err(Failure::Usage("gnp takes `n p`".into()));
            };
            let n = n.parse::<usize>().map_err(|_| Failure::Usage(format!("`{n}` is not a vertex count")))?;
            let p = p.parse::<f64>().ok().filter(|p| (0.0..=1.0).contains(p));
            let p = p.ok_or_else(|| Failure::Usage("edge probability must lie in [0, 1]".into()))?;
            generators::random_gnp(n, p, seed()?)
        }
    };
    Ok(g.to_text())
}

fn width(
    path: &PathBuf,
    param: ParamArg,
    i: usize,
    profile: Option<usize>,
    jobs: usize,
    bound: bool,
    output: Option<PathBuf>,
) -> Outcome {
    let g = read_graph(path)?;
    let opts = options(jobs, bound);
    if let Some(imax) = profile {
        if imax == 0 {
            return Err(Failure::Usage("--imax must be at least 1".into()));
        }
        return Ok(solver::hierarchy_profile(&g, imax, &opts)?.to_text());
    }
    let parameter = match param {
        ParamArg::Tw => Parameter::Tw,
        ParamArg::Pw => Parameter::Pw,
        ParamArg::Lw => Parameter::Lw,
        ParamArg::Mw => Parameter::Mw,
    };
    let r = solver::width(&g, parameter, i, &opts)?;
    match output {
        Some(_) => {
            emit(output, write_decompositions(&r.certificate))?;
            Ok(format!("{}\n", r.summary_line()))
        }
        None => Ok(r.to_text()),
    }
}

fn validate(graph: &PathBuf, decomposition: &PathBuf) -> Outcome {
    let g = read_graph(graph)?;
    let decs = parse_decompositions(&read_text(decomposition)?)
        .map_err(|e| Failure::Fail(format!("{}: {e}\n", decomposition.display())))?;
    let mut out = String::new();
    let mut failed = false;
    for (idx, d) in decs.iter().enumerate() {
        match d.validate(&g) {
            Ok(()) => out.push_str(&format!("decomposition {idx} ok width {}\n", d.width().max_bag)),
            Err(v) => {
                failed = true;
                out.push_str(&format!("decomposition {idx} violation {v}\n"));
            }
        }
    }
    if failed { Err(Failure::Fail(out)) } else { Ok(out) }
}

/// Strategy from a decomposition file, or from an optimal certificate.
/// Returns the strategy, its decompositions, and the width they attain.
fn strategy(
    g: &Graph,
    variant: Variant,
    i: usize,
    file: Option<PathBuf>,
    opts: &SolveOptions,
) -> Result<(CopStrategy, String, usize), Failure> {
    let decs = match file {
        Some(path) => {
            parse_decompositions(&read_text(&path)?).map_err(|e| Failure::Fail(format!("{}: {e}\n", path.display())))?
        }
        None => {
            let param = match variant {
                Variant::Visible => Parameter::Mw,
                Variant::Invisible => Parameter::Lw,
            };
            solver::width(g, param, i, opts)?.certificate
        }
    };
    for (idx, d) in decs.iter().enumerate() {
        d.validate(g).map_err(|v| Failure::Fail(format!("strategy decomposition {idx} violation {v}\n")))?;
    }
    let s = match variant {
        Variant::Visible => strategy_from_tree_decompositions(&decs)?,
        Variant::Invisible => strategy_from_path_decompositions(&decs)?,
    };
    let w = widthlab::decomposition::max_transversal_intersection(&decs);
    Ok((s, write_decompositions(&decs), w))
}

#[allow(clippy::too_many_arguments)]
fn game(
    path: &PathBuf,
    mode: GameMode,
    variant: Variant,
    i: usize,
    k: Option<usize>,
    file: Option<PathBuf>,
    max_states: Option<usize>,
    jobs: usize,
    output: Option<PathBuf>,
    stdout: &mut impl Write,
) -> Outcome {
    if i == 0 {
        return Err(Failure::Usage("--i must be at least 1".into()));
    }
    let g = read_graph(path)?;
    let opts = options(jobs, false);
    let (s, text, w) = strategy(&g, variant, i, file, &opts)?;
    let k = k.unwrap_or(w);
    match mode {
        GameMode::Synthesize => {
            let mut out = emit(output, text)?;
            out.push_str(&format!("strategy {variant} i={} width {w}\n", s.teams.len()));
            Ok(out)
        }
        GameMode::Verify => {
            let cap = max_states.unwrap_or(opts.limits.game_max_states);
            let verdict = verify_cop_strategy(&g, &s, k, variant, cap)?;
            let line = match verdict.cooperation() {
                Some(c) => format!("verdict {} cooperation {c} k {k}\n", verdict.name()),
                None => format!("verdict loses k {k}\n"),
            };
            match verdict {
                Verdict::Loses(t) => {
                    let witness = emit(output, t.to_text())?;
                    Err(Failure::Fail(line + &witness))
                }
                _ => Ok(line),
            }
        }
        GameMode::Play => {
            let stdin = io::stdin();
            let t = interactive_play(&g, &s, variant, k, &mut stdin.lock(), stdout)?;
            emit(output, t.to_text())
                .map(|_| String::new())
        }
    }
}

fn median(path: &PathBuf, report: MedianReport) -> Outcome {
    let g = read_graph(path)?;
    let fail = |e: widthlab::median::MedianError| Failure::Fail(format!("not_median {e}\n"));
    match report {
        MedianReport::Check => {
            check_median(&g).map_err(fail)?;
            Ok("median\n".into())
        }
        MedianReport::Theta => Ok(theta_report(&theta_classes(&g).map_err(fail)?)),
        MedianReport::Embed => {
            let dirs = strong_direction_partition(&g).map_err(fail)?;
            Ok(build_lattice_embedding(&g, &dirs).map_err(fail)?.to_text())
        }
    }
}
