//! Exact treewidth, pathwidth and the two width hierarchies `lw_i` (lattice)
//! and `mw_i` (median), each with a certificate of `i` constituent
//! decompositions. All values use the largest-bag convention.

mod family;
mod oracle;
mod ordering;
mod tuple;

pub use oracle::lattice_oracle;

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::cliques::{chromatic_colouring, clique_number};
use crate::decomposition::{
    chromatic_median_decomposition, max_transversal_intersection, product_decomposition,
    write_decompositions, Decomposition, DecompositionError,
};
use crate::graph::{Graph, GraphError};
use crate::limits::{Limits, HARD_MAX_N};
use ordering::Style;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parameter {
    Tw,
    Pw,
    Lw,
    Mw,
}

impl Parameter {
    pub fn name(self) -> &'static str {
        match self {
            Parameter::Tw => "tw",
            Parameter::Pw => "pw",
            Parameter::Lw => "lw",
            Parameter::Mw => "mw",
        }
    }

    pub fn from_name(s: &str) -> Option<Parameter> {
        match s {
            "tw" => Some(Parameter::Tw),
            "pw" => Some(Parameter::Pw),
            "lw" => Some(Parameter::Lw),
            "mw" => Some(Parameter::Mw),
            _ => None,
        }
    }

    fn style(self) -> Style {
        match self {
            Parameter::Pw | Parameter::Lw => Style::Path,
            Parameter::Tw | Parameter::Mw => Style::Tree,
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exactness {
    Exact,
    UpperBound,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::Exact => "exact",
            Exactness::UpperBound => "upper_bound",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("{what} is limited to {limit} vertices, graph has {n} (raise {env} or use --bound)", env = crate::limits::MAX_N_ENV)]
    TooLarge { what: &'static str, n: usize, limit: usize },
    #[error("i must be at least 1")]
    ZeroI,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error("hierarchy check failed: {0}")]
    Hierarchy(String),
    #[error("internal certificate check failed: {0}")]
    Certificate(String),
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    pub limits: Limits,
    /// Worker threads for the completion enumeration; 0 and 1 run inline.
    pub jobs: usize,
    /// Return a heuristic upper bound instead of failing above the caps.
    pub bound: bool,
}

impl SolveOptions {
    pub fn from_env() -> Self {
        SolveOptions { limits: Limits::from_env(), jobs: 1, bound: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthResult {
    pub parameter: Parameter,
    /// 1 for tw and pw.
    pub i: usize,
    /// Largest bag (or largest transversal intersection).
    pub value: usize,
    /// `i` path decompositions (pw, lw) or tree decompositions (tw, mw).
    pub certificate: Vec<Decomposition>,
    pub exactness: Exactness,
}

impl WidthResult {
    /// Median decomposition on the product of the certificate hosts.
    pub fn product(&self, g: &Graph) -> Result<Decomposition, DecompositionError> {
        product_decomposition(&self.certificate, g)
    }

    pub fn summary_line(&self) -> String {
        format!("result {} {} {} {}", self.parameter, self.i, self.value, self.exactness)
    }

    /// Certificate blocks followed by the summary line.
    pub fn to_text(&self) -> String {
        let mut out = write_decompositions(&self.certificate);
        writeln!(out, "{}", self.summary_line()).unwrap();
        out
    }

    fn check(&self, g: &Graph) -> Result<(), SolverError> {
        for (j, d) in self.certificate.iter().enumerate() {
            d.validate(g).map_err(|v| SolverError::Certificate(format!("member {j}: {v}")))?;
        }
        let w = max_transversal_intersection(&self.certificate);
        if w != self.value {
            return Err(SolverError::Certificate(format!(
                "certificate attains {w}, reported {}",
                self.value
            )));
        }
        Ok(())
    }
}

fn run_parallel<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs <= 1 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn masks(g: &Graph) -> Result<Vec<u64>, SolverError> {
    g.adjacency_masks()
        .map_err(|_| SolverError::TooLarge { what: "any solver", n: g.order(), limit: HARD_MAX_N })
}

fn ordering_result(g: &Graph, parameter: Parameter, opts: &SolveOptions) -> Result<WidthResult, SolverError> {
    let n = g.order();
    let adj = masks(g)?;
    let style = parameter.style();
    let (value, order, exactness) = if n <= opts.limits.ordering_max_n {
        let (w, o) = ordering::optimal_ordering(&adj, style);
        (w, o, Exactness::Exact)
    } else if opts.bound {
        let (w, o) = ordering::greedy_ordering(&adj, style);
        (w, o, Exactness::UpperBound)
    } else {
        let what = if style == Style::Path { "pathwidth" } else { "treewidth" };
        return Err(SolverError::TooLarge { what, n, limit: opts.limits.ordering_max_n });
    };
    let d = ordering::decomposition_from_ordering(g, style, &order);
    let result = WidthResult { parameter, i: 1, value, certificate: vec![d], exactness };
    result.check(g)?;
    Ok(result)
}

pub fn treewidth(g: &Graph, opts: &SolveOptions) -> Result<WidthResult, SolverError> {
    ordering_result(g, Parameter::Tw, opts)
}

pub fn pathwidth(g: &Graph, opts: &SolveOptions) -> Result<WidthResult, SolverError> {
    ordering_result(g, Parameter::Pw, opts)
}

/// The minimal completions of one hierarchy, computed once and reused for
/// every `i`.
pub struct Hierarchy<'g> {
    g: &'g Graph,
    parameter: Parameter,
    omega: usize,
    family: Option<Vec<family::Completion>>,
}

impl<'g> Hierarchy<'g> {
    /// `parameter` must be [`Parameter::Lw`] or [`Parameter::Mw`].
    pub fn new(g: &'g Graph, parameter: Parameter, opts: &SolveOptions) -> Result<Self, SolverError> {
        assert!(matches!(parameter, Parameter::Lw | Parameter::Mw));
        let n = g.order();
        let (limit, what) = match parameter {
            Parameter::Lw => (opts.limits.lattice_max_n, "latticewidth"),
            _ => (opts.limits.median_max_n, "medianwidth"),
        };
        let adj = masks(g)?;
        let omega = crate::cliques::clique_number_masks(&adj);
        let family = if n <= limit {
            let parallel = opts.jobs > 1;
            Some(run_parallel(opts.jobs, || family::minimal_completions(&adj, parameter.style(), parallel)))
        } else if opts.bound {
            None
        } else {
            return Err(SolverError::TooLarge { what, n, limit });
        };
        Ok(Hierarchy { g, parameter, omega, family })
    }

    /// Number of minimal completions, when enumerated.
    pub fn family_size(&self) -> Option<usize> {
        self.family.as_ref().map(Vec::len)
    }

    pub fn width(&self, i: usize) -> Result<WidthResult, SolverError> {
        if i == 0 {
            return Err(SolverError::ZeroI);
        }
        let style = self.parameter.style();
        let result = match &self.family {
            Some(fam) => {
                let out = tuple::best_tuple(fam, self.g.order(), i, self.omega);
                let certificate = out
                    .tuple
                    .iter()
                    .map(|&idx| {
                        let order: Vec<usize> = fam[idx].order.iter().map(|&v| v as usize).collect();
                        ordering::decomposition_from_ordering(self.g, style, &order)
                    })
                    .collect();
                WidthResult {
                    parameter: self.parameter,
                    i,
                    value: out.value,
                    certificate,
                    exactness: Exactness::Exact,
                }
            }
            None => self.bound_width(i)?,
        };
        result.check(self.g)?;
        Ok(result)
    }

    /// Greedy decomposition repeated `i` times, or the colour-class lattice
    /// when `i` reaches the chromatic number and that is smaller.
    fn bound_width(&self, i: usize) -> Result<WidthResult, SolverError> {
        let adj = masks(self.g)?;
        let style = self.parameter.style();
        let (w, order) = ordering::greedy_ordering(&adj, style);
        let d = ordering::decomposition_from_ordering(self.g, style, &order);
        let mut certificate = vec![d; i];
        let mut value = w;
        let colouring = chromatic_colouring(self.g)?;
        let chi = colouring.iter().copied().max().unwrap_or(0);
        if chi <= i && chi < value {
            let mut paths = crate::decomposition::chromatic_path_decompositions(self.g, &colouring)?;
            let extra = Decomposition::trivial(crate::decomposition::Kind::Path, self.g);
            paths.resize(i, extra);
            certificate = match style {
                Style::Path => paths,
                Style::Tree => paths
                    .iter()
                    .map(|p| p.with_kind(crate::decomposition::Kind::Tree))
                    .collect::<Result<_, _>>()?,
            };
            value = chi;
        }
        Ok(WidthResult { parameter: self.parameter, i, value, certificate, exactness: Exactness::UpperBound })
    }
}

pub fn lattice_width(g: &Graph, i: usize, opts: &SolveOptions) -> Result<WidthResult, SolverError> {
    Hierarchy::new(g, Parameter::Lw, opts)?.width(i)
}

pub fn median_width(g: &Graph, i: usize, opts: &SolveOptions) -> Result<WidthResult, SolverError> {
    Hierarchy::new(g, Parameter::Mw, opts)?.width(i)
}

/// Any parameter through one entry point; `i` is ignored for tw and pw.
pub fn width(g: &Graph, parameter: Parameter, i: usize, opts: &SolveOptions) -> Result<WidthResult, SolverError> {
    match parameter {
        Parameter::Tw => treewidth(g, opts),
        Parameter::Pw => pathwidth(g, opts),
        Parameter::Lw => lattice_width(g, i, opts),
        Parameter::Mw => median_width(g, i, opts),
    }
}

/// `ω(G)`, the common limit of both hierarchies as `i` grows.
pub fn clique_width_limit(g: &Graph) -> Result<usize, SolverError> {
    Ok(clique_number(g)?)
}

/// The clique number, the chromatic number, and the width of the
/// colour-class median decomposition (which equals `χ`), witnessing
/// `lw_χ ≤ χ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitCheck {
    pub omega: usize,
    pub chi: usize,
    pub chromatic_width: usize,
}

pub fn limit_check(g: &Graph) -> Result<LimitCheck, SolverError> {
    let colouring = chromatic_colouring(g)?;
    let chi = colouring.iter().copied().max().unwrap_or(0);
    let d = chromatic_median_decomposition(g, &colouring)?;
    Ok(LimitCheck { omega: clique_number(g)?, chi, chromatic_width: d.width().max_bag })
}

#[derive(Clone, Debug)]
pub struct Profile {
    pub lw: Vec<WidthResult>,
    pub mw: Vec<WidthResult>,
}

impl Profile {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in self.lw.iter().chain(&self.mw) {
            writeln!(out, "{}", r.summary_line()).unwrap();
        }
        out
    }
}

/// Both hierarchies for `i = 1..=i_max`. Fails if exact values are not
/// non-increasing in `i`, or if `mw_i > lw_i` for exact values.
pub fn hierarchy_profile(g: &Graph, i_max: usize, opts: &SolveOptions) -> Result<Profile, SolverError> {
    let mut profile = Profile { lw: Vec::new(), mw: Vec::new() };
    for (parameter, out) in [(Parameter::Lw, &mut profile.lw), (Parameter::Mw, &mut profile.mw)] {
        let h = Hierarchy::new(g, parameter, opts)?;
        for i in 1..=i_max {
            out.push(h.width(i)?);
        }
    }
    for series in [&profile.lw, &profile.mw] {
        for w in series.windows(2) {
            if w[0].exactness == Exactness::Exact && w[1].exactness == Exactness::Exact && w[1].value > w[0].value {
                return Err(SolverError::Hierarchy(format!(
                    "{} increases from i={} to i={}",
                    w[0].parameter, w[0].i, w[1].i
                )));
            }
        }
    }
    for (l, m) in profile.lw.iter().zip(&profile.mw) {
        if l.exactness == Exactness::Exact && m.exactness == Exactness::Exact && m.value > l.value {
            return Err(SolverError::Hierarchy(format!("mw_{} > lw_{}", m.i, l.i)));
        }
    }
    Ok(profile)
}
