//! Size caps for the exact solvers.
//!
//! Every exact routine refuses inputs above its cap rather than running for
//! hours. The `WIDTHLAB_MAX_N` environment variable, when set, replaces all
//! vertex caps at once (it never raises a cap beyond the representation
//! limit of the routine).

use std::env;

pub const MAX_N_ENV: &str = "WIDTHLAB_MAX_N";

/// Vertex sets inside solvers are `u64` masks.
pub const HARD_MAX_N: usize = 64;

/// The subset tables of the ordering dynamic programs have `2^n` entries.
pub const ORDERING_HARD_MAX_N: usize = 24;

/// Completion families store edge sets in a `u128`.
pub const FAMILY_HARD_MAX_N: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Treewidth / pathwidth subset dynamic programming.
    pub ordering_max_n: usize,
    /// Interval-completion family for latticewidth.
    pub lattice_max_n: usize,
    /// Chordal-completion family for medianwidth.
    pub median_max_n: usize,
    /// Positions explored by strategy verification.
    pub game_max_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { ordering_max_n: 16, lattice_max_n: 10, median_max_n: 9, game_max_states: 2_000_000 }
    }
}

impl Limits {
    /// Defaults, overridden by `WIDTHLAB_MAX_N` when set to a number.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = env::var(MAX_N_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            limits = limits.with_max_n(n);
        }
        limits
    }

    pub fn with_max_n(mut self, n: usize) -> Self {
        self.ordering_max_n = n.min(ORDERING_HARD_MAX_N);
        self.lattice_max_n = n.min(FAMILY_HARD_MAX_N);
        self.median_max_n = n.min(FAMILY_HARD_MAX_N);
        self
    }
}
