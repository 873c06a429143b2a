//! Choosing `i` completions whose common edge set has the smallest clique
//! number.

use std::collections::HashMap;

use super::family::{all_pairs, omega, Completion, EdgeBits};

pub(crate) struct TupleOutcome {
    pub value: usize,
    /// Family indices, length `i`.
    pub tuple: Vec<usize>,
}

struct Search<'a> {
    family: &'a [Completion],
    n: usize,
    i: usize,
    lower: usize,
    best: usize,
    best_tuple: Vec<usize>,
    /// Largest remaining depth already explored below an intersection.
    seen: HashMap<EdgeBits, usize>,
    path: Vec<usize>,
}

impl Search<'_> {
    /// Returns `true` once the lower bound is reached.
    fn run(&mut self, current: EdgeBits) -> bool {
        let remaining = self.i - self.path.len();
        for idx in 0..self.family.len() {
            let next = current & self.family[idx].edges;
            if next == current {
                continue;
            }
            self.path.push(idx);
            let w = omega(self.n, next);
            if w < self.best {
                self.best = w;
                // shorter tuples are padded by repeating their last member
                let mut t = self.path.clone();
                t.resize(self.i, idx);
                self.best_tuple = t;
                if w <= self.lower {
                    return true;
                }
            }
            if remaining > 1 && self.seen.get(&next).is_none_or(|&r| r < remaining - 1) {
                self.seen.insert(next, remaining - 1);
                if self.run(next) {
                    return true;
                }
            }
            self.path.pop();
        }
        false
    }
}

/// Exhaustive over `i`-tuples (depth-first in family order), stopping early
/// when `lower` is reached. The family is sorted by ω, so the first member
/// alone is the best 1-tuple and serves as the starting incumbent.
pub(crate) fn best_tuple(family: &[Completion], n: usize, i: usize, lower: usize) -> TupleOutcome {
    assert!(i >= 1 && !family.is_empty());
    let mut search = Search {
        family,
        n,
        i,
        lower,
        best: family[0].omega,
        best_tuple: vec![0; i],
        seen: HashMap::new(),
        path: Vec::with_capacity(i),
    };
    if i > 1 && search.best > lower {
        search.run(all_pairs(n));
    }
    TupleOutcome { value: search.best, tuple: search.best_tuple }
}
