//! Independent brute-force ground truth: complete backtracking search for
//! matchings of `Q^n` with a prescribed profile, exact counting, and
//! exhaustive admissible-profile enumeration at small dimension.
//!
//! The search core is deterministic and single-threaded per invocation;
//! `Exhausted-None` outcomes are proofs of non-existence. Independent
//! queries may be dispatched concurrently (see [`enumerate_admissible`]).

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::matching::{Dimension, Edge, Matching, MatchingError};
use crate::profile::Profile;

/// Default refusal gate for exhaustive searches.
pub const DEFAULT_MAX_DIMENSION: u32 = 5;

/// Resource limits for exhaustive searches.
///
/// `max_dimension` gates how large an instance a search will accept; the
/// default of 5 keeps every search at desk scale. Raising it is the
/// explicit override for bigger runs (the explorer families shift their
/// own size gates by the same amount, see [`crate::explorer`]).
#[derive(Clone, Debug)]
pub struct SearchBudget {
    pub max_dimension: u32,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_dimension: DEFAULT_MAX_DIMENSION,
            node_limit: None,
            time_limit: None,
        }
    }
}

impl SearchBudget {
    pub fn with_max_dimension(n: u32) -> Self {
        SearchBudget {
            max_dimension: n,
            ..SearchBudget::default()
        }
    }
}

/// Outcome of a single search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SearchStatus {
    /// A witness exists; the first one in deterministic branch order.
    Found(Matching),
    /// The search space was exhausted: no matching has this profile.
    ExhaustedNone,
    /// Node or time limit hit before the search completed.
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub nodes_explored: u64,
    /// Exact number of matchings, when counting.
    pub count: Option<u64>,
}

#[derive(Clone, PartialEq, Eq, Error, Debug)]
pub enum OracleError {
    #[error("dimension {dim} exceeds the search budget's max dimension {max}; raise max_dimension to override")]
    DimensionRefused { dim: u32, max: u32 },
    #[error("profile length {got} does not match dimension {dim}")]
    LengthMismatch { got: usize, dim: u32 },
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

/// Decides by complete backtracking whether some matching of `Q^n` has
/// profile `x`.
///
/// Branch order: the smallest uncovered, unskipped vertex is processed
/// next; it is matched along each direction of remaining budget in
/// increasing index order, and skipped last while the skip allowance
/// `2^n - 2|x|` lasts. Identical inputs yield identical witnesses and node
/// counts.
pub fn exists_with_profile(
    n: Dimension,
    x: &Profile,
    budget: &SearchBudget,
) -> Result<SearchResult, OracleError> {
    run_search(n, x, budget, Mode::Exists)
}

/// Counts all matchings of `Q^n` with profile `x` (as edge sets), exactly.
pub fn count_with_profile(
    n: Dimension,
    x: &Profile,
    budget: &SearchBudget,
) -> Result<SearchResult, OracleError> {
    run_search(n, x, budget, Mode::Count)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Exists,
    Count,
}

fn run_search(
    n: Dimension,
    x: &Profile,
    budget: &SearchBudget,
    mode: Mode,
) -> Result<SearchResult, OracleError> {
    if n.get() > budget.max_dimension {
        return Err(OracleError::DimensionRefused {
            dim: n.get(),
            max: budget.max_dimension,
        });
    }
    if x.len() != n.get() as usize {
        return Err(OracleError::LengthMismatch {
            got: x.len(),
            dim: n.get(),
        });
    }
    // Counting arguments settle oversized profiles without search: a
    // direction class only has 2^(n-1) edges, and 2|x| vertices must fit.
    if x.counts().iter().any(|&c| c > n.half()) || x.sum() > n.half() as u128 {
        return Ok(SearchResult {
            status: SearchStatus::ExhaustedNone,
            nodes_explored: 0,
            count: (mode == Mode::Count).then_some(0),
        });
    }

    let edges_needed: u64 = x.counts().iter().sum();
    let mut search = Search {
        n: n.get(),
        remaining: x.counts().to_vec(),
        used: vec![0u64; n.vertex_count().div_ceil(64) as usize],
        skips_left: n.vertex_count() - 2 * edges_needed,
        edges_left: edges_needed,
        stack: Vec::with_capacity(edges_needed as usize),
        nodes: 0,
        node_limit: budget.node_limit,
        deadline: budget.time_limit.map(|t| Instant::now() + t),
        mode,
        count: 0,
        witness: None,
        exceeded: false,
    };
    search.recurse(0);

    let status = if search.exceeded {
        SearchStatus::BudgetExceeded
    } else if let Some(w) = search.witness.take() {
        SearchStatus::Found(Matching::from_edges(n, w)?)
    } else {
        SearchStatus::ExhaustedNone
    };
    Ok(SearchResult {
        status,
        nodes_explored: search.nodes,
        count: (mode == Mode::Count).then_some(search.count),
    })
}

struct Search {
    n: u32,
    remaining: Vec<u64>,
    used: Vec<u64>,
    skips_left: u64,
    edges_left: u64,
    stack: Vec<Edge>,
    nodes: u64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    mode: Mode,
    count: u64,
    witness: Option<Vec<Edge>>,
    exceeded: bool,
}

impl Search {
    fn mark(&mut self, v: u64) {
        self.used[(v >> 6) as usize] |= 1u64 << (v & 63);
    }

    fn unmark(&mut self, v: u64) {
        self.used[(v >> 6) as usize] &= !(1u64 << (v & 63));
    }

    fn is_used(&self, v: u64) -> bool {
        self.used[(v >> 6) as usize] & (1u64 << (v & 63)) != 0
    }

    fn next_free(&self, from: u64) -> Option<u64> {
        let total = 1u64 << self.n;
        let mut v = from;
        while v < total {
            // Skip used vertices a word at a time.
            let word = self.used[(v >> 6) as usize] >> (v & 63);
            if word & 1 == 0 {
                return Some(v);
            }
            v += (word.trailing_ones() as u64).min(64 - (v & 63));
        }
        None
    }

    fn over_budget(&mut self) -> bool {
        if let Some(limit) = self.node_limit {
            if self.nodes >= limit {
                self.exceeded = true;
                return true;
            }
        }
        if let Some(deadline) = self.deadline {
            if self.nodes.is_multiple_of(1024) && Instant::now() >= deadline {
                self.exceeded = true;
                return true;
            }
        }
        false
    }

    /// Returns true when the caller should stop unwinding (found in
    /// exists-mode, or budget exceeded).
    fn recurse(&mut self, from: u64) -> bool {
        self.nodes += 1;
        if self.over_budget() {
            return true;
        }
        if self.edges_left == 0 {
            // Remaining vertices are all forced skips; the allowance
            // identity 2|x| + skips = 2^n makes them legal.
            match self.mode {
                Mode::Exists => {
                    self.witness = Some(self.stack.clone());
                    return true;
                }
                Mode::Count => {
                    self.count += 1;
                    return false;
                }
            }
        }
        let Some(v) = self.next_free(from) else {
            return false;
        };
        // Every vertex below `v` is used, so only higher neighbors remain;
        // those are exactly the directions whose bit of `v` is clear.
        for d in 0..self.n {
            if v & (1u64 << d) != 0 || self.remaining[d as usize] == 0 {
                continue;
            }
            let u = v | (1u64 << d);
            if self.is_used(u) {
                continue;
            }
            self.remaining[d as usize] -= 1;
            self.edges_left -= 1;
            self.mark(v);
            self.mark(u);
            self.stack.push(Edge::from_raw(v, d));
            let stop = self.recurse(v + 1);
            self.stack.pop();
            self.unmark(u);
            self.unmark(v);
            self.edges_left += 1;
            self.remaining[d as usize] += 1;
            if stop {
                return true;
            }
        }
        if self.skips_left > 0 {
            self.skips_left -= 1;
            self.mark(v);
            let stop = self.recurse(v + 1);
            self.unmark(v);
            self.skips_left += 1;
            if stop {
                return true;
            }
        }
        false
    }
}

/// All profiles of length `n` with sum at most `sum_bound` realized by some
/// matching, found by running [`exists_with_profile`] once per sorted
/// representative and expanding by symmetry.
///
/// Queries for distinct representatives run concurrently when the
/// `parallel` feature is enabled; the result set is ordered, so the output
/// does not depend on scheduling.
pub fn enumerate_admissible(
    n: Dimension,
    sum_bound: u64,
    budget: &SearchBudget,
) -> Result<BTreeSet<Profile>, OracleError> {
    if n.get() > budget.max_dimension {
        return Err(OracleError::DimensionRefused {
            dim: n.get(),
            max: budget.max_dimension,
        });
    }
    let reps = sorted_tuples_with_sum_at_most(n.get() as usize, sum_bound);
    let verdicts = query_reps(n, &reps, budget)?;
    let memo: BTreeMap<Profile, bool> = reps.into_iter().zip(verdicts).collect();

    let mut out = BTreeSet::new();
    let mut current = vec![0u64; n.get() as usize];
    expand_tuples(&mut current, 0, sum_bound, &mut |tuple| {
        let mut sorted = tuple.to_vec();
        sorted.sort_unstable();
        if memo[&Profile::new(sorted)] {
            out.insert(Profile::new(tuple.to_vec()));
        }
    });
    Ok(out)
}

#[cfg(feature = "parallel")]
fn query_reps(
    n: Dimension,
    reps: &[Profile],
    budget: &SearchBudget,
) -> Result<Vec<bool>, OracleError> {
    use rayon::prelude::*;
    reps.par_iter().map(|x| rep_exists(n, x, budget)).collect()
}

#[cfg(not(feature = "parallel"))]
fn query_reps(
    n: Dimension,
    reps: &[Profile],
    budget: &SearchBudget,
) -> Result<Vec<bool>, OracleError> {
    reps.iter().map(|x| rep_exists(n, x, budget)).collect()
}

fn rep_exists(n: Dimension, x: &Profile, budget: &SearchBudget) -> Result<bool, OracleError> {
    let result = exists_with_profile(n, x, budget)?;
    match result.status {
        SearchStatus::Found(_) => Ok(true),
        SearchStatus::ExhaustedNone => Ok(false),
        SearchStatus::BudgetExceeded => Err(OracleError::BudgetExceeded {
            nodes: result.nodes_explored,
        }),
    }
}

/// Non-decreasing tuples of the given length with sum at most `bound`.
fn sorted_tuples_with_sum_at_most(len: usize, bound: u64) -> Vec<Profile> {
    let mut out = Vec::new();
    let mut current = vec![0u64; len];
    fn rec(current: &mut Vec<u64>, pos: usize, min: u64, left: u64, out: &mut Vec<Profile>) {
        if pos == current.len() {
            out.push(Profile::new(current.clone()));
            return;
        }
        let mut v = min;
        while v <= left {
            current[pos] = v;
            rec(current, pos + 1, v, left - v, out);
            v += 1;
        }
    }
    rec(&mut current, 0, 0, bound, &mut out);
    out
}

/// All tuples (not merely sorted ones) of fixed length with sum at most
/// `bound`, visited in lexicographic order.
pub(crate) fn expand_tuples(
    current: &mut Vec<u64>,
    pos: usize,
    left: u64,
    visit: &mut impl FnMut(&[u64]),
) {
    if pos == current.len() {
        visit(current);
        return;
    }
    for v in 0..=left {
        current[pos] = v;
        expand_tuples(current, pos + 1, left - v, visit);
    }
    current[pos] = 0;
}
