//! Exhaustive profiles of Hamilton cycles of `Q^n`.

use std::collections::BTreeSet;
use std::time::Instant;

use super::{check_cap, ExplorerError};
use crate::matching::Dimension;
use crate::oracle::SearchBudget;
use crate::profile::Profile;

const DEFAULT_CAP: u32 = 4;

#[derive(Clone, Debug)]
pub struct HamiltonReport {
    pub n: u32,
    /// Number of distinct undirected Hamilton cycles.
    pub cycles: u64,
    /// Exact set of transition-count profiles.
    pub profiles: BTreeSet<Profile>,
    /// Candidate set from the counting constraints alone: even, sum `2^n`,
    /// every coordinate in `[2, 2^(n-1)]`.
    pub conjectured: BTreeSet<Profile>,
    pub nodes: u64,
}

impl HamiltonReport {
    pub fn matches_conjectured(&self) -> bool {
        self.profiles == self.conjectured
    }
}

/// Enumerates every Hamilton cycle of `Q^n` by backtracking and collects
/// the exact profile set.
///
/// Cycles are canonicalized by rooting at vertex 0 and orienting toward
/// the smaller of its two cycle neighbors, so each undirected cycle is
/// counted once.
pub fn hamilton_profiles(
    n: Dimension,
    budget: &SearchBudget,
) -> Result<HamiltonReport, ExplorerError> {
    check_cap("hamilton", n.get(), DEFAULT_CAP, budget)?;
    let total = n.vertex_count();
    let mut search = CycleSearch {
        n: n.get(),
        used: vec![false; total as usize],
        path: Vec::with_capacity(total as usize),
        dir_counts: vec![0u64; n.get() as usize],
        profiles: BTreeSet::new(),
        cycles: 0,
        nodes: 0,
        node_limit: budget.node_limit,
        deadline: budget.time_limit.map(|t| Instant::now() + t),
        exceeded: false,
    };
    search.used[0] = true;
    search.path.push(0);
    search.extend(0);
    if search.exceeded {
        return Err(ExplorerError::BudgetExceeded {
            nodes: search.nodes,
        });
    }
    Ok(HamiltonReport {
        n: n.get(),
        cycles: search.cycles,
        profiles: search.profiles,
        conjectured: conjectured_hamilton_profiles(n),
        nodes: search.nodes,
    })
}

struct CycleSearch {
    n: u32,
    used: Vec<bool>,
    path: Vec<u64>,
    dir_counts: Vec<u64>,
    profiles: BTreeSet<Profile>,
    cycles: u64,
    nodes: u64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    exceeded: bool,
}

impl CycleSearch {
    fn extend(&mut self, v: u64) -> bool {
        self.nodes += 1;
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
        if self.path.len() as u64 == 1u64 << self.n {
            // Close the cycle if the end is adjacent to the root; count
            // each undirected cycle once via the orientation condition.
            if v.is_power_of_two() && self.path[1] < v {
                let d = v.trailing_zeros() as usize;
                self.dir_counts[d] += 1;
                self.profiles.insert(Profile::new(self.dir_counts.clone()));
                self.dir_counts[d] -= 1;
                self.cycles += 1;
            }
            return false;
        }
        for d in 0..self.n {
            let u = v ^ (1u64 << d);
            if self.used[u as usize] {
                continue;
            }
            self.used[u as usize] = true;
            self.path.push(u);
            self.dir_counts[d as usize] += 1;
            let stop = self.extend(u);
            self.dir_counts[d as usize] -= 1;
            self.path.pop();
            self.used[u as usize] = false;
            if stop {
                return true;
            }
        }
        false
    }
}

/// Even tuples with sum `2^n` and every coordinate in `[2, 2^(n-1)]`: the
/// counting constraints every Hamilton cycle profile must satisfy.
pub fn conjectured_hamilton_profiles(n: Dimension) -> BTreeSet<Profile> {
    let mut out = BTreeSet::new();
    if n.get() == 1 {
        return out;
    }
    let mut current = vec![0u64; n.get() as usize];
    let target = n.vertex_count() / 2;
    let max_half = n.half() / 2;
    fn rec(
        current: &mut Vec<u64>,
        pos: usize,
        left: u64,
        max_half: u64,
        out: &mut BTreeSet<Profile>,
    ) {
        let slots = (current.len() - pos) as u64;
        if pos == current.len() {
            if left == 0 {
                out.insert(Profile::new(current.iter().map(|&h| 2 * h).collect()));
            }
            return;
        }
        // Each remaining slot needs at least 1 and at most max_half halves.
        for v in 1..=max_half.min(left.saturating_sub(slots - 1)) {
            current[pos] = v;
            rec(current, pos + 1, left - v, max_half, out);
        }
    }
    rec(&mut current, 0, target, max_half, &mut out);
    out
}
