//! Shared backtracking skeleton for the explorer: exact covers of a ground
//! set by labeled options.
//!
//! Perfect matchings of a labeled graph are the two-items-per-option case;
//! partitions of cube edges into 4-cycles are the four-items case. The
//! branch order mirrors the oracle: the lowest uncovered item is covered
//! next, trying its options in index order, so enumeration is
//! deterministic.

use std::time::{Duration, Instant};

pub(crate) struct CoverOption {
    pub items: Vec<u32>,
    pub label: u32,
}

pub(crate) struct CoverProblem {
    pub num_items: usize,
    pub num_labels: usize,
    pub options: Vec<CoverOption>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum CoverOutcome {
    Complete,
    BudgetExceeded,
}

pub(crate) struct CoverRun {
    pub outcome: CoverOutcome,
    pub nodes: u64,
    pub solutions: u64,
}

impl CoverProblem {
    /// Enumerates every exact cover, invoking `on_solution` with the label
    /// multiplicity vector of each.
    pub fn enumerate(
        &self,
        node_limit: Option<u64>,
        time_limit: Option<Duration>,
        mut on_solution: impl FnMut(&[u64]),
    ) -> CoverRun {
        let mut item_options: Vec<Vec<u32>> = vec![Vec::new(); self.num_items];
        for (i, opt) in self.options.iter().enumerate() {
            for &item in &opt.items {
                item_options[item as usize].push(i as u32);
            }
        }
        let mut state = CoverState {
            problem: self,
            item_options,
            covered: vec![false; self.num_items],
            label_counts: vec![0u64; self.num_labels],
            nodes: 0,
            solutions: 0,
            node_limit,
            deadline: time_limit.map(|t| Instant::now() + t),
            exceeded: false,
        };
        state.recurse(0, &mut on_solution);
        CoverRun {
            outcome: if state.exceeded {
                CoverOutcome::BudgetExceeded
            } else {
                CoverOutcome::Complete
            },
            nodes: state.nodes,
            solutions: state.solutions,
        }
    }
}

struct CoverState<'a> {
    problem: &'a CoverProblem,
    item_options: Vec<Vec<u32>>,
    covered: Vec<bool>,
    label_counts: Vec<u64>,
    nodes: u64,
    solutions: u64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    exceeded: bool,
}

impl CoverState<'_> {
    fn recurse(&mut self, from: usize, on_solution: &mut impl FnMut(&[u64])) -> bool {
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
        let Some(item) = (from..self.problem.num_items).find(|&i| !self.covered[i]) else {
            self.solutions += 1;
            on_solution(&self.label_counts);
            return false;
        };
        for oi in 0..self.item_options[item].len() {
            let opt_idx = self.item_options[item][oi] as usize;
            let opt = &self.problem.options[opt_idx];
            if opt.items.iter().any(|&i| self.covered[i as usize]) {
                continue;
            }
            for &i in &opt.items {
                self.covered[i as usize] = true;
            }
            self.label_counts[opt.label as usize] += 1;
            let stop = self.recurse(item + 1, on_solution);
            self.label_counts[opt.label as usize] -= 1;
            for &i in &opt.items {
                self.covered[i as usize] = false;
            }
            if stop {
                return true;
            }
        }
        false
    }
}
