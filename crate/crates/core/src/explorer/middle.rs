//! Perfect matchings of the middle layer graph `M_n` — the subgraph of
//! `Q^(2n+1)` induced by the two middle weight levels — and the binomial
//! parity helper used by its necessary conditions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{check_cap, matching_cover_problem, ExplorerError};
use crate::cover::CoverOutcome;
use crate::oracle::SearchBudget;
use crate::profile::Profile;

const DEFAULT_CAP: u32 = 2;

#[derive(Clone, Debug)]
pub struct MiddleLayerReport {
    pub n: u32,
    pub matchings: u64,
    /// Profiles over the `2n + 1` ambient directions.
    pub profiles: BTreeSet<Profile>,
    pub nodes: u64,
}

/// Exhaustively enumerates the perfect matchings of `M_n` and collects
/// their profiles. Every returned profile is checked against the necessary
/// conditions (parity, per-direction cap, total).
pub fn middle_layer_profiles(
    n: u32,
    budget: &SearchBudget,
) -> Result<MiddleLayerReport, ExplorerError> {
    check_cap("middle-layer", n, DEFAULT_CAP, budget)?;
    let ambient = 2 * n + 1;
    let total = 1u64 << ambient;

    let mut index: BTreeMap<u64, u32> = BTreeMap::new();
    for v in 0..total {
        let w = v.count_ones();
        if w == n || w == n + 1 {
            let next = index.len() as u32;
            index.insert(v, next);
        }
    }

    // Every edge goes from the lower layer upward along a clear bit.
    let mut edges = Vec::new();
    for (&v, &vi) in &index {
        if v.count_ones() != n {
            continue;
        }
        for d in 0..ambient {
            if v & (1u64 << d) == 0 {
                edges.push((vi, index[&(v | (1u64 << d))], d));
            }
        }
    }

    let problem = matching_cover_problem(index.len(), &edges, ambient as usize);
    let mut profiles = BTreeSet::new();
    let run = problem.enumerate(budget.node_limit, budget.time_limit, |counts| {
        profiles.insert(Profile::new(counts.to_vec()));
    });
    if run.outcome == CoverOutcome::BudgetExceeded {
        return Err(ExplorerError::BudgetExceeded { nodes: run.nodes });
    }
    for x in &profiles {
        assert!(
            middle_layer_necessary_conditions(x, n),
            "enumerated middle-layer profile {x} violates a necessary condition"
        );
    }
    Ok(MiddleLayerReport {
        n,
        matchings: run.solutions,
        profiles,
        nodes: run.nodes,
    })
}

/// The three necessary conditions on a perfect-matching profile of `M_n`:
/// every coordinate congruent to `C(2n+1, n+1)` mod 2, every coordinate at
/// most `C(2n-1, n-1)`, and total exactly `C(2n+1, n+1)`.
pub fn middle_layer_necessary_conditions(x: &Profile, n: u32) -> bool {
    if n == 0 || x.len() != (2 * n + 1) as usize {
        return false;
    }
    let total = binomial(2 * n as u64 + 1, n as u64 + 1);
    let cap = binomial(2 * n as u64 - 1, n as u64 - 1);
    let parity = total % 2;
    x.counts().iter().all(|&c| c % 2 == parity && c <= cap) && x.sum() == total as u128
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Parity of `C(top, bottom)` in O(1): odd iff `bottom AND (top - bottom)`
/// is zero (no borrow when subtracting in base 2).
pub fn lucas_parity(top: u64, bottom: u64) -> Result<Parity, ExplorerError> {
    if bottom > top || top > 1u64 << 62 {
        return Err(ExplorerError::BinomialOutOfRange { top, bottom });
    }
    Ok(if bottom & (top - bottom) == 0 {
        Parity::Odd
    } else {
        Parity::Even
    })
}

/// Exact `C(top, bottom)`; intended for the small arguments the explorer
/// needs, panics on u64 overflow.
pub fn binomial(top: u64, bottom: u64) -> u64 {
    if bottom > top {
        return 0;
    }
    let k = bottom.min(top - bottom);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc.checked_mul(top - i).expect("binomial overflows u64") / (i + 1);
    }
    acc
}
