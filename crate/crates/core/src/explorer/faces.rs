//! Partitions of `E(Q^n)` into 4-cycles (2-faces) and their pair-weighting
//! profiles.

use std::collections::{BTreeMap, BTreeSet};

use super::{check_cap, pair_list, ExplorerError, PairWeighting};
use crate::cover::{CoverOption, CoverOutcome, CoverProblem};
use crate::matching::Dimension;
use crate::oracle::SearchBudget;

const DEFAULT_CAP: u32 = 4;

#[derive(Clone, Debug)]
pub struct FaceReport {
    pub n: u32,
    /// Number of distinct partitions of the edge set into 4-cycles.
    pub decompositions: u64,
    /// Exact set of weightings: each 4-cycle adds 1 to the pair of
    /// directions it spans.
    pub weightings: BTreeSet<PairWeighting>,
    pub nodes: u64,
}

/// Exhaustively partitions the edges of `Q^n` into 4-cycles and returns
/// the set of weightings that occur.
pub fn face_decomposition_profiles(
    n: Dimension,
    budget: &SearchBudget,
) -> Result<FaceReport, ExplorerError> {
    check_cap("faces", n.get(), DEFAULT_CAP, budget)?;
    let dims = n.get();

    // Index every edge of Q^n.
    let mut edge_index: BTreeMap<(u32, u64), u32> = BTreeMap::new();
    for d in 0..dims {
        for v in 0..n.vertex_count() {
            if v & (1u64 << d) == 0 {
                let next = edge_index.len() as u32;
                edge_index.insert((d, v), next);
            }
        }
    }

    // One option per 2-face: directions d1 < d2 and a base with both bits
    // clear; the face covers its four boundary edges.
    let pairs = pair_list(dims as usize);
    let mut options = Vec::new();
    for (label, &(d1, d2)) in pairs.iter().enumerate() {
        for b in 0..n.vertex_count() {
            if b & (1u64 << d1) == 0 && b & (1u64 << d2) == 0 {
                options.push(CoverOption {
                    items: vec![
                        edge_index[&(d1, b)],
                        edge_index[&(d2, b)],
                        edge_index[&(d1, b | (1u64 << d2))],
                        edge_index[&(d2, b | (1u64 << d1))],
                    ],
                    label: label as u32,
                });
            }
        }
    }

    let problem = CoverProblem {
        num_items: edge_index.len(),
        num_labels: pairs.len(),
        options,
    };
    let mut weightings = BTreeSet::new();
    let run = problem.enumerate(budget.node_limit, budget.time_limit, |counts| {
        weightings.insert(PairWeighting::from_label_counts(dims as usize, counts));
    });
    if run.outcome == CoverOutcome::BudgetExceeded {
        return Err(ExplorerError::BudgetExceeded { nodes: run.nodes });
    }
    Ok(FaceReport {
        n: dims,
        decompositions: run.solutions,
        weightings,
        nodes: run.nodes,
    })
}
