//! Perfect matchings of the permutahedron Perm(n): the graph on all
//! permutation vectors of `(1, ..., n+1)` whose edges swap two entries
//! holding consecutive values. Each edge is parallel to `e_i - e_j` for
//! the unordered position pair `{i, j}` doing the swap, which is its
//! direction label.

use std::collections::{BTreeMap, BTreeSet};

use super::{check_cap, matching_cover_problem, pair_list, ExplorerError, PairWeighting};
use crate::cover::CoverOutcome;
use crate::oracle::SearchBudget;

const DEFAULT_CAP: u32 = 3;

#[derive(Clone, Debug)]
pub struct PermutahedronReport {
    pub n: u32,
    pub matchings: u64,
    /// Weightings on the position pairs of `[n + 1]`.
    pub weightings: BTreeSet<PairWeighting>,
    pub nodes: u64,
}

/// Exhaustively enumerates the perfect matchings of Perm(n) and collects
/// their pair weightings.
pub fn permutahedron_profiles(
    n: u32,
    budget: &SearchBudget,
) -> Result<PermutahedronReport, ExplorerError> {
    check_cap("permutahedron", n, DEFAULT_CAP, budget)?;
    let len = (n + 1) as usize;
    let vertices = permutations(len);
    let index: BTreeMap<&[u8], u32> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i as u32))
        .collect();
    let pairs = pair_list(len);
    let pair_label: BTreeMap<(u32, u32), u32> = pairs
        .iter()
        .enumerate()
        .map(|(k, &p)| (p, k as u32))
        .collect();

    // For each vertex, swap each consecutive value pair (k, k+1); dedupe by
    // keeping the lexicographically smaller endpoint as the source.
    let mut edges = Vec::new();
    for (vi, v) in vertices.iter().enumerate() {
        let mut swapped = v.clone();
        for k in 1..=n as u8 {
            let i = v.iter().position(|&a| a == k).expect("value present");
            let j = v.iter().position(|&a| a == k + 1).expect("value present");
            swapped.swap(i, j);
            if v.as_slice() < swapped.as_slice() {
                let label = pair_label[&(i.min(j) as u32, i.max(j) as u32)];
                edges.push((vi as u32, index[swapped.as_slice()], label));
            }
            swapped.swap(i, j);
        }
    }

    let problem = matching_cover_problem(vertices.len(), &edges, pairs.len());
    let mut weightings = BTreeSet::new();
    let run = problem.enumerate(budget.node_limit, budget.time_limit, |counts| {
        weightings.insert(PairWeighting::from_label_counts(len, counts));
    });
    if run.outcome == CoverOutcome::BudgetExceeded {
        return Err(ExplorerError::BudgetExceeded { nodes: run.nodes });
    }
    Ok(PermutahedronReport {
        n,
        matchings: run.solutions,
        weightings,
        nodes: run.nodes,
    })
}

/// All permutations of `1..=len` in lexicographic order.
fn permutations(len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    let mut used = vec![false; len + 1];
    fn rec(len: usize, current: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for v in 1..=len as u8 {
            if !used[v as usize] {
                used[v as usize] = true;
                current.push(v);
                rec(len, current, used, out);
                current.pop();
                used[v as usize] = false;
            }
        }
    }
    rec(len, &mut current, &mut used, &mut out);
    out
}
