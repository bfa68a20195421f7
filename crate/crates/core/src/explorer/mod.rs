//! Exhaustive small-scale evidence beyond plain matchings of `Q^n`:
//! Hamilton cycle profiles, partitions of the cube's edges into 4-cycles,
//! perfect matchings of the middle layer graph, and perfect matchings of
//! the permutahedron.
//!
//! Every family enumerates exactly (or reports a blown budget); result
//! sets are ordered so output bytes are independent of scheduling. Each
//! family has a default size gate sized for desk-scale runs; raising
//! [`SearchBudget::max_dimension`](crate::oracle::SearchBudget) above its
//! default shifts every gate by the same amount.

mod faces;
mod hamilton;
mod middle;
mod perm;

pub use faces::{face_decomposition_profiles, FaceReport};
pub use hamilton::{conjectured_hamilton_profiles, hamilton_profiles, HamiltonReport};
pub use middle::{
    binomial, lucas_parity, middle_layer_necessary_conditions, middle_layer_profiles,
    MiddleLayerReport, Parity,
};
pub use perm::{permutahedron_profiles, PermutahedronReport};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cover::{CoverOption, CoverProblem};
use crate::oracle::{SearchBudget, DEFAULT_MAX_DIMENSION};

#[derive(Clone, PartialEq, Eq, Error, Debug)]
pub enum ExplorerError {
    #[error("{family} exploration limited to n <= {cap} under this budget; raise max_dimension to override")]
    SizeRefused {
        family: &'static str,
        n: u32,
        cap: u32,
    },
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("binomial arguments out of range: C({top}, {bottom})")]
    BinomialOutOfRange { top: u64, bottom: u64 },
}

/// Symmetric nonnegative integer weights on the unordered index pairs of
/// `[m]`; the profile type of 4-cycle decompositions and permutahedron
/// matchings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PairWeighting {
    m: usize,
    w: BTreeMap<(u32, u32), u64>,
}

impl PairWeighting {
    /// Zero weighting on all `C(m, 2)` pairs.
    pub fn new(m: usize) -> Self {
        let mut w = BTreeMap::new();
        for (i, j) in pair_list(m) {
            w.insert((i, j), 0);
        }
        PairWeighting { m, w }
    }

    /// Interprets `counts[k]` as the weight of the `k`-th pair in
    /// lexicographic order.
    pub fn from_label_counts(m: usize, counts: &[u64]) -> Self {
        let mut pw = PairWeighting::new(m);
        for ((i, j), &c) in pair_list(m).into_iter().zip(counts) {
            pw.w.insert((i, j), c);
        }
        pw
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Weight of the unordered pair `{i, j}`, 0-indexed.
    pub fn get(&self, i: u32, j: u32) -> u64 {
        let key = (i.min(j), i.max(j));
        self.w[&key]
    }

    /// `sum_{j != i} w({i, j})`.
    pub fn direction_sum(&self, i: u32) -> u64 {
        (0..self.m as u32)
            .filter(|&j| j != i)
            .map(|j| self.get(i, j))
            .sum()
    }

    pub fn is_even(&self) -> bool {
        self.w.values().all(|&c| c % 2 == 0)
    }

    pub fn pairs(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.w.iter().map(|(&k, &v)| (k, v))
    }

    /// `{"m": m, "w": {"i,j": count}}` with 1-indexed `i < j` keys.
    pub fn to_json_value(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for ((i, j), c) in self.pairs() {
            map.insert(format!("{},{}", i + 1, j + 1), serde_json::json!(c));
        }
        serde_json::json!({ "m": self.m, "w": map })
    }
}

/// Unordered pairs of `[m]` in lexicographic order.
pub fn pair_list(m: usize) -> Vec<(u32, u32)> {
    let mut pairs = Vec::with_capacity(m * (m.saturating_sub(1)) / 2);
    for i in 0..m as u32 {
        for j in i + 1..m as u32 {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Effective size cap for a family with the given default: raising
/// `max_dimension` above its default shifts the cap up by the same amount.
fn family_cap(default_cap: u32, budget: &SearchBudget) -> u32 {
    (default_cap + budget.max_dimension)
        .saturating_sub(DEFAULT_MAX_DIMENSION)
        .max(1)
}

fn check_cap(
    family: &'static str,
    n: u32,
    default_cap: u32,
    budget: &SearchBudget,
) -> Result<(), ExplorerError> {
    let cap = family_cap(default_cap, budget);
    if n > cap {
        return Err(ExplorerError::SizeRefused { family, n, cap });
    }
    Ok(())
}

/// Perfect matchings of a labeled graph as an exact-cover problem: items
/// are vertices, options are edges.
fn matching_cover_problem(
    num_vertices: usize,
    edges: &[(u32, u32, u32)],
    num_labels: usize,
) -> CoverProblem {
    CoverProblem {
        num_items: num_vertices,
        num_labels,
        options: edges
            .iter()
            .map(|&(u, v, label)| CoverOption {
                items: vec![u, v],
                label,
            })
            .collect(),
    }
}
