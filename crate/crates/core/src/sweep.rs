//! Batched verification harnesses over whole families of profiles.
//!
//! Each sweep runs many independent construct/verify or oracle queries;
//! with the `parallel` feature (default) the queries fan out across a
//! rayon pool, and the sequential variants remain available for
//! comparison. Results are reduced into deterministic, order-independent
//! reports either way.

use crate::construct::{construct_even, decide, Decision};
use crate::matching::Dimension;
use crate::oracle::{exists_with_profile, OracleError, SearchBudget, SearchStatus};
use crate::profile::Profile;

/// Outcome of verifying one dimension's worth of perfect even tuples.
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub dimension: u32,
    pub tuples: u64,
    /// Profiles whose construction or verification failed, with the error.
    pub failures: Vec<(Profile, String)>,
}

impl SweepReport {
    pub fn all_verified(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every perfect even tuple of dimension `n` (all even vectors summing to
/// `2^(n-1)`), in lexicographic order.
pub fn perfect_even_profiles(n: Dimension) -> Vec<Profile> {
    assert!(n.get() >= 2, "no perfect even tuples exist in dimension 1");
    let half_edges = n.half() / 2;
    let mut out = Vec::new();
    let mut current = vec![0u64; n.get() as usize];
    crate::oracle::expand_tuples(&mut current, 0, half_edges, &mut |halves| {
        if halves.iter().sum::<u64>() == half_edges {
            out.push(Profile::new(halves.iter().map(|&h| 2 * h).collect()));
        }
    });
    out
}

/// Constructs and fully verifies a witness for every perfect even tuple of
/// dimension `n`.
pub fn verify_all_perfect_even(n: Dimension) -> SweepReport {
    let tuples = perfect_even_profiles(n);
    let failures = map_filter(&tuples, |x| check_tuple(x, n));
    SweepReport {
        dimension: n.get(),
        tuples: tuples.len() as u64,
        failures,
    }
}

/// Sequential variant of [`verify_all_perfect_even`].
pub fn verify_all_perfect_even_seq(n: Dimension) -> SweepReport {
    let tuples = perfect_even_profiles(n);
    let failures = tuples.iter().filter_map(|x| check_tuple(x, n)).collect();
    SweepReport {
        dimension: n.get(),
        tuples: tuples.len() as u64,
        failures,
    }
}

fn check_tuple(x: &Profile, n: Dimension) -> Option<(Profile, String)> {
    let err = match construct_even(x, n) {
        Ok(m) => match m.verify(x, true) {
            Ok(()) => return None,
            Err(e) => e.to_string(),
        },
        Err(e) => e.to_string(),
    };
    Some((x.clone(), err))
}

/// Outcome of cross-checking [`decide`] against the exhaustive oracle over
/// every profile of dimension `n` with coordinates and sum at most
/// `2^(n-1)`.
#[derive(Clone, Debug)]
pub struct AgreementReport {
    pub dimension: u32,
    pub checked: u64,
    /// True when every profile with sum strictly below `2^(n-1)` was
    /// realized by the oracle.
    pub below_half_all_admissible: bool,
    pub disagreements: Vec<(Profile, String)>,
}

impl AgreementReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Runs the decision procedure (with oracle fallback) and the oracle
/// independently on every candidate profile of dimension `n` and reports
/// any disagreement.
pub fn oracle_agreement(
    n: Dimension,
    budget: &SearchBudget,
) -> Result<AgreementReport, OracleError> {
    let tuples = candidate_profiles(n);
    let outcomes = map_all(&tuples, |x| check_agreement(x, n, budget))?;
    reduce_agreement(n, tuples, outcomes)
}

/// Sequential variant of [`oracle_agreement`].
pub fn oracle_agreement_seq(
    n: Dimension,
    budget: &SearchBudget,
) -> Result<AgreementReport, OracleError> {
    let tuples = candidate_profiles(n);
    let outcomes = tuples
        .iter()
        .map(|x| check_agreement(x, n, budget))
        .collect::<Result<Vec<_>, _>>()?;
    reduce_agreement(n, tuples, outcomes)
}

/// All profiles with every coordinate at most `2^(n-1)` and sum at most
/// `2^(n-1)`.
fn candidate_profiles(n: Dimension) -> Vec<Profile> {
    let mut out = Vec::new();
    let mut current = vec![0u64; n.get() as usize];
    crate::oracle::expand_tuples(&mut current, 0, n.half(), &mut |tuple| {
        if tuple.iter().all(|&c| c <= n.half()) {
            out.push(Profile::new(tuple.to_vec()));
        }
    });
    out
}

struct AgreementOutcome {
    oracle_found: bool,
    mismatch: Option<String>,
}

fn check_agreement(
    x: &Profile,
    n: Dimension,
    budget: &SearchBudget,
) -> Result<AgreementOutcome, OracleError> {
    let result = exists_with_profile(n, x, budget)?;
    let oracle_found = match result.status {
        SearchStatus::Found(m) => {
            m.verify(x, x.sum() == n.half() as u128)
                .map_err(OracleError::Matching)?;
            true
        }
        SearchStatus::ExhaustedNone => false,
        SearchStatus::BudgetExceeded => {
            return Err(OracleError::BudgetExceeded {
                nodes: result.nodes_explored,
            });
        }
    };
    let mismatch = match decide(x, n, Some(budget)) {
        Ok(Decision::Admissible(m)) => {
            if let Err(e) = m.verify(x, x.sum() == n.half() as u128) {
                Some(format!("decide witness rejected: {e}"))
            } else if !oracle_found {
                Some("decide says admissible, oracle exhausted".to_string())
            } else {
                None
            }
        }
        Ok(Decision::NotAdmissible(reason)) => {
            oracle_found.then(|| format!("decide says {reason}, oracle found a witness"))
        }
        Ok(Decision::Unknown) => Some("decide returned unknown within oracle range".to_string()),
        Err(e) => Some(format!("decide errored: {e}")),
    };
    Ok(AgreementOutcome {
        oracle_found,
        mismatch,
    })
}

fn reduce_agreement(
    n: Dimension,
    tuples: Vec<Profile>,
    outcomes: Vec<AgreementOutcome>,
) -> Result<AgreementReport, OracleError> {
    let mut below_half_all_admissible = true;
    let mut disagreements = Vec::new();
    for (x, outcome) in tuples.iter().zip(&outcomes) {
        if x.sum() < n.half() as u128 && !outcome.oracle_found {
            below_half_all_admissible = false;
        }
        if let Some(why) = &outcome.mismatch {
            disagreements.push((x.clone(), why.clone()));
        }
    }
    Ok(AgreementReport {
        dimension: n.get(),
        checked: tuples.len() as u64,
        below_half_all_admissible,
        disagreements,
    })
}

#[cfg(feature = "parallel")]
fn map_filter<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> Option<U> + Sync + Send) -> Vec<U> {
    use rayon::prelude::*;
    items.par_iter().filter_map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_filter<T, U>(items: &[T], f: impl Fn(&T) -> Option<U>) -> Vec<U> {
    items.iter().filter_map(f).collect()
}

#[cfg(feature = "parallel")]
fn map_all<T: Sync, U: Send, E: Send>(
    items: &[T],
    f: impl Fn(&T) -> Result<U, E> + Sync + Send,
) -> Result<Vec<U>, E> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_all<T, U, E>(items: &[T], f: impl Fn(&T) -> Result<U, E>) -> Result<Vec<U>, E> {
    items.iter().map(f).collect()
}
