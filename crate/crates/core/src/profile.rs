//! Arithmetic on profile tuples: evenness, perfection, coordinatewise
//! domination, the `o` statistic, and the halving lift that dominates a
//! half-tuple by a perfect even tuple one dimension down.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matching::Dimension;

/// A vector of per-direction edge counts `(x_1, ..., x_n)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Profile(Vec<u64>);

impl Profile {
    pub fn new(counts: Vec<u64>) -> Self {
        Profile(counts)
    }

    pub fn zeros(n: usize) -> Self {
        Profile(vec![0; n])
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinate sum; `u128` so no input can overflow it.
    pub fn sum(&self) -> u128 {
        self.0.iter().map(|&c| c as u128).sum()
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().all(|c| c % 2 == 0)
    }

    pub fn is_sorted_ascending(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Each coordinate rounded up to the nearest even value.
    pub fn round_up_even(&self) -> Profile {
        Profile(self.0.iter().map(|&c| c + (c & 1)).collect())
    }

    /// Ascending copy together with the stable permutation `perm` such that
    /// applying `perm` to the sorted profile recovers `self`
    /// (`self[perm[i]] = sorted[i]`).
    pub fn sorted_with_permutation(&self) -> (Profile, Vec<u32>) {
        let mut idx: Vec<u32> = (0..self.0.len() as u32).collect();
        idx.sort_by_key(|&i| self.0[i as usize]);
        let sorted = Profile(idx.iter().map(|&i| self.0[i as usize]).collect());
        (sorted, idx)
    }

    /// Pushes counts forward along `perm`: `result[perm[d]] = self[d]`.
    pub fn permuted(&self, perm: &[u32]) -> Result<Profile, ProfileError> {
        if perm.len() != self.0.len() {
            return Err(ProfileError::LengthMismatch {
                got: perm.len(),
                expected: self.0.len(),
            });
        }
        let mut out = vec![0u64; self.0.len()];
        for (d, &p) in perm.iter().enumerate() {
            out[p as usize] = self.0[d];
        }
        Ok(Profile(out))
    }

    /// Parses a comma-separated count list such as `2,2,2,2`.
    pub fn parse(s: &str) -> Result<Self, ProfileError> {
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|_| ProfileError::Parse(format!("bad count {part:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Profile)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl std::ops::Index<usize> for Profile {
    type Output = u64;
    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

/// Classification flags of a profile in its ambient dimension.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ProfileClass {
    /// All coordinates even.
    pub is_even: bool,
    /// Coordinate sum equals `2^(n-1)`.
    pub is_perfect: bool,
    /// Number of coordinates, excluding the last, congruent to 2 mod 4.
    pub o_count: u32,
}

/// Number of coordinates of `x`, excluding the last, congruent to 2 mod 4.
pub fn o_statistic(x: &Profile) -> u32 {
    let counts = x.counts();
    if counts.is_empty() {
        return 0;
    }
    counts[..counts.len() - 1]
        .iter()
        .filter(|&&c| c % 4 == 2)
        .count() as u32
}

pub fn classify(x: &Profile, n: Dimension) -> Result<ProfileClass, ProfileError> {
    if x.len() != n.get() as usize {
        return Err(ProfileError::LengthMismatch {
            got: x.len(),
            expected: n.get() as usize,
        });
    }
    Ok(ProfileClass {
        is_even: x.is_even(),
        is_perfect: x.sum() == n.half() as u128,
        o_count: o_statistic(x),
    })
}

/// Coordinatewise `y <= x`. The admissible set is down-closed under this
/// partial order.
pub fn precedes(y: &Profile, x: &Profile) -> Result<bool, ProfileError> {
    if y.len() != x.len() {
        return Err(ProfileError::LengthMismatch {
            got: y.len(),
            expected: x.len(),
        });
    }
    Ok(y.counts().iter().zip(x.counts()).all(|(a, b)| a <= b))
}

/// Given an even, sorted `x` of length `n + 1` with `|x| <= 2^n` and
/// `x_{n+1} >= 2 o(x)`, produces a perfect even tuple in `N^n` dominating
/// the halved prefix `(x_1/2, ..., x_n/2)`.
///
/// Construction: add 1 to each halved coordinate whose original count is
/// 2 mod 4 (restoring evenness), then put the whole remaining deficit onto
/// the last coordinate, which keeps the tuple sorted.
pub fn lift_half(x: &Profile) -> Result<Profile, ProfileError> {
    let m = x.len();
    if m < 3 {
        return Err(ProfileError::TooShort { len: m });
    }
    if let Some(d) = x.counts().iter().position(|&c| c % 2 != 0) {
        return Err(ProfileError::NotEven { coordinate: d + 1 });
    }
    if !x.is_sorted_ascending() {
        return Err(ProfileError::NotSorted);
    }
    let capacity = 1u64 << (m - 1);
    if x.sum() > capacity as u128 {
        return Err(ProfileError::SumExceedsCapacity {
            sum: x.sum(),
            capacity,
        });
    }
    let o_count = o_statistic(x);
    let last = x.counts()[m - 1];
    if last < 2 * o_count as u64 {
        return Err(ProfileError::LiftInapplicable { o_count, last });
    }

    let mut z: Vec<u64> = x.counts()[..m - 1]
        .iter()
        .map(|&c| c / 2 + u64::from(c % 4 == 2))
        .collect();
    let half = 1u64 << (m - 2);
    let z_sum: u64 = z.iter().sum();
    let deficit = half
        .checked_sub(z_sum)
        .expect("lift applicability bounds the carried sum by 2^(n-1)");
    assert!(
        deficit.is_multiple_of(2),
        "deficit parity violated by caller"
    );
    *z.last_mut().expect("m >= 3") += deficit;

    let lifted = Profile(z);
    debug_assert!(lifted.is_even());
    debug_assert!(lifted.is_sorted_ascending());
    debug_assert_eq!(lifted.sum(), half as u128);
    Ok(lifted)
}

#[derive(Clone, PartialEq, Eq, Error, Debug)]
pub enum ProfileError {
    #[error("profile length {got} does not match expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("coordinate x{coordinate} is odd")]
    NotEven { coordinate: usize },
    #[error("profile is not sorted in non-decreasing order")]
    NotSorted,
    #[error("profile sum {sum} exceeds capacity {capacity}")]
    SumExceedsCapacity { sum: u128, capacity: u64 },
    #[error("halving lift inapplicable: last coordinate {last} < 2 * o(x) with o(x) = {o_count}")]
    LiftInapplicable { o_count: u32, last: u64 },
    #[error("profile too short for lifting: length {len}")]
    TooShort { len: usize },
    #[error("malformed profile: {0}")]
    Parse(String),
}
