//! Matchings of the hypercube `Q^n` with prescribed direction profiles.
//!
//! The *profile* of a matching is the vector counting its edges per
//! coordinate direction. Every perfect matching of `Q^n` (for `n >= 2`) has
//! an even profile, and conversely every even vector summing to `2^(n-1)`
//! is the profile of some perfect matching. This crate makes that
//! equivalence executable:
//!
//! * [`matching`] — bitmask vertices, canonical edges, matchings, and the
//!   structural transformations (doubling, deletion, coordinate permutation).
//! * [`profile`] — arithmetic on profile vectors: evenness, domination,
//!   and the halving lift used by the recursive constructor.
//! * [`construct`] — a witness-producing constructor for every even profile
//!   that fits in its dimension, plus a three-valued admissibility decision.
//! * [`oracle`] — independent brute-force ground truth by exhaustive
//!   backtracking at small dimension.
//! * [`explorer`] — exhaustive profile sets for Hamilton cycles, 4-cycle
//!   face decompositions, middle-layer matchings, and permutahedron
//!   matchings.
//! * [`sweep`] — batched verification harnesses, data-parallel when the
//!   `parallel` feature (default) is enabled.

pub mod construct;
mod cover;
pub mod explorer;
pub mod matching;
pub mod oracle;
pub mod profile;
pub mod sweep;

pub use construct::{construct_even, decide, Decision, Reason};
pub use matching::{Dimension, Edge, Matching, MatchingError, Vertex};
pub use oracle::{SearchBudget, SearchResult, SearchStatus};
pub use profile::{classify, lift_half, precedes, Profile, ProfileClass};
