//! Bitmask representation of hypercube vertices, canonical edges, and
//! matchings, together with profile computation, verification, and the
//! structural transformations the constructor is built from.

use std::fmt;

use thiserror::Error;

use crate::profile::Profile;

/// Vertices of `Q^n` are `n`-bit integers; bit `i` is coordinate `i + 1`.
pub type Vertex = u64;

/// Ambient dimension of a hypercube, restricted so that `2^n` fits in a
/// `u64` with headroom.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Dimension(u32);

impl Dimension {
    /// Largest supported dimension: vertices are single 64-bit words.
    pub const MAX: u32 = 62;

    pub fn new(n: u32) -> Result<Self, MatchingError> {
        if n == 0 || n > Self::MAX {
            return Err(MatchingError::DimensionOutOfRange(n));
        }
        Ok(Dimension(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `2^n`, the number of vertices of `Q^n`.
    pub fn vertex_count(self) -> u64 {
        1u64 << self.0
    }

    /// `2^(n-1)`, the size of a perfect matching and of each direction class.
    pub fn half(self) -> u64 {
        1u64 << (self.0 - 1)
    }

    pub fn successor(self) -> Result<Self, MatchingError> {
        Dimension::new(self.0 + 1).map_err(|_| MatchingError::DimensionOverflow(self.0))
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A hypercube edge in canonical form: `base` has bit `dir` cleared and the
/// edge joins `base` to `base | 1 << dir`.
///
/// Field order gives the derived ordering `(dir, base)`, which is the
/// storage and serialization order for matchings.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    dir: u32,
    base: u64,
}

impl Edge {
    /// Canonicalizes `{u, u ^ 1 << dir}`: the direction bit of `u` is
    /// cleared to obtain the base endpoint.
    pub fn new(u: Vertex, dir: u32, dim: Dimension) -> Result<Self, MatchingError> {
        if dir >= dim.get() {
            return Err(MatchingError::DirOutOfRange {
                dir,
                dim: dim.get(),
            });
        }
        if u >= dim.vertex_count() {
            return Err(MatchingError::VertexOutOfRange {
                vertex: u,
                dim: dim.get(),
            });
        }
        Ok(Edge {
            dir,
            base: u & !(1u64 << dir),
        })
    }

    /// Constructor for search code that already holds the invariant.
    pub(crate) fn from_raw(base: u64, dir: u32) -> Edge {
        debug_assert_eq!(base & (1u64 << dir), 0);
        Edge { dir, base }
    }

    pub fn dir(self) -> u32 {
        self.dir
    }

    pub fn base(self) -> Vertex {
        self.base
    }

    /// Both endpoints, lower first.
    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.base, self.base | (1u64 << self.dir))
    }
}

/// A vertex-disjoint set of canonical edges in a fixed ambient dimension.
///
/// Edges are stored sorted by `(dir, base)` so that serialization is
/// byte-stable. All constructors validate (or, on internal paths,
/// debug-assert) the vertex-disjointness invariant; values are immutable
/// afterwards.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matching {
    dim: Dimension,
    edges: Vec<Edge>,
}

impl Matching {
    pub fn empty(dim: Dimension) -> Self {
        Matching {
            dim,
            edges: Vec::new(),
        }
    }

    /// Builds a matching from edges, validating ranges and disjointness.
    pub fn from_edges(dim: Dimension, mut edges: Vec<Edge>) -> Result<Self, MatchingError> {
        edges.sort_unstable();
        for e in &edges {
            if e.dir >= dim.get() {
                return Err(MatchingError::DirOutOfRange {
                    dir: e.dir,
                    dim: dim.get(),
                });
            }
            let (_, hi) = e.endpoints();
            if hi >= dim.vertex_count() {
                return Err(MatchingError::VertexOutOfRange {
                    vertex: hi,
                    dim: dim.get(),
                });
            }
        }
        check_disjoint(dim, edges.iter().copied())?;
        Ok(Matching { dim, edges })
    }

    /// Builds a matching from raw endpoint pairs, e.g. parsed from a file.
    ///
    /// Each pair must span a hypercube edge (endpoints differing in exactly
    /// one bit); the first violated invariant is reported. A repeated edge
    /// is rejected as a repeated vertex.
    pub fn from_pairs(dim: Dimension, pairs: &[(Vertex, Vertex)]) -> Result<Self, MatchingError> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            if u >= dim.vertex_count() {
                return Err(MatchingError::VertexOutOfRange {
                    vertex: u,
                    dim: dim.get(),
                });
            }
            if v >= dim.vertex_count() {
                return Err(MatchingError::VertexOutOfRange {
                    vertex: v,
                    dim: dim.get(),
                });
            }
            let diff = u ^ v;
            if diff == 0 || !diff.is_power_of_two() {
                return Err(MatchingError::NotAnEdge { u, v });
            }
            edges.push(Edge {
                dir: diff.trailing_zeros(),
                base: u & !diff,
            });
        }
        check_disjoint(dim, edges.iter().copied())?;
        edges.sort_unstable();
        Ok(Matching { dim, edges })
    }

    /// Internal constructor for edges produced by the transformations below,
    /// which preserve disjointness by construction.
    fn from_edges_unchecked(dim: Dimension, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        debug_assert!(check_disjoint(dim, edges.iter().copied()).is_ok());
        Matching { dim, edges }
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// A matching is perfect iff it covers all `2^n` vertices.
    pub fn is_perfect(&self) -> bool {
        self.edges.len() as u64 == self.dim.half()
    }

    /// Counts edges per direction.
    pub fn profile(&self) -> Profile {
        let mut counts = vec![0u64; self.dim.get() as usize];
        for e in &self.edges {
            counts[e.dir as usize] += 1;
        }
        Profile::new(counts)
    }

    /// All vertices not incident to any edge, ascending.
    pub fn uncovered(&self) -> Vec<Vertex> {
        let covered = self.covered_bits();
        let mut out = Vec::with_capacity((self.dim.vertex_count() as usize) - 2 * self.len());
        for v in 0..self.dim.vertex_count() {
            if !covered.contains(v) {
                out.push(v);
            }
        }
        out
    }

    fn covered_bits(&self) -> BitSet {
        let mut bits = BitSet::new(self.dim.vertex_count());
        for e in &self.edges {
            let (u, v) = e.endpoints();
            bits.insert(u);
            bits.insert(v);
        }
        bits
    }

    /// Two disjoint copies of `self` in `Q^(n+1)` plus one new-direction
    /// edge joining the copies of each formerly uncovered vertex.
    ///
    /// The result is always a perfect matching of `Q^(n+1)` with profile
    /// `(2 x_1, ..., 2 x_n, 2^n - 2 |x|)`.
    pub fn double_and_extend(&self) -> Result<Matching, MatchingError> {
        let next = self.dim.successor()?;
        let new_bit = 1u64 << self.dim.get();
        let mut edges = Vec::with_capacity(next.half() as usize);
        for e in &self.edges {
            edges.push(*e);
            edges.push(Edge {
                dir: e.dir,
                base: e.base | new_bit,
            });
        }
        for v in self.uncovered() {
            edges.push(Edge {
                dir: self.dim.get(),
                base: v,
            });
        }
        Ok(Matching::from_edges_unchecked(next, edges))
    }

    /// Sub-matching with profile exactly `target`, which must be dominated
    /// coordinatewise by the current profile.
    ///
    /// Deterministic: within each direction the edges with largest base are
    /// removed first.
    pub fn delete_down(&self, target: &Profile) -> Result<Matching, MatchingError> {
        if target.len() != self.dim.get() as usize {
            return Err(MatchingError::ProfileLengthMismatch {
                got: target.len(),
                dim: self.dim.get(),
            });
        }
        let current = self.profile();
        for d in 0..target.len() {
            if target.counts()[d] > current.counts()[d] {
                return Err(MatchingError::NotDominated {
                    coordinate: d + 1,
                    target: target.counts()[d],
                    available: current.counts()[d],
                });
            }
        }
        // Edges are sorted by (dir, base): keeping the first `target[d]` of
        // each direction run drops the largest bases first.
        let mut kept = Vec::with_capacity(target.counts().iter().sum::<u64>() as usize);
        let mut remaining = target.counts().to_vec();
        for e in &self.edges {
            let r = &mut remaining[e.dir as usize];
            if *r > 0 {
                *r -= 1;
                kept.push(*e);
            }
        }
        Ok(Matching {
            dim: self.dim,
            edges: kept,
        })
    }

    /// Relabels coordinates: direction `d` becomes `perm[d]` and vertex bits
    /// move accordingly, so the profile of the result at `perm[d]` equals
    /// the profile of `self` at `d`.
    pub fn permute_coordinates(&self, perm: &[u32]) -> Result<Matching, MatchingError> {
        let n = self.dim.get();
        if !is_permutation(perm, n) {
            return Err(MatchingError::InvalidPermutation { dim: n });
        }
        let map_vertex = |v: u64| -> u64 {
            let mut out = 0u64;
            for (i, &p) in perm.iter().enumerate() {
                out |= ((v >> i) & 1) << p;
            }
            out
        };
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                dir: perm[e.dir as usize],
                base: map_vertex(e.base),
            })
            .collect();
        Ok(Matching::from_edges_unchecked(self.dim, edges))
    }

    /// Full witness check: re-validates structure, then compares the profile
    /// against `expected` and (optionally) demands perfection. The first
    /// violated invariant is reported.
    pub fn verify(&self, expected: &Profile, require_perfect: bool) -> Result<(), MatchingError> {
        for e in &self.edges {
            if e.dir >= self.dim.get() {
                return Err(MatchingError::DirOutOfRange {
                    dir: e.dir,
                    dim: self.dim.get(),
                });
            }
            let (lo, hi) = e.endpoints();
            if hi >= self.dim.vertex_count() {
                return Err(MatchingError::VertexOutOfRange {
                    vertex: hi,
                    dim: self.dim.get(),
                });
            }
            if lo & (1u64 << e.dir) != 0 {
                return Err(MatchingError::NotAnEdge { u: lo, v: hi });
            }
        }
        check_disjoint(self.dim, self.edges.iter().copied())?;
        if expected.len() != self.dim.get() as usize {
            return Err(MatchingError::ProfileLengthMismatch {
                got: expected.len(),
                dim: self.dim.get(),
            });
        }
        let actual = self.profile();
        for d in 0..expected.len() {
            if actual.counts()[d] != expected.counts()[d] {
                return Err(MatchingError::ProfileMismatch {
                    coordinate: d + 1,
                    expected: expected.counts()[d],
                    actual: actual.counts()[d],
                });
            }
        }
        if require_perfect && !self.is_perfect() {
            return Err(MatchingError::NotPerfect {
                uncovered: self.dim.vertex_count() - 2 * self.edges.len() as u64,
            });
        }
        Ok(())
    }

    /// Endpoint pairs `(u, v)` with `u < v`, sorted ascending.
    pub fn pairs(&self) -> Vec<(Vertex, Vertex)> {
        let mut pairs: Vec<(u64, u64)> = self.edges.iter().map(|e| e.endpoints()).collect();
        pairs.sort_unstable();
        pairs
    }

    /// `{"n": n, "edges": [[u, v], ...]}` with `u < v`, sorted ascending.
    /// Byte-stable for identical inputs.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{{\"n\":{},\"edges\":[", self.dim.get()));
        for (i, (u, v)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("[{u},{v}]"));
        }
        out.push_str("]}");
        out
    }

    pub fn from_json(s: &str) -> Result<Self, MatchingError> {
        #[derive(serde::Deserialize)]
        struct Repr {
            n: u32,
            edges: Vec<(u64, u64)>,
        }
        let repr: Repr =
            serde_json::from_str(s).map_err(|e| MatchingError::Parse(e.to_string()))?;
        let dim = Dimension::new(repr.n)?;
        Matching::from_pairs(dim, &repr.edges)
    }

    /// Plain-text edge list, one `bitstring bitstring` pair per line with
    /// the most significant bit as coordinate `n` (coordinate 1 rightmost).
    pub fn to_edge_list(&self) -> String {
        let w = self.dim.get() as usize;
        let mut out = String::new();
        for (u, v) in self.pairs() {
            out.push_str(&format!("{u:0w$b} {v:0w$b}\n"));
        }
        out
    }

    pub fn from_edge_list(s: &str, dim: Dimension) -> Result<Self, MatchingError> {
        let mut pairs = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return Err(MatchingError::Parse(format!(
                    "line {}: expected two bitstrings",
                    lineno + 1
                )));
            };
            let parse = |s: &str| {
                u64::from_str_radix(s, 2).map_err(|_| {
                    MatchingError::Parse(format!("line {}: bad bitstring", lineno + 1))
                })
            };
            pairs.push((parse(a)?, parse(b)?));
        }
        Matching::from_pairs(dim, &pairs)
    }

    /// Graphviz output for human inspection; not byte-stable across versions.
    pub fn to_dot(&self) -> String {
        let w = self.dim.get() as usize;
        let mut out = String::from("graph matching {\n");
        for (u, v) in self.pairs() {
            let d = (u ^ v).trailing_zeros();
            out.push_str(&format!(
                "  \"{u:0w$b}\" -- \"{v:0w$b}\" [label=\"x{}\"];\n",
                d + 1
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Canonicalizes `{u, u ^ 1 << dir}` as an [`Edge`].
pub fn make_edge(u: Vertex, dir: u32, dim: Dimension) -> Result<Edge, MatchingError> {
    Edge::new(u, dir, dim)
}

fn check_disjoint(dim: Dimension, edges: impl Iterator<Item = Edge>) -> Result<(), MatchingError> {
    let mut seen = BitSet::new(dim.vertex_count());
    for e in edges {
        let (u, v) = e.endpoints();
        for w in [u, v] {
            if !seen.insert(w) {
                return Err(MatchingError::RepeatedVertex { vertex: w });
            }
        }
    }
    Ok(())
}

fn is_permutation(perm: &[u32], n: u32) -> bool {
    if perm.len() != n as usize {
        return false;
    }
    let mut seen = vec![false; n as usize];
    for &p in perm {
        if p >= n || seen[p as usize] {
            return false;
        }
        seen[p as usize] = true;
    }
    true
}

/// Dense bit set over vertex ids.
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(size: u64) -> Self {
        BitSet {
            words: vec![0u64; size.div_ceil(64) as usize],
        }
    }

    fn contains(&self, v: u64) -> bool {
        self.words[(v >> 6) as usize] & (1u64 << (v & 63)) != 0
    }

    /// Returns false if already present.
    fn insert(&mut self, v: u64) -> bool {
        let w = &mut self.words[(v >> 6) as usize];
        let bit = 1u64 << (v & 63);
        if *w & bit != 0 {
            return false;
        }
        *w |= bit;
        true
    }
}

#[derive(Clone, PartialEq, Eq, Error, Debug)]
pub enum MatchingError {
    #[error("dimension {0} out of range 1..=62")]
    DimensionOutOfRange(u32),
    #[error("dimension {0} + 1 exceeds the 62-bit vertex representation")]
    DimensionOverflow(u32),
    #[error("direction index {dir} out of range for Q^{dim}")]
    DirOutOfRange { dir: u32, dim: u32 },
    #[error("vertex {vertex} out of range for Q^{dim}")]
    VertexOutOfRange { vertex: u64, dim: u32 },
    #[error("vertices {u} and {v} do not span a hypercube edge")]
    NotAnEdge { u: u64, v: u64 },
    #[error("repeated vertex {vertex}")]
    RepeatedVertex { vertex: u64 },
    #[error("profile length {got} does not match dimension {dim}")]
    ProfileLengthMismatch { got: usize, dim: u32 },
    #[error("profile mismatch at x{coordinate}: expected {expected}, matching has {actual}")]
    ProfileMismatch {
        coordinate: usize,
        expected: u64,
        actual: u64,
    },
    #[error("matching is not perfect: {uncovered} vertices uncovered")]
    NotPerfect { uncovered: u64 },
    #[error("target profile exceeds source at x{coordinate}: {target} > {available}")]
    NotDominated {
        coordinate: usize,
        target: u64,
        available: u64,
    },
    #[error("not a bijection on {dim} directions")]
    InvalidPermutation { dim: u32 },
    #[error("malformed matching data: {0}")]
    Parse(String),
}
