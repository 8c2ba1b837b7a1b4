//! Graphs on at most [`MAX_VERTICES`] vertices and bitset vertex subsets.
//!
//! Labels are 1-based at the API boundary and 0-based inside a
//! [`VertexSubset`] (bit `u` stands for vertex `u + 1`).

use std::cmp::Ordering;
use std::fmt;

use crate::error::{invalid, Result};

pub const MAX_VERTICES: usize = 64;
const _: () = assert!(MAX_VERTICES >= 32);

/// A subset of `[n_vertices]` stored as a `u64` bitset.
///
/// The ordering is the canonical tube order: by cardinality, then by the
/// bitset value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct VertexSubset(u64);

impl VertexSubset {
    pub const fn empty() -> Self {
        VertexSubset(0)
    }

    pub const fn from_bits(bits: u64) -> Self {
        VertexSubset(bits)
    }

    /// Build from 1-based labels.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &v in labels {
            if v == 0 || v > MAX_VERTICES {
                return Err(invalid(format!("vertex label {v} out of range 1..={MAX_VERTICES}")));
            }
            bits |= 1 << (v - 1);
        }
        Ok(VertexSubset(bits))
    }

    /// Contiguous block of `len` vertices starting at 0-based `start`, wrapping mod `m`.
    pub fn arc(start: usize, len: usize, m: usize) -> Self {
        let mut bits = 0u64;
        for t in 0..len {
            bits |= 1 << ((start + t) % m);
        }
        VertexSubset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Membership of the 0-based vertex `u`.
    pub const fn contains(self, u: usize) -> bool {
        u < 64 && self.0 >> u & 1 == 1
    }

    pub const fn union(self, other: Self) -> Self {
        VertexSubset(self.0 | other.0)
    }

    pub const fn intersection(self, other: Self) -> Self {
        VertexSubset(self.0 & other.0)
    }

    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// 0-based members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(u)
            }
        })
    }

    /// 1-based labels in increasing order.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|u| u + 1).collect()
    }
}

impl Ord for VertexSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for VertexSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.labels().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A simple connected graph on `[n_vertices]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edges are given with 1-based endpoints.
    pub fn new(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n_vertices == 0 || n_vertices > MAX_VERTICES {
            return Err(invalid(format!(
                "vertex count {n_vertices} outside 1..={MAX_VERTICES}"
            )));
        }
        let mut adj = vec![0u64; n_vertices];
        for &(a, b) in edges {
            if a == 0 || b == 0 || a > n_vertices || b > n_vertices {
                return Err(invalid(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(invalid(format!("self-loop at vertex {a}")));
            }
            let (u, v) = (a - 1, b - 1);
            if adj[u] >> v & 1 == 1 {
                return Err(invalid(format!("duplicate edge ({a},{b})")));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let g = Graph { n: n_vertices, adj };
        if g.component_count(g.vertex_set()) != 1 {
            return Err(invalid("graph is not connected"));
        }
        Ok(g)
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn vertex_set(&self) -> VertexSubset {
        VertexSubset(if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 })
    }

    /// Neighbourhood of the 0-based vertex `u`.
    pub fn neighbours(&self, u: usize) -> VertexSubset {
        VertexSubset(self.adj[u])
    }

    /// Edges as 1-based pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in VertexSubset(self.adj[u]).iter().filter(|&v| v > u) {
                out.push((u + 1, v + 1));
            }
        }
        out
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a >= 1 && b >= 1 && a <= self.n && b <= self.n && self.adj[a - 1] >> (b - 1) & 1 == 1
    }

    /// True iff this is the labelled cycle `C_n` with edges `(i, i+1)` and `(1, n)`.
    pub fn is_standard_cycle(&self) -> bool {
        self.n >= 3
            && (0..self.n).all(|u| {
                let want = (1u64 << ((u + 1) % self.n)) | (1u64 << ((u + self.n - 1) % self.n));
                self.adj[u] == want
            })
    }

    fn check_subset(&self, s: VertexSubset) -> Result<()> {
        if !s.is_subset(self.vertex_set()) {
            return Err(invalid(format!("{s} is not a subset of [{}]", self.n)));
        }
        Ok(())
    }

    /// Whether the induced subgraph on `s` is connected.
    pub fn is_connected(&self, s: VertexSubset) -> Result<bool> {
        if s.is_empty() {
            return Err(invalid("connectivity of the empty set is undefined"));
        }
        self.check_subset(s)?;
        Ok(self.reach(s, s.iter().next().unwrap_or(0)) == s.bits())
    }

    /// Number of connected components of the induced subgraph on `s`.
    pub fn component_count(&self, s: VertexSubset) -> usize {
        let mut rest = s.bits() & self.vertex_set().bits();
        let mut count = 0;
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            rest &= !self.reach(VertexSubset(rest), start);
            count += 1;
        }
        count
    }

    // Vertices of `s` reachable from `start` inside `s`.
    fn reach(&self, s: VertexSubset, start: usize) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for u in VertexSubset(frontier).iter() {
                next |= self.adj[u];
            }
            next &= s.bits() & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }
}

/// The cycle graph `C_{n+1}`.
pub fn cycle_graph(n_plus_1: usize) -> Result<Graph> {
    if n_plus_1 < 3 {
        return Err(invalid(format!("cycle length {n_plus_1} < 3")));
    }
    if n_plus_1 > MAX_VERTICES {
        return Err(invalid(format!("cycle length {n_plus_1} > {MAX_VERTICES}")));
    }
    let edges: Vec<_> = (1..=n_plus_1).map(|i| (i, i % n_plus_1 + 1)).collect();
    Graph::new(n_plus_1, &edges)
}
