//! Tubes and nested sets of a connected graph, enumerated by depth-first
//! extension over canonically ordered tubes.
//!
//! Two tubes are compatible when one contains the other, or when they are
//! disjoint and no edge joins them. A family of pairwise compatible tubes
//! already satisfies the union condition: if some disjoint subfamily had a
//! connected union, the quotient graph obtained by contracting its members
//! would be connected and hence contain an edge between two of them.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::arith::binomial;
use crate::error::{invalid, Result};
use crate::graph::{Graph, VertexSubset};

/// A nested set with its tubes in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct NestedSet {
    tubes: Vec<VertexSubset>,
}

impl NestedSet {
    pub fn empty() -> Self {
        NestedSet { tubes: Vec::new() }
    }

    /// Validating constructor.
    pub fn new(g: &Graph, tubes: Vec<VertexSubset>) -> Result<Self> {
        if !is_nested(g, &tubes) {
            let shown: Vec<String> = tubes.iter().map(|t| t.to_string()).collect();
            return Err(invalid(format!("not a nested set: {{{}}}", shown.join(","))));
        }
        Ok(Self::from_tubes_unchecked(tubes))
    }

    /// Sorts and deduplicates; performs no validation.
    pub fn from_tubes_unchecked(mut tubes: Vec<VertexSubset>) -> Self {
        tubes.sort_unstable();
        tubes.dedup();
        NestedSet { tubes }
    }

    /// Tubes given as lists of 1-based labels.
    pub fn from_labels(g: &Graph, tubes: &[&[usize]]) -> Result<Self> {
        let tubes = tubes
            .iter()
            .map(|t| VertexSubset::from_labels(t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, tubes)
    }

    pub fn tubes(&self) -> &[VertexSubset] {
        &self.tubes
    }

    pub fn len(&self) -> usize {
        self.tubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tubes.is_empty()
    }

    pub fn contains(&self, t: VertexSubset) -> bool {
        self.tubes.binary_search(&t).is_ok()
    }

    /// Position of `t` in the canonical order, if present.
    pub fn index_of(&self, t: VertexSubset) -> Option<usize> {
        self.tubes.binary_search(&t).ok()
    }

    pub fn union(&self) -> VertexSubset {
        self.tubes.iter().fold(VertexSubset::empty(), |acc, &t| acc.union(t))
    }

    pub fn without(&self, i: usize) -> NestedSet {
        let mut tubes = self.tubes.clone();
        tubes.remove(i);
        NestedSet { tubes }
    }
}

impl fmt::Display for NestedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, t) in self.tubes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "}}")
    }
}

/// Face counts by codimension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FVector {
    pub counts: Vec<u64>,
}

/// All nonempty proper connected vertex subsets, in canonical order.
pub fn enumerate_tubes(g: &Graph) -> Vec<VertexSubset> {
    let full = g.vertex_set().bits();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut stack: Vec<u64> = Vec::new();
    for u in 0..g.n_vertices() {
        let s = 1u64 << u;
        if s != full && seen.insert(s) {
            stack.push(s);
        }
    }
    while let Some(s) = stack.pop() {
        let mut frontier = 0u64;
        for u in VertexSubset::from_bits(s).iter() {
            frontier |= g.neighbours(u).bits();
        }
        frontier &= !s;
        for v in VertexSubset::from_bits(frontier).iter() {
            let t = s | 1 << v;
            if t != full && seen.insert(t) {
                stack.push(t);
            }
        }
    }
    let mut tubes: Vec<VertexSubset> = seen.into_iter().map(VertexSubset::from_bits).collect();
    tubes.sort_unstable();
    tubes
}

/// Pairwise compatibility of two distinct tubes.
pub fn compatible(g: &Graph, a: VertexSubset, b: VertexSubset) -> bool {
    if a == b {
        return false;
    }
    if a.is_subset(b) || b.is_subset(a) {
        return true;
    }
    if !a.is_disjoint(b) {
        return false;
    }
    a.iter().all(|u| g.neighbours(u).is_disjoint(b))
}

/// Literal check of the three nested-set conditions.
pub fn is_nested(g: &Graph, tubes: &[VertexSubset]) -> bool {
    let full = g.vertex_set();
    for (i, &t) in tubes.iter().enumerate() {
        if t.is_empty() || t == full || !t.is_subset(full) {
            return false;
        }
        if !g.is_connected(t).unwrap_or(false) {
            return false;
        }
        if tubes[..i].contains(&t) {
            return false;
        }
    }
    for (i, &a) in tubes.iter().enumerate() {
        for &b in &tubes[i + 1..] {
            if !(a.is_subset(b) || b.is_subset(a) || a.is_disjoint(b)) {
                return false;
            }
        }
    }
    if tubes.len() > 20 {
        // Too many subfamilies to list; fall back to the equivalent pairwise test.
        return tubes
            .iter()
            .enumerate()
            .all(|(i, &a)| tubes[i + 1..].iter().all(|&b| compatible(g, a, b)));
    }
    let k = tubes.len();
    for mask in 1u32..(1 << k) {
        if mask.count_ones() < 2 {
            continue;
        }
        let members: Vec<VertexSubset> =
            (0..k).filter(|i| mask >> i & 1 == 1).map(|i| tubes[i]).collect();
        let disjoint = members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[i + 1..].iter().all(|&b| a.is_disjoint(b)));
        if !disjoint {
            continue;
        }
        let union = members.iter().fold(VertexSubset::empty(), |acc, &t| acc.union(t));
        if g.is_connected(union).unwrap_or(false) {
            return false;
        }
    }
    true
}

/// The tubes of a graph with their pairwise compatibility, ready for
/// enumeration. Row `i` of the table only records partners `j > i`.
pub struct TubeSystem {
    graph: Graph,
    tubes: Vec<VertexSubset>,
    words: usize,
    upper: Vec<u64>,
}

impl TubeSystem {
    pub fn new(g: &Graph) -> Self {
        let tubes = enumerate_tubes(g);
        let t = tubes.len();
        let words = t.div_ceil(64).max(1);
        let mut upper = vec![0u64; t * words];
        for i in 0..t {
            for j in i + 1..t {
                if compatible(g, tubes[i], tubes[j]) {
                    upper[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        TubeSystem {
            graph: g.clone(),
            tubes,
            words,
            upper,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn tubes(&self) -> &[VertexSubset] {
        &self.tubes
    }

    /// Largest possible nested-set size.
    pub fn max_size(&self) -> usize {
        self.graph.n_vertices() - 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.upper[i * self.words..(i + 1) * self.words]
    }

    /// Visit every nested set (of size `k`, or of every size when `k` is
    /// `None`) in canonical order.
    pub fn for_each<F: FnMut(&[VertexSubset])>(&self, k: Option<usize>, mut visit: F) {
        if matches!(k, None | Some(0)) {
            visit(&[]);
        }
        if k == Some(0) {
            return;
        }
        for first in 0..self.tubes.len() {
            self.walk_from(first, k, &mut visit);
        }
    }

    /// Run `step` over every nested set in parallel, one accumulator per
    /// leading tube. Slot 0 holds the empty set; slot `i + 1` the sets whose
    /// first tube is `tubes()[i]`. Slots come back in canonical order.
    pub fn par_collect<T, I, S>(&self, k: Option<usize>, init: I, step: S) -> Vec<T>
    where
        T: Send,
        I: Fn() -> T + Sync,
        S: Fn(&mut T, &[VertexSubset]) + Sync,
    {
        let mut head = init();
        if matches!(k, None | Some(0)) {
            step(&mut head, &[]);
        }
        let rest: Vec<T> = if k == Some(0) {
            Vec::new()
        } else {
            (0..self.tubes.len())
                .into_par_iter()
                .map(|first| {
                    let mut acc = init();
                    self.walk_from(first, k, &mut |n: &[VertexSubset]| step(&mut acc, n));
                    acc
                })
                .collect()
        };
        std::iter::once(head).chain(rest).collect()
    }

    fn walk_from<F: FnMut(&[VertexSubset])>(&self, first: usize, k: Option<usize>, visit: &mut F) {
        let depth_cap = self.max_size() + 1;
        let mut scratch = vec![vec![0u64; self.words]; depth_cap + 1];
        scratch[0].copy_from_slice(self.row(first));
        let mut chosen = Vec::with_capacity(depth_cap);
        chosen.push(self.tubes[first]);
        self.descend(&mut chosen, &mut scratch, k, visit);
    }

    // `scratch[0]` holds the candidates that may follow `chosen`.
    fn descend<F: FnMut(&[VertexSubset])>(
        &self,
        chosen: &mut Vec<VertexSubset>,
        scratch: &mut [Vec<u64>],
        k: Option<usize>,
        visit: &mut F,
    ) {
        let depth = chosen.len();
        let (cand, rest) = scratch.split_first_mut().expect("scratch depth");
        match k {
            Some(k) if depth == k => {
                visit(chosen);
                return;
            }
            Some(k) => {
                let available: u32 = cand.iter().map(|w| w.count_ones()).sum();
                if depth + (available as usize) < k {
                    return;
                }
            }
            None => visit(chosen),
        }
        for (w, &word) in cand.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let i = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let row = self.row(i);
                for (dst, (&c, &r)) in rest[0].iter_mut().zip(cand.iter().zip(row)) {
                    *dst = c & r;
                }
                chosen.push(self.tubes[i]);
                self.descend(chosen, rest, k, visit);
                chosen.pop();
            }
        }
    }
}

/// All nested sets of size `k`, in canonical order.
pub fn enumerate_nested_sets(g: &Graph, k: usize) -> Result<Vec<NestedSet>> {
    let n = g.n_vertices() - 1;
    if k > n {
        return Err(invalid(format!("nested-set size {k} exceeds n = {n}")));
    }
    let system = TubeSystem::new(g);
    Ok(enumerate_with(&system, k))
}

pub fn enumerate_with(system: &TubeSystem, k: usize) -> Vec<NestedSet> {
    let parts = system.par_collect(Some(k), Vec::new, |acc: &mut Vec<NestedSet>, n| {
        acc.push(NestedSet { tubes: n.to_vec() })
    });
    let out: Vec<NestedSet> = parts.into_iter().flatten().collect();
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    out
}

pub fn f_vector(g: &Graph) -> FVector {
    let system = TubeSystem::new(g);
    let slots = system.max_size() + 1;
    let parts = system.par_collect(
        None,
        || vec![0u64; slots],
        |acc: &mut Vec<u64>, n| acc[n.len()] += 1,
    );
    let mut counts = vec![0u64; slots];
    for part in parts {
        for (c, p) in counts.iter_mut().zip(part) {
            *c += p;
        }
    }
    FVector { counts }
}

/// `C(n, k) · C(n + k, k)`, the number of size-`k` nested sets of `C_{n+1}`.
pub fn cyclohedron_face_count(n: usize, k: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    if k > n {
        return Err(invalid(format!("k = {k} exceeds n = {n}")));
    }
    Ok(binomial(n as i64, k as i64) * binomial((n + k) as i64, k as i64))
}
