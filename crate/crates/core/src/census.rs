//! Counts of size-`k` nested sets of `C_{n+1}` by the cyclic order `d` of
//! their isotropy: `α` (cyclic isotropy), `β` (dihedral isotropy), `γ = α + β`,
//! and `β(d, k, a)` split by the number `a` of reflection-fixed tubes per part.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

pub use crate::arith::mobius;
use crate::arith::{binomial_int, divisors, gcd};
use crate::dihedral::{orbit_decomposition, DihedralGroup};
use crate::error::{invalid, Error, Result};
use crate::graph::cycle_graph;
use crate::nested::{NestedSet, TubeSystem};

pub const DEFAULT_ENUMERATION_BOUND: usize = 12;

#[derive(Clone, Copy, Default, PartialEq, Eq, Debug, Serialize)]
pub struct CensusEntry {
    pub alpha: u64,
    pub beta: u64,
    pub gamma: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CensusTable {
    pub n_plus_1: usize,
    entries: BTreeMap<(usize, usize), CensusEntry>,
    beta_a: BTreeMap<(usize, usize, usize), u64>,
}

impl CensusTable {
    fn zeroed(n_plus_1: usize) -> Self {
        let mut entries = BTreeMap::new();
        let mut beta_a = BTreeMap::new();
        for d in 1..=n_plus_1 {
            for k in 0..n_plus_1 {
                entries.insert((d, k), CensusEntry::default());
                if k % d == 0 {
                    for a in 0..=k / d {
                        beta_a.insert((d, k, a), 0);
                    }
                }
            }
        }
        CensusTable { n_plus_1, entries, beta_a }
    }

    /// Entry for `(d, k)`; zero outside the stored range.
    pub fn entry(&self, d: usize, k: usize) -> CensusEntry {
        self.entries.get(&(d, k)).copied().unwrap_or_default()
    }

    pub fn beta_a(&self, d: usize, k: usize, a: usize) -> u64 {
        self.beta_a.get(&(d, k, a)).copied().unwrap_or(0)
    }

    /// All `(d, k)` keys with their entries, including zeros.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &CensusEntry)> {
        self.entries.iter()
    }

    pub fn beta_a_entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &u64)> {
        self.beta_a.iter()
    }

    /// `Σ_d γ(d, k)`.
    pub fn total(&self, k: usize) -> u64 {
        (1..=self.n_plus_1).map(|d| self.entry(d, k).gamma).sum()
    }

    /// `Σ_d β(d, k)`.
    pub fn beta_sum(&self, k: usize) -> u64 {
        (1..=self.n_plus_1).map(|d| self.entry(d, k).beta).sum()
    }

    /// `Σ_d d · β(d, k)`.
    pub fn weighted_beta_sum(&self, k: usize) -> u64 {
        (1..=self.n_plus_1).map(|d| d as u64 * self.entry(d, k).beta).sum()
    }
}

fn check_bound(n_plus_1: usize, bound: usize) -> Result<()> {
    if n_plus_1 < 3 {
        return Err(invalid(format!("cycle length {n_plus_1} < 3")));
    }
    if n_plus_1 > bound {
        return Err(Error::ResourceLimit { what: "n+1", requested: n_plus_1, limit: bound });
    }
    Ok(())
}

// Per-k tallies keyed (d, dihedral, a).
type Tally = BTreeMap<(usize, bool, usize), u64>;

#[derive(Default)]
struct LevelAcc {
    cyclic: Vec<u64>,
    dihedral: Tally,
}

fn classify_level(sys: &TubeSystem, grp: &DihedralGroup, k: usize) -> Tally {
    let m = grp.n_plus_1();
    let parts = sys.par_collect(
        Some(k),
        || LevelAcc { cyclic: vec![0; m + 1], dihedral: Tally::new() },
        |acc: &mut LevelAcc, tubes| {
            let (d, reflections) = grp.stabilizer_counts(tubes);
            if reflections == 0 {
                acc.cyclic[d] += 1;
            } else {
                let n = NestedSet::from_tubes_unchecked(tubes.to_vec());
                let dec = orbit_decomposition(&n, m).expect("valid nested set");
                *acc.dihedral.entry((d, true, dec.a)).or_insert(0) += 1;
            }
        },
    );
    let mut total = Tally::new();
    for part in parts {
        for (d, &c) in part.cyclic.iter().enumerate() {
            if c > 0 {
                *total.entry((d, false, 0)).or_insert(0) += c;
            }
        }
        for (key, c) in part.dihedral {
            *total.entry(key).or_insert(0) += c;
        }
    }
    total
}

/// Full census of `C_{n+1}` by enumeration and isotropy scan.
pub fn census_bruteforce(n_plus_1: usize, bound: usize) -> Result<CensusTable> {
    let all: Vec<usize> = (0..n_plus_1).collect();
    census_levels(n_plus_1, &all, bound)
}

/// Census restricted to the listed sizes `k`; other levels stay zero.
pub fn census_levels(n_plus_1: usize, levels: &[usize], bound: usize) -> Result<CensusTable> {
    check_bound(n_plus_1, bound)?;
    if let Some(&k) = levels.iter().find(|&&k| k >= n_plus_1) {
        return Err(invalid(format!("nested sets of C_{n_plus_1} have at most {} tubes, got {k}", n_plus_1 - 1)));
    }
    let grp = DihedralGroup::new(n_plus_1)?;
    let sys = TubeSystem::new(&cycle_graph(n_plus_1)?);
    let levels: Vec<(usize, Tally)> = levels
        .par_iter()
        .map(|&k| (k, classify_level(&sys, &grp, k)))
        .collect();
    let mut table = CensusTable::zeroed(n_plus_1);
    for (k, tally) in levels {
        for ((d, dihedral, a), c) in tally {
            let e = table.entries.entry((d, k)).or_default();
            if dihedral {
                e.beta += c;
                *table.beta_a.entry((d, k, a)).or_insert(0) += c;
            } else {
                e.alpha += c;
            }
            e.gamma += c;
        }
    }
    Ok(table)
}

/// Möbius-inversion closed form for `γ_{n+1}(d, k)`.
pub fn gamma_closed(n_plus_1: usize, d: usize, k: usize) -> BigUint {
    if k == 0 || k >= n_plus_1 || d == 0 || !gcd(n_plus_1, k).is_multiple_of(d) {
        return BigUint::zero();
    }
    let mut sum = BigInt::zero();
    for i in divisors(gcd(n_plus_1 / d, k / d)) {
        let mu = mobius(i);
        if mu == 0 {
            continue;
        }
        let id = (i * d) as i64;
        let (m, kk) = (n_plus_1 as i64, k as i64);
        let term = binomial_int(m / id - 1, kk / id) * binomial_int((m + kk) / id - 1, kk / id);
        sum += term * mu;
    }
    sum.to_biguint().expect("a count is non-negative")
}

/// `γ_{n+1}(d, k)` through the covering `C_{n+1} → C_{(n+1)/d}`:
/// the number of size-`k/d` nested sets of the quotient cycle whose
/// isotropy has trivial rotation part.
pub fn gamma_reduction(n_plus_1: usize, d: usize, k: usize, bound: usize) -> Result<BigUint> {
    if d == 0 || !n_plus_1.is_multiple_of(d) || !k.is_multiple_of(d) || k == 0 || k >= n_plus_1 {
        return Ok(BigUint::zero());
    }
    let (base, kk) = (n_plus_1 / d, k / d);
    match base {
        // The quotient would be a 2-cycle: only the two alternating families.
        2 => return Ok(BigUint::from(if kk == 1 { 2u32 } else { 0 })),
        1 => return Ok(BigUint::zero()),
        _ => {}
    }
    check_bound(base, bound)?;
    let grp = DihedralGroup::new(base)?;
    let sys = TubeSystem::new(&cycle_graph(base)?);
    let tally = classify_level(&sys, &grp, kk);
    let count: u64 = tally.iter().filter(|((dd, _, _), _)| *dd == 1).map(|(_, c)| c).sum();
    Ok(BigUint::from(count))
}

/// `γ` from a census table as a big integer, for comparisons.
pub fn gamma_from_table(table: &CensusTable, d: usize, k: usize) -> BigUint {
    BigUint::from(table.entry(d, k).gamma)
}
