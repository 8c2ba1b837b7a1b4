//! The face-ring model of equivariant cohomology: monomials `x_N^a`, graded
//! permutation characters by fixed-monomial counts, Hilbert series of
//! isotropy strata, and the decomposition into induced trivial
//! representations.
//!
//! Stratum series count orbits. For a nested set `N` with stabilizer `H`,
//! the coefficient attached to `Ind_K` is the generating function of
//! `H`-orbits of exponent vectors whose stabilizer is conjugate to `K`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, divisors, gcd, mobius};
use crate::census::gamma_closed;
use crate::dihedral::{
    induced_character_value, induced_cyclic_character_value, orbit_decomposition, DihedralElement,
    DihedralGroup, SubgroupDescriptor,
};
use crate::error::{invalid, Error, Result};
use crate::graph::{cycle_graph, VertexSubset};
use crate::nested::{cyclohedron_face_count, enumerate_with, NestedSet, TubeSystem};
use crate::series::{geometric_block, Poly, RationalSeries};

pub const DEFAULT_DEGREE_BOUND: usize = 10;
/// Hard cap for brute-force monomial scans.
pub const MAX_BRUTE_DEGREE: usize = 32;

/// `x_N^a = Π x_I^{a_I}`; `exponents[i]` belongs to `support.tubes()[i]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub support: NestedSet,
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(support: NestedSet, exponents: Vec<u32>) -> Result<Self> {
        if exponents.len() != support.len() || exponents.contains(&0) {
            return Err(invalid("one positive exponent per tube is required"));
        }
        Ok(Monomial { support, exponents })
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "1");
        }
        for (i, (t, e)) in self.support.tubes().iter().zip(&self.exponents).enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{t}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Calls `f` on every composition of `total` into `parts` positive parts,
/// in lexicographic order.
pub fn for_each_composition<F: FnMut(&[u32])>(total: usize, parts: usize, f: &mut F) {
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    if total < parts {
        return;
    }
    let mut buf = vec![0u32; parts];
    fill(total, 0, &mut buf, f);
}

fn fill<F: FnMut(&[u32])>(rest: usize, idx: usize, buf: &mut [u32], f: &mut F) {
    let left = buf.len() - idx - 1;
    if left == 0 {
        buf[idx] = rest as u32;
        f(buf);
        return;
    }
    for x in 1..=rest - left {
        buf[idx] = x as u32;
        fill(rest - x, idx + 1, buf, f);
    }
}

fn check_bounds(n_plus_1: usize, bound: usize, degree: usize) -> Result<()> {
    if n_plus_1 < 3 {
        return Err(invalid(format!("cycle length {n_plus_1} < 3")));
    }
    if n_plus_1 > bound {
        return Err(Error::ResourceLimit { what: "n+1", requested: n_plus_1, limit: bound });
    }
    if degree > MAX_BRUTE_DEGREE {
        return Err(Error::ResourceLimit { what: "degree", requested: degree, limit: MAX_BRUTE_DEGREE });
    }
    Ok(())
}

/// All monomials of total degree `degree`.
pub fn monomial_basis(n_plus_1: usize, degree: usize, bound: usize) -> Result<Vec<Monomial>> {
    check_bounds(n_plus_1, bound, degree)?;
    let sys = TubeSystem::new(&cycle_graph(n_plus_1)?);
    let mut out = Vec::new();
    for k in 0..=degree.min(n_plus_1 - 1) {
        for n in enumerate_with(&sys, k) {
            for_each_composition(degree, k, &mut |a| {
                out.push(Monomial { support: n.clone(), exponents: a.to_vec() });
            });
        }
    }
    Ok(out)
}

// Permutation of tube positions induced by `g`, when `g` fixes the nested set.
fn variable_permutation(
    grp: &DihedralGroup,
    tubes: &[VertexSubset],
    g: DihedralElement,
) -> Option<Vec<usize>> {
    tubes.iter().map(|&t| tubes.binary_search(&grp.act(g, t)).ok()).collect()
}

fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

/// Fixed-monomial counts by degree for each listed element, by direct scan.
pub fn character_table_bruteforce(
    n_plus_1: usize,
    elements: &[DihedralElement],
    degree_bound: usize,
    bound: usize,
) -> Result<BTreeMap<DihedralElement, Vec<u64>>> {
    check_bounds(n_plus_1, bound, degree_bound)?;
    let grp = DihedralGroup::new(n_plus_1)?;
    let sys = TubeSystem::new(&cycle_graph(n_plus_1)?);
    let width = degree_bound + 1;
    let parts = sys.par_collect(
        None,
        || vec![0u64; elements.len() * width],
        |acc: &mut Vec<u64>, tubes| {
            let k = tubes.len();
            if k > degree_bound {
                return;
            }
            let stab = grp.stabilizer_of_tubes(tubes);
            let perms: Vec<(usize, Vec<usize>)> = elements
                .iter()
                .enumerate()
                .filter(|(_, &g)| stab.contains(&grp.normalize(g)))
                .filter_map(|(ei, &g)| variable_permutation(&grp, tubes, g).map(|p| (ei, p)))
                .collect();
            // The identity permutation fixes every exponent vector.
            let (trivial, moving): (Vec<_>, Vec<_>) =
                perms.into_iter().partition(|(_, p)| p.iter().enumerate().all(|(i, &j)| i == j));
            for deg in k..=degree_bound {
                if !trivial.is_empty() {
                    let all: u64 = composition_count(deg, k).try_into().expect("fits in u64");
                    for (ei, _) in &trivial {
                        acc[ei * width + deg] += all;
                    }
                }
                if moving.is_empty() {
                    continue;
                }
                for_each_composition(deg, k, &mut |a| {
                    for (ei, p) in &moving {
                        if (0..k).all(|i| a[p[i]] == a[i]) {
                            acc[ei * width + deg] += 1;
                        }
                    }
                });
            }
        },
    );
    let mut total = vec![0u64; elements.len() * width];
    for part in parts {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    Ok(elements
        .iter()
        .enumerate()
        .map(|(ei, &g)| (grp.normalize(g), total[ei * width..(ei + 1) * width].to_vec()))
        .collect())
}

/// Number of degree-`d` monomials fixed by `g`, for `d = 0..=degree_bound`.
pub fn character_bruteforce(
    n_plus_1: usize,
    g: DihedralElement,
    degree_bound: usize,
    bound: usize,
) -> Result<Vec<u64>> {
    let table = character_table_bruteforce(n_plus_1, &[g], degree_bound, bound)?;
    Ok(table.into_values().next().expect("one element requested"))
}

/// Graded character values as rational functions, one per group element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedCharacter {
    pub n_plus_1: usize,
    pub values: BTreeMap<DihedralElement, RationalSeries>,
}

impl GradedCharacter {
    pub fn is_class_function(&self) -> bool {
        let Ok(grp) = DihedralGroup::new(self.n_plus_1) else {
            return false;
        };
        self.values.iter().all(|(&g, v)| {
            grp.elements().into_iter().all(|x| self.values.get(&grp.conjugate(g, x)) == Some(v))
        })
    }
}

/// Character as `Σ_{gN = N} Π_{cycles c of g on N} t^|c| / (1 − t^|c|)`.
pub fn graded_character(n_plus_1: usize, bound: usize) -> Result<GradedCharacter> {
    check_bounds(n_plus_1, bound, 0)?;
    let grp = DihedralGroup::new(n_plus_1)?;
    let sys = TubeSystem::new(&cycle_graph(n_plus_1)?);
    let elements = grp.elements();
    type Tally = BTreeMap<(usize, Vec<usize>), u64>;
    let parts = sys.par_collect(None, Tally::new, |acc: &mut Tally, tubes| {
        for g in grp.stabilizer_of_tubes(tubes) {
            let p = variable_permutation(&grp, tubes, g).expect("g fixes the tubes");
            let ei = elements.binary_search(&g).expect("listed");
            *acc.entry((ei, cycle_type(&p))).or_insert(0) += 1;
        }
    });
    let mut tally = Tally::new();
    for part in parts {
        for (key, c) in part {
            *tally.entry(key).or_insert(0) += c;
        }
    }
    let mut values: BTreeMap<DihedralElement, RationalSeries> =
        elements.iter().map(|&g| (g, RationalSeries::zero())).collect();
    for ((ei, cycles), count) in tally {
        let mut term = RationalSeries::one();
        for len in cycles {
            term = term.try_mul(&geometric_block(len, 1)?)?;
        }
        let slot = values.get_mut(&elements[ei]).expect("element listed");
        *slot = slot.try_add(&term.scale_int(count as i64)?)?;
    }
    Ok(GradedCharacter { n_plus_1, values })
}

/// Character value at one element.
pub fn character_series(n_plus_1: usize, g: DihedralElement, bound: usize) -> Result<RationalSeries> {
    let grp = DihedralGroup::new(n_plus_1)?;
    let chi = graded_character(n_plus_1, bound)?;
    Ok(chi.values[&grp.normalize(g)].clone())
}

/// Stabilizer of a monomial, by comparing `g · x_N^a` with `x_N^a` for
/// every group element.
pub fn monomial_stabilizer(mono: &Monomial, n_plus_1: usize) -> Result<SubgroupDescriptor> {
    let grp = DihedralGroup::new(n_plus_1)?;
    let mut original: Vec<(VertexSubset, u32)> =
        mono.support.tubes().iter().copied().zip(mono.exponents.iter().copied()).collect();
    original.sort();
    let stab: Vec<DihedralElement> = grp
        .elements()
        .into_iter()
        .filter(|&g| {
            let mut image: Vec<(VertexSubset, u32)> =
                original.iter().map(|&(t, e)| (grp.act(g, t), e)).collect();
            image.sort();
            image == original
        })
        .collect();
    SubgroupDescriptor::from_elements(n_plus_1, &stab)
}

/// Number of exponent vectors on `N` of each degree whose stabilizer is
/// exactly `target`.
pub fn stratum_hilbert_oracle(
    n: &NestedSet,
    n_plus_1: usize,
    target: &SubgroupDescriptor,
    degree_bound: usize,
) -> Result<Vec<u64>> {
    check_bounds(n_plus_1, usize::MAX, degree_bound)?;
    target.validate(n_plus_1)?;
    let grp = DihedralGroup::new(n_plus_1)?;
    let stab = grp.stabilizer(n);
    let perms: Vec<(DihedralElement, Vec<usize>)> = stab
        .iter()
        .map(|&g| (g, variable_permutation(&grp, n.tubes(), g).expect("g fixes N")))
        .collect();
    let k = n.len();
    let mut out = vec![0u64; degree_bound + 1];
    for (deg, slot) in out.iter_mut().enumerate() {
        for_each_composition(deg, k, &mut |a| {
            let fixing: Vec<DihedralElement> = perms
                .iter()
                .filter(|(_, p)| (0..k).all(|i| a[p[i]] == a[i]))
                .map(|(g, _)| *g)
                .collect();
            let h = SubgroupDescriptor::from_elements(n_plus_1, &fixing).expect("stabilizers are subgroups");
            if h == *target {
                *slot += 1;
            }
        });
    }
    Ok(out)
}

/// Which stratum of a nested set with dihedral stabilizer `D_d` to take.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Stratum {
    /// Exponent vectors with stabilizer `C_ℓ`.
    Cyclic,
    /// Exponent vectors with stabilizer `⟨ρ^{d/ℓ}, ρ^j τ′⟩`; `parity` selects
    /// `j mod 2` (meaningful when `d/ℓ` is even), `None` takes every `j`.
    Dihedral { parity: Option<usize> },
}

fn ratio(p: usize, q: usize) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Orbit-count series of the `C_ℓ` stratum for a nested set of size
/// `size_n` with stabilizer `C_d`:
/// `(ℓ/d) Σ_{m | d/ℓ} μ(m) (t^{mℓ}/(1 − t^{mℓ}))^{size_n/(mℓ)}`.
pub fn subring_hilbert_cyclic(d: usize, size_n: usize, ell: usize) -> Result<RationalSeries> {
    if ell == 0 || d == 0 || !d.is_multiple_of(ell) || !size_n.is_multiple_of(d) {
        return Err(invalid(format!("need ℓ | d | |N|, got ℓ={ell} d={d} |N|={size_n}")));
    }
    fixed_by_rotations(d, size_n, ell)?.scale(&ratio(ell, d))
}

// Σ_{m | d/ℓ} μ(m) F(C_{mℓ}): vectors whose rotation stabilizer is exactly C_ℓ.
fn fixed_by_rotations(d: usize, size_n: usize, ell: usize) -> Result<RationalSeries> {
    let mut acc = RationalSeries::zero();
    for m in divisors(d / ell) {
        let mu = mobius(m);
        if mu != 0 {
            acc = acc.try_add(&geometric_block(m * ell, size_n / (m * ell))?.scale_int(mu)?)?;
        }
    }
    Ok(acc)
}

// Fixed points of i ↦ c + j − i on Z_M, where `offset` = c + j.
fn reflection_fixed_points(m: usize, offset: usize) -> usize {
    if m % 2 == 1 {
        1
    } else if offset.is_multiple_of(2) {
        2
    } else {
        0
    }
}

// F(D_L^{(j)}): exponent vectors fixed by ⟨ρ^{d/L}, ρ^j τ′⟩.
fn fixed_by_dihedral(shape: Shape, big_l: usize, parity: usize) -> Result<RationalSeries> {
    let m = shape.d / big_l;
    let fa = reflection_fixed_points(m, parity);
    let fo = reflection_fixed_points(m, parity + 1);
    let fixed = shape.a * fa + shape.a_odd * fo;
    let pairs = shape.a * (m - fa) / 2 + shape.a_odd * (m - fo) / 2 + shape.b * m;
    geometric_block(big_l, fixed)?.try_mul(&geometric_block(2 * big_l, pairs)?)
}

// E(D_ℓ^{(j)}): exponent vectors with stabilizer exactly ⟨ρ^{d/ℓ}, ρ^j τ′⟩.
fn exact_dihedral(shape: Shape, ell: usize, parity: usize) -> Result<RationalSeries> {
    let mut acc = RationalSeries::zero();
    for m in divisors(shape.d / ell) {
        let mu = mobius(m);
        if mu != 0 {
            acc = acc.try_add(&fixed_by_dihedral(shape, m * ell, parity)?.scale_int(mu)?)?;
        }
    }
    Ok(acc)
}

#[derive(Clone, Copy)]
struct Shape {
    d: usize,
    a: usize,
    a_odd: usize,
    b: usize,
}

/// Orbit-count series of a stratum for a nested set whose stabilizer is
/// `D_d`, labelled with `a` fixed and `2b` paired tubes per part.
pub fn subring_hilbert_dihedral(
    d: usize,
    a: usize,
    b: usize,
    ell: usize,
    kind: Stratum,
) -> Result<RationalSeries> {
    subring_hilbert_dihedral_general(d, a, 0, b, ell, kind)
}

/// As [`subring_hilbert_dihedral`], with `a_odd` rotation orbits that `τ′`
/// maps onto themselves without fixing a tube (see
/// [`orbit_decomposition`]). Then `|N| = d(a + a_odd + 2b)`.
pub fn subring_hilbert_dihedral_general(
    d: usize,
    a: usize,
    a_odd: usize,
    b: usize,
    ell: usize,
    kind: Stratum,
) -> Result<RationalSeries> {
    if ell == 0 || d == 0 || !d.is_multiple_of(ell) {
        return Err(invalid(format!("need ℓ | d, got ℓ={ell} d={d}")));
    }
    if a + a_odd + b == 0 {
        return Err(invalid("a nonempty nested set is required"));
    }
    if a_odd > 0 && d % 2 == 1 {
        return Err(invalid("every self-paired orbit has a fixed tube when d is odd"));
    }
    let shape = Shape { d, a, a_odd, b };
    let q = d / ell;
    let e0 = exact_dihedral(shape, ell, 0)?;
    let all_j = if q % 2 == 1 {
        e0.scale_int(q as i64)?
    } else {
        e0.try_add(&exact_dihedral(shape, ell, 1)?)?.scale_int((q / 2) as i64)?
    };
    match kind {
        Stratum::Dihedral { parity: None } => all_j.scale(&ratio(ell, d)),
        Stratum::Dihedral { parity: Some(p) } => {
            if q % 2 == 1 {
                return Err(invalid("reflection classes split only when d/ℓ is even"));
            }
            exact_dihedral(shape, ell, p)?.scale(&ratio(1, 2))
        }
        Stratum::Cyclic => {
            let k = d * (a + a_odd + 2 * b);
            fixed_by_rotations(d, k, ell)?.try_sub(&all_j)?.scale(&ratio(ell, 2 * d))
        }
    }
}

/// Where `Ind_H` is induced to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Dihedral,
    Cyclic,
}

/// `constant + Σ_H coeff_H(t) · Ind_H 1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "DecompositionRepr", into = "DecompositionRepr")]
pub struct InducedDecomposition {
    pub n_plus_1: usize,
    pub ambient: Ambient,
    pub constant: RationalSeries,
    pub terms: BTreeMap<SubgroupDescriptor, RationalSeries>,
}

impl InducedDecomposition {
    pub fn new(n_plus_1: usize, ambient: Ambient) -> Self {
        InducedDecomposition {
            n_plus_1,
            ambient,
            constant: RationalSeries::one(),
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, h: SubgroupDescriptor, s: &RationalSeries) -> Result<()> {
        h.validate(self.n_plus_1)?;
        let slot = self.terms.entry(h).or_insert_with(RationalSeries::zero);
        *slot = slot.try_add(s)?;
        if slot.is_zero() {
            self.terms.remove(&h);
        }
        Ok(())
    }

    pub fn induced_value(&self, h: &SubgroupDescriptor, g: DihedralElement) -> Result<u64> {
        match self.ambient {
            Ambient::Dihedral => induced_character_value(h, g, self.n_plus_1),
            Ambient::Cyclic => induced_cyclic_character_value(h, g, self.n_plus_1),
        }
    }

    /// The graded character at `g`.
    pub fn evaluate(&self, g: DihedralElement) -> Result<RationalSeries> {
        let mut acc = self.constant.clone();
        for (h, s) in &self.terms {
            let v = self.induced_value(h, g)?;
            if v > 0 {
                acc = acc.try_add(&s.scale_int(v as i64)?)?;
            }
        }
        Ok(acc)
    }

    pub fn poincare(&self) -> Result<RationalSeries> {
        self.evaluate(DihedralElement::IDENTITY)
    }

    /// Merge dihedral terms of equal order, forgetting the reflection class.
    pub fn class_blind(&self) -> Result<Self> {
        let mut out = InducedDecomposition { terms: BTreeMap::new(), ..self.clone() };
        for (h, s) in &self.terms {
            let key = SubgroupDescriptor { reflection: h.reflection.map(|_| 0), ..*h };
            out.add_term(key, s)?;
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct Term {
    subgroup: SubgroupDescriptor,
    series: RationalSeries,
}

#[derive(Serialize, Deserialize)]
struct DecompositionRepr {
    n_plus_1: usize,
    group: Ambient,
    constant: RationalSeries,
    terms: Vec<Term>,
}

impl From<InducedDecomposition> for DecompositionRepr {
    fn from(d: InducedDecomposition) -> Self {
        DecompositionRepr {
            n_plus_1: d.n_plus_1,
            group: d.ambient,
            constant: d.constant,
            terms: d.terms.into_iter().map(|(subgroup, series)| Term { subgroup, series }).collect(),
        }
    }
}

impl TryFrom<DecompositionRepr> for InducedDecomposition {
    type Error = Error;

    fn try_from(r: DecompositionRepr) -> Result<Self> {
        let mut out = InducedDecomposition { constant: r.constant, ..Self::new(r.n_plus_1, r.group) };
        for t in r.terms {
            out.add_term(t.subgroup, &t.series)?;
        }
        Ok(out)
    }
}

/// Labels of a nested set with dihedral stabilizer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DihedralLabel {
    pub a: usize,
    pub a_odd: usize,
    pub b: usize,
    /// Parity of `s` in `τ′ = σ_s τ`; always 0 when `n+1` is odd.
    pub shift_parity: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IsotropyType {
    pub k: usize,
    pub d: usize,
    pub dihedral: Option<DihedralLabel>,
}

/// Number of nested sets of each isotropy type, with the least one as a
/// representative.
pub fn isotropy_types(n_plus_1: usize, bound: usize) -> Result<BTreeMap<IsotropyType, (u64, NestedSet)>> {
    check_bounds(n_plus_1, bound, 0)?;
    let grp = DihedralGroup::new(n_plus_1)?;
    let sys = TubeSystem::new(&cycle_graph(n_plus_1)?);
    type Tally = BTreeMap<IsotropyType, (u64, NestedSet)>;
    let parts = sys.par_collect(None, Tally::new, |acc: &mut Tally, tubes| {
        let stab = grp.stabilizer_of_tubes(tubes);
        let d = stab.iter().filter(|g| !g.reflected).count();
        let n = NestedSet::from_tubes_unchecked(tubes.to_vec());
        let dihedral = if stab.len() > d {
            let dec = orbit_decomposition(&n, n_plus_1).expect("valid nested set");
            let classes = gcd(2, n_plus_1);
            let mut shift_parity = dec.reflection.expect("dihedral stabilizer").shift % classes;
            if dec.a == dec.a_odd {
                // τ′ and ρτ′ label equally well; keep the labels orbit-invariant.
                shift_parity = shift_parity.min((shift_parity + n_plus_1 / d) % classes);
            }
            Some(DihedralLabel { a: dec.a, a_odd: dec.a_odd, b: dec.b, shift_parity })
        } else {
            None
        };
        let key = IsotropyType { k: tubes.len(), d, dihedral };
        acc.entry(key).and_modify(|e| e.0 += 1).or_insert((1, n));
    });
    let mut out = Tally::new();
    for part in parts {
        for (key, (c, rep)) in part {
            out.entry(key)
                .and_modify(|e| {
                    e.0 += c;
                    if rep < e.1 {
                        e.1 = rep.clone();
                    }
                })
                .or_insert((c, rep));
        }
    }
    Ok(out)
}

/// The decomposition of the graded `D_{n+1}`-representation, assembled
/// orbit by orbit from the isotropy types.
pub fn theorem_series(n_plus_1: usize, bound: usize) -> Result<InducedDecomposition> {
    let types = isotropy_types(n_plus_1, bound)?;
    let m = n_plus_1;
    let mut dec = InducedDecomposition::new(m, Ambient::Dihedral);
    for (ty, (count, _)) in types {
        if ty.k == 0 {
            continue;
        }
        let d = ty.d;
        let h_order = if ty.dihedral.is_some() { 2 * d } else { d };
        let weighted = count * h_order as u64;
        assert_eq!(weighted % (2 * m as u64), 0, "orbits have size |G|/|H|");
        let orbits = (weighted / (2 * m as u64)) as i64;
        for ell in divisors(d) {
            let cyc = SubgroupDescriptor::cyclic(m, ell)?;
            match ty.dihedral {
                None => {
                    dec.add_term(cyc, &subring_hilbert_cyclic(d, ty.k, ell)?.scale_int(orbits)?)?;
                }
                Some(lab) => {
                    let stratum = |kind| subring_hilbert_dihedral_general(d, lab.a, lab.a_odd, lab.b, ell, kind);
                    dec.add_term(cyc, &stratum(Stratum::Cyclic)?.scale_int(orbits)?)?;
                    let classes = gcd(2, m / ell);
                    let step = m / d;
                    if (d / ell) % 2 == 1 {
                        let h = SubgroupDescriptor::dihedral(m, ell, lab.shift_parity % classes)?;
                        let s = stratum(Stratum::Dihedral { parity: None })?;
                        dec.add_term(h, &s.scale_int(orbits)?)?;
                    } else {
                        for p in 0..2 {
                            let r = (lab.shift_parity + p * step) % classes;
                            let h = SubgroupDescriptor::dihedral(m, ell, r)?;
                            let s = stratum(Stratum::Dihedral { parity: Some(p) })?;
                            dec.add_term(h, &s.scale_int(orbits)?)?;
                        }
                    }
                }
            }
        }
    }
    Ok(dec)
}

/// The decomposition of the graded `C_{n+1}`-representation from the
/// closed-form `γ` counts.
pub fn cyclic_series(n_plus_1: usize) -> Result<InducedDecomposition> {
    let m = n_plus_1;
    DihedralGroup::new(m)?;
    let mut dec = InducedDecomposition::new(m, Ambient::Cyclic);
    for k in 1..m {
        for d in divisors(gcd(m, k)) {
            let g = gamma_closed(m, d, k);
            if g.is_zero() {
                continue;
            }
            let g = BigRational::from_integer(BigInt::from(g));
            for ell in divisors(d) {
                let coeff = fixed_by_rotations(d, k, ell)?.scale(&(ratio(ell, m) * &g))?;
                dec.add_term(SubgroupDescriptor::cyclic(m, ell)?, &coeff)?;
            }
        }
    }
    Ok(dec)
}

pub fn poincare_series(n_plus_1: usize, bound: usize) -> Result<RationalSeries> {
    theorem_series(n_plus_1, bound)?.poincare()
}

/// `Σ_k f_k (t/(1 − t))^k` from the closed-form face counts.
pub fn f_vector_series(n_plus_1: usize) -> Result<RationalSeries> {
    if n_plus_1 < 3 {
        return Err(invalid(format!("cycle length {n_plus_1} < 3")));
    }
    let n = n_plus_1 - 1;
    let mut acc = RationalSeries::zero();
    for k in 0..=n {
        let f = BigRational::from_integer(BigInt::from(cyclohedron_face_count(n, k)?));
        acc = acc.try_add(&geometric_block(1, k)?.scale(&f)?)?;
    }
    Ok(acc)
}

/// `1 + f_1 t/(1-t) + f_2 t^2/(1-t)^2 + …` as text.
pub fn format_f_vector_form(f: &[BigUint]) -> String {
    let mut parts = Vec::new();
    for (k, c) in f.iter().enumerate() {
        parts.push(match k {
            0 => c.to_string(),
            1 => format!("{c}t/(1-t)"),
            _ => format!("{c}t^{k}/(1-t)^{k}"),
        });
    }
    parts.join(" + ")
}

/// `h`-vector of the cyclohedron: coefficients of `Σ_k f_k t^k (1 − t)^{n−k}`.
pub fn ordinary_betti(n_plus_1: usize) -> Result<Vec<BigUint>> {
    if n_plus_1 < 3 {
        return Err(invalid(format!("cycle length {n_plus_1} < 3")));
    }
    let n = n_plus_1 - 1;
    let mut h = Poly::zero();
    for k in 0..=n {
        let f = BigInt::from(cyclohedron_face_count(n, k)?);
        let term = Poly::monomial(f, k).mul(&Poly::one_minus_power(1).pow(n - k));
        h = h.add(&term);
    }
    (0..=n)
        .map(|i| {
            h.coeff(i)
                .to_biguint()
                .ok_or_else(|| invalid("negative h-vector entry"))
        })
        .collect()
}

/// Formulas exactly as originally printed, kept for comparison with the
/// oracle-backed versions above. See `ERRATA.md`.
pub mod as_printed {
    use super::*;
    use crate::census::CensusTable;

    fn block_pair(m_ell: usize, e1: usize, e2: usize) -> Result<RationalSeries> {
        geometric_block(m_ell, e1)?.try_mul(&geometric_block(2 * m_ell, e2)?)
    }

    /// `(ℓ/d) Σ_{m | d/ℓ} μ(m) (t^{mℓ}/(1−t^{mℓ}))^{ad/(mℓ)} (t^{2mℓ}/(1−t^{2mℓ}))^{bd/(mℓ)}`.
    pub fn dihedral_stratum(d: usize, a: usize, b: usize, ell: usize) -> Result<RationalSeries> {
        if ell == 0 || !d.is_multiple_of(ell) {
            return Err(invalid("need ℓ | d"));
        }
        let mut acc = RationalSeries::zero();
        for m in divisors(d / ell) {
            let ml = m * ell;
            acc = acc.try_add(&block_pair(ml, a * d / ml, b * d / ml)?.scale_int(mobius(m))?)?;
        }
        acc.scale(&ratio(ell, d))
    }

    /// Cyclic stratum with exponent `(a+2b)/(mℓ)` and no Möbius weight.
    /// Fails when that exponent is not an integer.
    pub fn cyclic_stratum_lemma(d: usize, a: usize, b: usize, ell: usize) -> Result<RationalSeries> {
        if ell == 0 || !d.is_multiple_of(ell) {
            return Err(invalid("need ℓ | d"));
        }
        let mut acc = RationalSeries::zero();
        for m in divisors(d / ell) {
            let ml = m * ell;
            if !(a + 2 * b).is_multiple_of(ml) {
                return Err(invalid(format!("exponent (a+2b)/(mℓ) = {}/{ml} is not an integer", a + 2 * b)));
            }
            let first = geometric_block(ml, (a + 2 * b) / ml)?;
            acc = acc.try_add(&first.try_sub(&block_pair(ml, a * d / ml, b * d / ml)?)?)?;
        }
        acc.scale(&ratio(ell, 2 * d))
    }

    /// Cyclic stratum with exponent `(a+2b)d/(mℓ)` and the Möbius weight.
    pub fn cyclic_stratum_proposition(d: usize, a: usize, b: usize, ell: usize) -> Result<RationalSeries> {
        if ell == 0 || !d.is_multiple_of(ell) {
            return Err(invalid("need ℓ | d"));
        }
        let mut acc = RationalSeries::zero();
        for m in divisors(d / ell) {
            let ml = m * ell;
            let first = geometric_block(ml, (a + 2 * b) * d / ml)?;
            let diff = first.try_sub(&block_pair(ml, a * d / ml, b * d / ml)?)?;
            acc = acc.try_add(&diff.scale_int(mobius(m))?)?;
        }
        acc.scale(&ratio(ell, 2 * d))
    }

    /// The global formula with `γ`-weighted cyclic terms and `β(d,k,a)`-weighted
    /// dihedral terms, `a` running from 1. Dihedral keys use the class of `τ`.
    pub fn theorem_series(census: &CensusTable) -> Result<InducedDecomposition> {
        let m = census.n_plus_1;
        let mut dec = InducedDecomposition::new(m, Ambient::Dihedral);
        for k in 1..m {
            for d in divisors(gcd(m, k)) {
                let entry = census.entry(d, k);
                for ell in divisors(d) {
                    let mut cyc = RationalSeries::zero();
                    for mm in divisors(d / ell) {
                        let ml = mm * ell;
                        cyc = cyc.try_add(&geometric_block(ml, k / ml)?.scale_int(mobius(mm))?)?;
                    }
                    let coeff = cyc.scale(&(ratio(ell, m) * BigRational::from_integer(entry.gamma.into())))?;
                    dec.add_term(SubgroupDescriptor::cyclic(m, ell)?, &coeff)?;
                    for a in 1..=k {
                        let beta = census.beta_a(d, k, a);
                        if beta == 0 {
                            continue;
                        }
                        let b = (k / d - a) / 2;
                        let mut dih = RationalSeries::zero();
                        for mm in divisors(d / ell) {
                            let ml = mm * ell;
                            dih = dih.try_add(&block_pair(ml, a * d / ml, b * d / ml)?.scale_int(mobius(mm))?)?;
                        }
                        let w = ratio(ell, 2 * m) * BigRational::from_integer(beta.into());
                        dec.add_term(SubgroupDescriptor::dihedral(m, ell, 0)?, &dih.scale(&w)?)?;
                    }
                }
            }
        }
        Ok(dec)
    }
}

/// Number of compositions of `d` into `k` positive parts.
pub fn composition_count(d: usize, k: usize) -> BigUint {
    if k == 0 {
        return if d == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(d as i64 - 1, k as i64 - 1)
}
