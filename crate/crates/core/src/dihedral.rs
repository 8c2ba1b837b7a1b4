//! The dihedral group `D_{n+1}` acting on the vertices of `C_{n+1}`.
//!
//! `σ_k` sends vertex `i` to `i + k` and `σ_k τ` sends `i` to `k − i`
//! (labels mod `n+1`, 1-based). On 0-based bits `u = i − 1` the reflection
//! reads `u ↦ k − 2 − u`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, VertexSubset, MAX_VERTICES};
use crate::nested::NestedSet;

/// `σ_shift` or, when `reflected`, `σ_shift τ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DihedralElement {
    pub shift: usize,
    pub reflected: bool,
}

impl DihedralElement {
    pub const IDENTITY: DihedralElement = DihedralElement { shift: 0, reflected: false };

    pub const fn rotation(shift: usize) -> Self {
        DihedralElement { shift, reflected: false }
    }

    pub const fn reflection(shift: usize) -> Self {
        DihedralElement { shift, reflected: true }
    }

    /// Parse `e`, `t`, `s<k>` or `s<k>t`, reducing `k` mod `n_plus_1`.
    pub fn parse(text: &str, n_plus_1: usize) -> Result<Self> {
        let el: DihedralElement = text.parse()?;
        if n_plus_1 == 0 {
            return Err(invalid("group order must be positive"));
        }
        Ok(DihedralElement { shift: el.shift % n_plus_1, ..el })
    }
}

// Rotations first, then reflections, each by shift.
impl Ord for DihedralElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.reflected, self.shift).cmp(&(other.reflected, other.shift))
    }
}

impl PartialOrd for DihedralElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.shift, self.reflected) {
            (0, false) => write!(f, "e"),
            (0, true) => write!(f, "t"),
            (k, false) => write!(f, "s{k}"),
            (k, true) => write!(f, "s{k}t"),
        }
    }
}

impl FromStr for DihedralElement {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("group element {text:?}; expected e, t, s<k> or s<k>t"));
        match text {
            "e" => return Ok(DihedralElement::IDENTITY),
            "t" => return Ok(DihedralElement::reflection(0)),
            _ => {}
        }
        let body = text.strip_prefix('s').ok_or_else(bad)?;
        let (digits, reflected) = match body.strip_suffix('t') {
            Some(d) => (d, true),
            None => (body, false),
        };
        let shift: usize = digits.parse().map_err(|_| bad())?;
        Ok(DihedralElement { shift, reflected })
    }
}

/// `D_{n+1}` for a fixed `n + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DihedralGroup {
    m: usize,
}

impl DihedralGroup {
    pub fn new(n_plus_1: usize) -> Result<Self> {
        if !(3..=MAX_VERTICES).contains(&n_plus_1) {
            return Err(invalid(format!("cycle length {n_plus_1} outside 3..={MAX_VERTICES}")));
        }
        Ok(DihedralGroup { m: n_plus_1 })
    }

    /// The group acting on a graph; only the labelled cycle qualifies.
    pub fn for_graph(g: &Graph) -> Result<Self> {
        if !g.is_standard_cycle() {
            return Err(invalid("the dihedral action is defined on cycle graphs only"));
        }
        Self::new(g.n_vertices())
    }

    pub fn n_plus_1(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        2 * self.m
    }

    /// Rotations `σ_0..σ_n`, then reflections `σ_0 τ..σ_n τ`.
    pub fn elements(&self) -> Vec<DihedralElement> {
        let rot = (0..self.m).map(DihedralElement::rotation);
        let refl = (0..self.m).map(DihedralElement::reflection);
        rot.chain(refl).collect()
    }

    pub fn rotations(&self) -> Vec<DihedralElement> {
        (0..self.m).map(DihedralElement::rotation).collect()
    }

    pub fn normalize(&self, g: DihedralElement) -> DihedralElement {
        DihedralElement { shift: g.shift % self.m, ..g }
    }

    /// `a ∘ b`: apply `b` first.
    pub fn compose(&self, a: DihedralElement, b: DihedralElement) -> DihedralElement {
        let m = self.m;
        let (sa, sb) = (a.shift % m, b.shift % m);
        match (a.reflected, b.reflected) {
            (false, false) => DihedralElement::rotation((sa + sb) % m),
            (false, true) => DihedralElement::reflection((sa + sb) % m),
            (true, false) => DihedralElement::reflection((sa + m - sb) % m),
            (true, true) => DihedralElement::rotation((sa + m - sb) % m),
        }
    }

    pub fn inverse(&self, a: DihedralElement) -> DihedralElement {
        if a.reflected {
            self.normalize(a)
        } else {
            DihedralElement::rotation((self.m - a.shift % self.m) % self.m)
        }
    }

    /// `x⁻¹ g x`.
    pub fn conjugate(&self, g: DihedralElement, x: DihedralElement) -> DihedralElement {
        self.compose(self.inverse(x), self.compose(g, x))
    }

    /// Image of the 0-based vertex `u`.
    pub fn apply(&self, a: DihedralElement, u: usize) -> usize {
        let m = self.m;
        let s = a.shift % m;
        if a.reflected {
            (2 * m + s - 2 - u % m) % m
        } else {
            (u + s) % m
        }
    }

    fn mask(&self) -> u64 {
        if self.m == 64 {
            u64::MAX
        } else {
            (1u64 << self.m) - 1
        }
    }

    fn rotate_bits(&self, x: u64, k: usize) -> u64 {
        let k = k % self.m;
        if k == 0 {
            x
        } else {
            ((x << k) | (x >> (self.m - k))) & self.mask()
        }
    }

    pub fn act(&self, a: DihedralElement, s: VertexSubset) -> VertexSubset {
        let x = s.bits();
        let bits = if a.reflected {
            let reversed = x.reverse_bits() >> (64 - self.m);
            self.rotate_bits(reversed, a.shift % self.m + self.m - 1)
        } else {
            self.rotate_bits(x, a.shift)
        };
        VertexSubset::from_bits(bits)
    }

    pub fn act_nested(&self, a: DihedralElement, n: &NestedSet) -> NestedSet {
        NestedSet::from_tubes_unchecked(n.tubes().iter().map(|&t| self.act(a, t)).collect())
    }

    pub fn fixes(&self, a: DihedralElement, n: &NestedSet) -> bool {
        self.fixes_tubes(a, n.tubes())
    }

    /// Same as [`fixes`](Self::fixes) for a canonically sorted tube slice.
    pub fn fixes_tubes(&self, a: DihedralElement, tubes: &[VertexSubset]) -> bool {
        tubes.iter().all(|&t| tubes.binary_search(&self.act(a, t)).is_ok())
    }

    /// Stabilizer of `n`, listed in element order.
    pub fn stabilizer(&self, n: &NestedSet) -> Vec<DihedralElement> {
        self.stabilizer_of_tubes(n.tubes())
    }

    pub fn stabilizer_of_tubes(&self, tubes: &[VertexSubset]) -> Vec<DihedralElement> {
        let mut out = Vec::new();
        self.scan_stabilizer(tubes, |a| out.push(a));
        out.sort();
        out
    }

    /// Numbers of rotations and of reflections fixing the tubes.
    pub fn stabilizer_counts(&self, tubes: &[VertexSubset]) -> (usize, usize) {
        let mut counts = (0, 0);
        self.scan_stabilizer(tubes, |a| if a.reflected { counts.1 += 1 } else { counts.0 += 1 });
        counts
    }

    // An element fixing the tubes fixes their union and their symmetric
    // difference (both commute with vertex permutations). The images of those
    // two masks under σ_s and σ_s τ come from one-step rotations; the full test
    // runs only when both match.
    fn scan_stabilizer<F: FnMut(DihedralElement)>(&self, tubes: &[VertexSubset], mut found: F) {
        let (union, xor) = tubes.iter().fold((0u64, 0u64), |(u, x), t| (u | t.bits(), x ^ t.bits()));
        let top = 1u64 << (self.m - 1);
        let mask = self.mask();
        let step = |x: u64| ((x << 1) & mask) | ((x & top) >> (self.m - 1));
        let mirror = |x: u64| self.act(DihedralElement::reflection(0), VertexSubset::from_bits(x)).bits();
        let (mut rot_u, mut rot_x) = (union, xor);
        let (mut refl_u, mut refl_x) = (mirror(union), mirror(xor));
        for shift in 0..self.m {
            if rot_u == union && rot_x == xor {
                let a = DihedralElement::rotation(shift);
                if shift == 0 || self.fixes_tubes(a, tubes) {
                    found(a);
                }
            }
            if refl_u == union && refl_x == xor {
                let a = DihedralElement::reflection(shift);
                if self.fixes_tubes(a, tubes) {
                    found(a);
                }
            }
            rot_u = step(rot_u);
            rot_x = step(rot_x);
            refl_u = step(refl_u);
            refl_x = step(refl_x);
        }
    }

    pub fn isotropy(&self, n: &NestedSet) -> SubgroupDescriptor {
        SubgroupDescriptor::from_elements(self.m, &self.stabilizer(n))
            .expect("a stabilizer is a subgroup")
    }

    pub fn orbit(&self, n: &NestedSet) -> Vec<NestedSet> {
        let mut out: Vec<NestedSet> =
            self.elements().into_iter().map(|a| self.act_nested(a, n)).collect();
        out.sort();
        out.dedup();
        out
    }
}

pub fn act_on_subset(phi: DihedralElement, s: VertexSubset, n_plus_1: usize) -> Result<VertexSubset> {
    let g = DihedralGroup::new(n_plus_1)?;
    Ok(g.act(phi, s))
}

pub fn act_on_nested(phi: DihedralElement, n: &NestedSet, n_plus_1: usize) -> Result<NestedSet> {
    let g = DihedralGroup::new(n_plus_1)?;
    Ok(g.act_nested(phi, n))
}

pub fn isotropy_of_nested(n: &NestedSet, n_plus_1: usize) -> Result<SubgroupDescriptor> {
    Ok(DihedralGroup::new(n_plus_1)?.isotropy(n))
}

/// `C_d = ⟨σ_{(n+1)/d}⟩`, or `D_d = ⟨σ_{(n+1)/d}, σ_r τ⟩` when a reflection
/// representative `r < (n+1)/d` is present.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct SubgroupDescriptor {
    pub cyclic_order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reflection: Option<usize>,
}

impl SubgroupDescriptor {
    pub fn cyclic(n_plus_1: usize, d: usize) -> Result<Self> {
        if d == 0 || !n_plus_1.is_multiple_of(d) {
            return Err(invalid(format!("{d} does not divide {n_plus_1}")));
        }
        Ok(SubgroupDescriptor { cyclic_order: d, reflection: None })
    }

    pub fn dihedral(n_plus_1: usize, d: usize, r: usize) -> Result<Self> {
        let c = Self::cyclic(n_plus_1, d)?;
        Ok(SubgroupDescriptor { reflection: Some(r % (n_plus_1 / d)), ..c })
    }

    pub fn is_dihedral(&self) -> bool {
        self.reflection.is_some()
    }

    pub fn order(&self) -> usize {
        if self.is_dihedral() {
            2 * self.cyclic_order
        } else {
            self.cyclic_order
        }
    }

    /// Re-checks divisibility and the range of `r`.
    pub fn validate(&self, n_plus_1: usize) -> Result<()> {
        let d = self.cyclic_order;
        if d == 0 || !n_plus_1.is_multiple_of(d) {
            return Err(invalid(format!("cyclic order {d} does not divide {n_plus_1}")));
        }
        if let Some(r) = self.reflection {
            if r >= n_plus_1 / d {
                return Err(invalid(format!("reflection representative {r} not reduced")));
            }
        }
        Ok(())
    }

    pub fn contains(&self, n_plus_1: usize, g: DihedralElement) -> bool {
        let step = n_plus_1 / self.cyclic_order;
        let s = g.shift % n_plus_1;
        match (g.reflected, self.reflection) {
            (false, _) => s.is_multiple_of(step),
            (true, Some(r)) => (s + n_plus_1 - r).is_multiple_of(step),
            (true, None) => false,
        }
    }

    pub fn elements(&self, n_plus_1: usize) -> Vec<DihedralElement> {
        let step = n_plus_1 / self.cyclic_order;
        let mut out: Vec<DihedralElement> =
            (0..self.cyclic_order).map(|i| DihedralElement::rotation(i * step)).collect();
        if let Some(r) = self.reflection {
            out.extend((0..self.cyclic_order).map(|i| DihedralElement::reflection(r + i * step)));
        }
        out.sort();
        out
    }

    /// Classify a subgroup given by its elements.
    pub fn from_elements(n_plus_1: usize, elems: &[DihedralElement]) -> Result<Self> {
        let d = elems.iter().filter(|g| !g.reflected).count();
        let desc = match elems.iter().filter(|g| g.reflected).map(|g| g.shift % n_plus_1).min() {
            None => Self::cyclic(n_plus_1, d)?,
            Some(r) => Self::dihedral(n_plus_1, d, r)?,
        };
        let mut given: Vec<DihedralElement> = elems
            .iter()
            .map(|g| DihedralElement { shift: g.shift % n_plus_1, ..*g })
            .collect();
        given.sort();
        if given != desc.elements(n_plus_1) {
            return Err(invalid("element list is not a subgroup"));
        }
        Ok(desc)
    }

    /// Every subgroup of this one, in descriptor order.
    pub fn subgroups(&self, n_plus_1: usize) -> Vec<SubgroupDescriptor> {
        let d = self.cyclic_order;
        let mut out = Vec::new();
        for ell in crate::arith::divisors(d) {
            out.push(SubgroupDescriptor { cyclic_order: ell, reflection: None });
            if let Some(r) = self.reflection {
                for i in 0..d / ell {
                    let shift = r + i * (n_plus_1 / d);
                    out.push(SubgroupDescriptor {
                        cyclic_order: ell,
                        reflection: Some(shift % (n_plus_1 / ell)),
                    });
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn is_subgroup_of(&self, n_plus_1: usize, other: &SubgroupDescriptor) -> bool {
        self.elements(n_plus_1).into_iter().all(|g| other.contains(n_plus_1, g))
    }

    /// Representative of the conjugacy class. Dihedral subgroups of a given
    /// order form one class when `(n+1)/d` is odd and two otherwise, told
    /// apart by the parity of `r`.
    pub fn conjugacy_class_rep(&self, n_plus_1: usize) -> SubgroupDescriptor {
        match self.reflection {
            None => *self,
            Some(r) => SubgroupDescriptor {
                cyclic_order: self.cyclic_order,
                reflection: Some(r % gcd(2, n_plus_1 / self.cyclic_order)),
            },
        }
    }

    /// `C_d` or `D_d<s{step},s{r}t>`.
    pub fn label(&self, n_plus_1: usize) -> String {
        let d = self.cyclic_order;
        match self.reflection {
            None => format!("C_{d}"),
            Some(r) => {
                let refl = DihedralElement::reflection(r);
                if d == 1 {
                    format!("D_1<{refl}>")
                } else {
                    format!("D_{d}<{},{refl}>", DihedralElement::rotation(n_plus_1 / d))
                }
            }
        }
    }
}

/// Number of cosets `xH` fixed by `g`, i.e. the character of `Ind_H^G 1` at `g`.
pub fn induced_character_value(
    h: &SubgroupDescriptor,
    g: DihedralElement,
    n_plus_1: usize,
) -> Result<u64> {
    let grp = DihedralGroup::new(n_plus_1)?;
    h.validate(n_plus_1)?;
    let hits = grp
        .elements()
        .into_iter()
        .filter(|&x| h.contains(n_plus_1, grp.conjugate(g, x)))
        .count();
    Ok((hits / h.order()) as u64)
}

/// Character of `Ind_H^{C_{n+1}} 1` at a rotation, for a cyclic `H`.
pub fn induced_cyclic_character_value(
    h: &SubgroupDescriptor,
    g: DihedralElement,
    n_plus_1: usize,
) -> Result<u64> {
    h.validate(n_plus_1)?;
    if h.is_dihedral() || g.reflected {
        return Err(invalid("cyclic induction takes a cyclic subgroup and a rotation"));
    }
    Ok(if h.contains(n_plus_1, g) { (n_plus_1 / h.cyclic_order) as u64 } else { 0 })
}

/// One part `N_i` of the orbit decomposition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Part {
    /// `A_{i,1..a}`: tubes fixed by the part's reflection.
    pub a_tubes: Vec<VertexSubset>,
    /// `B_{i,1..2b}` with the reflection sending `B_{i,j}` to `B_{i,2b+1−j}`.
    pub b_tubes: Vec<VertexSubset>,
    /// One tube from each rotation orbit that the reflection maps onto itself
    /// without fixing any member. Only possible when `d` is even.
    pub odd_tubes: Vec<VertexSubset>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitDecomposition {
    pub isotropy: SubgroupDescriptor,
    pub d: usize,
    pub a: usize,
    pub b: usize,
    /// Number of `odd_tubes` per part; zero exactly when `τ′ · N_1 = N_1`.
    pub a_odd: usize,
    /// Reflection `τ′` of the stabilizer, chosen to fix as many tubes as
    /// possible.
    pub reflection: Option<DihedralElement>,
    pub parts: Vec<Part>,
}

impl OrbitDecomposition {
    pub fn part_tubes(&self, i: usize) -> Vec<VertexSubset> {
        let p = &self.parts[i];
        p.a_tubes.iter().chain(&p.b_tubes).chain(&p.odd_tubes).copied().collect()
    }
}

/// Split `N` into `N_1, …, N_d` with `N_i = (σ_N)^{i−1} N_1` and label the
/// tubes of `N_1` by a reflection of the stabilizer.
///
/// A reflection maps a self-paired rotation orbit `t_i = ρ^i t_0` by
/// `i ↦ c − i`. For even `d` and odd `c` no member is fixed; if every
/// reflection leaves such an orbit (first at `n+1 = 10`, e.g.
/// `{1},{6},{3,4},{8,9}`), no `N_1` is reflection-stable and those orbits
/// are reported in `odd_tubes`.
pub fn orbit_decomposition(n: &NestedSet, n_plus_1: usize) -> Result<OrbitDecomposition> {
    let grp = DihedralGroup::new(n_plus_1)?;
    let stab = grp.stabilizer(n);
    let isotropy = SubgroupDescriptor::from_elements(n_plus_1, &stab)?;
    let d = isotropy.cyclic_order;
    let rho = DihedralElement::rotation(n_plus_1 / d);
    let rho_pow = |i: usize| DihedralElement::rotation(i * (n_plus_1 / d));

    // Rotation orbits, each listed as t, ρt, ρ²t, … from its least member.
    let mut orbits: Vec<Vec<VertexSubset>> = Vec::new();
    let mut seen = vec![false; n.len()];
    for (i, &t) in n.tubes().iter().enumerate() {
        if seen[i] {
            continue;
        }
        let mut orbit = vec![t];
        let mut cur = grp.act(rho, t);
        while cur != t {
            orbit.push(cur);
            cur = grp.act(rho, cur);
        }
        assert_eq!(orbit.len(), d, "free rotation orbits");
        for &u in &orbit {
            seen[n.index_of(u).expect("orbit stays in N")] = true;
        }
        orbits.push(orbit);
    }
    let orbit_of = |t: VertexSubset| orbits.iter().position(|o| o.contains(&t));

    let spread = |first: &Part| -> Vec<Part> {
        let shift = |ts: &[VertexSubset], i: usize| ts.iter().map(|&t| grp.act(rho_pow(i), t)).collect();
        (0..d)
            .map(|i| Part {
                a_tubes: shift(&first.a_tubes, i),
                b_tubes: shift(&first.b_tubes, i),
                odd_tubes: shift(&first.odd_tubes, i),
            })
            .collect()
    };

    let reflections: Vec<DihedralElement> = stab.iter().copied().filter(|g| g.reflected).collect();
    if reflections.is_empty() {
        let first = Part {
            a_tubes: orbits.iter().map(|o| o[0]).collect(),
            b_tubes: Vec::new(),
            odd_tubes: Vec::new(),
        };
        return Ok(OrbitDecomposition {
            isotropy,
            d,
            a: first.a_tubes.len(),
            b: 0,
            a_odd: 0,
            reflection: None,
            parts: spread(&first),
        });
    }

    let label = |tau: DihedralElement| -> Part {
        let mut a_tubes = Vec::new();
        let mut odd_tubes = Vec::new();
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut used = vec![false; orbits.len()];
        for (oi, orbit) in orbits.iter().enumerate() {
            if used[oi] {
                continue;
            }
            let image = orbit_of(grp.act(tau, orbit[0])).expect("τ′ stabilizes N");
            if image == oi {
                match orbit.iter().find(|&&t| grp.act(tau, t) == t) {
                    Some(&t) => a_tubes.push(t),
                    None => odd_tubes.push(orbit[0]),
                }
            } else {
                left.push(orbit[0]);
                right.push(grp.act(tau, orbit[0]));
                used[image] = true;
            }
            used[oi] = true;
        }
        right.reverse();
        Part { a_tubes, b_tubes: left.into_iter().chain(right).collect(), odd_tubes }
    };
    let (tau, first) = reflections
        .iter()
        .map(|&tau| (tau, label(tau)))
        .min_by_key(|(_, p)| p.odd_tubes.len())
        .expect("nonempty");
    Ok(OrbitDecomposition {
        isotropy,
        d,
        a: first.a_tubes.len(),
        b: first.b_tubes.len() / 2,
        a_odd: first.odd_tubes.len(),
        reflection: Some(tau),
        parts: spread(&first),
    })
}

/// Preimage of `n0` (over `C_ℓ`) under the `p`-fold covering `C_{pℓ} → C_ℓ`.
pub fn lift_nested(p: usize, n0: &NestedSet, ell: usize) -> Result<NestedSet> {
    if p == 0 || ell < 3 || p * ell > MAX_VERTICES {
        return Err(invalid(format!("cannot lift from C_{ell} by a {p}-fold cover")));
    }
    let m = p * ell;
    let mut tubes = Vec::with_capacity(p * n0.len());
    for &t in n0.tubes() {
        let start = t
            .iter()
            .find(|&u| !t.contains((u + ell - 1) % ell))
            .ok_or_else(|| invalid(format!("{t} is not a proper arc of C_{ell}")))?;
        for j in 0..p {
            tubes.push(VertexSubset::arc(start + j * ell, t.len(), m));
        }
    }
    Ok(NestedSet::from_tubes_unchecked(tubes))
}
