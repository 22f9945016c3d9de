//! Eagerly enumerated permutation groups and their subgroups.
//!
//! A [`FiniteGroup`] stores every element, sorted lexicographically by image
//! list, so element ids are canonical: two groups with the same element set
//! index their elements identically. The identity is always id `0`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Index of an element inside its [`FiniteGroup`].
pub type ElementId = u32;

/// Default cap on eagerly enumerated groups.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 200_000;

const TABLE_LIMIT: usize = 1024;

/// Enumeration cap, overridable through `FUSIONKIT_MAX_GROUP_ORDER`.
pub fn max_group_order() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("FUSIONKIT_MAX_GROUP_ORDER")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_GROUP_ORDER)
    })
}

pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, ElementId>,
    inverse: Vec<ElementId>,
    table: Option<Vec<ElementId>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Incremental enumeration by coset expansion (Dimino).
pub(crate) struct GroupBuilder {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    cap: usize,
}

impl GroupBuilder {
    pub(crate) fn new(degree: usize) -> Self {
        Self::with_cap(degree, max_group_order())
    }

    pub(crate) fn with_cap(degree: usize, cap: usize) -> Self {
        let id = Perm::identity(degree);
        let mut index = HashMap::new();
        index.insert(id.clone(), 0);
        GroupBuilder {
            degree,
            gens: Vec::new(),
            elements: vec![id],
            index,
            cap,
        }
    }

    pub(crate) fn contains(&self, g: &Perm) -> bool {
        self.index.contains_key(g)
    }

    fn push(&mut self, e: Perm) -> Result<()> {
        if self.elements.len() >= self.cap {
            return Err(Error::OrderCapExceeded { cap: self.cap });
        }
        self.index.insert(e.clone(), self.elements.len());
        self.elements.push(e);
        Ok(())
    }

    /// Adds `g` as a generator; returns whether the group grew.
    pub(crate) fn add(&mut self, g: Perm) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree()));
        }
        if self.contains(&g) {
            return Ok(false);
        }
        self.gens.push(g.clone());
        let h_len = self.elements.len();
        let mut reps = vec![g];
        for k in 0..h_len {
            let e = self.elements[k].then(&reps[0]);
            self.push(e)?;
        }
        let mut r = 0;
        while r < reps.len() {
            for s in 0..self.gens.len() {
                let e = reps[r].then(&self.gens[s]);
                if !self.contains(&e) {
                    for k in 0..h_len {
                        let x = self.elements[k].then(&e);
                        self.push(x)?;
                    }
                    reps.push(e);
                }
            }
            r += 1;
        }
        Ok(true)
    }

    pub(crate) fn finish(self) -> FiniteGroup {
        FiniteGroup::from_parts(self.degree, self.gens, self.elements)
    }
}

impl FiniteGroup {
    /// Enumerates `⟨generators⟩` on `degree` points.
    pub fn from_generators(degree: usize, generators: &[Perm]) -> Result<Arc<FiniteGroup>> {
        let mut b = GroupBuilder::new(degree);
        for g in generators {
            b.add(g.clone())?;
        }
        let mut group = b.finish();
        // keep the caller's generator list (minus duplicates of the identity)
        group.generators = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        Ok(Arc::new(group))
    }

    /// Trusts that `elements` is closed under products and inverses.
    pub(crate) fn from_closed_set(
        degree: usize,
        generators: Vec<Perm>,
        elements: Vec<Perm>,
    ) -> Arc<FiniteGroup> {
        Arc::new(Self::from_parts(degree, generators, elements))
    }

    fn from_parts(degree: usize, generators: Vec<Perm>, mut elements: Vec<Perm>) -> FiniteGroup {
        elements.sort_unstable();
        elements.dedup();
        let index: HashMap<Perm, ElementId> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as ElementId))
            .collect();
        let inverse = elements.iter().map(|e| index[&e.inverse()]).collect();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.then(b)]);
                }
            }
            t
        });
        FiniteGroup {
            degree,
            generators,
            elements,
            index,
            inverse,
            table,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_ids(&self) -> Vec<ElementId> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, id: ElementId) -> &Perm {
        &self.elements[id as usize]
    }

    pub fn id_of(&self, g: &Perm) -> Option<ElementId> {
        self.index.get(g).copied()
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.index[&self.elements[a as usize].then(&self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inverse[a as usize]
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: ElementId, g: ElementId) -> ElementId {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, x: ElementId, k: i64) -> ElementId {
        let mut base = if k < 0 { self.inv(x) } else { x };
        let mut k = k.unsigned_abs();
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: ElementId) -> u64 {
        self.elements[x as usize].order()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_ids();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert_range(..);
        Subgroup::from_members(self.clone(), members)
    }

    pub fn trivial(self: &Arc<Self>) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert(0);
        Subgroup::from_members(self.clone(), members)
    }

    /// Exponent `a` with `p^a` the `p`-part of the order.
    pub fn p_part(&self, p: u64) -> usize {
        p_part(self.order() as u64, p) as usize
    }
}

/// A subgroup of a fixed ambient [`FiniteGroup`], stored as a membership set.
#[derive(Clone)]
pub struct Subgroup {
    ambient: Arc<FiniteGroup>,
    members: FixedBitSet,
    elements: Vec<ElementId>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order(), self.elements)
    }
}

impl Subgroup {
    pub(crate) fn from_members(ambient: Arc<FiniteGroup>, members: FixedBitSet) -> Self {
        let elements = members.ones().map(|i| i as ElementId).collect();
        Subgroup {
            ambient,
            members,
            elements,
        }
    }

    /// The subgroup generated by `gens`, by closure under right multiplication.
    pub fn generated(ambient: &Arc<FiniteGroup>, gens: &[ElementId]) -> Subgroup {
        let g = ambient.as_ref();
        let mut members = FixedBitSet::with_capacity(g.order());
        members.insert(0);
        let mut queue = vec![0u32];
        while let Some(e) = queue.pop() {
            for &s in gens {
                let f = g.mul(e, s);
                if !members.put(f as usize) {
                    queue.push(f);
                }
            }
        }
        Subgroup::from_members(ambient.clone(), members)
    }

    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    /// Sorted element ids.
    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.members.contains(x as usize)
    }

    /// Position of `x` inside [`Self::elements`].
    pub fn position(&self, x: ElementId) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mut m = self.members.clone();
        m.intersect_with(&other.members);
        Subgroup::from_members(self.ambient.clone(), m)
    }

    /// `⟨self, other⟩`.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generating_set();
        gens.extend(other.generating_set());
        Subgroup::generated(&self.ambient, &gens)
    }

    /// `self^g = g^-1 self g`.
    pub fn conjugate(&self, g: ElementId) -> Subgroup {
        let a = self.ambient.as_ref();
        let mut m = FixedBitSet::with_capacity(a.order());
        for &x in &self.elements {
            m.insert(a.conj(x, g) as usize);
        }
        Subgroup::from_members(self.ambient.clone(), m)
    }

    pub fn is_normal_in(&self, g: &Subgroup) -> bool {
        let gens = g.generating_set();
        let a = self.ambient.as_ref();
        gens.iter()
            .all(|&s| self.elements.iter().all(|&x| self.contains(a.conj(x, s))))
    }

    pub fn is_abelian(&self) -> bool {
        let a = self.ambient.as_ref();
        let gens = self.generating_set();
        gens.iter()
            .all(|&x| gens.iter().all(|&y| a.mul(x, y) == a.mul(y, x)))
    }

    /// Returns `Some(p)` when the order is a power of the prime `p` (order > 1).
    pub fn prime_of_p_group(&self) -> Option<u64> {
        let n = self.order() as u64;
        if n == 1 {
            return None;
        }
        let p = smallest_prime_factor(n);
        (p_part(n, p) == n).then_some(p)
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        p_part(self.order() as u64, p) == self.order() as u64
    }

    /// A generating set; minimal (Burnside basis) for `p`-groups.
    pub fn generating_set(&self) -> Vec<ElementId> {
        if self.is_trivial() {
            return Vec::new();
        }
        if let Some(p) = self.prime_of_p_group() {
            let phi = self.frattini(p);
            let mut gens = Vec::new();
            let mut current = phi.clone();
            for &x in &self.elements {
                if !current.contains(x) {
                    gens.push(x);
                    let mut all = phi.generating_set_greedy();
                    all.extend(&gens);
                    current = Subgroup::generated(&self.ambient, &all);
                    if current.order() == self.order() {
                        break;
                    }
                }
            }
            return gens;
        }
        self.generating_set_greedy()
    }

    fn generating_set_greedy(&self) -> Vec<ElementId> {
        let a = self.ambient.as_ref();
        let mut by_order: Vec<ElementId> = self.elements.clone();
        by_order.sort_by_key(|&x| (std::cmp::Reverse(a.element_order(x)), x));
        let mut gens = Vec::new();
        let mut current = self.ambient.trivial();
        for x in by_order {
            if current.order() == self.order() {
                break;
            }
            if !current.contains(x) {
                gens.push(x);
                current = Subgroup::generated(&self.ambient, &gens);
            }
        }
        gens
    }

    /// `⟨[a,b], x^p⟩`, the Frattini subgroup of a `p`-group.
    pub fn frattini(&self, p: u64) -> Subgroup {
        let a = self.ambient.as_ref();
        let mut gens: Vec<ElementId> = Vec::new();
        let mut seen = FixedBitSet::with_capacity(a.order());
        for &x in &self.elements {
            let xp = a.pow(x, p as i64);
            if !seen.put(xp as usize) {
                gens.push(xp);
            }
            for &y in &self.elements {
                let c = a.commutator(x, y);
                if !seen.put(c as usize) {
                    gens.push(c);
                }
            }
        }
        Subgroup::generated(&self.ambient, &gens)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let a = self.ambient.as_ref();
        let mut seen = FixedBitSet::with_capacity(a.order());
        let mut gens = Vec::new();
        for &x in &self.elements {
            for &y in &self.elements {
                let c = a.commutator(x, y);
                if !seen.put(c as usize) {
                    gens.push(c);
                }
            }
        }
        Subgroup::generated(&self.ambient, &gens)
    }

    /// Product set `self * other`; a subgroup when one normalizes the other.
    pub fn product_set(&self, other: &Subgroup) -> FixedBitSet {
        let a = self.ambient.as_ref();
        let mut m = FixedBitSet::with_capacity(a.order());
        for &x in &self.elements {
            for &y in &other.elements {
                m.insert(a.mul(x, y) as usize);
            }
        }
        m
    }

    /// Re-enumerates the subgroup as a standalone group on the same points.
    pub fn to_group(&self) -> Arc<FiniteGroup> {
        let gens: Vec<Perm> = self
            .generating_set()
            .into_iter()
            .map(|x| self.ambient.element(x).clone())
            .collect();
        let elements = self
            .elements
            .iter()
            .map(|&x| self.ambient.element(x).clone())
            .collect();
        FiniteGroup::from_closed_set(self.ambient.degree(), gens, elements)
    }

    /// Element ids of `self` inside `other`, where both hold the same permutations.
    pub fn transfer_to(&self, other: &Arc<FiniteGroup>) -> Result<Subgroup> {
        let mut m = FixedBitSet::with_capacity(other.order());
        for &x in &self.elements {
            let id = other
                .id_of(self.ambient.element(x))
                .ok_or(Error::NotInGroup)?;
            m.insert(id as usize);
        }
        Ok(Subgroup::from_members(other.clone(), m))
    }
}

/// Smallest subgroup of `g` containing `gens`.
pub fn subgroup_generated(g: &Arc<FiniteGroup>, gens: &[Perm]) -> Result<Subgroup> {
    let ids = gens
        .iter()
        .map(|x| g.id_of(x).ok_or(Error::NotInGroup))
        .collect::<Result<Vec<_>>>()?;
    Ok(Subgroup::generated(g, &ids))
}

/// `C_G(H) = {g ∈ G : h^g = h for all h ∈ H}`.
pub fn centralizer(g: &Subgroup, h: &Subgroup) -> Subgroup {
    let a = g.ambient().as_ref();
    let gens = h.generating_set();
    let mut m = FixedBitSet::with_capacity(a.order());
    for &x in g.elements() {
        if gens.iter().all(|&s| a.mul(s, x) == a.mul(x, s)) {
            m.insert(x as usize);
        }
    }
    Subgroup::from_members(g.ambient().clone(), m)
}

/// `N_G(H) = {g ∈ G : H^g = H}`.
pub fn normalizer(g: &Subgroup, h: &Subgroup) -> Subgroup {
    let a = g.ambient().as_ref();
    let gens = h.generating_set();
    let mut m = FixedBitSet::with_capacity(a.order());
    for &x in g.elements() {
        if gens.iter().all(|&s| h.contains(a.conj(s, x))) {
            m.insert(x as usize);
        }
    }
    Subgroup::from_members(g.ambient().clone(), m)
}

/// `Z(H) = C_H(H)`.
pub fn center(h: &Subgroup) -> Subgroup {
    centralizer(h, h)
}

/// A Sylow `p`-subgroup of `g`, grown by normalizer ascent from the first
/// element of order `p` (or from the trivial group when `p ∤ |G|`).
pub fn sylow_p(g: &Subgroup, p: u64) -> Result<Subgroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let a = g.ambient().as_ref();
    let start = g
        .elements()
        .iter()
        .copied()
        .find(|&x| a.element_order(x) == p)
        .unwrap_or(0);
    sylow_p_from(g, p, start)
}

/// As [`sylow_p`], starting the ascent from `⟨start⟩` (which must be a `p`-element).
pub fn sylow_p_from(g: &Subgroup, p: u64, start: ElementId) -> Result<Subgroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let a = g.ambient().as_ref();
    if !g.contains(start) || p_part(a.element_order(start), p) != a.element_order(start) {
        return Err(Error::InvalidParameter(format!(
            "start element is not a {p}-element of G"
        )));
    }
    let target = p_part(g.order() as u64, p) as usize;
    let mut h = Subgroup::generated(g.ambient(), &[start]);
    while h.order() < target {
        let n = normalizer(g, &h);
        // an element of order p in N/H
        let x = n
            .elements()
            .iter()
            .copied()
            .find(|&x| !h.contains(x) && h.contains(a.pow(x, p as i64)))
            .expect("p divides |N_G(H):H| while H is not Sylow");
        let mut gens = h.generating_set();
        gens.push(x);
        h = Subgroup::generated(g.ambient(), &gens);
    }
    Ok(h)
}

/// `O_p(G)`: the intersection of the conjugates of a Sylow `p`-subgroup.
pub fn p_core(g: &Subgroup, p: u64) -> Result<Subgroup> {
    let s = sylow_p(g, p)?;
    let mut core = s.clone();
    for &x in g.elements() {
        if core.is_trivial() {
            break;
        }
        core = core.intersection(&s.conjugate(x));
    }
    Ok(core)
}

/// Right cosets `H x` of `h` in `g`: returns `(coset index per ambient element, representatives)`.
/// Elements outside `g` get `u32::MAX`.
pub fn right_cosets(g: &Subgroup, h: &Subgroup) -> (Vec<u32>, Vec<ElementId>) {
    let a = g.ambient().as_ref();
    let mut label = vec![u32::MAX; a.order()];
    let mut reps = Vec::new();
    for &x in g.elements() {
        if label[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &y in h.elements() {
            label[a.mul(y, x) as usize] = c;
        }
    }
    (label, reps)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> Arc<FiniteGroup> {
        let a = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let b = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        FiniteGroup::from_generators(4, &[a, b]).unwrap()
    }

    #[test]
    fn s4_enumerates() {
        let g = s4();
        assert_eq!(g.order(), 24);
        assert!(g.element(0).is_identity());
        for a in 0..24 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn generated_by_nothing_is_trivial() {
        let g = s4();
        assert_eq!(subgroup_generated(&g, &[]).unwrap().order(), 1);
    }

    #[test]
    fn four_cycle_with_transposition() {
        let g = s4();
        let c = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let adjacent = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        let opposite = Perm::from_cycles(4, &[&[0, 2]]).unwrap();
        assert_eq!(
            subgroup_generated(&g, &[c.clone(), adjacent])
                .unwrap()
                .order(),
            24
        );
        assert_eq!(subgroup_generated(&g, &[c, opposite]).unwrap().order(), 8);
    }

    #[test]
    fn outside_element_rejected() {
        let g = s4();
        let x = Perm::from_cycles(5, &[&[0, 4]]).unwrap();
        assert!(subgroup_generated(&g, &[x]).is_err());
    }

    #[test]
    fn sylow_and_core_of_s4() {
        let g = s4();
        let s = sylow_p(&g.whole(), 2).unwrap();
        assert_eq!(s.order(), 8);
        let o2 = p_core(&g.whole(), 2).unwrap();
        assert_eq!(o2.order(), 4);
        assert!(o2.is_normal_in(&g.whole()));
        assert_eq!(sylow_p(&g.whole(), 5).unwrap().order(), 1);
        assert!(sylow_p(&g.whole(), 4).is_err());
    }

    #[test]
    fn centralizer_of_trivial_is_everything() {
        let g = s4();
        assert_eq!(centralizer(&g.whole(), &g.trivial()).order(), 24);
        assert_eq!(center(&g.whole()).order(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let mut b = GroupBuilder::with_cap(4, 10);
        b.add(Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap())
            .unwrap();
        assert!(matches!(
            b.add(Perm::from_cycles(4, &[&[0, 1]]).unwrap()),
            Err(Error::OrderCapExceeded { cap: 10 })
        ));
    }

    #[test]
    fn minimal_generating_set_of_p_group() {
        let a = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(4, &[&[2, 3]]).unwrap();
        let g = FiniteGroup::from_generators(4, &[a, b]).unwrap();
        assert_eq!(g.whole().generating_set().len(), 2);
    }
}
