//! The subgroup lattice of a finite p-group, in canonical order.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{ElementId, FiniteGroup, Subgroup};

/// Index of a subgroup inside its [`SubgroupLattice`].
pub type SubgroupId = usize;

/// Every subgroup of a p-group, sorted by order and then by element list.
/// Index `0` is the trivial subgroup and the last index is the whole group.
pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    p: u64,
    subgroups: Vec<Subgroup>,
    lookup: HashMap<FixedBitSet, SubgroupId>,
    generators: Vec<Vec<ElementId>>,
    normalizers: Vec<SubgroupId>,
    centralizers: Vec<SubgroupId>,
    cyclic: Vec<SubgroupId>,
}

impl std::fmt::Debug for SubgroupLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SubgroupLattice(|S| = {}, {} subgroups)",
            self.group.order(),
            self.len()
        )
    }
}

impl SubgroupLattice {
    /// Level-wise enumeration: every subgroup of order `p^{k+1}` contains a
    /// normal subgroup of order `p^k`, so it is `⟨K, x⟩` for some `K` one
    /// level down and `x ∈ N(K)` with `x^p ∈ K`.
    pub fn new(group: &Arc<FiniteGroup>) -> Result<Self> {
        let g = group.as_ref();
        let n = g.order();
        let p = if n == 1 {
            2
        } else {
            group
                .whole()
                .prime_of_p_group()
                .ok_or(Error::NotAPGroup { order: n, p: 0 })?
        };
        let mut found: Vec<(Subgroup, Vec<ElementId>)> = vec![(group.trivial(), Vec::new())];
        let mut lookup: HashMap<FixedBitSet, usize> = HashMap::new();
        lookup.insert(found[0].0.members().clone(), 0);
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut next = Vec::new();
            for &k in &level {
                let (sub, gens) = (found[k].0.clone(), found[k].1.clone());
                let norm = normalizer_by_gens(group, &group.whole(), &sub, &gens);
                let mut covered = sub.members().clone();
                for &x in norm.elements() {
                    if covered.contains(x as usize) || !sub.contains(g.pow(x, p as i64)) {
                        continue;
                    }
                    let mut hg = gens.clone();
                    hg.push(x);
                    let h = Subgroup::generated(group, &hg);
                    covered.union_with(h.members());
                    if lookup.contains_key(h.members()) {
                        continue;
                    }
                    lookup.insert(h.members().clone(), found.len());
                    next.push(found.len());
                    found.push((h, hg));
                }
            }
            level = next;
        }
        let mut order: Vec<usize> = (0..found.len()).collect();
        order.sort_by(|&a, &b| {
            let (sa, sb) = (&found[a].0, &found[b].0);
            (sa.order(), sa.elements()).cmp(&(sb.order(), sb.elements()))
        });
        let mut subgroups = Vec::with_capacity(found.len());
        let mut generators = Vec::with_capacity(found.len());
        lookup.clear();
        for (new, &old) in order.iter().enumerate() {
            let (sub, gens) = found[old].clone();
            lookup.insert(sub.members().clone(), new);
            generators.push(minimal_generators(&sub, &gens, p));
            subgroups.push(sub);
        }
        let whole = group.whole();
        let mut normalizers = Vec::with_capacity(subgroups.len());
        let mut centralizers = Vec::with_capacity(subgroups.len());
        for (h, gens) in subgroups.iter().zip(&generators) {
            let nm = normalizer_by_gens(group, &whole, h, gens);
            normalizers.push(lookup[nm.members()]);
            let mut cm = FixedBitSet::with_capacity(n);
            for x in 0..n as u32 {
                if gens.iter().all(|&s| g.mul(s, x) == g.mul(x, s)) {
                    cm.insert(x as usize);
                }
            }
            centralizers.push(lookup[&cm]);
        }
        let cyclic = (0..n as u32)
            .map(|x| lookup[Subgroup::generated(group, &[x]).members()])
            .collect();
        Ok(SubgroupLattice {
            group: group.clone(),
            p,
            subgroups,
            lookup,
            generators,
            normalizers,
            centralizers,
            cyclic,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// The prime (2 for the trivial group).
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn top(&self) -> SubgroupId {
        self.len() - 1
    }

    pub fn subgroup(&self, id: SubgroupId) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn order(&self, id: SubgroupId) -> usize {
        self.subgroups[id].order()
    }

    /// A minimal generating set.
    pub fn generators(&self, id: SubgroupId) -> &[ElementId] {
        &self.generators[id]
    }

    pub fn id_of_members(&self, members: &FixedBitSet) -> Option<SubgroupId> {
        self.lookup.get(members).copied()
    }

    /// Looks up a subgroup of the lattice's group.
    pub fn id_of(&self, h: &Subgroup) -> Result<SubgroupId> {
        if !Arc::ptr_eq(h.ambient(), &self.group) {
            let moved = h.transfer_to(&self.group)?;
            return self
                .id_of_members(moved.members())
                .ok_or(Error::NotASubgroup);
        }
        self.id_of_members(h.members()).ok_or(Error::NotASubgroup)
    }

    /// The subgroup with the given element set.
    pub fn id_of_elements(
        &self,
        elements: impl IntoIterator<Item = ElementId>,
    ) -> Option<SubgroupId> {
        let mut m = FixedBitSet::with_capacity(self.group.order());
        for x in elements {
            m.insert(x as usize);
        }
        self.id_of_members(&m)
    }

    pub fn generated(&self, gens: &[ElementId]) -> SubgroupId {
        self.lookup[Subgroup::generated(&self.group, gens).members()]
    }

    pub fn normalizer(&self, id: SubgroupId) -> SubgroupId {
        self.normalizers[id]
    }

    pub fn centralizer(&self, id: SubgroupId) -> SubgroupId {
        self.centralizers[id]
    }

    /// `⟨x⟩`.
    pub fn cyclic(&self, x: ElementId) -> SubgroupId {
        self.cyclic[x as usize]
    }

    pub fn contains(&self, big: SubgroupId, small: SubgroupId) -> bool {
        self.subgroups[small].is_subgroup_of(&self.subgroups[big])
    }

    /// Subgroups of `id`, in canonical order.
    pub fn below(&self, id: SubgroupId) -> impl Iterator<Item = SubgroupId> + '_ {
        let big = &self.subgroups[id];
        (0..=id).filter(move |&k| self.subgroups[k].is_subgroup_of(big))
    }

    /// Subgroups containing `id`, in canonical order.
    pub fn above(&self, id: SubgroupId) -> impl Iterator<Item = SubgroupId> + '_ {
        let small = &self.subgroups[id];
        (id..self.len()).filter(move |&k| small.is_subgroup_of(&self.subgroups[k]))
    }

    pub fn is_normal(&self, id: SubgroupId) -> bool {
        self.normalizers[id] == self.top()
    }

    /// `self^g`.
    pub fn conjugate(&self, id: SubgroupId, g: ElementId) -> SubgroupId {
        let a = self.group.as_ref();
        self.id_of_elements(self.subgroups[id].elements().iter().map(|&x| a.conj(x, g)))
            .expect("conjugate of a subgroup is a subgroup")
    }

    /// The subgroup `AB` for `B` normalizing `A` (or vice versa).
    pub fn product(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        let mut gens = self.generators[a].clone();
        gens.extend(&self.generators[b]);
        self.generated(&gens)
    }

    pub fn intersection(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        let mut m = self.subgroups[a].members().clone();
        m.intersect_with(self.subgroups[b].members());
        self.lookup[&m]
    }

    /// Generators of `id` as image lists.
    pub fn describe(&self, id: SubgroupId) -> Vec<Vec<u32>> {
        self.generators[id]
            .iter()
            .map(|&x| self.group.element(x).images().to_vec())
            .collect()
    }
}

fn normalizer_by_gens(
    group: &Arc<FiniteGroup>,
    within: &Subgroup,
    h: &Subgroup,
    gens: &[ElementId],
) -> Subgroup {
    let a = group.as_ref();
    let mut m = FixedBitSet::with_capacity(a.order());
    for &x in within.elements() {
        if gens.iter().all(|&s| h.contains(a.conj(s, x))) {
            m.insert(x as usize);
        }
    }
    Subgroup::from_members(group.clone(), m)
}

/// Drops redundant generators so the list is a Burnside basis, keeping the
/// earliest elements.
fn minimal_generators(h: &Subgroup, gens: &[ElementId], p: u64) -> Vec<ElementId> {
    if h.is_trivial() {
        return Vec::new();
    }
    let phi = h.frattini(p);
    let g = h.ambient();
    let mut out: Vec<ElementId> = Vec::new();
    let mut current = phi.clone();
    let phi_gens = phi.generating_set();
    for &x in gens {
        if !current.contains(x) {
            out.push(x);
            let mut all = phi_gens.clone();
            all.extend(&out);
            current = Subgroup::generated(g, &all);
        }
    }
    debug_assert_eq!(current.order(), h.order());
    out
}
