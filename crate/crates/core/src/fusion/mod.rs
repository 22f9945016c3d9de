//! Fusion systems over a p-group `S`.
//!
//! Every system is stored as a groupoid on the subgroups of `S`: the
//! subgroups are partitioned into `F`-conjugacy classes, the least member `R`
//! of each class carries `Aut_F(R)` as a permutation group on the positions
//! of `R`'s element list, and each member `Q` stores a transport isomorphism
//! `Q → R`. Then `Iso_F(Q, Q') = τ_Q · Aut_F(R) · τ_{Q'}^-1` and
//! `Hom_F(Q, P)` is the union of `Iso_F(Q, Q')` over class members `Q' ≤ P`.

mod build;
mod spec;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::{ElementId, FiniteGroup, Subgroup};
use crate::hom::GroupHom;
use crate::lattice::{SubgroupId, SubgroupLattice};
use crate::perm::Perm;

pub(crate) use build::{assemble, from_isomorphisms, standalone, Iso};
pub use build::{generated_fusion, inner_fusion, transporter_fusion, transporter_hom_set};
pub use spec::{parse_generators, ElementRef, GeneratorSpec};

/// How a system was produced.
#[derive(Clone, Debug)]
pub enum Backend {
    /// `F_S(G)`; `embedding[x]` is the id in `G` of `S`'s element `x`.
    Transporter {
        group: Arc<FiniteGroup>,
        embedding: Vec<ElementId>,
        transport_witness: Vec<ElementId>,
        aut_witness: Vec<Vec<ElementId>>,
    },
    /// Closure of explicit generators.
    Generated { generators: usize },
    /// Produced by a construction; the string names it.
    Derived(String),
}

/// Where a morphism came from. Not part of morphism equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Conjugation `c_g` by an element of the transporter group.
    Conjugation(Perm),
    /// A composite of generators and their restrictions.
    Closure,
}

/// A morphism of a fusion system: an injective map `domain → codomain`
/// between subgroups of `S`, given by the images of `domain`'s elements.
#[derive(Clone)]
pub struct FusionMorphism {
    domain: SubgroupId,
    codomain: SubgroupId,
    images: Vec<ElementId>,
    provenance: Provenance,
}

impl PartialEq for FusionMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain
            && self.codomain == other.codomain
            && self.images == other.images
    }
}

impl Eq for FusionMorphism {}

impl std::hash::Hash for FusionMorphism {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.domain, self.codomain, &self.images).hash(state);
    }
}

impl PartialOrd for FusionMorphism {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FusionMorphism {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.domain, self.codomain, &self.images).cmp(&(
            other.domain,
            other.codomain,
            &other.images,
        ))
    }
}

impl fmt::Debug for FusionMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FusionMorphism({} -> {}: {:?})",
            self.domain, self.codomain, self.images
        )
    }
}

impl FusionMorphism {
    pub fn new(
        domain: SubgroupId,
        codomain: SubgroupId,
        images: Vec<ElementId>,
        provenance: Provenance,
    ) -> Self {
        FusionMorphism {
            domain,
            codomain,
            images,
            provenance,
        }
    }

    pub fn domain(&self) -> SubgroupId {
        self.domain
    }

    pub fn codomain(&self) -> SubgroupId {
        self.codomain
    }

    /// Images of the domain's elements, in the domain's element order.
    pub fn images(&self) -> &[ElementId] {
        &self.images
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The same map with a different codomain.
    pub fn with_codomain(mut self, codomain: SubgroupId) -> Self {
        self.codomain = codomain;
        self
    }

    pub fn to_hom(&self, lattice: &SubgroupLattice) -> GroupHom {
        GroupHom::new_unchecked(
            lattice.subgroup(self.domain).clone(),
            lattice.subgroup(self.codomain).clone(),
            self.images.clone(),
        )
    }
}

/// An `F`-conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct FusionClass {
    rep: SubgroupId,
    members: Vec<SubgroupId>,
    aut: Arc<FiniteGroup>,
}

impl FusionClass {
    /// The least member in canonical order.
    pub fn representative(&self) -> SubgroupId {
        self.rep
    }

    pub fn members(&self) -> &[SubgroupId] {
        &self.members
    }

    /// `Aut_F(R)` acting on the positions of `R`'s elements.
    pub fn automorphisms(&self) -> &Arc<FiniteGroup> {
        &self.aut
    }
}

/// Restrictions of `Aut_F(R)` to a subgroup `U ≤ R`, keyed by the images
/// (as positions in `R`) of `U`'s generators.
pub(crate) struct RestrictionIndex {
    pub(crate) by_key: HashMap<Vec<u32>, Vec<ElementId>>,
}

/// Hash and cardinalities of a hom table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomDigest {
    pub sha256: String,
    pub objects: usize,
    pub classes: usize,
    pub morphisms: usize,
}

pub struct FusionSystem {
    lattice: Arc<SubgroupLattice>,
    p: u64,
    classes: Vec<FusionClass>,
    class_of: Vec<usize>,
    to_rep: Vec<Perm>,
    backend: Backend,
    restrictions: Mutex<HashMap<(usize, SubgroupId), Arc<RestrictionIndex>>>,
    element_classes: OnceLock<Vec<u32>>,
}

impl fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FusionSystem(p = {}, |S| = {}, {} classes)",
            self.p,
            self.group().order(),
            self.classes.len()
        )
    }
}

impl PartialEq for FusionSystem {
    fn eq(&self, other: &Self) -> bool {
        self.same_hom_tables(other)
    }
}

impl FusionSystem {
    pub(crate) fn from_parts(
        lattice: Arc<SubgroupLattice>,
        p: u64,
        classes: Vec<FusionClass>,
        class_of: Vec<usize>,
        to_rep: Vec<Perm>,
        backend: Backend,
    ) -> Self {
        FusionSystem {
            lattice,
            p,
            classes,
            class_of,
            to_rep,
            backend,
            restrictions: Mutex::new(HashMap::new()),
            element_classes: OnceLock::new(),
        }
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    /// `S` as a standalone group.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.lattice.group()
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn top(&self) -> SubgroupId {
        self.lattice.top()
    }

    pub fn subgroup(&self, q: SubgroupId) -> &Subgroup {
        self.lattice.subgroup(q)
    }

    pub fn classes(&self) -> &[FusionClass] {
        &self.classes
    }

    pub fn class_index(&self, q: SubgroupId) -> usize {
        self.class_of[q]
    }

    pub fn class_of(&self, q: SubgroupId) -> &FusionClass {
        &self.classes[self.class_of[q]]
    }

    pub fn representative(&self, q: SubgroupId) -> SubgroupId {
        self.class_of(q).rep
    }

    /// The transport `Q → R` to the class representative, on positions.
    pub fn transport(&self, q: SubgroupId) -> &Perm {
        &self.to_rep[q]
    }

    /// Looks up a subgroup of `S`.
    pub fn object(&self, h: &Subgroup) -> Result<SubgroupId> {
        self.lattice.id_of(h)
    }

    /// `P^F`, in canonical order.
    pub fn f_conjugates(&self, q: SubgroupId) -> &[SubgroupId] {
        &self.class_of(q).members
    }

    pub fn are_conjugate(&self, a: SubgroupId, b: SubgroupId) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Position isomorphisms `Q → Q'` (empty when not conjugate), ordered by
    /// the automorphism of the representative they pass through.
    pub fn iso_perms(&self, q: SubgroupId, q2: SubgroupId) -> Vec<Perm> {
        if !self.are_conjugate(q, q2) {
            return Vec::new();
        }
        let back = self.to_rep[q2].inverse();
        self.class_of(q)
            .aut
            .elements()
            .iter()
            .map(|a| self.to_rep[q].then(a).then(&back))
            .collect()
    }

    /// The position isomorphism `Q → Q'` through `a ∈ Aut_F(R)`.
    pub fn iso_through(&self, q: SubgroupId, a: ElementId, q2: SubgroupId) -> Perm {
        let aut = &self.class_of(q).aut;
        self.to_rep[q]
            .then(aut.element(a))
            .then(&self.to_rep[q2].inverse())
    }

    /// `Aut_F(R)` id of the position isomorphism `Q → Q'`, if it is in `F`.
    pub fn aut_id_of_iso(&self, q: SubgroupId, q2: SubgroupId, perm: &Perm) -> Option<ElementId> {
        if !self.are_conjugate(q, q2) {
            return None;
        }
        let a = self.to_rep[q].inverse().then(perm).then(&self.to_rep[q2]);
        self.class_of(q).aut.id_of(&a)
    }

    pub fn contains_iso(&self, q: SubgroupId, q2: SubgroupId, perm: &Perm) -> bool {
        self.aut_id_of_iso(q, q2, perm).is_some()
    }

    /// Converts a position map `Q → Q'` into element images.
    pub fn perm_to_images(&self, q2: SubgroupId, perm: &Perm) -> Vec<ElementId> {
        let target = self.lattice.subgroup(q2).elements();
        perm.images().iter().map(|&i| target[i as usize]).collect()
    }

    /// Converts element images of `Q`'s elements into a position map onto the
    /// subgroup they form.
    pub fn images_to_perm(&self, images: &[ElementId]) -> Option<(SubgroupId, Perm)> {
        let q2 = self.lattice.id_of_elements(images.iter().copied())?;
        let target = self.lattice.subgroup(q2);
        let pos = images
            .iter()
            .map(|&y| target.position(y).map(|i| i as u32))
            .collect::<Option<Vec<_>>>()?;
        Perm::from_images(pos).ok().map(|p| (q2, p))
    }

    fn provenance(&self, q: SubgroupId, a: ElementId, q2: SubgroupId) -> Provenance {
        match &self.backend {
            Backend::Transporter {
                group,
                transport_witness,
                aut_witness,
                ..
            } => {
                let rep_class = self.class_of[q];
                let g = group.mul(
                    group.mul(
                        group.inv(transport_witness[q]),
                        aut_witness[rep_class][a as usize],
                    ),
                    transport_witness[q2],
                );
                Provenance::Conjugation(group.element(g).clone())
            }
            _ => Provenance::Closure,
        }
    }

    /// `Iso_F(Q, Q')` as morphisms.
    pub fn isomorphisms(&self, q: SubgroupId, q2: SubgroupId) -> Vec<FusionMorphism> {
        if !self.are_conjugate(q, q2) {
            return Vec::new();
        }
        let n = self.class_of(q).aut.order() as ElementId;
        let mut out: Vec<FusionMorphism> = (0..n)
            .map(|a| {
                let perm = self.iso_through(q, a, q2);
                FusionMorphism::new(
                    q,
                    q2,
                    self.perm_to_images(q2, &perm),
                    self.provenance(q, a, q2),
                )
            })
            .collect();
        out.sort();
        out
    }

    /// `Hom_F(Q, P)`, sorted.
    pub fn hom_set(&self, q: SubgroupId, p: SubgroupId) -> Vec<FusionMorphism> {
        let mut out = Vec::new();
        for &q2 in self.f_conjugates(q) {
            if self.lattice.contains(p, q2) {
                out.extend(
                    self.isomorphisms(q, q2)
                        .into_iter()
                        .map(|m| m.with_codomain(p)),
                );
            }
        }
        out.sort();
        out
    }

    pub fn hom_set_size(&self, q: SubgroupId, p: SubgroupId) -> usize {
        let below = self
            .f_conjugates(q)
            .iter()
            .filter(|&&q2| self.lattice.contains(p, q2))
            .count();
        below * self.class_of(q).aut.order()
    }

    /// Membership of an arbitrary morphism.
    pub fn contains_morphism(&self, m: &FusionMorphism) -> bool {
        match self.images_to_perm(&m.images) {
            Some((q2, perm)) => {
                self.lattice.contains(m.codomain, q2) && self.contains_iso(m.domain, q2, &perm)
            }
            None => false,
        }
    }

    /// `Aut_F(Q)` as morphisms.
    pub fn aut_f(&self, q: SubgroupId) -> Vec<FusionMorphism> {
        self.isomorphisms(q, q)
    }

    pub fn aut_f_order(&self, q: SubgroupId) -> usize {
        self.class_of(q).aut.order()
    }

    /// `Aut_F(Q)` as a permutation group on `Q`'s positions.
    pub fn aut_f_group(&self, q: SubgroupId) -> Arc<FiniteGroup> {
        let class = self.class_of(q);
        if class.rep == q {
            return class.aut.clone();
        }
        let t = &self.to_rep[q];
        let ti = t.inverse();
        let gens: Vec<Perm> = class
            .aut
            .generators()
            .iter()
            .map(|a| t.then(a).then(&ti))
            .collect();
        FiniteGroup::from_generators(self.lattice.order(q), &gens).expect("conjugate of a group")
    }

    /// `c_g|_Q` on positions, for `g ∈ N_S(Q)`.
    pub fn conjugation_perm(&self, q: SubgroupId, g: ElementId) -> Perm {
        let s = self.group().as_ref();
        let sub = self.lattice.subgroup(q);
        Perm::from_images_unchecked(
            sub.elements()
                .iter()
                .map(|&x| sub.position(s.conj(x, g)).expect("g normalizes Q") as u32)
                .collect(),
        )
    }

    /// `Aut_S(Q) = {c_g|_Q : g ∈ N_S(Q)}` on positions, without repetition,
    /// each with one element of `N_S(Q)` inducing it.
    pub fn aut_s_perms(&self, q: SubgroupId) -> Vec<(Perm, ElementId)> {
        let n = self.lattice.subgroup(self.lattice.normalizer(q));
        let c = self.lattice.subgroup(self.lattice.centralizer(q));
        let mut covered = c.members().clone();
        let mut out = vec![(Perm::identity(self.lattice.order(q)), 0)];
        let s = self.group().as_ref();
        for &g in n.elements() {
            if covered.contains(g as usize) {
                continue;
            }
            for &z in c.elements() {
                covered.insert(s.mul(z, g) as usize);
            }
            out.push((self.conjugation_perm(q, g), g));
        }
        out
    }

    pub fn aut_s_order(&self, q: SubgroupId) -> usize {
        self.lattice.order(self.lattice.normalizer(q))
            / self.lattice.order(self.lattice.centralizer(q))
    }

    /// `Aut_S(Q)` as morphisms.
    pub fn aut_s(&self, q: SubgroupId) -> Vec<FusionMorphism> {
        let mut out: Vec<FusionMorphism> = self
            .aut_s_perms(q)
            .into_iter()
            .map(|(perm, g)| {
                let prov = match &self.backend {
                    Backend::Transporter {
                        group, embedding, ..
                    } => Provenance::Conjugation(group.element(embedding[g as usize]).clone()),
                    _ => Provenance::Closure,
                };
                FusionMorphism::new(q, q, self.perm_to_images(q, &perm), prov)
            })
            .collect();
        out.sort();
        out
    }

    /// Inner automorphisms of the representative `R` as elements of `Aut_F(R)`.
    pub(crate) fn inner_ids(&self, class: usize) -> Vec<ElementId> {
        let r = self.classes[class].rep;
        let sub = self.lattice.subgroup(r);
        let aut = &self.classes[class].aut;
        let mut ids: Vec<ElementId> = sub
            .elements()
            .iter()
            .map(|&g| {
                aut.id_of(&self.conjugation_perm(r, g))
                    .expect("Inn ≤ Aut_F")
            })
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// `F`-class label of every element of `S`.
    pub fn element_classes(&self) -> &[u32] {
        self.element_classes.get_or_init(|| {
            let s = self.group().as_ref();
            let mut orbit_label: HashMap<(usize, u32), u32> = HashMap::new();
            let mut out = Vec::with_capacity(s.order());
            for x in 0..s.order() as ElementId {
                let q = self.lattice.cyclic(x);
                let c = self.class_of[q];
                let pos = self.lattice.subgroup(q).position(x).unwrap();
                let j = self.to_rep[q].apply(pos as u32);
                let aut = &self.classes[c].aut;
                let least = aut.elements().iter().map(|a| a.apply(j)).min().unwrap();
                let next = orbit_label.len() as u32;
                out.push(*orbit_label.entry((c, least)).or_insert(next));
            }
            out
        })
    }

    /// `{y ∈ S : y is F-conjugate to x}`.
    pub fn f_class_of_element(&self, x: ElementId) -> Vec<ElementId> {
        let labels = self.element_classes();
        let l = labels[x as usize];
        (0..labels.len() as ElementId)
            .filter(|&y| labels[y as usize] == l)
            .collect()
    }

    pub(crate) fn restriction_index(&self, class: usize, u: SubgroupId) -> Arc<RestrictionIndex> {
        let key = (class, u);
        if let Some(idx) = self.restrictions.lock().unwrap().get(&key) {
            return idx.clone();
        }
        let r = self.lattice.subgroup(self.classes[class].rep);
        let gens: Vec<u32> = self
            .lattice
            .generators(u)
            .iter()
            .map(|&x| r.position(x).expect("U ≤ R") as u32)
            .collect();
        let aut = &self.classes[class].aut;
        let mut by_key: HashMap<Vec<u32>, Vec<ElementId>> = HashMap::new();
        for (id, a) in aut.elements().iter().enumerate() {
            let k: Vec<u32> = gens.iter().map(|&i| a.apply(i)).collect();
            by_key.entry(k).or_default().push(id as ElementId);
        }
        let idx = Arc::new(RestrictionIndex { by_key });
        self.restrictions.lock().unwrap().insert(key, idx.clone());
        idx
    }

    /// Elements `a ∈ Aut_F(R)` (`R` the representative of `M`'s class) for
    /// which the isomorphism `M → M'` through `a` agrees with `f` on `U ≤ M`.
    pub(crate) fn isos_restricting_to(
        &self,
        m: SubgroupId,
        m2: SubgroupId,
        u: SubgroupId,
        f: &dyn Fn(ElementId) -> ElementId,
    ) -> Vec<ElementId> {
        if !self.are_conjugate(m, m2) {
            return Vec::new();
        }
        let class = self.class_of[m];
        let r = self.lattice.subgroup(self.classes[class].rep);
        let sm = self.lattice.subgroup(m);
        let sm2 = self.lattice.subgroup(m2);
        let t = &self.to_rep[m];
        let t_inv = t.inverse();
        let t2 = &self.to_rep[m2];
        let u_rep =
            self.lattice
                .id_of_elements(self.lattice.subgroup(u).elements().iter().map(|&x| {
                    r.elements()[t.apply(sm.position(x).expect("U ≤ M") as u32) as usize]
                }))
                .expect("image of a subgroup");
        let mut key = Vec::with_capacity(self.lattice.generators(u_rep).len());
        for &g in self.lattice.generators(u_rep) {
            let x = sm.elements()[t_inv.apply(r.position(g).unwrap() as u32) as usize];
            let Some(pos2) = sm2.position(f(x)) else {
                return Vec::new();
            };
            key.push(t2.apply(pos2 as u32));
        }
        self.restriction_index(class, u_rep)
            .by_key
            .get(&key)
            .cloned()
            .unwrap_or_default()
    }

    /// True when both systems live on the same permutation group and have the
    /// same morphisms.
    pub fn same_hom_tables(&self, other: &FusionSystem) -> bool {
        if self.group().elements() != other.group().elements()
            || self.class_of.len() != other.class_of.len()
            || self.classes.len() != other.classes.len()
        {
            return false;
        }
        for (ca, cb) in self.classes.iter().zip(&other.classes) {
            if ca.rep != cb.rep
                || ca.members != cb.members
                || ca.aut.elements() != cb.aut.elements()
            {
                return false;
            }
        }
        (0..self.class_of.len()).all(|q| {
            let r = self.representative(q);
            let round = other.to_rep[q].inverse().then(&self.to_rep[q]);
            other.classes[other.class_of[r]].aut.id_of(&round).is_some()
        })
    }

    /// Canonical digest of `Hom_F(Q, S)` for every `Q`.
    pub fn digest(&self) -> HomDigest {
        let mut hasher = Sha256::new();
        let mut morphisms = 0usize;
        for q in 0..self.lattice.len() {
            let mut maps: Vec<Vec<ElementId>> = Vec::new();
            for &q2 in self.f_conjugates(q) {
                for perm in self.iso_perms(q, q2) {
                    maps.push(self.perm_to_images(q2, &perm));
                }
            }
            maps.sort_unstable();
            morphisms += maps.len();
            hasher.update((q as u64).to_le_bytes());
            hasher.update((maps.len() as u64).to_le_bytes());
            for m in &maps {
                for &y in m {
                    hasher.update(y.to_le_bytes());
                }
            }
        }
        HomDigest {
            sha256: hex(&hasher.finalize()),
            objects: self.lattice.len(),
            classes: self.classes.len(),
            morphisms,
        }
    }

    /// Generating isomorphisms of the groupoid: transports and generators of
    /// each representative's automorphism group.
    pub(crate) fn groupoid_generators(&self) -> Vec<Iso> {
        let mut out = Vec::new();
        for class in &self.classes {
            for a in class.aut.generators() {
                out.push(Iso {
                    from: class.rep,
                    to: class.rep,
                    map: a.clone(),
                });
            }
            for &q in &class.members {
                if q != class.rep {
                    out.push(Iso {
                        from: q,
                        to: class.rep,
                        map: self.to_rep[q].clone(),
                    });
                }
            }
        }
        out
    }

    /// Checks the axioms of a fusion system on the stored data: inner maps
    /// present, every stored isomorphism injective and well placed.
    pub fn audit(&self) -> Result<()> {
        let s = self.group().as_ref();
        for q in 0..self.lattice.len() {
            let sub = self.lattice.subgroup(q);
            for g in self.group().generator_ids() {
                let images: Vec<ElementId> = sub.elements().iter().map(|&x| s.conj(x, g)).collect();
                let (q2, perm) = self.images_to_perm(&images).ok_or(Error::NotClosed)?;
                if !self.contains_iso(q, q2, &perm) {
                    return Err(Error::NotClosed);
                }
            }
            for a in self.aut_f_group(q).generators() {
                let images = self.perm_to_images(q, a);
                let hom = GroupHom::new(sub.clone(), sub.clone(), images)?;
                if !hom.is_injective() {
                    return Err(Error::NotInjective);
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests;
