//! Factoring fusion isomorphisms through automorphisms of fully normalised,
//! centric, radical subgroups.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::classifier::fcr_objects;
use crate::error::{Error, Result};
use crate::fusion::{FusionMorphism, FusionSystem, Provenance};
use crate::group::ElementId;
use crate::lattice::SubgroupId;

/// `ψ_i ∈ Aut_F(Q_i)` carrying `P_{i-1}` onto `P_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlperinStep {
    pub before: SubgroupId,
    pub after: SubgroupId,
    pub object: SubgroupId,
    pub psi: FusionMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlperinDecomposition {
    pub source: SubgroupId,
    pub target: SubgroupId,
    pub chain: Vec<AlperinStep>,
}

/// The clause of the decomposition that a chain violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Clause {
    /// Some `Q_i` is not in `F^{fcr}`.
    Objects,
    /// Some `ψ_i` is not in `Aut_F(Q_i)` or does not carry `P_{i-1}` onto `P_i`.
    Steps,
    /// The composite differs from the decomposed morphism.
    Composite,
}

#[derive(Serialize)]
struct StepJson {
    object: Vec<Vec<u32>>,
    psi: Vec<(Vec<u32>, Vec<u32>)>,
}

impl AlperinDecomposition {
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Chain as `(Q_i generators, ψ_i on those generators)`, as image lists.
    pub fn to_json(&self, f: &FusionSystem) -> serde_json::Value {
        let s = f.group();
        let steps: Vec<StepJson> = self
            .chain
            .iter()
            .map(|st| {
                let q = f.subgroup(st.object);
                let gens = f.lattice().generators(st.object);
                StepJson {
                    object: f.lattice().describe(st.object),
                    psi: gens
                        .iter()
                        .map(|&x| {
                            let y = st.psi.images()[q.position(x).unwrap()];
                            (
                                s.element(x).images().to_vec(),
                                s.element(y).images().to_vec(),
                            )
                        })
                        .collect(),
                }
            })
            .collect();
        serde_json::json!({
            "source": f.lattice().describe(self.source),
            "target": f.lattice().describe(self.target),
            "length": self.chain.len(),
            "chain": steps,
        })
    }
}

/// Validates `phi` and returns it factored through its image.
fn as_isomorphism(f: &FusionSystem, phi: &FusionMorphism) -> Result<(SubgroupId, SubgroupId)> {
    if phi.domain() >= f.lattice().len() || phi.images().len() != f.lattice().order(phi.domain()) {
        return Err(Error::NotAnIsomorphism);
    }
    let (image, perm) = f
        .images_to_perm(phi.images())
        .ok_or(Error::NotAnIsomorphism)?;
    if !f.contains_iso(phi.domain(), image, &perm) {
        return Err(Error::NotAnIsomorphism);
    }
    Ok((phi.domain(), image))
}

/// Breadth-first search over composites `P → P_i`, each move applying an
/// automorphism of an `F^{fcr}` object containing `P_i`. Objects are tried in
/// decreasing canonical order and automorphisms by canonical id, keeping one
/// automorphism per distinct restriction to `P_i`.
pub fn alperin_decompose(f: &FusionSystem, phi: &FusionMorphism) -> Result<AlperinDecomposition> {
    let fcr = fcr_objects(f);
    alperin_decompose_with(f, phi, &fcr)
}

pub fn alperin_decompose_with(
    f: &FusionSystem,
    phi: &FusionMorphism,
    fcr: &[SubgroupId],
) -> Result<AlperinDecomposition> {
    let (source, target) = as_isomorphism(f, phi)?;
    let lattice = f.lattice();
    let mut objects = fcr.to_vec();
    objects.sort_unstable_by(|a, b| b.cmp(a));
    let start: Vec<ElementId> = f.subgroup(source).elements().to_vec();
    let goal = phi.images();
    // state: (images, subgroup, parent, step)
    let mut states: Vec<(Vec<ElementId>, SubgroupId, usize, Option<AlperinStep>)> =
        vec![(start.clone(), source, usize::MAX, None)];
    let mut seen: HashMap<Vec<ElementId>, usize> = HashMap::from([(start, 0)]);
    let mut queue = VecDeque::from([0usize]);
    let mut found = (states[0].0.as_slice() == goal).then_some(0);
    while let (None, Some(k)) = (found, queue.pop_front()) {
        let current = states[k].1;
        for &q in &objects {
            if !lattice.contains(q, current) {
                continue;
            }
            for a in distinct_restrictions(f, q, current) {
                let perm = f.iso_through(q, a, q);
                let qs = f.subgroup(q);
                let images: Vec<ElementId> = states[k]
                    .0
                    .iter()
                    .map(|&y| qs.elements()[perm.apply(qs.position(y).unwrap() as u32) as usize])
                    .collect();
                if seen.contains_key(&images) {
                    continue;
                }
                let after = lattice
                    .id_of_elements(images.iter().copied())
                    .expect("image of a subgroup");
                let step = AlperinStep {
                    before: current,
                    after,
                    object: q,
                    psi: FusionMorphism::new(q, q, f.perm_to_images(q, &perm), Provenance::Closure),
                };
                let idx = states.len();
                seen.insert(images.clone(), idx);
                let done = images.as_slice() == goal;
                states.push((images, after, k, Some(step)));
                queue.push_back(idx);
                if done {
                    found = Some(idx);
                    break;
                }
            }
            if found.is_some() {
                break;
            }
        }
    }
    let mut k = found.ok_or(Error::SearchExhausted)?;
    let mut chain = Vec::new();
    while let Some(step) = states[k].3.clone() {
        chain.push(step);
        k = states[k].2;
    }
    chain.reverse();
    Ok(AlperinDecomposition {
        source,
        target,
        chain,
    })
}

/// One automorphism of `Q` (least canonical id) per distinct restriction to `U`.
fn distinct_restrictions(f: &FusionSystem, q: SubgroupId, u: SubgroupId) -> Vec<ElementId> {
    let lattice = f.lattice();
    let class = f.class_index(q);
    let r = f.subgroup(f.representative(q));
    let qs = f.subgroup(q);
    let t = f.transport(q);
    let u_rep = lattice
        .id_of_elements(
            f.subgroup(u)
                .elements()
                .iter()
                .map(|&x| r.elements()[t.apply(qs.position(x).unwrap() as u32) as usize]),
        )
        .expect("image of a subgroup");
    let idx = f.restriction_index(class, u_rep);
    let mut moves: Vec<ElementId> = idx.by_key.values().map(|ids| ids[0]).collect();
    moves.sort_unstable();
    moves
}

/// The first clause `d` violates as a decomposition of `phi`, if any.
pub fn first_violation(
    f: &FusionSystem,
    d: &AlperinDecomposition,
    phi: &FusionMorphism,
) -> Option<Clause> {
    let fcr = fcr_objects(f);
    if d.chain.iter().any(|st| !fcr.contains(&st.object)) {
        return Some(Clause::Objects);
    }
    let lattice = f.lattice();
    if d.source != phi.domain() {
        return Some(Clause::Composite);
    }
    let mut images: Vec<ElementId> = f.subgroup(d.source).elements().to_vec();
    let mut current = d.source;
    for st in &d.chain {
        let q = f.subgroup(st.object);
        let valid = st.before == current
            && st.psi.domain() == st.object
            && lattice.contains(st.object, st.before)
            && lattice.contains(st.object, st.after)
            && f.contains_morphism(&st.psi);
        if !valid {
            return Some(Clause::Steps);
        }
        images = images
            .iter()
            .map(|&y| st.psi.images()[q.position(y).unwrap()])
            .collect();
        if lattice.id_of_elements(images.iter().copied()) != Some(st.after) {
            return Some(Clause::Steps);
        }
        current = st.after;
    }
    (images.as_slice() != phi.images()).then_some(Clause::Composite)
}

pub fn verify_decomposition(
    f: &FusionSystem,
    d: &AlperinDecomposition,
    phi: &FusionMorphism,
) -> bool {
    first_violation(f, d, phi).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::transporter_fusion;
    use crate::group::sylow_p;
    use crate::named;

    fn s4() -> FusionSystem {
        let g = named::symmetric(4).unwrap();
        let s = sylow_p(&g.whole(), 2).unwrap();
        transporter_fusion(&g, &s, 2).unwrap()
    }

    #[test]
    fn identity_has_empty_chain() {
        let f = s4();
        for q in 0..f.lattice().len() {
            let id =
                FusionMorphism::new(q, q, f.subgroup(q).elements().to_vec(), Provenance::Closure);
            let d = alperin_decompose(&f, &id).unwrap();
            assert!(d.is_empty());
            assert!(verify_decomposition(&f, &d, &id));
        }
    }

    #[test]
    fn every_isomorphism_decomposes() {
        let f = s4();
        for q in 0..f.lattice().len() {
            for &q2 in f.f_conjugates(q) {
                for phi in f.isomorphisms(q, q2) {
                    let d = alperin_decompose(&f, &phi).unwrap();
                    assert!(verify_decomposition(&f, &d, &phi));
                }
            }
        }
    }

    #[test]
    fn tampered_chains_are_rejected() {
        let f = s4();
        let fcr = fcr_objects(&f);
        let q = (0..f.lattice().len())
            .find(|&q| f.lattice().order(q) == 2 && f.f_conjugates(q).len() > 1)
            .unwrap();
        let q2 = *f.f_conjugates(q).iter().find(|&&x| x != q).unwrap();
        let phi = f.isomorphisms(q, q2).remove(0);
        let d = alperin_decompose(&f, &phi).unwrap();
        assert!(!d.is_empty());

        let mut bad = d.clone();
        let not_fcr = (0..f.lattice().len()).find(|x| !fcr.contains(x)).unwrap();
        bad.chain[0].object = not_fcr;
        assert_eq!(first_violation(&f, &bad, &phi), Some(Clause::Objects));

        // the identity subgroup map is not phi
        let id = FusionMorphism::new(q, q, f.subgroup(q).elements().to_vec(), Provenance::Closure);
        assert_eq!(first_violation(&f, &d, &id), Some(Clause::Composite));
    }

    #[test]
    fn non_member_rejected() {
        let f = s4();
        // a map that swaps two non-conjugate order-2 subgroups' generators is not in F
        let top = f.top();
        let s = f.subgroup(top).elements().to_vec();
        let mut images = s.clone();
        images.swap(1, 2);
        let bogus = FusionMorphism::new(top, top, images, Provenance::Closure);
        assert!(matches!(
            alperin_decompose(&f, &bogus),
            Err(Error::NotAnIsomorphism)
        ));
    }
}
