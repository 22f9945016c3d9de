//! Predicates on subgroups of a fusion system and the saturation check.

use std::collections::HashSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::fusion::{FusionMorphism, FusionSystem, Provenance};
use crate::group::{p_core, p_part, right_cosets, ElementId, FiniteGroup, Subgroup};
use crate::lattice::SubgroupId;
use crate::perm::Perm;

/// Evidence for one isomorphism `φ: Q → P` in a receptivity check.
#[derive(Clone, Debug)]
pub struct NphiWitness {
    pub phi: FusionMorphism,
    pub n_phi: SubgroupId,
    pub extension: Option<FusionMorphism>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassVerdict {
    pub class: usize,
    pub representative: SubgroupId,
    pub chosen: SubgroupId,
    pub fully_automised: bool,
    pub receptive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturationReport {
    pub verdict: bool,
    pub per_class: Vec<ClassVerdict>,
    /// A class none of whose members is both fully automised and receptive.
    pub counterexample: Option<usize>,
}

/// `Aut_S(P)` is a Sylow `p`-subgroup of `Aut_F(P)`.
pub fn is_fully_automised(f: &FusionSystem, q: SubgroupId) -> bool {
    let aut_f = f.aut_f_order(q) as u64;
    let aut_s = f.aut_s_perms(q);
    let contained = aut_s.iter().all(|(c, _)| f.contains_iso(q, q, c));
    contained && aut_s.len() as u64 == p_part(aut_f, f.prime())
}

fn phi_images<'a>(
    f: &'a FusionSystem,
    q: SubgroupId,
    p: SubgroupId,
    perm: &Perm,
) -> impl Fn(ElementId) -> ElementId + 'a {
    let qs = f.subgroup(q);
    let ps = f.subgroup(p);
    let perm = perm.clone();
    move |x| ps.elements()[perm.apply(qs.position(x).expect("x ∈ Q") as u32) as usize]
}

/// `N_φ` for a position isomorphism `φ: Q → P`, with an extension to `N_φ` if one exists.
pub fn n_phi(f: &FusionSystem, q: SubgroupId, p: SubgroupId, phi: &Perm) -> NphiWitness {
    let lattice = f.lattice();
    let phi_m = FusionMorphism::new(q, p, f.perm_to_images(p, phi), Provenance::Closure);
    if lattice.normalizer(q) == q {
        return NphiWitness {
            phi: phi_m.clone(),
            n_phi: q,
            extension: Some(phi_m),
        };
    }
    let s = f.group().as_ref();
    let aut_s_p: HashSet<Perm> = f.aut_s_perms(p).into_iter().map(|(c, _)| c).collect();
    let cent = lattice.subgroup(lattice.centralizer(q));
    let phi_inv = phi.inverse();
    let mut members = FixedBitSet::with_capacity(s.order());
    for (c, g) in f.aut_s_perms(q) {
        if aut_s_p.contains(&phi_inv.then(&c).then(phi)) {
            for &z in cent.elements() {
                members.insert(s.mul(z, g) as usize);
            }
        }
    }
    let n = lattice.id_of_members(&members).expect("N_φ is a subgroup");
    let extension = extend(f, q, p, phi, n);
    NphiWitness {
        phi: phi_m,
        n_phi: n,
        extension,
    }
}

/// A morphism `N → S` in `F` restricting to `φ: Q → P` on `Q ≤ N`.
pub(crate) fn extend(
    f: &FusionSystem,
    q: SubgroupId,
    p: SubgroupId,
    phi: &Perm,
    n: SubgroupId,
) -> Option<FusionMorphism> {
    let map = phi_images(f, q, p, phi);
    for &n2 in f.f_conjugates(n) {
        if let Some(&a) = f.isos_restricting_to(n, n2, q, &map).first() {
            let perm = f.iso_through(n, a, n2);
            return Some(FusionMorphism::new(
                n,
                f.top(),
                f.perm_to_images(n2, &perm),
                Provenance::Closure,
            ));
        }
    }
    None
}

/// The first isomorphism onto `P` that fails to extend to its `N_φ`, if any.
pub fn receptivity_counterexample(f: &FusionSystem, p: SubgroupId) -> Option<NphiWitness> {
    for &q in f.f_conjugates(p) {
        for phi in f.iso_perms(q, p) {
            let w = n_phi(f, q, p, &phi);
            if w.extension.is_none() {
                return Some(w);
            }
        }
    }
    None
}

pub fn is_receptive(f: &FusionSystem, p: SubgroupId) -> bool {
    receptivity_counterexample(f, p).is_none()
}

/// Every subgroup is `F`-conjugate to one that is fully automised and receptive.
pub fn is_saturated(f: &FusionSystem) -> SaturationReport {
    let lattice = f.lattice();
    let mut per_class = Vec::with_capacity(f.classes().len());
    let mut counterexample = None;
    for (c, class) in f.classes().iter().enumerate() {
        let mut candidates = class.members().to_vec();
        candidates.sort_by_key(|&q| (std::cmp::Reverse(lattice.order(lattice.normalizer(q))), q));
        let mut verdict = None;
        for &q in &candidates {
            let fa = is_fully_automised(f, q);
            let rc = is_receptive(f, q);
            if verdict.is_none() || (fa && rc) {
                verdict = Some((q, fa, rc));
            }
            if fa && rc {
                break;
            }
        }
        let (chosen, fa, rc) = verdict.unwrap();
        if !(fa && rc) && counterexample.is_none() {
            counterexample = Some(c);
        }
        per_class.push(ClassVerdict {
            class: c,
            representative: class.representative(),
            chosen,
            fully_automised: fa,
            receptive: rc,
        });
    }
    SaturationReport {
        verdict: counterexample.is_none(),
        per_class,
        counterexample,
    }
}

pub fn is_fully_centralised(f: &FusionSystem, p: SubgroupId) -> bool {
    let l = f.lattice();
    let mine = l.order(l.centralizer(p));
    f.f_conjugates(p)
        .iter()
        .all(|&q| l.order(l.centralizer(q)) <= mine)
}

pub fn is_fully_normalised(f: &FusionSystem, p: SubgroupId) -> bool {
    let l = f.lattice();
    let mine = l.order(l.normalizer(p));
    f.f_conjugates(p)
        .iter()
        .all(|&q| l.order(l.normalizer(q)) <= mine)
}

/// `C_S(Q) = Z(Q)` for every `Q ∈ P^F`.
pub fn is_centric(f: &FusionSystem, p: SubgroupId) -> bool {
    let l = f.lattice();
    f.f_conjugates(p)
        .iter()
        .all(|&q| l.contains(q, l.centralizer(q)))
}

/// `Out_F(P) = Aut_F(P)/Inn(P)`, realized on the cosets of `Inn(P)`.
/// Computed at the class representative, to which `P`'s is isomorphic.
pub fn out_f(f: &FusionSystem, p: SubgroupId) -> Arc<FiniteGroup> {
    let c = f.class_index(p);
    let aut = f.classes()[c].automorphisms().clone();
    let inn_ids = f.inner_ids(c);
    if inn_ids.len() == 1 {
        return aut;
    }
    let mut m = FixedBitSet::with_capacity(aut.order());
    for &i in &inn_ids {
        m.insert(i as usize);
    }
    let inn = Subgroup::from_members(aut.clone(), m);
    let whole = aut.whole();
    let (labels, reps) = right_cosets(&whole, &inn);
    let gens: Vec<Perm> = aut
        .generator_ids()
        .into_iter()
        .map(|s| {
            Perm::from_images_unchecked(
                reps.iter()
                    .map(|&r| labels[aut.mul(r, s) as usize])
                    .collect(),
            )
        })
        .collect();
    FiniteGroup::from_generators(reps.len(), &gens).expect("quotient of an enumerated group")
}

/// `O_p(Out_F(P)) = 1`.
pub fn is_radical(f: &FusionSystem, p: SubgroupId) -> bool {
    let out = out_f(f, p);
    p_core(&out.whole(), f.prime()).expect("prime").is_trivial()
}

/// Fully normalised, centric and radical subgroups, in canonical order.
pub fn fcr_objects(f: &FusionSystem) -> Vec<SubgroupId> {
    let radical = class_flags(f, is_radical);
    let centric = class_flags(f, is_centric);
    (0..f.lattice().len())
        .filter(|&q| {
            centric[f.class_index(q)] && radical[f.class_index(q)] && is_fully_normalised(f, q)
        })
        .collect()
}

/// Centric and radical subgroups, in canonical order.
pub fn cr_objects(f: &FusionSystem) -> Vec<SubgroupId> {
    let radical = class_flags(f, is_radical);
    let centric = class_flags(f, is_centric);
    (0..f.lattice().len())
        .filter(|&q| centric[f.class_index(q)] && radical[f.class_index(q)])
        .collect()
}

fn class_flags(f: &FusionSystem, pred: fn(&FusionSystem, SubgroupId) -> bool) -> Vec<bool> {
    f.classes()
        .iter()
        .map(|c| pred(f, c.representative()))
        .collect()
}

/// No element of `P` is `F`-conjugate to an element outside `P`.
pub fn is_strongly_closed(f: &FusionSystem, p: SubgroupId) -> bool {
    let labels = f.element_classes();
    let sub = f.subgroup(p);
    let inside: HashSet<u32> = sub.elements().iter().map(|&x| labels[x as usize]).collect();
    (0..labels.len() as ElementId).all(|y| sub.contains(y) || !inside.contains(&labels[y as usize]))
}

/// Every morphism `φ: Q → R` of `F` extends to `φ̄: QP → RP` with `φ̄(P) = P`.
/// Checking the groupoid generators suffices: the extendable morphisms are
/// closed under composition, inverses and restriction.
pub fn is_normal_in_f(f: &FusionSystem, p: SubgroupId) -> bool {
    let l = f.lattice();
    if !l.is_normal(p) {
        return false;
    }
    let target: Vec<ElementId> = f.subgroup(p).elements().to_vec();
    let preserves = |m: SubgroupId, m2: SubgroupId, a: ElementId| {
        let perm = f.iso_through(m, a, m2);
        let ms = f.subgroup(m);
        let mut images: Vec<ElementId> = target
            .iter()
            .map(|&x| {
                f.subgroup(m2).elements()[perm.apply(ms.position(x).unwrap() as u32) as usize]
            })
            .collect();
        images.sort_unstable();
        images == target
    };
    let extends = |q: SubgroupId, q2: SubgroupId, phi: &Perm| {
        let (m, m2) = (l.product(q, p), l.product(q2, p));
        let map = phi_images(f, q, q2, phi);
        f.isos_restricting_to(m, m2, q, &map)
            .into_iter()
            .any(|a| preserves(m, m2, a))
    };
    for class in f.classes() {
        let r = class.representative();
        for a in class.automorphisms().generators() {
            if !extends(r, r, a) {
                return false;
            }
        }
        for &q in class.members() {
            if q != r && !extends(q, r, f.transport(q)) {
                return false;
            }
        }
    }
    true
}

/// One row of a classification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifierRow {
    pub object: Vec<Vec<u32>>,
    pub order: usize,
    pub fully_automised: bool,
    pub receptive: bool,
    pub centric: bool,
    pub radical: bool,
    pub fully_normalised: bool,
    pub strongly_closed: bool,
}

pub fn classify(f: &FusionSystem, q: SubgroupId) -> ClassifierRow {
    ClassifierRow {
        object: f.lattice().describe(q),
        order: f.lattice().order(q),
        fully_automised: is_fully_automised(f, q),
        receptive: is_receptive(f, q),
        centric: is_centric(f, q),
        radical: is_radical(f, q),
        fully_normalised: is_fully_normalised(f, q),
        strongly_closed: is_strongly_closed(f, q),
    }
}

pub fn classify_all(f: &FusionSystem) -> Vec<ClassifierRow> {
    (0..f.lattice().len()).map(|q| classify(f, q)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{generated_fusion, transporter_fusion};
    use crate::group::sylow_p;
    use crate::hom::GroupHom;
    use crate::named;

    fn transporter(g: &Arc<FiniteGroup>, p: u64) -> FusionSystem {
        let s = sylow_p(&g.whole(), p).unwrap();
        transporter_fusion(g, &s, p).unwrap()
    }

    fn swap_system() -> FusionSystem {
        let v = named::abelian(&[2, 2]).unwrap();
        let gens = v.whole().generating_set();
        let swap =
            GroupHom::from_generator_images(v.whole(), v.whole(), &gens, &[gens[1], gens[0]])
                .unwrap();
        generated_fusion(&v.whole(), 2, &[swap]).unwrap()
    }

    #[test]
    fn inner_fusion_of_top_is_fully_automised_and_receptive() {
        let d8 = named::dihedral(8).unwrap();
        let f = transporter(&d8, 2);
        assert!(is_fully_automised(&f, f.top()));
        assert!(is_receptive(&f, f.top()));
        assert!(is_fully_centralised(&f, f.top()) && is_fully_normalised(&f, f.top()));
        assert!(is_saturated(&f).verdict);
    }

    #[test]
    fn a4_klein_four_is_fully_automised() {
        let f = transporter(&named::alternating(4).unwrap(), 2);
        assert_eq!(f.aut_s_order(f.top()), 1);
        assert_eq!(f.aut_f_order(f.top()), 3);
        assert!(is_fully_automised(&f, f.top()));
    }

    #[test]
    fn involutory_swap_is_not_saturated() {
        let f = swap_system();
        assert!(!is_fully_automised(&f, f.top()));
        let report = is_saturated(&f);
        assert!(!report.verdict);
        assert_eq!(
            report.per_class[report.counterexample.unwrap()].representative,
            f.top()
        );
    }

    #[test]
    fn s3_is_saturated() {
        let f = transporter(&named::symmetric(3).unwrap(), 3);
        assert!(is_saturated(&f).verdict);
    }

    #[test]
    fn trivial_subgroup_not_centric() {
        let f = transporter(&named::symmetric(4).unwrap(), 2);
        assert!(!is_centric(&f, 0));
        assert!(is_centric(&f, f.top()));
    }

    #[test]
    fn out_order_times_inner_is_aut() {
        let f = transporter(&named::symmetric(4).unwrap(), 2);
        for q in 0..f.lattice().len() {
            let inn = f.subgroup(q).order() / crate::group::center(f.subgroup(q)).order();
            assert_eq!(out_f(&f, q).order() * inn, f.aut_f_order(q));
        }
    }
}
