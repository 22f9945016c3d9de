use std::collections::HashMap;
use std::sync::Arc;

use crate::classifier::is_strongly_closed;
use crate::error::{Error, Result};
use crate::fusion::{from_isomorphisms, Backend, FusionMorphism, FusionSystem, Iso, Provenance};
use crate::group::{right_cosets, ElementId, FiniteGroup};
use crate::lattice::{SubgroupId, SubgroupLattice};
use crate::perm::Perm;

/// `S → S/T` together with its action on objects and morphisms.
pub struct QuotientMap {
    source: Arc<SubgroupLattice>,
    target: Arc<SubgroupLattice>,
    kernel: SubgroupId,
    theta: Vec<ElementId>,
}

impl QuotientMap {
    pub fn kernel(&self) -> SubgroupId {
        self.kernel
    }

    pub fn quotient_group(&self) -> &Arc<FiniteGroup> {
        self.target.group()
    }

    /// `x ↦ x⁺`.
    pub fn theta(&self, x: ElementId) -> ElementId {
        self.theta[x as usize]
    }

    /// `P ↦ P⁺` for `T ≤ P`.
    pub fn object_map(&self, p: SubgroupId) -> Option<SubgroupId> {
        if !self.source.contains(p, self.kernel) {
            return None;
        }
        self.target.id_of_elements(
            self.source
                .subgroup(p)
                .elements()
                .iter()
                .map(|&x| self.theta(x)),
        )
    }

    /// `α ↦ α⁺`, defined by `α⁺(x⁺) = α(x)⁺`. Fails if `T` is not in the
    /// domain or the assignment is not well defined.
    pub fn morphism_map(&self, alpha: &FusionMorphism) -> Result<FusionMorphism> {
        let dom = self
            .object_map(alpha.domain())
            .ok_or_else(|| Error::InvalidParameter("domain does not contain the kernel".into()))?;
        let mut assigned: HashMap<ElementId, ElementId> = HashMap::new();
        for (&x, &y) in self
            .source
            .subgroup(alpha.domain())
            .elements()
            .iter()
            .zip(alpha.images())
        {
            let (xp, yp) = (self.theta(x), self.theta(y));
            if *assigned.entry(xp).or_insert(yp) != yp {
                return Err(Error::NotStronglyClosed);
            }
        }
        let images: Vec<ElementId> = self
            .target
            .subgroup(dom)
            .elements()
            .iter()
            .map(|x| assigned[x])
            .collect();
        let image = self
            .target
            .id_of_elements(images.iter().copied())
            .ok_or(Error::NotAHomomorphism)?;
        let codomain = self.object_map(alpha.codomain()).unwrap_or(image);
        Ok(FusionMorphism::new(
            dom,
            codomain,
            images,
            Provenance::Closure,
        ))
    }
}

/// `F/T` over `S/T`, realized on the right cosets of `T`. Its morphisms are
/// the push-forwards of morphisms between subgroups containing `T`; for a
/// strongly closed `T` these all normalize `T`, so pushing forward the
/// groupoid generators of the `T`-containing classes generates `F/T`.
pub fn quotient_fusion(f: &FusionSystem, t: SubgroupId) -> Result<(FusionSystem, QuotientMap)> {
    if !is_strongly_closed(f, t) {
        return Err(Error::NotStronglyClosed);
    }
    let s = f.group();
    let source = f.lattice().clone();
    let (labels, reps) = right_cosets(&s.whole(), f.subgroup(t));
    let action = |g: ElementId| {
        Perm::from_images_unchecked(reps.iter().map(|&r| labels[s.mul(r, g) as usize]).collect())
    };
    let gens: Vec<Perm> = s.generator_ids().into_iter().map(action).collect();
    let q = FiniteGroup::from_generators(reps.len(), &gens)?;
    debug_assert_eq!(q.order(), reps.len());
    let theta: Vec<ElementId> = (0..s.order() as ElementId)
        .map(|g| q.id_of(&action(g)).expect("image of S"))
        .collect();
    let target = Arc::new(SubgroupLattice::new(&q)?);
    let map = QuotientMap {
        source: source.clone(),
        target: target.clone(),
        kernel: t,
        theta,
    };
    let mut isos = Vec::new();
    for iso in f.groupoid_generators() {
        if !source.contains(iso.from, t) {
            continue;
        }
        let alpha = FusionMorphism::new(
            iso.from,
            iso.to,
            f.perm_to_images(iso.to, &iso.map),
            Provenance::Closure,
        );
        let pushed = map.morphism_map(&alpha)?;
        let (from, to) = (pushed.domain(), pushed.codomain());
        let ts = target.subgroup(to);
        let perm = Perm::from_images_unchecked(
            pushed
                .images()
                .iter()
                .map(|&y| ts.position(y).unwrap() as u32)
                .collect(),
        );
        if !(from == to && perm.is_identity()) {
            isos.push(Iso {
                from,
                to,
                map: perm,
            });
        }
    }
    let fusion = from_isomorphisms(
        target,
        f.prime(),
        &isos,
        Backend::Derived("quotient".into()),
    )?;
    Ok((fusion, map))
}
