use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fusion::{from_isomorphisms, Backend, FusionSystem};
use crate::group::ElementId;
use crate::lattice::{SubgroupId, SubgroupLattice};
use crate::named::direct_product;

use super::{apply_iso, iso_by_elements};

/// `F1 × F2` with the two coordinate subgroups `S1 × 1` and `1 × S2`.
pub struct ProductFusion {
    pub fusion: FusionSystem,
    pub first: SubgroupId,
    pub second: SubgroupId,
    pair: Vec<ElementId>,
    right: usize,
}

impl ProductFusion {
    /// The element `(a, b)` of `S1 × S2`.
    pub fn pair(&self, a: ElementId, b: ElementId) -> ElementId {
        self.pair[a as usize * self.right + b as usize]
    }
}

pub fn product_fusion(f1: &FusionSystem, f2: &FusionSystem) -> Result<FusionSystem> {
    Ok(product_with_factors(f1, f2)?.fusion)
}

/// Generated by `(φ, id_{S2})` and `(id_{S1}, ψ)` for groupoid generators
/// `φ` of `F1` and `ψ` of `F2`; every `(φ1, φ2)` is a composite of
/// restrictions of these.
pub fn product_with_factors(f1: &FusionSystem, f2: &FusionSystem) -> Result<ProductFusion> {
    if f1.prime() != f2.prime() {
        return Err(Error::PrimeMismatch(f1.prime(), f2.prime()));
    }
    let (g1, g2) = (f1.group(), f2.group());
    let prod = direct_product(g1, g2)?;
    let (n1, n2) = (g1.order(), g2.order());
    let mut pair = Vec::with_capacity(n1 * n2);
    for a in g1.elements() {
        for b in g2.elements() {
            pair.push(
                prod.id_of(&a.direct_sum(b))
                    .expect("pair lies in the product"),
            );
        }
    }
    let mut unpair = vec![(0u32, 0u32); prod.order()];
    for a in 0..n1 {
        for b in 0..n2 {
            unpair[pair[a * n2 + b] as usize] = (a as ElementId, b as ElementId);
        }
    }
    let lattice = Arc::new(SubgroupLattice::new(&prod)?);
    let at = |a: ElementId, b: ElementId| pair[a as usize * n2 + b as usize];
    let mut isos = Vec::new();
    let (l1, l2) = (f1.lattice(), f2.lattice());
    for iso in f1.groupoid_generators() {
        let dom = l1
            .subgroup(iso.from)
            .elements()
            .iter()
            .flat_map(|&a| (0..n2 as ElementId).map(move |b| (a, b)))
            .map(|(a, b)| at(a, b));
        isos.push(iso_by_elements(&lattice, dom, |x| {
            let (a, b) = unpair[x as usize];
            at(apply_iso(l1, &iso, a), b)
        }));
    }
    for iso in f2.groupoid_generators() {
        let dom = l2
            .subgroup(iso.from)
            .elements()
            .iter()
            .flat_map(|&b| (0..n1 as ElementId).map(move |a| (a, b)))
            .map(|(a, b)| at(a, b));
        isos.push(iso_by_elements(&lattice, dom, |x| {
            let (a, b) = unpair[x as usize];
            at(a, apply_iso(l2, &iso, b))
        }));
    }
    let first = lattice
        .id_of_elements((0..n1 as ElementId).map(|a| at(a, 0)))
        .expect("coordinate subgroup");
    let second = lattice
        .id_of_elements((0..n2 as ElementId).map(|b| at(0, b)))
        .expect("coordinate subgroup");
    let fusion = from_isomorphisms(
        lattice,
        f1.prime(),
        &isos,
        Backend::Derived("product".into()),
    )?;
    Ok(ProductFusion {
        fusion,
        first,
        second,
        pair,
        right: n2,
    })
}
