//! New fusion systems from old: products, quotients by strongly closed
//! subgroups, normalizer and centralizer subsystems, the exotic systems over
//! `7^{1+2}_+`, and the structural witness for products with an abelian factor.

mod iso;
mod normalizer;
mod product;
mod quotient;
mod rv;
mod witness;

pub use iso::fusion_isomorphic;
pub use normalizer::{centralizer_subsystem, normalizer_subsystem, AutSet};
pub use product::{product_fusion, product_with_factors, ProductFusion};
pub use quotient::{quotient_fusion, QuotientMap};
pub use rv::{build_rv, build_rv_certified, RvDescriptor, RvName, RvSystem};
pub use witness::{main_theorem_witness, WitnessReport};

use crate::fusion::Iso;
use crate::group::ElementId;
use crate::lattice::SubgroupLattice;
use crate::perm::Perm;

/// The isomorphism `x ↦ image(x)` on the subgroup with element set `domain`.
fn iso_by_elements(
    lattice: &SubgroupLattice,
    domain: impl IntoIterator<Item = ElementId>,
    image: impl Fn(ElementId) -> ElementId,
) -> Iso {
    let from = lattice
        .id_of_elements(domain)
        .expect("domain is a subgroup");
    let fs = lattice.subgroup(from);
    let images: Vec<ElementId> = fs.elements().iter().map(|&x| image(x)).collect();
    let to = lattice
        .id_of_elements(images.iter().copied())
        .expect("image is a subgroup");
    let ts = lattice.subgroup(to);
    let map = Perm::from_images_unchecked(
        images
            .iter()
            .map(|&y| ts.position(y).unwrap() as u32)
            .collect(),
    );
    Iso { from, to, map }
}

/// Image of `x ∈ from` under a stored isomorphism.
fn apply_iso(lattice: &SubgroupLattice, iso: &Iso, x: ElementId) -> ElementId {
    let from = lattice.subgroup(iso.from);
    lattice.subgroup(iso.to).elements()[iso.map.apply(from.position(x).unwrap() as u32) as usize]
}
