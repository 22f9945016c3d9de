//! Finite p-groups and fusion systems as explicit finite categories.
//!
//! Groups are permutation groups with fully enumerated, canonically ordered
//! element sets. A fusion system over `S` is stored as a groupoid: its
//! subgroups are split into classes of `F`-conjugate subgroups, each class
//! carries the automorphism group of a representative, and every member
//! knows a transport isomorphism to that representative.

pub mod alperin;
pub mod classifier;
pub mod constructions;
pub mod error;
pub mod fusion;
pub mod group;
pub mod hom;
pub mod job;
pub mod lattice;
pub mod named;
pub mod perm;

pub use error::{Error, Result};
pub use group::{
    center, centralizer, normalizer, p_core, subgroup_generated, sylow_p, ElementId, FiniteGroup,
    Subgroup,
};
pub use hom::{automorphisms, group_isomorphic, inner_automorphisms, GroupHom};
pub use named::{build_group, build_named, GroupDescriptor, NamedGroup};
pub use perm::{GroupElement, Perm};
