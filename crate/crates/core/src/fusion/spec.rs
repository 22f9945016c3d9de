use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ElementId, FiniteGroup, Subgroup};
use crate::hom::GroupHom;
use crate::perm::Perm;

/// An element of the declared ambient group: either its index in the
/// canonical (sorted) element order or its image list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(u32),
    Images(Vec<u32>),
}

impl ElementRef {
    pub fn resolve(&self, g: &FiniteGroup) -> Result<ElementId> {
        match self {
            ElementRef::Index(i) if (*i as usize) < g.order() => Ok(*i),
            ElementRef::Index(_) => Err(Error::NotInGroup),
            ElementRef::Images(v) => g
                .id_of(&Perm::from_images(v.clone())?)
                .ok_or(Error::NotInGroup),
        }
    }
}

/// One generating morphism: `domain_gens[i] ↦ images[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub domain_gens: Vec<ElementRef>,
    pub images: Vec<ElementRef>,
}

/// Resolves generator specs inside `s`, checking each is an injective homomorphism.
pub fn parse_generators(s: &Arc<FiniteGroup>, specs: &[GeneratorSpec]) -> Result<Vec<GroupHom>> {
    specs
        .iter()
        .map(|spec| {
            if spec.domain_gens.len() != spec.images.len() {
                return Err(Error::Malformed(
                    "domain_gens and images differ in length".into(),
                ));
            }
            let gens = spec
                .domain_gens
                .iter()
                .map(|e| e.resolve(s))
                .collect::<Result<Vec<_>>>()?;
            let images = spec
                .images
                .iter()
                .map(|e| e.resolve(s))
                .collect::<Result<Vec<_>>>()?;
            let domain = Subgroup::generated(s, &gens);
            let hom = GroupHom::from_generator_images(domain, s.whole(), &gens, &images)?;
            if !hom.is_injective() {
                return Err(Error::NotInjective);
            }
            Ok(hom)
        })
        .collect()
}
