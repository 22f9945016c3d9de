//! Homomorphisms between subgroups, stored as explicit element maps, and
//! backtracking searches for automorphisms and isomorphisms.

use std::ops::ControlFlow;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{ElementId, FiniteGroup, Subgroup};

/// Default bound on `|P|` for automorphism and isomorphism searches.
pub const DEFAULT_SEARCH_BOUND: usize = 343;

/// Bound on `|G|` for [`group_isomorphic`].
pub const ISOMORPHISM_BOUND: usize = 4096;

/// A homomorphism `domain → codomain`. `images[i]` is the image of
/// `domain.elements()[i]`, as an element id of the codomain's ambient group.
#[derive(Clone)]
pub struct GroupHom {
    domain: Subgroup,
    codomain: Subgroup,
    images: Vec<ElementId>,
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain
            && self.codomain == other.codomain
            && self.images == other.images
    }
}

impl Eq for GroupHom {}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GroupHom({:?} -> {:?})",
            self.domain.elements(),
            self.images
        )
    }
}

impl GroupHom {
    /// Checks the homomorphism property against the domain's generators.
    pub fn new(domain: Subgroup, codomain: Subgroup, images: Vec<ElementId>) -> Result<Self> {
        if images.len() != domain.order() {
            return Err(Error::Malformed(
                "image list length differs from domain order".into(),
            ));
        }
        if images.iter().any(|&y| !codomain.contains(y)) {
            return Err(Error::NotASubgroup);
        }
        let hom = GroupHom {
            domain,
            codomain,
            images,
        };
        if !hom.is_homomorphism() {
            return Err(Error::NotAHomomorphism);
        }
        Ok(hom)
    }

    pub(crate) fn new_unchecked(
        domain: Subgroup,
        codomain: Subgroup,
        images: Vec<ElementId>,
    ) -> Self {
        GroupHom {
            domain,
            codomain,
            images,
        }
    }

    /// Extends `gens[i] ↦ images[i]` to a homomorphism on `domain`.
    pub fn from_generator_images(
        domain: Subgroup,
        codomain: Subgroup,
        gens: &[ElementId],
        images: &[ElementId],
    ) -> Result<Self> {
        let map = extend_to_hom(&domain, gens, images, codomain.ambient())?;
        if map.iter().any(|&y| !codomain.contains(y)) {
            return Err(Error::NotASubgroup);
        }
        Ok(GroupHom {
            domain,
            codomain,
            images: map,
        })
    }

    pub fn identity(domain: &Subgroup) -> Self {
        GroupHom {
            domain: domain.clone(),
            codomain: domain.clone(),
            images: domain.elements().to_vec(),
        }
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn codomain(&self) -> &Subgroup {
        &self.codomain
    }

    pub fn images(&self) -> &[ElementId] {
        &self.images
    }

    pub fn apply(&self, x: ElementId) -> Option<ElementId> {
        self.domain.position(x).map(|i| self.images[i])
    }

    fn is_homomorphism(&self) -> bool {
        let src = self.domain.ambient().as_ref();
        let dst = self.codomain.ambient().as_ref();
        let Some(one) = self.apply(0) else {
            return false;
        };
        if one != 0 {
            return false;
        }
        let gens = self.domain.generating_set();
        self.domain
            .elements()
            .iter()
            .zip(&self.images)
            .all(|(&x, &fx)| {
                gens.iter().all(|&s| {
                    let lhs = self.apply(src.mul(x, s));
                    lhs == Some(dst.mul(fx, self.apply(s).unwrap()))
                })
            })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.codomain.ambient().order());
        self.images.iter().all(|&y| !seen.put(y as usize))
    }

    pub fn image(&self) -> Subgroup {
        let mut m = FixedBitSet::with_capacity(self.codomain.ambient().order());
        for &y in &self.images {
            m.insert(y as usize);
        }
        Subgroup::from_members(self.codomain.ambient().clone(), m)
    }

    /// `self` followed by `next`; requires `image(self) ⊆ domain(next)`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        let images = self
            .images
            .iter()
            .map(|&y| next.apply(y).ok_or(Error::NotASubgroup))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupHom {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            images,
        })
    }

    pub fn restrict(&self, sub: &Subgroup) -> Result<GroupHom> {
        let images = sub
            .elements()
            .iter()
            .map(|&x| self.apply(x).ok_or(Error::NotASubgroup))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupHom {
            domain: sub.clone(),
            codomain: self.codomain.clone(),
            images,
        })
    }

    /// Inverse of an injective map, as a map `image → domain`.
    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_injective() {
            return Err(Error::NotInjective);
        }
        let image = self.image();
        let mut images = vec![0; image.order()];
        for (i, &y) in self.images.iter().enumerate() {
            images[image.position(y).unwrap()] = self.domain.elements()[i];
        }
        Ok(GroupHom {
            domain: image,
            codomain: self.domain.clone(),
            images,
        })
    }

    /// An automorphism as a permutation of positions in `domain.elements()`.
    pub fn position_images(&self) -> Option<Vec<u32>> {
        self.images
            .iter()
            .map(|&y| self.domain.position(y).map(|p| p as u32))
            .collect()
    }
}

/// Extends `gens[i] ↦ images[i]` over `domain` by breadth-first search on
/// words; fails if the assignment violates a relation.
pub fn extend_to_hom(
    domain: &Subgroup,
    gens: &[ElementId],
    images: &[ElementId],
    target: &Arc<FiniteGroup>,
) -> Result<Vec<ElementId>> {
    assert_eq!(gens.len(), images.len());
    let src = domain.ambient().as_ref();
    let dst = target.as_ref();
    const UNSET: u32 = u32::MAX;
    let mut map = vec![UNSET; domain.order()];
    map[0] = 0;
    let mut queue = vec![0u32];
    while let Some(x) = queue.pop() {
        let fx = map[domain.position(x).unwrap()];
        for (&s, &fs) in gens.iter().zip(images) {
            let y = src.mul(x, s);
            let Some(py) = domain.position(y) else {
                return Err(Error::NotASubgroup);
            };
            let fy = dst.mul(fx, fs);
            if map[py] == UNSET {
                map[py] = fy;
                queue.push(y);
            } else if map[py] != fy {
                return Err(Error::NotAHomomorphism);
            }
        }
    }
    if map.contains(&UNSET) {
        return Err(Error::InvalidParameter(
            "generators do not generate the domain".into(),
        ));
    }
    Ok(map)
}

/// Calls `visit` with the full image list (aligned to `g.elements()`) of every
/// isomorphism `g → h` whose element pairs all satisfy `compatible`.
pub fn for_each_isomorphism<C, V>(
    g: &Subgroup,
    h: &Subgroup,
    compatible: C,
    mut visit: V,
) -> Result<()>
where
    C: Fn(ElementId, ElementId) -> bool,
    V: FnMut(&[ElementId]) -> ControlFlow<()>,
{
    if g.order() != h.order() {
        return Ok(());
    }
    let src = g.ambient().as_ref();
    let dst = h.ambient().as_ref();
    let gens = g.generating_set();
    if gens.is_empty() {
        if compatible(0, 0) {
            let _ = visit(&[0]);
        }
        return Ok(());
    }
    // H_k = ⟨gens[..=k]⟩ for partial consistency checks
    let chain: Vec<Subgroup> = (0..gens.len())
        .map(|k| Subgroup::generated(g.ambient(), &gens[..=k]))
        .collect();
    let candidates: Vec<Vec<ElementId>> = gens
        .iter()
        .map(|&s| {
            let o = src.element_order(s);
            h.elements()
                .iter()
                .copied()
                .filter(|&y| dst.element_order(y) == o && compatible(s, y))
                .collect()
        })
        .collect();
    let mut chosen = vec![0u32; gens.len()];
    let mut stop = false;
    search(
        0,
        &gens,
        &chain,
        &candidates,
        &mut chosen,
        g,
        h,
        &compatible,
        &mut visit,
        &mut stop,
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn search<C, V>(
    level: usize,
    gens: &[ElementId],
    chain: &[Subgroup],
    candidates: &[Vec<ElementId>],
    chosen: &mut Vec<ElementId>,
    g: &Subgroup,
    h: &Subgroup,
    compatible: &C,
    visit: &mut V,
    stop: &mut bool,
) where
    C: Fn(ElementId, ElementId) -> bool,
    V: FnMut(&[ElementId]) -> ControlFlow<()>,
{
    for &y in &candidates[level] {
        if *stop {
            return;
        }
        chosen[level] = y;
        let sub = &chain[level];
        let Ok(map) = extend_to_hom(sub, &gens[..=level], &chosen[..=level], h.ambient()) else {
            continue;
        };
        let mut seen = FixedBitSet::with_capacity(h.ambient().order());
        if !map.iter().all(|&v| !seen.put(v as usize)) {
            continue;
        }
        if level + 1 < gens.len() {
            search(
                level + 1,
                gens,
                chain,
                candidates,
                chosen,
                g,
                h,
                compatible,
                visit,
                stop,
            );
        } else {
            // sub == g here
            if !map.iter().all(|&v| h.contains(v)) {
                continue;
            }
            if !g
                .elements()
                .iter()
                .zip(&map)
                .all(|(&x, &fx)| compatible(x, fx))
            {
                continue;
            }
            if visit(&map).is_break() {
                *stop = true;
            }
        }
    }
}

fn check_bound(order: usize, bound: usize) -> Result<()> {
    if order > bound {
        return Err(Error::SizeBoundExceeded { size: order, bound });
    }
    Ok(())
}

/// Every automorphism of `p`, found by backtracking over generator images.
pub fn automorphisms(p: &Subgroup) -> Result<Vec<GroupHom>> {
    automorphisms_bounded(p, DEFAULT_SEARCH_BOUND)
}

pub fn automorphisms_bounded(p: &Subgroup, bound: usize) -> Result<Vec<GroupHom>> {
    check_bound(p.order(), bound)?;
    let mut out = Vec::new();
    for_each_isomorphism(
        p,
        p,
        |_, _| true,
        |map| {
            out.push(GroupHom::new_unchecked(p.clone(), p.clone(), map.to_vec()));
            ControlFlow::Continue(())
        },
    )?;
    Ok(out)
}

/// `{c_g : g ∈ P}` without repetitions.
pub fn inner_automorphisms(p: &Subgroup) -> Vec<GroupHom> {
    let a = p.ambient().as_ref();
    let mut seen = std::collections::BTreeSet::new();
    for &g in p.elements() {
        let map: Vec<ElementId> = p.elements().iter().map(|&x| a.conj(x, g)).collect();
        seen.insert(map);
    }
    seen.into_iter()
        .map(|m| GroupHom::new_unchecked(p.clone(), p.clone(), m))
        .collect()
}

/// An isomorphism `g → h` if one exists.
pub fn group_isomorphic(g: &Subgroup, h: &Subgroup) -> Result<Option<GroupHom>> {
    check_bound(g.order(), ISOMORPHISM_BOUND)?;
    if g.order() != h.order() || order_statistics(g) != order_statistics(h) {
        return Ok(None);
    }
    let mut found = None;
    for_each_isomorphism(
        g,
        h,
        |_, _| true,
        |map| {
            found = Some(map.to_vec());
            ControlFlow::Break(())
        },
    )?;
    Ok(found.map(|m| GroupHom::new_unchecked(g.clone(), h.clone(), m)))
}

/// Sorted multiset of element orders.
pub fn order_statistics(g: &Subgroup) -> Vec<u64> {
    let a = g.ambient().as_ref();
    let mut v: Vec<u64> = g.elements().iter().map(|&x| a.element_order(x)).collect();
    v.sort_unstable();
    v
}
