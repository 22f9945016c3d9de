use std::collections::HashMap;
use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{is_prime, ElementId, FiniteGroup, GroupBuilder, Subgroup};
use crate::hom::GroupHom;
use crate::lattice::{SubgroupId, SubgroupLattice};
use crate::perm::Perm;

use super::{Backend, FusionClass, FusionMorphism, FusionSystem, Provenance};

/// An isomorphism between two subgroups of `S`, as a position map.
#[derive(Clone, Debug)]
pub(crate) struct Iso {
    pub(crate) from: SubgroupId,
    pub(crate) to: SubgroupId,
    pub(crate) map: Perm,
}

/// Builds the groupoid generated by an edge oracle that is closed under
/// inverses. Classes are discovered in canonical order, so each
/// representative is the least member of its class; automorphism groups are
/// generated by Schreier generators of the breadth-first spanning tree.
pub(crate) fn assemble<E>(
    lattice: Arc<SubgroupLattice>,
    p: u64,
    backend: Backend,
    mut edges: E,
) -> Result<FusionSystem>
where
    E: FnMut(SubgroupId, &mut Vec<(SubgroupId, Perm)>) -> Result<()>,
{
    const UNSET: usize = usize::MAX;
    let n = lattice.len();
    let mut class_of = vec![UNSET; n];
    let mut to_rep: Vec<Option<Perm>> = vec![None; n];
    let mut classes = Vec::new();
    let mut buf = Vec::new();
    for rep in 0..n {
        if class_of[rep] != UNSET {
            continue;
        }
        let c = classes.len();
        class_of[rep] = c;
        to_rep[rep] = Some(Perm::identity(lattice.order(rep)));
        let mut members = vec![rep];
        let mut builder = GroupBuilder::new(lattice.order(rep));
        let mut queue = VecDeque::from([rep]);
        while let Some(q) = queue.pop_front() {
            buf.clear();
            edges(q, &mut buf)?;
            let tq = to_rep[q].clone().unwrap();
            let tq_inv = tq.inverse();
            for (q2, e) in buf.drain(..) {
                if class_of[q2] == UNSET {
                    class_of[q2] = c;
                    to_rep[q2] = Some(e.inverse().then(&tq));
                    members.push(q2);
                    queue.push_back(q2);
                } else {
                    debug_assert_eq!(class_of[q2], c, "edge oracle is not closed under inverses");
                    let a = tq_inv.then(&e).then(to_rep[q2].as_ref().unwrap());
                    if !a.is_identity() {
                        builder.add(a)?;
                    }
                }
            }
        }
        members.sort_unstable();
        classes.push(FusionClass {
            rep,
            members,
            aut: Arc::new(builder.finish()),
        });
    }
    let to_rep = to_rep.into_iter().map(Option::unwrap).collect();
    Ok(FusionSystem::from_parts(
        lattice, p, classes, class_of, to_rep, backend,
    ))
}

/// Restriction of a position isomorphism `A → B` to `U ≤ A`, as `(φ(U), map)`.
pub(crate) fn restrict_iso(
    lattice: &SubgroupLattice,
    iso: &Iso,
    u: SubgroupId,
) -> (SubgroupId, Perm) {
    let a = lattice.subgroup(iso.from);
    let b = lattice.subgroup(iso.to);
    let images: Vec<ElementId> = lattice
        .subgroup(u)
        .elements()
        .iter()
        .map(|&x| b.elements()[iso.map.apply(a.position(x).unwrap() as u32) as usize])
        .collect();
    let v = lattice
        .id_of_elements(images.iter().copied())
        .expect("image of a subgroup");
    let vs = lattice.subgroup(v);
    let map = Perm::from_images_unchecked(
        images
            .iter()
            .map(|&y| vs.position(y).unwrap() as u32)
            .collect(),
    );
    (v, map)
}

/// The fusion system over the lattice's group generated by `isos` together
/// with the inner automorphisms of `S`.
pub(crate) fn from_isomorphisms(
    lattice: Arc<SubgroupLattice>,
    p: u64,
    isos: &[Iso],
    backend: Backend,
) -> Result<FusionSystem> {
    let n = lattice.len();
    let s = lattice.group().clone();
    let top = lattice.top();
    let mut all: Vec<Iso> = s
        .generator_ids()
        .into_iter()
        .map(|g| Iso {
            from: top,
            to: top,
            map: conjugation_perm(&lattice, top, g),
        })
        .collect();
    all.extend(isos.iter().cloned());
    let mut adjacency: Vec<Vec<(SubgroupId, Perm)>> = vec![Vec::new(); n];
    for iso in &all {
        for u in lattice.below(iso.from).collect::<Vec<_>>() {
            let (v, map) = restrict_iso(&lattice, iso, u);
            if u == v && map.is_identity() {
                continue;
            }
            adjacency[v].push((u, map.inverse()));
            adjacency[u].push((v, map));
        }
    }
    assemble(lattice, p, backend, |q, out| {
        out.extend(adjacency[q].iter().cloned());
        Ok(())
    })
}

fn conjugation_perm(lattice: &SubgroupLattice, q: SubgroupId, g: ElementId) -> Perm {
    let s = lattice.group().as_ref();
    let sub = lattice.subgroup(q);
    Perm::from_images_unchecked(
        sub.elements()
            .iter()
            .map(|&x| sub.position(s.conj(x, g)).unwrap() as u32)
            .collect(),
    )
}

/// `S` as a standalone group, reusing the ambient when `S` is all of it.
pub(crate) fn standalone(s: &Subgroup) -> Arc<FiniteGroup> {
    if s.order() == s.ambient().order() {
        s.ambient().clone()
    } else {
        s.to_group()
    }
}

fn check_prime(p: u64, s: &Subgroup) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !s.is_p_group(p) {
        return Err(Error::NotAPGroup {
            order: s.order(),
            p,
        });
    }
    Ok(())
}

/// `F_S(S)`.
pub fn inner_fusion(s: &Subgroup, p: u64) -> Result<FusionSystem> {
    check_prime(p, s)?;
    let lattice = Arc::new(SubgroupLattice::new(&standalone(s))?);
    from_isomorphisms(lattice, p, &[], Backend::Generated { generators: 0 })
}

/// The transporter system `F_S(G)` with `Hom(Q, P) = {c_g|_Q : Q^g ≤ P}`.
pub fn transporter_fusion(g: &Arc<FiniteGroup>, s: &Subgroup, p: u64) -> Result<FusionSystem> {
    check_prime(p, s)?;
    if !Arc::ptr_eq(s.ambient(), g) || s.order() != g.p_part(p) {
        return Err(Error::NotSylow { p });
    }
    let sg = standalone(s);
    let lattice = Arc::new(SubgroupLattice::new(&sg)?);
    let embedding: Vec<ElementId> = sg.elements().iter().map(|x| g.id_of(x).unwrap()).collect();
    let mut to_s = vec![u32::MAX; g.order()];
    for (i, &e) in embedding.iter().enumerate() {
        to_s[e as usize] = i as u32;
    }
    let n = lattice.len();
    let mut class_of = vec![usize::MAX; n];
    let mut to_rep: Vec<Option<Perm>> = vec![None; n];
    let mut witness = vec![0u32; n];
    let mut classes = Vec::new();
    let mut aut_witness = Vec::new();
    let mut images = Vec::new();
    for rep in 0..n {
        if class_of[rep] != usize::MAX {
            continue;
        }
        let c = classes.len();
        class_of[rep] = c;
        to_rep[rep] = Some(Perm::identity(lattice.order(rep)));
        let r = lattice.subgroup(rep);
        let mut members = vec![rep];
        let mut auts: HashMap<Perm, ElementId> = HashMap::new();
        'sweep: for x in 0..g.order() as ElementId {
            images.clear();
            for &y in r.elements() {
                let z = to_s[g.conj(embedding[y as usize], x) as usize];
                if z == u32::MAX {
                    continue 'sweep;
                }
                images.push(z);
            }
            let q = lattice
                .id_of_elements(images.iter().copied())
                .expect("conjugate of a subgroup");
            let qs = lattice.subgroup(q);
            let map = Perm::from_images_unchecked(
                images
                    .iter()
                    .map(|&z| qs.position(z).unwrap() as u32)
                    .collect(),
            );
            if q == rep {
                auts.entry(map).or_insert(x);
            } else if class_of[q] == usize::MAX {
                class_of[q] = c;
                to_rep[q] = Some(map.inverse());
                witness[q] = x;
                members.push(q);
            }
        }
        members.sort_unstable();
        let mut elements: Vec<Perm> = auts.keys().cloned().collect();
        elements.sort_unstable();
        let mut builder = GroupBuilder::new(lattice.order(rep));
        for e in &elements {
            builder.add(e.clone())?;
        }
        let aut = Arc::new(builder.finish());
        debug_assert_eq!(aut.order(), elements.len());
        aut_witness.push(aut.elements().iter().map(|a| auts[a]).collect());
        classes.push(FusionClass { rep, members, aut });
    }
    let to_rep = to_rep.into_iter().map(Option::unwrap).collect();
    let backend = Backend::Transporter {
        group: g.clone(),
        embedding,
        transport_witness: witness,
        aut_witness,
    };
    Ok(FusionSystem::from_parts(
        lattice, p, classes, class_of, to_rep, backend,
    ))
}

/// `Hom_G(Q, P)` computed directly by sweeping `G`, independent of the
/// groupoid representation. `q` and `p` index the lattice of `f`.
pub fn transporter_hom_set(
    f: &FusionSystem,
    q: SubgroupId,
    target: SubgroupId,
) -> Result<Vec<FusionMorphism>> {
    let Backend::Transporter {
        group, embedding, ..
    } = f.backend()
    else {
        return Err(Error::InvalidParameter("not a transporter system".into()));
    };
    let qs = f.subgroup(q);
    let ps = f.subgroup(target);
    let mut to_s: HashMap<ElementId, ElementId> = HashMap::new();
    for (i, &e) in embedding.iter().enumerate() {
        to_s.insert(e, i as ElementId);
    }
    let mut seen: HashMap<Vec<ElementId>, Perm> = HashMap::new();
    'sweep: for x in 0..group.order() as ElementId {
        let mut images = Vec::with_capacity(qs.order());
        for &y in qs.elements() {
            match to_s.get(&group.conj(embedding[y as usize], x)) {
                Some(&z) if ps.contains(z) => images.push(z),
                _ => continue 'sweep,
            }
        }
        seen.entry(images)
            .or_insert_with(|| group.element(x).clone());
    }
    let mut out: Vec<FusionMorphism> = seen
        .into_iter()
        .map(|(images, w)| FusionMorphism::new(q, target, images, Provenance::Conjugation(w)))
        .collect();
    out.sort();
    Ok(out)
}

/// The smallest fusion system over `S` containing `gens`. Each generator must
/// be an injective homomorphism between subgroups of `S`.
pub fn generated_fusion(s: &Subgroup, p: u64, gens: &[GroupHom]) -> Result<FusionSystem> {
    check_prime(p, s)?;
    let sg = standalone(s);
    let lattice = Arc::new(SubgroupLattice::new(&sg)?);
    let isos = gens
        .iter()
        .map(|h| hom_to_iso(&lattice, h))
        .collect::<Result<Vec<_>>>()?;
    from_isomorphisms(
        lattice,
        p,
        &isos,
        Backend::Generated {
            generators: gens.len(),
        },
    )
}

/// Factors an injective homomorphism as an isomorphism onto its image.
pub(crate) fn hom_to_iso(lattice: &SubgroupLattice, h: &GroupHom) -> Result<Iso> {
    if !h.is_injective() {
        return Err(Error::NotInjective);
    }
    let sg = lattice.group();
    let to_local = |sub: &Subgroup, x: ElementId| -> Result<ElementId> {
        if Arc::ptr_eq(sub.ambient(), sg) {
            Ok(x)
        } else {
            sg.id_of(sub.ambient().element(x))
                .ok_or(Error::NotASubgroup)
        }
    };
    let dom = h
        .domain()
        .elements()
        .iter()
        .map(|&x| to_local(h.domain(), x))
        .collect::<Result<Vec<_>>>()?;
    let img = h
        .images()
        .iter()
        .map(|&y| to_local(h.codomain(), y))
        .collect::<Result<Vec<_>>>()?;
    let from = lattice
        .id_of_elements(dom.iter().copied())
        .ok_or(Error::NotASubgroup)?;
    let to = lattice
        .id_of_elements(img.iter().copied())
        .ok_or(Error::NotASubgroup)?;
    let fs = lattice.subgroup(from);
    let ts = lattice.subgroup(to);
    let mut map = vec![0u32; fs.order()];
    for (x, y) in dom.iter().zip(&img) {
        map[fs.position(*x).unwrap()] = ts.position(*y).unwrap() as u32;
    }
    Ok(Iso {
        from,
        to,
        map: Perm::from_images(map)?,
    })
}
