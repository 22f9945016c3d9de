use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::{assemble, standalone, Backend, FusionSystem};
use crate::group::{ElementId, Subgroup};
use crate::hom::GroupHom;
use crate::lattice::{SubgroupId, SubgroupLattice};
use crate::perm::Perm;

/// A set `K` of automorphisms of `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AutSet {
    Full,
    Trivial,
    /// Each entry lists the images of `Q`'s elements, in `Q`'s element order.
    Explicit(Vec<Vec<ElementId>>),
}

enum Membership {
    Full,
    Trivial,
    Set(HashSet<Perm>),
}

impl Membership {
    fn contains(&self, perm: &Perm) -> bool {
        match self {
            Membership::Full => true,
            Membership::Trivial => perm.is_identity(),
            Membership::Set(s) => s.contains(perm),
        }
    }
}

fn membership(f: &FusionSystem, q: SubgroupId, k: &AutSet) -> Result<Membership> {
    let qs = f.subgroup(q);
    match k {
        AutSet::Full => Ok(Membership::Full),
        AutSet::Trivial => Ok(Membership::Trivial),
        AutSet::Explicit(list) => {
            let mut set = HashSet::new();
            for images in list {
                let hom = GroupHom::new(qs.clone(), qs.clone(), images.clone())?;
                let pos = hom.position_images().ok_or(Error::NotInjective)?;
                set.insert(Perm::from_images(pos).map_err(|_| Error::NotInjective)?);
            }
            if set.is_empty() {
                return Err(Error::NotClosed);
            }
            for a in &set {
                for b in &set {
                    if !set.contains(&a.then(b)) {
                        return Err(Error::NotClosed);
                    }
                }
            }
            Ok(Membership::Set(set))
        }
    }
}

/// `N_F^K(Q)` over `N_S^K(Q) = {g ∈ N_S(Q) : c_g|_Q ∈ K}`. A morphism
/// `φ: P → R` belongs to it when some `φ̄ ∈ Hom_F(PQ, RQ)` extends `φ` with
/// `φ̄(Q) = Q` and `φ̄|_Q ∈ K`.
pub fn normalizer_subsystem(f: &FusionSystem, q: SubgroupId, k: &AutSet) -> Result<FusionSystem> {
    let k = membership(f, q, k)?;
    let lattice = f.lattice();
    let s = f.group();
    let qs = f.subgroup(q);
    let norm = lattice.subgroup(lattice.normalizer(q));
    let n_elems: Vec<ElementId> = norm
        .elements()
        .iter()
        .copied()
        .filter(|&g| k.contains(&f.conjugation_perm(q, g)))
        .collect();
    let n_sub = Subgroup::generated(s, &n_elems);
    if n_sub.order() != n_elems.len() {
        return Err(Error::NotClosed);
    }
    let ng = standalone(&n_sub);
    let n_to_s: Vec<ElementId> = ng.elements().iter().map(|x| s.id_of(x).unwrap()).collect();
    let mut s_to_n = vec![u32::MAX; s.order()];
    for (i, &x) in n_to_s.iter().enumerate() {
        s_to_n[x as usize] = i as u32;
    }
    let nl = Arc::new(SubgroupLattice::new(&ng)?);
    let q_gens = lattice.generators(q).to_vec();
    let nl2 = nl.clone();
    assemble(
        nl,
        f.prime(),
        Backend::Derived("normalizer".into()),
        move |pn, out| {
            let p = lattice
                .id_of_elements(
                    nl2.subgroup(pn)
                        .elements()
                        .iter()
                        .map(|&x| n_to_s[x as usize]),
                )
                .expect("subgroup of N");
            let x = lattice.product(p, q);
            let xs = f.subgroup(x);
            let ps = f.subgroup(p);
            let mut seen: HashSet<(SubgroupId, Perm)> = HashSet::new();
            for &x2 in f.f_conjugates(x) {
                if !lattice.contains(x2, q) {
                    continue;
                }
                let x2s = f.subgroup(x2);
                'iso: for perm in f.iso_perms(x, x2) {
                    let psi = |y: ElementId| {
                        x2s.elements()[perm.apply(xs.position(y).unwrap() as u32) as usize]
                    };
                    if !q_gens.iter().all(|&g| qs.contains(psi(g))) {
                        continue;
                    }
                    let on_q = Perm::from_images_unchecked(
                        qs.elements()
                            .iter()
                            .map(|&y| qs.position(psi(y)).unwrap() as u32)
                            .collect(),
                    );
                    if !k.contains(&on_q) {
                        continue;
                    }
                    let mut images = Vec::with_capacity(ps.order());
                    for &y in ps.elements() {
                        let z = s_to_n[psi(y) as usize];
                        if z == u32::MAX {
                            continue 'iso;
                        }
                        images.push(z);
                    }
                    let target = nl2
                        .id_of_elements(images.iter().copied())
                        .expect("image of a subgroup");
                    let ts = nl2.subgroup(target);
                    let src = nl2.subgroup(pn);
                    // align to the new lattice's element order
                    let mut map = vec![0u32; src.order()];
                    for (&y, &z) in ps.elements().iter().zip(&images) {
                        map[src.position(s_to_n[y as usize]).unwrap()] =
                            ts.position(z).unwrap() as u32;
                    }
                    let map = Perm::from_images_unchecked(map);
                    if target == pn && map.is_identity() {
                        continue;
                    }
                    if seen.insert((target, map.clone())) {
                        out.push((target, map));
                    }
                }
            }
            Ok(())
        },
    )
}

/// `C_F(Q) = N_F^{1}(Q)`.
pub fn centralizer_subsystem(f: &FusionSystem, q: SubgroupId) -> Result<FusionSystem> {
    normalizer_subsystem(f, q, &AutSet::Trivial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{inner_fusion, transporter_fusion};
    use crate::group::{center, sylow_p};
    use crate::named;

    fn s4() -> FusionSystem {
        let g = named::symmetric(4).unwrap();
        let s = sylow_p(&g.whole(), 2).unwrap();
        transporter_fusion(&g, &s, 2).unwrap()
    }

    #[test]
    fn full_normalizer_of_top_contains_inner() {
        let f = s4();
        let n = normalizer_subsystem(&f, f.top(), &AutSet::Full).unwrap();
        assert_eq!(n.group().order(), 8);
        let inner = inner_fusion(&n.group().whole(), 2).unwrap();
        for q in 0..inner.lattice().len() {
            for m in inner.aut_f(q) {
                assert!(n.contains_morphism(&m));
            }
        }
        // the order-3 automorphisms of the Klein fours do not extend to S
        assert!(n.same_hom_tables(&inner));
    }

    #[test]
    fn centralizer_of_center_in_s4() {
        let f = s4();
        let z = f.object(&center(&f.group().whole())).unwrap();
        let c = centralizer_subsystem(&f, z).unwrap();
        assert_eq!(c.group().order(), 8);
        let l = f.lattice();
        let v1 = (0..l.len())
            .find(|&v| l.order(v) == 4 && f.aut_f_order(v) == 6)
            .unwrap();
        // only the automorphisms fixing the central involution survive
        assert_eq!(c.aut_f_order(v1), 2);
        for &x in c.subgroup(z).elements() {
            assert_eq!(c.f_class_of_element(x), vec![x]);
        }
    }

    #[test]
    fn explicit_set_must_be_closed() {
        let f = s4();
        let l = f.lattice();
        let v = (0..l.len())
            .find(|&v| l.order(v) == 4 && f.aut_f_order(v) == 6)
            .unwrap();
        let order3 = f
            .aut_f(v)
            .into_iter()
            .find(|m| {
                let (_, perm) = f.images_to_perm(m.images()).unwrap();
                perm.order() == 3
            })
            .unwrap();
        let k = AutSet::Explicit(vec![order3.images().to_vec()]);
        assert!(matches!(
            normalizer_subsystem(&f, v, &k),
            Err(Error::NotClosed)
        ));
    }
}
