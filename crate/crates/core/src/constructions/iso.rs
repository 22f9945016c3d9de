use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::fusion::FusionSystem;
use crate::group::ElementId;
use crate::hom::{for_each_isomorphism, GroupHom, ISOMORPHISM_BOUND};
use crate::perm::Perm;

fn profile(f: &FusionSystem) -> Vec<(usize, usize, usize)> {
    let mut v: Vec<(usize, usize, usize)> = f
        .classes()
        .iter()
        .map(|c| {
            (
                f.lattice().order(c.representative()),
                c.members().len(),
                c.automorphisms().order(),
            )
        })
        .collect();
    v.sort_unstable();
    v
}

fn element_class_sizes(f: &FusionSystem) -> Vec<usize> {
    let labels = f.element_classes();
    let mut count = vec![0usize; labels.len()];
    for &l in labels {
        count[l as usize] += 1;
    }
    labels.iter().map(|&l| count[l as usize]).collect()
}

/// A group isomorphism `S → S'` carrying `F` onto `F'`, if one exists.
///
/// Candidates preserve element orders and `F`-class sizes of elements. A
/// candidate `σ` is accepted when it conjugates every groupoid generator of
/// `F` into `F'`; as both systems then have the same class sizes and
/// automorphism orders, `σ F σ^-1 = F'`.
pub fn fusion_isomorphic(f: &FusionSystem, g: &FusionSystem) -> Result<Option<GroupHom>> {
    let (s, t) = (f.group(), g.group());
    for order in [s.order(), t.order()] {
        if order > ISOMORPHISM_BOUND {
            return Err(Error::SizeBoundExceeded {
                size: order,
                bound: ISOMORPHISM_BOUND,
            });
        }
    }
    if s.order() != t.order() || f.lattice().len() != g.lattice().len() || profile(f) != profile(g)
    {
        return Ok(None);
    }
    let (sizes_f, sizes_g) = (element_class_sizes(f), element_class_sizes(g));
    let gens = f.groupoid_generators();
    let (lf, lg) = (f.lattice(), g.lattice());
    let mut found = None;
    for_each_isomorphism(
        &s.whole(),
        &t.whole(),
        |x, y| sizes_f[x as usize] == sizes_g[y as usize],
        |sigma| {
            let carry = |q: usize| {
                lg.id_of_elements(lf.subgroup(q).elements().iter().map(|&x| sigma[x as usize]))
                    .expect("image of a subgroup")
            };
            let ok = f.classes().iter().all(|c| {
                let r = c.representative();
                let r2 = carry(r);
                g.class_of(r2).members().len() == c.members().len()
                    && g.aut_f_order(r2) == c.automorphisms().order()
            }) && gens.iter().all(|iso| {
                let (from, to) = (carry(iso.from), carry(iso.to));
                let (fs, ts) = (lf.subgroup(iso.from), lf.subgroup(iso.to));
                let (fs2, ts2) = (lg.subgroup(from), lg.subgroup(to));
                // σ φ σ^-1 on positions of σ(from)
                let mut map = vec![0u32; fs.order()];
                for &x in fs.elements() {
                    let y: ElementId =
                        ts.elements()[iso.map.apply(fs.position(x).unwrap() as u32) as usize];
                    map[fs2.position(sigma[x as usize]).unwrap()] =
                        ts2.position(sigma[y as usize]).unwrap() as u32;
                }
                Perm::from_images(map)
                    .map(|perm| g.contains_iso(from, to, &perm))
                    .unwrap_or(false)
            });
            if ok {
                found = Some(sigma.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        },
    )?;
    Ok(found.map(|m| GroupHom::new_unchecked(s.whole(), t.whole(), m)))
}
