mod common;

use std::collections::BTreeSet;

use fusionkit::classifier::{fcr_objects, is_centric, is_fully_normalised, is_radical};
use fusionkit::fusion::{transporter_fusion, FusionSystem};
use fusionkit::{FiniteGroup, Perm, Subgroup};

use common::P4;

fn library() -> FusionSystem {
    let g = fusionkit::named::symmetric(4).unwrap();
    let gens: Vec<u32> = [[1u32, 2, 3, 0], [2, 1, 0, 3]]
        .iter()
        .map(|p| g.id_of(&Perm::from_images(p.to_vec()).unwrap()).unwrap())
        .collect();
    let s = Subgroup::generated(&g, &gens);
    transporter_fusion(&g, &s, 2).unwrap()
}

fn as_set(g: &FiniteGroup, sub: &Subgroup) -> BTreeSet<P4> {
    sub.elements()
        .iter()
        .map(|&x| {
            let im = g.element(x).images();
            [im[0] as u8, im[1] as u8, im[2] as u8, im[3] as u8]
        })
        .collect()
}

fn lookup(f: &FusionSystem, set: &BTreeSet<P4>) -> usize {
    (0..f.lattice().len())
        .find(|&q| as_set(f.group(), f.subgroup(q)) == *set)
        .unwrap()
}

#[test]
fn lattice_matches() {
    let f = library();
    let s = common::d8();
    let ours: BTreeSet<BTreeSet<P4>> = (0..f.lattice().len())
        .map(|q| as_set(f.group(), f.subgroup(q)))
        .collect();
    let theirs: BTreeSet<BTreeSet<P4>> = common::subgroups(&s).into_iter().collect();
    assert_eq!(ours, theirs);
    assert_eq!(ours.len(), 10);
}

#[test]
fn hom_set_sizes_match() {
    let f = library();
    let s = common::d8();
    let subs = common::subgroups(&s);
    for q in &subs {
        for p in &subs {
            let expected = common::hom(q, p).len();
            assert_eq!(f.hom_set_size(lookup(&f, q), lookup(&f, p)), expected);
        }
    }
}

#[test]
fn hom_sets_match_elementwise() {
    let f = library();
    let g = f.group().clone();
    let s = common::d8();
    let subs = common::subgroups(&s);
    for q in &subs {
        let qi = lookup(&f, q);
        let ours: BTreeSet<Vec<(P4, P4)>> = f
            .hom_set(qi, f.top())
            .iter()
            .map(|m| {
                f.subgroup(qi)
                    .elements()
                    .iter()
                    .zip(m.images())
                    .map(|(&x, &y)| {
                        let a = g.element(x).images();
                        let b = g.element(y).images();
                        (
                            [a[0] as u8, a[1] as u8, a[2] as u8, a[3] as u8],
                            [b[0] as u8, b[1] as u8, b[2] as u8, b[3] as u8],
                        )
                    })
                    .collect()
            })
            .collect();
        let theirs: BTreeSet<Vec<(P4, P4)>> = common::hom(q, &s)
            .into_iter()
            .map(|m| m.into_iter().collect())
            .collect();
        assert_eq!(ours, theirs);
    }
}

#[test]
fn classifier_flags_match() {
    let f = library();
    let s = common::d8();
    for q in common::subgroups(&s) {
        let flags = common::flags(&s, &q);
        let qi = lookup(&f, &q);
        assert_eq!(is_centric(&f, qi), flags.centric, "centric {q:?}");
        assert_eq!(is_radical(&f, qi), flags.radical, "radical {q:?}");
        assert_eq!(
            is_fully_normalised(&f, qi),
            flags.fully_normalised,
            "fully normalised {q:?}"
        );
    }
}

#[test]
fn fcr_matches() {
    let f = library();
    let ours: BTreeSet<BTreeSet<P4>> = fcr_objects(&f)
        .iter()
        .map(|&q| as_set(f.group(), f.subgroup(q)))
        .collect();
    let theirs: BTreeSet<BTreeSet<P4>> = common::fcr().into_iter().collect();
    assert_eq!(ours, theirs);
    // D8 and the Klein four normal in S4
    assert_eq!(ours.len(), 2);
}
