use super::*;
use crate::group::{subgroup_generated, sylow_p};
use crate::named;

fn cyc(n: usize, cycles: &[&[u32]]) -> Perm {
    Perm::from_cycles(n, cycles).unwrap()
}

fn s4_d8() -> (Arc<FiniteGroup>, FusionSystem) {
    let g = named::symmetric(4).unwrap();
    let s = sylow_p(&g.whole(), 2).unwrap();
    let f = transporter_fusion(&g, &s, 2).unwrap();
    (g, f)
}

#[test]
fn normal_klein_four_in_s4() {
    let (g, f) = s4_d8();
    let v1 = subgroup_generated(
        &g,
        &[cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])],
    )
    .unwrap();
    let v1 = f.object(&v1).unwrap();
    assert_eq!(f.aut_f_order(v1), 6);
    assert_eq!(f.hom_set(v1, v1).len(), 6);
    assert_eq!(f.aut_s_order(v1), 2);
    f.audit().unwrap();
}

#[test]
fn transporter_matches_direct_sweep() {
    let (_, f) = s4_d8();
    for q in 0..f.lattice().len() {
        for p in 0..f.lattice().len() {
            assert_eq!(
                f.hom_set(q, p),
                transporter_hom_set(&f, q, p).unwrap(),
                "{q} -> {p}"
            );
        }
    }
}

#[test]
fn transporter_witnesses_realize_maps() {
    let (g, f) = s4_d8();
    let Backend::Transporter { embedding, .. } = f.backend() else {
        unreachable!()
    };
    let top = f.top();
    for q in 0..f.lattice().len() {
        for m in f.hom_set(q, top) {
            let Provenance::Conjugation(w) = m.provenance() else {
                panic!()
            };
            let w = g.id_of(w).unwrap();
            for (&x, &y) in f.subgroup(q).elements().iter().zip(m.images()) {
                assert_eq!(g.conj(embedding[x as usize], w), embedding[y as usize]);
            }
        }
    }
}

#[test]
fn trivial_subgroup_has_one_map() {
    let (_, f) = s4_d8();
    for p in 0..f.lattice().len() {
        assert_eq!(f.hom_set(0, p).len(), 1);
    }
    assert_eq!(f.f_class_of_element(0), vec![0]);
}

#[test]
fn s3_inverts_its_three_cycle() {
    let g = named::symmetric(3).unwrap();
    let s = sylow_p(&g.whole(), 3).unwrap();
    let f = transporter_fusion(&g, &s, 3).unwrap();
    assert_eq!(f.aut_f_order(f.top()), 2);

    let c3 = named::cyclic(3).unwrap();
    let x = c3.generator_ids()[0];
    let inv = GroupHom::from_generator_images(c3.whole(), c3.whole(), &[x], &[c3.inv(x)]).unwrap();
    let gen = generated_fusion(&c3.whole(), 3, &[inv]).unwrap();
    assert_eq!(gen.aut_f_order(gen.top()), 2);
    // the two systems live on different realizations of C3
    assert_eq!(gen.digest().morphisms, f.digest().morphisms);
}

#[test]
fn klein_four_with_order_three_automorphism_is_a4() {
    let a4 = named::alternating(4).unwrap();
    let s = sylow_p(&a4.whole(), 2).unwrap();
    let f = transporter_fusion(&a4, &s, 2).unwrap();
    let v = s.to_group();
    let gens = v.whole().generating_set();
    // x ↦ y ↦ xy
    let alpha = GroupHom::from_generator_images(
        v.whole(),
        v.whole(),
        &gens,
        &[gens[1], v.mul(gens[0], gens[1])],
    )
    .unwrap();
    let gen = generated_fusion(&v.whole(), 2, &[alpha]).unwrap();
    assert_eq!(gen.aut_f_order(gen.top()), 3);
    assert_eq!(gen.digest(), f.digest());
    assert!(gen.same_hom_tables(&f));
}

#[test]
fn empty_generators_give_inner_fusion() {
    let d8 = named::dihedral(8).unwrap();
    let gen = generated_fusion(&d8.whole(), 2, &[]).unwrap();
    let tr = transporter_fusion(&d8, &d8.whole(), 2).unwrap();
    assert!(gen.same_hom_tables(&tr));
    for q in 0..gen.lattice().len() {
        assert_eq!(gen.aut_f_order(q), gen.aut_s_order(q));
    }
}

#[test]
fn double_transpositions_fuse_in_s4() {
    let (g, f) = s4_d8();
    let ids: Vec<SubgroupId> = [
        cyc(4, &[&[0, 1], &[2, 3]]),
        cyc(4, &[&[0, 2], &[1, 3]]),
        cyc(4, &[&[0, 3], &[1, 2]]),
    ]
    .into_iter()
    .map(|x| f.object(&subgroup_generated(&g, &[x]).unwrap()).unwrap())
    .collect();
    assert!(f.are_conjugate(ids[0], ids[1]) && f.are_conjugate(ids[1], ids[2]));
}

#[test]
fn not_sylow_rejected() {
    let g = named::symmetric(4).unwrap();
    let v = subgroup_generated(
        &g,
        &[cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])],
    )
    .unwrap();
    assert!(matches!(
        transporter_fusion(&g, &v, 2),
        Err(Error::NotSylow { .. })
    ));
}

#[test]
fn generator_json() {
    let c3 = named::cyclic(3).unwrap();
    let specs: Vec<GeneratorSpec> =
        serde_json::from_str(r#"[{"domain_gens":[[1,2,0]],"images":[[2,0,1]]}]"#).unwrap();
    let homs = parse_generators(&c3, &specs).unwrap();
    let f = generated_fusion(&c3.whole(), 3, &homs).unwrap();
    assert_eq!(f.aut_f_order(f.top()), 2);
    let bad: Vec<GeneratorSpec> =
        serde_json::from_str(r#"[{"domain_gens":[[1,2,0]],"images":[[0,1,2]]}]"#).unwrap();
    assert!(parse_generators(&c3, &bad).is_err());
}
