use std::sync::Arc;

use fusionkit::constructions::{build_rv, main_theorem_witness, RvDescriptor, RvName};
use fusionkit::fusion::{inner_fusion, transporter_fusion, FusionSystem};
use fusionkit::named::{cyclic, extraspecial_plus, semidirect, symmetric};
use fusionkit::{sylow_p, FiniteGroup};

fn transporter(g: &Arc<FiniteGroup>, p: u64) -> FusionSystem {
    let s = sylow_p(&g.whole(), p).unwrap();
    transporter_fusion(g, &s, p).unwrap()
}

/// `p^{1+2}_+ ⋊ C2` with the involution inverting both generators.
fn inverted_extraspecial(p: u64) -> FusionSystem {
    let e = extraspecial_plus(p).unwrap();
    let action = vec![e
        .generators()
        .iter()
        .map(|g| g.inverse().images().to_vec())
        .collect()];
    let g = semidirect(&e, &cyclic(2).unwrap(), &action).unwrap();
    transporter(&g, p)
}

#[test]
fn p3_inner_times_s3() {
    let p = extraspecial_plus(3).unwrap();
    let f1 = inner_fusion(&p.whole(), 3).unwrap();
    let f2 = transporter(&symmetric(3).unwrap(), 3);
    let r = main_theorem_witness(&f1, &f2).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn p3_inverted_times_c3() {
    let f1 = inverted_extraspecial(3);
    assert_eq!(f1.aut_f_order(f1.top()), 18);
    let f2 = inner_fusion(&cyclic(3).unwrap().whole(), 3).unwrap();
    let r = main_theorem_witness(&f1, &f2).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
#[ignore = "order 2401 product; run with --ignored"]
fn p7_rv3_times_c7_by_c3() {
    let f1 = build_rv(&RvDescriptor::new(RvName::Rv3)).unwrap();
    let c7 = cyclic(7).unwrap();
    let square = c7.pow(c7.generator_ids()[0], 2);
    let action = vec![vec![c7.element(square).images().to_vec()]];
    let g = semidirect(&c7, &cyclic(3).unwrap(), &action).unwrap();
    let f2 = transporter(&g, 7);
    assert_eq!(f2.aut_f_order(f2.top()), 3);
    let r = main_theorem_witness(&f1, &f2).unwrap();
    assert!(r.passed(), "{r:?}");
}
