//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see
//! the lines; the test fails if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use fusionkit::alperin::{alperin_decompose, verify_decomposition};
use fusionkit::classifier::{fcr_objects, is_radical, is_saturated};
use fusionkit::constructions::{
    build_rv_certified, fusion_isomorphic, product_with_factors, quotient_fusion, RvDescriptor,
    RvName,
};
use fusionkit::fusion::{generated_fusion, transporter_fusion, FusionSystem};
use fusionkit::job::{build_system, inverted_extraspecial, witness_suite, SystemSpec};
use fusionkit::named::{self, direct_product};
use fusionkit::{sylow_p, FiniteGroup, GroupHom, Perm, Subgroup};

const BUDGET_SATURATION: Duration = Duration::from_secs(30);
const BUDGET_CLASSIFIER: Duration = Duration::from_secs(30);
const BUDGET_ALPERIN: Duration = Duration::from_secs(120);
const BUDGET_PRODUCTS: Duration = Duration::from_secs(120);
const BUDGET_WITNESS: Duration = Duration::from_secs(120);
const BUDGET_RV: Duration = Duration::from_secs(600);

type Criterion = (usize, &'static str, fn() -> Outcome, Duration);

struct Outcome {
    passed: bool,
    report: Value,
}

fn transporter(g: &Arc<FiniteGroup>, p: u64) -> FusionSystem {
    let s = sylow_p(&g.whole(), p).unwrap();
    transporter_fusion(g, &s, p).unwrap()
}

fn saturated_suite() -> Vec<(&'static str, FusionSystem)> {
    let a4_s3 = direct_product(
        &named::alternating(4).unwrap(),
        &named::symmetric(3).unwrap(),
    )
    .unwrap();
    vec![
        ("S3 at 3", transporter(&named::symmetric(3).unwrap(), 3)),
        ("S4 at 2", transporter(&named::symmetric(4).unwrap(), 2)),
        ("A4 at 2", transporter(&named::alternating(4).unwrap(), 2)),
        (
            "SL2(3) at 2",
            transporter(&named::linear_2(3, true).unwrap(), 2),
        ),
        ("A4xS3 at 2", transporter(&a4_s3, 2)),
        (
            "3^(1+2):2 at 3",
            transporter(&inverted_extraspecial(3).unwrap(), 3),
        ),
    ]
}

fn swap_system() -> FusionSystem {
    let spec: SystemSpec = serde_json::from_value(json!({
        "group": {"type": "permutation", "degree": 4, "generators": [[1, 0, 2, 3], [0, 1, 3, 2]]},
        "sylow": 2,
        "fusion": {"kind": "generated", "generators": [{"domain_gens": [[1, 0, 2, 3]], "images": [[0, 1, 3, 2]]}]}
    }))
    .unwrap();
    build_system(&spec).unwrap()
}

fn criterion_1() -> Outcome {
    let mut rows = Vec::new();
    let mut passed = true;
    for (name, f) in saturated_suite() {
        let v = is_saturated(&f).verdict;
        passed &= v;
        rows.push(json!({"system": name, "saturated": v}));
    }
    let swap = is_saturated(&swap_system()).verdict;
    passed &= !swap;
    rows.push(json!({"system": "V4 with involutory swap", "saturated": swap}));
    Outcome {
        passed,
        report: json!({"criterion": 1, "rows": rows}),
    }
}

fn as_set(f: &FusionSystem, q: usize) -> BTreeSet<common::P4> {
    f.subgroup(q)
        .elements()
        .iter()
        .map(|&x| {
            let im = f.group().element(x).images();
            [im[0] as u8, im[1] as u8, im[2] as u8, im[3] as u8]
        })
        .collect()
}

fn criterion_2() -> Outcome {
    let g = named::symmetric(4).unwrap();
    let gens: Vec<u32> = [[1u32, 2, 3, 0], [2, 1, 0, 3]]
        .iter()
        .map(|p| g.id_of(&Perm::from_images(p.to_vec()).unwrap()).unwrap())
        .collect();
    let s = Subgroup::generated(&g, &gens);
    let f = transporter_fusion(&g, &s, 2).unwrap();
    let ours: BTreeSet<BTreeSet<common::P4>> =
        fcr_objects(&f).into_iter().map(|q| as_set(&f, q)).collect();
    let oracle: BTreeSet<BTreeSet<common::P4>> = common::fcr().into_iter().collect();
    let normal_four: BTreeSet<common::P4> =
        [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]].into();
    let v1 = (0..f.lattice().len())
        .find(|&q| as_set(&f, q) == normal_four)
        .unwrap();
    let c4 = (0..f.lattice().len())
        .find(|&q| {
            f.lattice().order(q) == 4
                && f.group().element(f.lattice().generators(q)[0]).order() == 4
        })
        .unwrap();
    let aut_v1 = f.aut_f_order(v1);
    let c4_radical = is_radical(&f, c4);
    let passed = ours == oracle && aut_v1 == 6 && !c4_radical;
    let orders: Vec<usize> = ours.iter().map(BTreeSet::len).collect();
    Outcome {
        passed,
        report: json!({
            "criterion": 2,
            "fcr_orders": orders,
            "matches_oracle": ours == oracle,
            "aut_v1": aut_v1,
            "c4_radical": c4_radical,
        }),
    }
}

fn criterion_3() -> Outcome {
    let mut rows = Vec::new();
    let mut passed = true;
    for (name, f) in saturated_suite() {
        let mut checked = 0usize;
        let mut decomposed = true;
        for q in 0..f.lattice().len() {
            for &q2 in f.f_conjugates(q) {
                for phi in f.isomorphisms(q, q2) {
                    checked += 1;
                    decomposed &= alperin_decompose(&f, &phi)
                        .is_ok_and(|d| verify_decomposition(&f, &d, &phi));
                }
            }
        }
        let seeds: Vec<GroupHom> = fcr_objects(&f)
            .into_iter()
            .flat_map(|q| f.aut_f(q))
            .map(|m| m.to_hom(f.lattice()))
            .collect();
        let regenerated = generated_fusion(&f.group().whole(), f.prime(), &seeds)
            .unwrap()
            .same_hom_tables(&f);
        passed &= decomposed && regenerated;
        rows.push(json!({
            "system": name,
            "isomorphisms": checked,
            "all_decompose": decomposed,
            "regenerates": regenerated,
        }));
    }
    Outcome {
        passed,
        report: json!({"criterion": 3, "rows": rows}),
    }
}

/// `F_{S1×S2}(G1×G2)` with `S1×S2` assembled from the factors' own Sylows.
fn direct_transporter(g1: &Arc<FiniteGroup>, g2: &Arc<FiniteGroup>, p: u64) -> FusionSystem {
    let g = direct_product(g1, g2).unwrap();
    let (s1, s2) = (
        sylow_p(&g1.whole(), p).unwrap(),
        sylow_p(&g2.whole(), p).unwrap(),
    );
    let (e1, e2) = (Perm::identity(g1.degree()), Perm::identity(g2.degree()));
    let mut gens: Vec<u32> = s1
        .elements()
        .iter()
        .map(|&x| g.id_of(&g1.element(x).direct_sum(&e2)).unwrap())
        .collect();
    gens.extend(
        s2.elements()
            .iter()
            .map(|&y| g.id_of(&e1.direct_sum(g2.element(y))).unwrap()),
    );
    let s = Subgroup::generated(&g, &gens);
    transporter_fusion(&g, &s, p).unwrap()
}

fn criterion_4() -> Outcome {
    let s3 = named::symmetric(3).unwrap();
    let pairs = [
        ("S3xS3 at 3", s3.clone(), s3.clone(), 3u64),
        ("A4xS3 at 2", named::alternating(4).unwrap(), s3.clone(), 2),
        ("S4xS3 at 2", named::symmetric(4).unwrap(), s3.clone(), 2),
    ];
    let mut rows = Vec::new();
    let mut passed = true;
    for (name, g1, g2, p) in pairs {
        let (f1, f2) = (transporter(&g1, p), transporter(&g2, p));
        let prod = product_with_factors(&f1, &f2).unwrap();
        let equal = prod
            .fusion
            .same_hom_tables(&direct_transporter(&g1, &g2, p));
        let (q1, _) = quotient_fusion(&prod.fusion, prod.first).unwrap();
        let (q2, _) = quotient_fusion(&prod.fusion, prod.second).unwrap();
        let by_first = fusion_isomorphic(&q1, &f2).unwrap().is_some();
        let by_second = fusion_isomorphic(&q2, &f1).unwrap().is_some();
        passed &= equal && by_first && by_second;
        rows.push(json!({
            "pair": name,
            "product_is_transporter": equal,
            "quotient_by_first_is_second": by_first,
            "quotient_by_second_is_first": by_second,
        }));
    }
    Outcome {
        passed,
        report: json!({"criterion": 4, "rows": rows}),
    }
}

fn criterion_5() -> Outcome {
    let cases = witness_suite(3).unwrap();
    let passed = cases.len() == 4 && cases.iter().all(|(_, r)| r.passed());
    let rows: Vec<Value> = cases
        .iter()
        .map(|(n, r)| json!({"case": n, "report": r}))
        .collect();
    Outcome {
        passed,
        report: json!({"criterion": 5, "rows": rows}),
    }
}

fn criterion_6() -> Outcome {
    let expected: [(RvName, usize, Vec<usize>); 3] = [
        (RvName::Rv1, 72, vec![2, 6]),
        (RvName::Rv2, 48, vec![4, 4]),
        (RvName::Rv3, 96, vec![8]),
    ];
    let mut rows = Vec::new();
    let mut passed = true;
    for (name, out, partition) in expected {
        let d = RvDescriptor::new(name);
        let row = match build_rv_certified(&d) {
            Ok(rv) => {
                let f = &rv.fusion;
                let saturated = is_saturated(f).verdict;
                let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
                for &q in &rv.essential {
                    sizes.insert(f.class_index(q), f.f_conjugates(q).len());
                }
                let mut parts: Vec<usize> = sizes.into_values().collect();
                parts.sort_unstable();
                let auts: BTreeSet<usize> =
                    rv.essential.iter().map(|&q| f.aut_f_order(q)).collect();
                let ok = saturated
                    && rv.out_order == out
                    && parts == partition
                    && auts.iter().all(|a| [672, 2016].contains(a))
                    && rv.profile == d.profile;
                passed &= ok;
                json!({
                    "system": name,
                    "saturated": saturated,
                    "out_order": rv.out_order,
                    "class_sizes": parts,
                    "aut_orders": auts,
                    "profile": rv.profile,
                })
            }
            Err(e) => {
                passed = false;
                json!({"system": name, "error": e.to_string()})
            }
        };
        rows.push(row);
    }
    Outcome {
        passed,
        report: json!({"criterion": 6, "rows": rows}),
    }
}

fn timed(f: fn() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let o = f();
    (o, start.elapsed())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 6] = [
        (1, "saturation suite", criterion_1, BUDGET_SATURATION),
        (2, "classifier ground truth", criterion_2, BUDGET_CLASSIFIER),
        (3, "Alperin regeneration", criterion_3, BUDGET_ALPERIN),
        (4, "product and quotient laws", criterion_4, BUDGET_PRODUCTS),
        (5, "main theorem skeleton", criterion_5, BUDGET_WITNESS),
        (6, "RV table", criterion_6, BUDGET_RV),
    ];
    let mut all = true;
    let mut reports = Vec::new();
    for (n, label, run, budget) in criteria {
        let (o, t) = timed(run);
        let ok = o.passed && t < budget;
        all &= ok;
        println!(
            "criterion {n}: {} ({label}; {:.2}s / budget {}s)",
            if ok { "PASS" } else { "FAIL" },
            t.as_secs_f64(),
            budget.as_secs()
        );
        if !ok || std::env::var_os("ACCEPTANCE_VERBOSE").is_some() {
            println!("  report: {}", o.report);
        }
        reports.push((run, serde_json::to_string(&o.report).unwrap()));
    }
    let mut identical = true;
    for (run, first) in &reports {
        identical &= serde_json::to_string(&run().report).unwrap() == *first;
    }
    all &= identical;
    println!(
        "criterion 7: {} (determinism; {} reports compared byte for byte)",
        if identical { "PASS" } else { "FAIL" },
        reports.len()
    );
    assert!(all, "acceptance criteria failed");
}
