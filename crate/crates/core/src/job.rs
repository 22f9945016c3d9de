//! JSON jobs and reports.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::alperin::{alperin_decompose, first_violation};
use crate::classifier::{classify_all, fcr_objects, is_saturated, out_f};
use crate::constructions::{
    build_rv_certified, main_theorem_witness, normalizer_subsystem, product_fusion,
    quotient_fusion, AutSet, RvDescriptor, RvName,
};
use crate::error::{Error, Result};
use crate::fusion::{
    generated_fusion, inner_fusion, parse_generators, transporter_fusion, ElementRef,
    FusionMorphism, FusionSystem, GeneratorSpec, Provenance,
};
use crate::group::{sylow_p, FiniteGroup, Subgroup};
use crate::hom::extend_to_hom;
use crate::lattice::SubgroupId;
use crate::named::{build_group, cyclic, dihedral, extraspecial_plus, semidirect, GroupDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Build,
    Saturation,
    Classify,
    Fcr,
    Decompose,
    Product,
    Quotient,
    Normalizer,
    Rv,
    Witness,
}

/// How the fusion system over `S` is obtained from the declared group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FusionSpec {
    /// `F_S(G)` with `S` a Sylow subgroup of the declared group `G`.
    #[default]
    Transporter,
    /// `F_S(S)`; the declared group is `S`.
    Inner,
    /// Closure of explicit maps between subgroups of the declared group `S`.
    Generated { generators: Vec<GeneratorSpec> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemSpec {
    pub group: GroupDescriptor,
    pub sylow: u64,
    #[serde(default)]
    pub fusion: FusionSpec,
}

/// `K` for the normalizer job: `"full"`, `"trivial"`, or a list of
/// automorphisms of `Q`, each given on generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KSpec {
    Named(String),
    Explicit(Vec<GeneratorSpec>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<SystemSpec>,
    /// Generators of a subgroup of `S`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<Vec<ElementRef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<Vec<ElementRef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<KSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rv: Option<RvName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_group_order: Option<usize>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            system: None,
            second: None,
            kernel: None,
            at: None,
            k: None,
            morphism: None,
            rv: None,
            p: None,
            max_group_order: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing_ms: u64,
}

impl Report {
    /// 0 on success or a true verdict, 1 on a false verdict, 2 on error.
    pub fn exit_code(&self) -> i32 {
        match (&self.error, self.verdict) {
            (Some(_), _) => 2,
            (None, Some(false)) => 1,
            _ => 0,
        }
    }

    /// The report without its timing field, for reproducibility checks.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().unwrap().remove("timing_ms");
        serde_json::to_string(&v).unwrap()
    }
}

/// Parses and validates a group descriptor.
pub fn parse_group_spec(text: &str) -> Result<GroupDescriptor> {
    let desc: GroupDescriptor = serde_json::from_str(text)?;
    build_group(&desc)?;
    Ok(desc)
}

pub fn build_system(spec: &SystemSpec) -> Result<FusionSystem> {
    let g = build_group(&spec.group)?;
    let p = spec.sylow;
    match &spec.fusion {
        FusionSpec::Transporter => {
            let s = sylow_p(&g.whole(), p)?;
            transporter_fusion(&g, &s, p)
        }
        FusionSpec::Inner => inner_fusion(&g.whole(), p),
        FusionSpec::Generated { generators } => {
            let gens = parse_generators(&g, generators)?;
            generated_fusion(&g.whole(), p, &gens)
        }
    }
}

/// Runs a job, capturing errors in the report.
pub fn run_job(spec: &JobSpec) -> Report {
    let start = Instant::now();
    let (verdict, result, error) = match dispatch(spec) {
        Ok((verdict, result)) => (verdict, result, None),
        Err(e) => (None, Value::Null, Some(e.to_string())),
    };
    Report {
        command: spec.command,
        verdict,
        result,
        error,
        timing_ms: start.elapsed().as_millis() as u64,
    }
}

fn need<'a, T>(v: &'a Option<T>, what: &str) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| Error::Malformed(format!("job needs `{what}`")))
}

fn subgroup_of(f: &FusionSystem, gens: &[ElementRef]) -> Result<SubgroupId> {
    let s = f.group();
    let ids = gens
        .iter()
        .map(|e| e.resolve(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(f.lattice().generated(&ids))
}

fn summary(f: &FusionSystem) -> Value {
    let classes: Vec<Value> = f
        .classes()
        .iter()
        .map(|c| {
            json!({
                "representative": f.lattice().describe(c.representative()),
                "order": f.lattice().order(c.representative()),
                "size": c.members().len(),
                "aut_order": c.automorphisms().order(),
            })
        })
        .collect();
    json!({
        "prime": f.prime(),
        "group_order": f.group().order(),
        "digest": f.digest(),
        "classes": classes,
    })
}

fn fcr_rows(f: &FusionSystem) -> Vec<Value> {
    fcr_objects(f)
        .into_iter()
        .map(|q| {
            json!({
                "object": f.lattice().describe(q),
                "order": f.lattice().order(q),
                "aut_order": f.aut_f_order(q),
                "out_order": out_f(f, q).order(),
            })
        })
        .collect()
}

fn dispatch(spec: &JobSpec) -> Result<(Option<bool>, Value)> {
    let system = || build_system(need(&spec.system, "system")?);
    match spec.command {
        Command::Build => Ok((None, summary(&system()?))),
        Command::Saturation => {
            let f = system()?;
            let r = is_saturated(&f);
            Ok((
                Some(r.verdict),
                json!({ "digest": f.digest(), "saturation": r }),
            ))
        }
        Command::Classify => {
            let f = system()?;
            Ok((
                None,
                json!({ "digest": f.digest(), "rows": classify_all(&f) }),
            ))
        }
        Command::Fcr => {
            let f = system()?;
            Ok((None, json!({ "digest": f.digest(), "fcr": fcr_rows(&f) })))
        }
        Command::Decompose => {
            let f = system()?;
            let m = need(&spec.morphism, "morphism")?;
            let phi = morphism_of(&f, m).map_err(|_| Error::NotAnIsomorphism)?;
            let d = alperin_decompose(&f, &phi)?;
            let violation = first_violation(&f, &d, &phi);
            Ok((
                Some(violation.is_none()),
                json!({ "decomposition": d.to_json(&f), "violated_clause": violation }),
            ))
        }
        Command::Product => {
            let f1 = system()?;
            let f2 = build_system(need(&spec.second, "second")?)?;
            Ok((None, summary(&product_fusion(&f1, &f2)?)))
        }
        Command::Quotient => {
            let f = system()?;
            let t = subgroup_of(&f, need(&spec.kernel, "kernel")?)?;
            let (q, _) = quotient_fusion(&f, t)?;
            Ok((
                None,
                json!({ "kernel": f.lattice().describe(t), "quotient": summary(&q) }),
            ))
        }
        Command::Normalizer => {
            let f = system()?;
            let q = subgroup_of(&f, need(&spec.at, "at")?)?;
            let k = aut_set(
                &f,
                q,
                spec.k.as_ref().unwrap_or(&KSpec::Named("full".into())),
            )?;
            let n = normalizer_subsystem(&f, q, &k)?;
            Ok((
                None,
                json!({ "at": f.lattice().describe(q), "subsystem": summary(&n) }),
            ))
        }
        Command::Rv => {
            let name = *need(&spec.rv, "rv")?;
            let rv = build_rv_certified(&RvDescriptor::new(name))?;
            let f = &rv.fusion;
            let profile: BTreeMap<String, usize> = rv
                .profile
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect();
            Ok((
                Some(true),
                json!({
                    "name": name,
                    "out_order": rv.out_order,
                    "rank2_cr_count": rv.essential.len(),
                    "aut_profile": profile,
                    "essential": rv.essential.iter().map(|&q| f.lattice().describe(q)).collect::<Vec<_>>(),
                    "attempts": rv.attempts,
                    "digest": f.digest(),
                }),
            ))
        }
        Command::Witness => {
            let p = *need(&spec.p, "p")?;
            let rows = witness_suite(p)?;
            let verdict = rows.iter().all(|(_, r)| r.passed());
            let rows: Vec<Value> = rows
                .into_iter()
                .map(|(name, r)| json!({ "case": name, "report": r }))
                .collect();
            Ok((Some(verdict), json!({ "p": p, "cases": rows })))
        }
    }
}

fn morphism_of(f: &FusionSystem, m: &GeneratorSpec) -> Result<FusionMorphism> {
    let s = f.group();
    let gens = m
        .domain_gens
        .iter()
        .map(|e| e.resolve(s))
        .collect::<Result<Vec<_>>>()?;
    let images = m
        .images
        .iter()
        .map(|e| e.resolve(s))
        .collect::<Result<Vec<_>>>()?;
    let q = f.lattice().generated(&gens);
    let map = extend_to_hom(f.subgroup(q), &gens, &images, s)?;
    let target = f
        .lattice()
        .id_of_elements(map.iter().copied())
        .ok_or(Error::NotAnIsomorphism)?;
    if f.lattice().order(target) != map.len() {
        return Err(Error::NotAnIsomorphism);
    }
    Ok(FusionMorphism::new(q, target, map, Provenance::Closure))
}

fn aut_set(f: &FusionSystem, q: SubgroupId, k: &KSpec) -> Result<AutSet> {
    match k {
        KSpec::Named(s) if s == "full" => Ok(AutSet::Full),
        KSpec::Named(s) if s == "trivial" => Ok(AutSet::Trivial),
        KSpec::Named(s) => Err(Error::Malformed(format!("unknown automorphism set `{s}`"))),
        KSpec::Explicit(list) => {
            let s = f.group();
            let qs = f.subgroup(q);
            list.iter()
                .map(|m| {
                    let gens = m
                        .domain_gens
                        .iter()
                        .map(|e| e.resolve(s))
                        .collect::<Result<Vec<_>>>()?;
                    let images = m
                        .images
                        .iter()
                        .map(|e| e.resolve(s))
                        .collect::<Result<Vec<_>>>()?;
                    if f.lattice().generated(&gens) != q {
                        return Err(Error::Malformed(
                            "automorphism generators do not generate Q".into(),
                        ));
                    }
                    let map = extend_to_hom(qs, &gens, &images, s)?;
                    Ok(qs
                        .elements()
                        .iter()
                        .map(|&x| map[qs.position(x).unwrap()])
                        .collect())
                })
                .collect::<Result<Vec<_>>>()
                .map(AutSet::Explicit)
        }
    }
}

/// `p^{1+2}_+ ⋊ C2`, the involution inverting both generators.
pub fn inverted_extraspecial(p: u64) -> Result<Arc<FiniteGroup>> {
    let e = extraspecial_plus(p)?;
    let action = vec![e
        .generators()
        .iter()
        .map(|g| g.inverse().images().to_vec())
        .collect()];
    semidirect(&e, &cyclic(2)?, &action)
}

fn transporter_of(g: &Arc<FiniteGroup>, p: u64) -> Result<FusionSystem> {
    let s: Subgroup = sylow_p(&g.whole(), p)?;
    transporter_fusion(g, &s, p)
}

/// The four witness cases at an odd prime: `F1 ∈ {F_P(P), F_P(P ⋊ C2)}` and
/// `F2 ∈ {F_{C_p}(C_p), F_{C_p}(D_{2p})}`.
pub fn witness_suite(p: u64) -> Result<Vec<(String, crate::constructions::WitnessReport)>> {
    let e = extraspecial_plus(p)?;
    let firsts = [
        ("inner", inner_fusion(&e.whole(), p)?),
        ("inverted", transporter_of(&inverted_extraspecial(p)?, p)?),
    ];
    let seconds = [
        ("cyclic", inner_fusion(&cyclic(p as usize)?.whole(), p)?),
        ("dihedral", transporter_of(&dihedral(2 * p as usize)?, p)?),
    ];
    let mut out = Vec::new();
    for (n1, f1) in &firsts {
        for (n2, f2) in &seconds {
            out.push((format!("{n1}x{n2}"), main_theorem_witness(f1, f2)?));
        }
    }
    Ok(out)
}
