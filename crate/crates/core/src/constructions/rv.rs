//! The three exotic systems over `7^{1+2}_+` with outer automorphism groups
//! `6^2:2`, `D16 × 3` and `SD32 × 3`.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::classifier::{fcr_objects, is_saturated, out_f};
use crate::error::{Error, Result};
use crate::fusion::{generated_fusion, FusionSystem};
use crate::hom::{extend_to_hom, GroupHom};
use crate::lattice::SubgroupId;
use crate::named::{extraspecial_generators, extraspecial_plus};

const P: u64 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RvName {
    Rv1,
    Rv2,
    Rv3,
}

impl std::str::FromStr for RvName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rv1" => Ok(RvName::Rv1),
            "rv2" => Ok(RvName::Rv2),
            "rv3" => Ok(RvName::Rv3),
            other => Err(Error::InvalidParameter(format!("unknown system {other}"))),
        }
    }
}

/// Target invariants: `|Out_F(S)|` and, for the rank-2 centric radical
/// subgroups, how many have each `|Aut_F(V)|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RvDescriptor {
    pub name: RvName,
    pub out_order: usize,
    pub profile: BTreeMap<usize, usize>,
}

impl RvDescriptor {
    pub fn new(name: RvName) -> Self {
        let (out_order, profile) = match name {
            RvName::Rv1 => (72, vec![(672, 6), (2016, 2)]),
            RvName::Rv2 => (48, vec![(672, 8)]),
            RvName::Rv3 => (96, vec![(672, 8)]),
        };
        RvDescriptor {
            name,
            out_order,
            profile: profile.into_iter().collect(),
        }
    }
}

/// A certified system with the data used to certify it.
pub struct RvSystem {
    pub fusion: FusionSystem,
    pub out_order: usize,
    pub profile: BTreeMap<usize, usize>,
    pub essential: Vec<SubgroupId>,
    pub attempts: usize,
}

type Mat = [[u64; 2]; 2];

fn mul(a: &Mat, b: &Mat) -> Mat {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % P;
        }
    }
    c
}

fn det(a: &Mat) -> u64 {
    (a[0][0] * a[1][1] + P * P - a[0][1] * a[1][0]) % P
}

const ID: Mat = [[1, 0], [0, 1]];

fn closure(gens: &[Mat]) -> Vec<Mat> {
    let mut seen: BTreeSet<Mat> = BTreeSet::from([ID]);
    let mut queue = VecDeque::from([ID]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let n = mul(&m, g);
            if seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.into_iter().collect()
}

fn mat_order(m: &Mat) -> usize {
    let mut k = 1;
    let mut x = *m;
    while x != ID {
        x = mul(&x, m);
        k += 1;
    }
    k
}

fn all_invertible() -> impl Iterator<Item = Mat> {
    (0..P.pow(4)).filter_map(|n| {
        let m = [[n % P, n / P % P], [n / (P * P) % P, n / (P * P * P)]];
        (det(&m) != 0).then_some(m)
    })
}

/// Generators of the subgroup of `GL_2(7)` realizing `Out_F(S)`.
fn out_generators(name: RvName) -> Vec<Mat> {
    match name {
        RvName::Rv1 => vec![[[3, 0], [0, 1]], [[1, 0], [0, 3]], [[0, 1], [1, 0]]],
        RvName::Rv2 | RvName::Rv3 => {
            let singer = all_invertible()
                .find(|m| mat_order(m) == 48)
                .expect("Singer cycle");
            let frob_target = (0..6).fold(ID, |acc, _| mul(&acc, &singer));
            let frob_target = mul(&frob_target, &singer);
            let frob = all_invertible()
                .find(|b| mul(b, b) == ID && *b != ID && mul(&mul(b, &singer), b) == frob_target)
                .expect("Frobenius");
            let a = if name == RvName::Rv2 {
                mul(&singer, &singer)
            } else {
                singer
            };
            vec![a, frob]
        }
    }
}

/// Lines of `F_7^2`, each as its normalized spanning vector.
fn lines() -> Vec<[u64; 2]> {
    let mut v: Vec<[u64; 2]> = (0..P).map(|t| [1, t]).collect();
    v.push([0, 1]);
    v
}

fn normalize(v: [u64; 2]) -> [u64; 2] {
    let lead = if v[0] != 0 { v[0] } else { v[1] };
    let inv = crate::named::mod_pow(lead, P - 2, P);
    [v[0] * inv % P, v[1] * inv % P]
}

fn act(m: &Mat, v: [u64; 2]) -> [u64; 2] {
    [
        (m[0][0] * v[0] + m[0][1] * v[1]) % P,
        (m[1][0] * v[0] + m[1][1] * v[1]) % P,
    ]
}

/// The determinants on `V` of the torus induced by the stabilizer of `line`,
/// when it is the full preimage of those determinants in `F_7^* × F_7^*`.
fn torus_dets(group: &[Mat], line: [u64; 2]) -> Option<BTreeSet<u64>> {
    let mut pairs = BTreeSet::new();
    for m in group {
        let w = act(m, line);
        if normalize(w) != line {
            continue;
        }
        let lambda = if line[0] != 0 {
            w[0] * crate::named::mod_pow(line[0], P - 2, P) % P
        } else {
            w[1]
        };
        pairs.insert((lambda, det(m)));
    }
    let dets: BTreeSet<u64> = pairs.iter().map(|&(l, d)| l * d % P).collect();
    (pairs.len() == (P as usize - 1) * dets.len()).then_some(dets)
}

fn orbits(group: &[Mat]) -> Vec<Vec<[u64; 2]>> {
    let mut done = HashSet::new();
    let mut out = Vec::new();
    for l in lines() {
        if done.contains(&l) {
            continue;
        }
        let orbit: BTreeSet<[u64; 2]> = group.iter().map(|m| normalize(act(m, l))).collect();
        done.extend(orbit.iter().copied());
        out.push(orbit.into_iter().collect());
    }
    out
}

pub fn build_rv(d: &RvDescriptor) -> Result<FusionSystem> {
    Ok(build_rv_certified(d)?.fusion)
}

/// Seeds with lifts of `Out_F(S)` to `Aut(S)` and `SL(V)` on one rank-2
/// subgroup per chosen orbit of lines, trying unions of admissible orbits
/// (largest first) until the closure is saturated with the target invariants.
pub fn build_rv_certified(d: &RvDescriptor) -> Result<RvSystem> {
    let s = extraspecial_plus(P)?;
    let whole = s.whole();
    let (x, y, z) = extraspecial_generators(&s);
    let word = |u: u64, v: u64| s.mul(s.pow(x, u as i64), s.pow(y, v as i64));
    let out_gens = out_generators(d.name);
    let group = closure(&out_gens);
    if group.len() != d.out_order {
        return Err(Error::CertificationFailed(format!(
            "outer group has order {} instead of {}",
            group.len(),
            d.out_order
        )));
    }
    let mut seeds = Vec::new();
    for m in &out_gens {
        let images = [word(m[0][0], m[1][0]), word(m[0][1], m[1][1])];
        let map = extend_to_hom(&whole, &[x, y], &images, &s)?;
        seeds.push(GroupHom::new_unchecked(whole.clone(), whole.clone(), map));
    }
    let admissible: Vec<Vec<[u64; 2]>> = orbits(&group)
        .into_iter()
        .filter(|o| torus_dets(&group, o[0]).is_some())
        .collect();
    let k = admissible.len();
    let mut subsets: Vec<u32> = (1..1u32 << k).collect();
    subsets.sort_by_key(|&m| {
        (
            std::cmp::Reverse(
                admissible
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, o)| o.len())
                    .sum::<usize>(),
            ),
            m,
        )
    });
    let mut attempts = 0;
    for mask in subsets {
        attempts += 1;
        let mut gens = seeds.clone();
        for (i, orbit) in admissible.iter().enumerate() {
            if mask >> i & 1 == 0 {
                continue;
            }
            let l = orbit[0];
            let w = word(l[0], l[1]);
            let v = crate::group::Subgroup::generated(&s, &[w, z]);
            for images in [[s.mul(w, z), z], [w, s.mul(z, w)]] {
                gens.push(GroupHom::from_generator_images(
                    v.clone(),
                    whole.clone(),
                    &[w, z],
                    &images,
                )?);
            }
        }
        let f = generated_fusion(&whole, P, &gens)?;
        if !is_saturated(&f).verdict {
            continue;
        }
        let out_order = out_f(&f, f.top()).order();
        let essential: Vec<SubgroupId> = fcr_objects(&f)
            .into_iter()
            .filter(|&q| f.lattice().order(q) == (P * P) as usize)
            .collect();
        let mut profile = BTreeMap::new();
        for &q in &essential {
            *profile.entry(f.aut_f_order(q)).or_insert(0) += 1;
        }
        if out_order == d.out_order && profile == d.profile {
            return Ok(RvSystem {
                fusion: f,
                out_order,
                profile,
                essential,
                attempts,
            });
        }
    }
    Err(Error::CertificationFailed(format!(
        "no saturated closure with the invariants of {:?} after {attempts} attempts",
        d.name
    )))
}
