//! Group descriptors and faithful permutation realizations of named families.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{is_prime, FiniteGroup, Subgroup};
use crate::hom::extend_to_hom;
use crate::perm::Perm;

/// JSON-facing group description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupDescriptor {
    Permutation {
        degree: usize,
        generators: Vec<Vec<u32>>,
    },
    Named(NamedGroup),
    DirectProduct {
        factors: Vec<GroupDescriptor>,
    },
    /// `base ⋊ actor`; `action[k][j]` is the image of base generator `j`
    /// under actor generator `k`, written as a permutation of the base's points.
    Semidirect {
        base: Box<GroupDescriptor>,
        actor: Box<GroupDescriptor>,
        action: Vec<Vec<Vec<u32>>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum NamedGroup {
    Symmetric {
        n: usize,
    },
    Alternating {
        n: usize,
    },
    /// Dihedral group of the given order (`dihedral(8)` has order 8).
    Dihedral {
        order: usize,
    },
    Cyclic {
        n: usize,
    },
    ElementaryAbelian {
        p: u64,
        k: usize,
    },
    Abelian {
        invariants: Vec<usize>,
    },
    /// `p^{1+2}_+` for odd `p`, generated by `x, y` with `[x,y] = z` central.
    ExtraspecialPlus {
        p: u64,
    },
    Semidihedral {
        order: usize,
    },
    GeneralLinear {
        p: u64,
    },
    SpecialLinear {
        p: u64,
    },
}

pub fn build_group(desc: &GroupDescriptor) -> Result<Arc<FiniteGroup>> {
    match desc {
        GroupDescriptor::Permutation { degree, generators } => {
            let gens = generators
                .iter()
                .map(|g| {
                    if g.len() != *degree {
                        return Err(Error::DegreeMismatch(*degree, g.len()));
                    }
                    Perm::from_images(g.clone())
                })
                .collect::<Result<Vec<_>>>()?;
            FiniteGroup::from_generators(*degree, &gens)
        }
        GroupDescriptor::Named(n) => build_named(n),
        GroupDescriptor::DirectProduct { factors } => {
            if factors.is_empty() {
                return Err(Error::UnsupportedDescriptor("empty direct product".into()));
            }
            let groups = factors
                .iter()
                .map(build_group)
                .collect::<Result<Vec<_>>>()?;
            let mut acc = groups[0].clone();
            for g in &groups[1..] {
                acc = direct_product(&acc, g)?;
            }
            Ok(acc)
        }
        GroupDescriptor::Semidirect {
            base,
            actor,
            action,
        } => {
            let n = build_group(base)?;
            let h = build_group(actor)?;
            semidirect(&n, &h, action)
        }
    }
}

pub fn build_named(n: &NamedGroup) -> Result<Arc<FiniteGroup>> {
    use NamedGroup::*;
    match *n {
        Symmetric { n } => symmetric(n),
        Alternating { n } => alternating(n),
        Dihedral { order } => dihedral(order),
        Cyclic { n } => cyclic(n),
        ElementaryAbelian { p, k } => {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            abelian(&vec![p as usize; k])
        }
        Abelian { ref invariants } => abelian(invariants),
        ExtraspecialPlus { p } => extraspecial_plus(p),
        Semidihedral { order } => semidihedral(order),
        GeneralLinear { p } => linear_2(p, false),
        SpecialLinear { p } => linear_2(p, true),
    }
}

fn require_positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(format!("{what} must be positive")));
    }
    Ok(())
}

pub fn symmetric(n: usize) -> Result<Arc<FiniteGroup>> {
    require_positive(n, "degree")?;
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::from_cycles(n, &[&[0, 1]])?);
    }
    if n >= 3 {
        let cycle: Vec<u32> = (0..n as u32).collect();
        gens.push(Perm::from_cycles(n, &[&cycle])?);
    }
    FiniteGroup::from_generators(n, &gens)
}

pub fn alternating(n: usize) -> Result<Arc<FiniteGroup>> {
    require_positive(n, "degree")?;
    let gens = (2..n as u32)
        .map(|k| Perm::from_cycles(n, &[&[0, 1, k]]))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_generators(n, &gens)
}

pub fn cyclic(n: usize) -> Result<Arc<FiniteGroup>> {
    require_positive(n, "order")?;
    let cycle: Vec<u32> = (0..n as u32).collect();
    let gens = if n > 1 {
        vec![Perm::from_cycles(n, &[&cycle])?]
    } else {
        vec![]
    };
    FiniteGroup::from_generators(n, &gens)
}

pub fn dihedral(order: usize) -> Result<Arc<FiniteGroup>> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "dihedral order {order} must be even and ≥ 2"
        )));
    }
    match order / 2 {
        1 => cyclic(2),
        2 => abelian(&[2, 2]),
        n => affine_group(n, &[n as u64 - 1]),
    }
}

/// Semidihedral group of order `2^k`, `k ≥ 4`.
pub fn semidihedral(order: usize) -> Result<Arc<FiniteGroup>> {
    if order < 16 || !order.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "semidihedral order {order} must be a power of two ≥ 16"
        )));
    }
    let m = order / 2;
    affine_group(m, &[(m / 2 - 1) as u64])
}

/// `i ↦ i + 1` together with `i ↦ u i` on `Z/m`, for each unit `u`.
fn affine_group(m: usize, units: &[u64]) -> Result<Arc<FiniteGroup>> {
    let shift = Perm::from_images((0..m as u32).map(|i| (i + 1) % m as u32).collect())?;
    let mut gens = vec![shift];
    for &u in units {
        gens.push(Perm::from_images(
            (0..m as u64).map(|i| ((u * i) % m as u64) as u32).collect(),
        )?);
    }
    FiniteGroup::from_generators(m, &gens)
}

/// Direct sum of cycles of the given lengths.
pub fn abelian(invariants: &[usize]) -> Result<Arc<FiniteGroup>> {
    if invariants.is_empty() {
        return cyclic(1);
    }
    let degree: usize = invariants.iter().sum();
    let mut gens = Vec::new();
    let mut offset = 0u32;
    for &n in invariants {
        require_positive(n, "invariant factor")?;
        if n > 1 {
            let cycle: Vec<u32> = (offset..offset + n as u32).collect();
            gens.push(Perm::from_cycles(degree, &[&cycle])?);
        }
        offset += n as u32;
    }
    FiniteGroup::from_generators(degree, &gens)
}

/// `p^{1+2}_+` as upper unitriangular 3×3 matrices over `F_p`, acting on the
/// right cosets of `⟨y⟩` (`p^2` points). Generators are `[x, y]`.
pub fn extraspecial_plus(p: u64) -> Result<Arc<FiniteGroup>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::InvalidParameter(
            "extraspecial_plus requires an odd prime".into(),
        ));
    }
    let p = p as u32;
    // matrix (a, b, c) = [[1,a,c],[0,1,b],[0,0,1]]; coset ⟨y⟩m is labelled (a, c)
    // and right multiplication by (a', b', c') sends it to (a + a', c + a b' + c')
    let action = |da: u32, db: u32, dc: u32| {
        let images = (0..p * p)
            .map(|pt| {
                let (a, c) = (pt / p, pt % p);
                let a2 = (a + da) % p;
                let c2 = (c + a * db + dc) % p;
                a2 * p + c2
            })
            .collect();
        Perm::from_images(images)
    };
    let x = action(1, 0, 0)?;
    let y = action(0, 1, 0)?;
    FiniteGroup::from_generators((p * p) as usize, &[x, y])
}

/// `GL_2(p)` or `SL_2(p)` acting on the nonzero row vectors of `F_p^2`.
pub fn linear_2(p: u64, special: bool) -> Result<Arc<FiniteGroup>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut gens = vec![
        matrix_perm(p, [[1, 1], [0, 1]]),
        matrix_perm(p, [[1, 0], [1, 1]]),
    ];
    if !special && p > 2 {
        gens.push(matrix_perm(p, [[primitive_root(p), 0], [0, 1]]));
    }
    FiniteGroup::from_generators((p * p - 1) as usize, &gens)
}

/// Right action `v ↦ v M` on nonzero vectors, point `a p + b - 1` for `(a, b)`.
pub(crate) fn matrix_perm(p: u64, m: [[u64; 2]; 2]) -> Perm {
    let images = (1..p * p)
        .map(|v| {
            let (a, b) = (v / p, v % p);
            let a2 = (a * m[0][0] + b * m[1][0]) % p;
            let b2 = (a * m[0][1] + b * m[1][1]) % p;
            (a2 * p + b2 - 1) as u32
        })
        .collect();
    Perm::from_images_unchecked(images)
}

pub(crate) fn primitive_root(p: u64) -> u64 {
    (2..p)
        .find(|&g| (1..p - 1).all(|k| mod_pow(g, k, p) != 1))
        .unwrap_or(1)
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// `G × H` on the disjoint union of their point sets.
pub fn direct_product(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>) -> Result<Arc<FiniteGroup>> {
    let id_g = Perm::identity(g.degree());
    let id_h = Perm::identity(h.degree());
    let mut gens: Vec<Perm> = g.generators().iter().map(|x| x.direct_sum(&id_h)).collect();
    gens.extend(h.generators().iter().map(|y| id_g.direct_sum(y)));
    FiniteGroup::from_generators(g.degree() + h.degree(), &gens)
}

/// `N ⋊ H` acting on the elements of `N` (by translation and automorphism)
/// together with `H`'s own points.
pub fn semidirect(
    n: &Arc<FiniteGroup>,
    h: &Arc<FiniteGroup>,
    action: &[Vec<Vec<u32>>],
) -> Result<Arc<FiniteGroup>> {
    if action.len() != h.generators().len() {
        return Err(Error::Malformed(format!(
            "action lists {} automorphisms for {} actor generators",
            action.len(),
            h.generators().len()
        )));
    }
    let n_order = n.order();
    let degree = n_order + h.degree();
    let whole = n.whole();
    let n_gens = n.generator_ids();
    let shift_h = |hp: &Perm| {
        hp.images()
            .iter()
            .map(|&i| i + n_order as u32)
            .collect::<Vec<_>>()
    };
    let mut gens = Vec::new();
    for &s in &n_gens {
        let mut images: Vec<u32> = (0..n_order as u32).map(|m| n.mul(m, s)).collect();
        images.extend(n_order as u32..degree as u32);
        gens.push(Perm::from_images(images)?);
    }
    for (hk, imgs) in h.generators().iter().zip(action) {
        if imgs.len() != n_gens.len() {
            return Err(Error::Malformed(
                "action must give one image per base generator".into(),
            ));
        }
        let targets = imgs
            .iter()
            .map(|img| {
                let perm = Perm::from_images(img.clone())?;
                n.id_of(&perm).ok_or(Error::NotInGroup)
            })
            .collect::<Result<Vec<_>>>()?;
        let alpha = extend_to_hom(&whole, &n_gens, &targets, n)?;
        let mut images = alpha;
        images.extend(shift_h(hk));
        gens.push(Perm::from_images(images).map_err(|_| Error::NotAHomomorphism)?);
    }
    let group = FiniteGroup::from_generators(degree, &gens)?;
    if group.order() != n_order * h.order() {
        return Err(Error::InvalidParameter(
            "action does not define a homomorphism from the actor into Aut(base)".into(),
        ));
    }
    Ok(group)
}

/// The generators `x, y, z = [x,y]` of [`extraspecial_plus`], as element ids.
pub fn extraspecial_generators(s: &Arc<FiniteGroup>) -> (u32, u32, u32) {
    let x = s.id_of(&s.generators()[0]).unwrap();
    let y = s.id_of(&s.generators()[1]).unwrap();
    (x, y, s.commutator(x, y))
}

/// Convenience: the whole group as a subgroup.
pub fn whole(desc: &GroupDescriptor) -> Result<Subgroup> {
    Ok(build_group(desc)?.whole())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::center;

    #[test]
    fn orders() {
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(dihedral(8).unwrap().order(), 8);
        assert_eq!(dihedral(4).unwrap().order(), 4);
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(abelian(&[2, 4]).unwrap().order(), 8);
        assert_eq!(semidihedral(32).unwrap().order(), 32);
        assert_eq!(linear_2(3, true).unwrap().order(), 24);
        assert_eq!(linear_2(7, false).unwrap().order(), 2016);
        assert_eq!(linear_2(7, true).unwrap().order(), 336);
    }

    #[test]
    fn extraspecial_three() {
        let s = extraspecial_plus(3).unwrap();
        assert_eq!(s.order(), 27);
        assert_eq!(s.degree(), 9);
        assert!((1..27).all(|x| s.element_order(x) == 3));
        let (x, y, z) = extraspecial_generators(&s);
        let zs = center(&s.whole());
        assert_eq!(zs.order(), 3);
        assert!(zs.contains(z) && z != 0);
        assert_eq!(Subgroup::generated(&s, &[x, y]).order(), 27);
        assert_eq!(s.mul(x, z), s.mul(z, x));
    }

    #[test]
    fn extraspecial_rejects_two() {
        assert!(extraspecial_plus(2).is_err());
        assert!(extraspecial_plus(9).is_err());
    }

    #[test]
    fn semidirect_inverting_action() {
        let p = extraspecial_plus(3).unwrap();
        let c2 = cyclic(2).unwrap();
        let (x, y, _) = extraspecial_generators(&p);
        let inv = |e: u32| p.element(p.inv(e)).images().to_vec();
        let g = semidirect(&p, &c2, &[vec![inv(x), inv(y)]]).unwrap();
        assert_eq!(g.order(), 54);
    }

    #[test]
    fn semidirect_rejects_bad_action() {
        let c3 = cyclic(3).unwrap();
        let c2 = cyclic(2).unwrap();
        // sending the generator to the identity is not an automorphism
        let id = c3.element(0).images().to_vec();
        assert!(semidirect(&c3, &c2, &[vec![id]]).is_err());
    }

    #[test]
    fn descriptor_json_shapes() {
        let d: GroupDescriptor =
            serde_json::from_str(r#"{"type":"named","name":"extraspecial_plus","p":3}"#).unwrap();
        assert_eq!(
            d,
            GroupDescriptor::Named(NamedGroup::ExtraspecialPlus { p: 3 })
        );
        assert_eq!(build_group(&d).unwrap().order(), 27);
        let d: GroupDescriptor =
            serde_json::from_str(r#"{"type":"permutation","degree":3,"generators":[[1,0,2]]}"#)
                .unwrap();
        assert_eq!(build_group(&d).unwrap().order(), 2);
        let bad: GroupDescriptor =
            serde_json::from_str(r#"{"type":"permutation","degree":3,"generators":[[1,1,2]]}"#)
                .unwrap();
        assert!(build_group(&bad).is_err());
    }
}
