//! Element-level brute force over `S4` with `S = D8`, sharing no code with
//! the library: permutations are plain arrays and every set is enumerated.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

pub type P4 = [u8; 4];

/// `a` then `b`.
pub fn compose(a: &P4, b: &P4) -> P4 {
    [
        b[a[0] as usize],
        b[a[1] as usize],
        b[a[2] as usize],
        b[a[3] as usize],
    ]
}

pub fn invert(a: &P4) -> P4 {
    let mut r = [0u8; 4];
    for i in 0..4 {
        r[a[i] as usize] = i as u8;
    }
    r
}

/// `g^-1 x g`.
pub fn conj(x: &P4, g: &P4) -> P4 {
    compose(&compose(&invert(g), x), g)
}

pub fn s4() -> Vec<P4> {
    let mut out = Vec::new();
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    let p = [a, b, c, d];
                    let set: BTreeSet<u8> = p.iter().copied().collect();
                    if set.len() == 4 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn closure(gens: &[P4]) -> BTreeSet<P4> {
    let mut set = BTreeSet::from([[0, 1, 2, 3]]);
    loop {
        let next: BTreeSet<P4> = set
            .iter()
            .flat_map(|a| gens.iter().map(move |g| compose(a, g)))
            .chain(set.iter().copied())
            .collect();
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

/// `⟨(0 1 2 3), (0 2)⟩`.
pub fn d8() -> BTreeSet<P4> {
    closure(&[[1, 2, 3, 0], [2, 1, 0, 3]])
}

/// Every subgroup of `S`, as sorted element sets.
pub fn subgroups(s: &BTreeSet<P4>) -> Vec<BTreeSet<P4>> {
    let elems: Vec<P4> = s.iter().copied().collect();
    let mut found = BTreeSet::new();
    for mask in 0u32..(1 << elems.len()) {
        let subset: BTreeSet<P4> = (0..elems.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| elems[i])
            .collect();
        if !subset.contains(&[0, 1, 2, 3]) {
            continue;
        }
        if subset
            .iter()
            .all(|a| subset.iter().all(|b| subset.contains(&compose(a, b))))
        {
            found.insert(subset);
        }
    }
    found.into_iter().collect()
}

pub type Map = BTreeMap<P4, P4>;

fn conj_set(q: &BTreeSet<P4>, g: &P4) -> BTreeSet<P4> {
    q.iter().map(|x| conj(x, g)).collect()
}

fn conj_map(q: &BTreeSet<P4>, g: &P4) -> Map {
    q.iter().map(|x| (*x, conj(x, g))).collect()
}

/// `Hom_{S4}(Q, P)` as distinct element maps.
pub fn hom(q: &BTreeSet<P4>, p: &BTreeSet<P4>) -> BTreeSet<Map> {
    s4().iter()
        .filter(|g| conj_set(q, g).is_subset(p))
        .map(|g| conj_map(q, g))
        .collect()
}

pub fn aut_f(q: &BTreeSet<P4>) -> BTreeSet<Map> {
    hom(q, q)
}

pub fn inner(q: &BTreeSet<P4>) -> BTreeSet<Map> {
    q.iter().map(|g| conj_map(q, g)).collect()
}

fn normalizer_in(s: &BTreeSet<P4>, q: &BTreeSet<P4>) -> BTreeSet<P4> {
    s.iter().copied().filter(|g| conj_set(q, g) == *q).collect()
}

fn centralizer_in(s: &BTreeSet<P4>, q: &BTreeSet<P4>) -> BTreeSet<P4> {
    s.iter()
        .copied()
        .filter(|g| q.iter().all(|x| conj(x, g) == *x))
        .collect()
}

/// Subgroups of `S` that are `S4`-conjugate to `q`.
pub fn f_conjugates(s: &BTreeSet<P4>, q: &BTreeSet<P4>) -> Vec<BTreeSet<P4>> {
    let mut out: BTreeSet<BTreeSet<P4>> = BTreeSet::new();
    for g in s4() {
        let c = conj_set(q, &g);
        if c.is_subset(s) {
            out.insert(c);
        }
    }
    out.into_iter().collect()
}

fn compose_maps(a: &Map, b: &Map) -> Map {
    a.iter().map(|(x, y)| (*x, b[y])).collect()
}

/// Largest normal 2-subgroup of `A/I`, measured as `|O_2(A/I)|`, by
/// enumerating subgroups of `A` containing `I`.
fn o2_of_quotient(a: &BTreeSet<Map>, i: &BTreeSet<Map>) -> usize {
    let elems: Vec<Map> = a.iter().cloned().collect();
    let mut best = 1;
    for mask in 0u32..(1 << elems.len()) {
        let sub: BTreeSet<Map> = (0..elems.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| elems[k].clone())
            .collect();
        if !i.is_subset(&sub) {
            continue;
        }
        let closed = sub
            .iter()
            .all(|x| sub.iter().all(|y| sub.contains(&compose_maps(x, y))));
        if !closed {
            continue;
        }
        let normal = a.iter().all(|g| {
            let gi: Map = g.iter().map(|(x, y)| (*y, *x)).collect();
            sub.iter()
                .all(|x| sub.contains(&compose_maps(&compose_maps(&gi, x), g)))
        });
        let index = sub.len() / i.len();
        if normal && index.is_power_of_two() {
            best = best.max(index);
        }
    }
    best
}

pub struct Flags {
    pub centric: bool,
    pub radical: bool,
    pub fully_normalised: bool,
}

pub fn flags(s: &BTreeSet<P4>, q: &BTreeSet<P4>) -> Flags {
    let conjugates = f_conjugates(s, q);
    let centric = conjugates.iter().all(|r| centralizer_in(s, r).is_subset(r));
    let radical = o2_of_quotient(&aut_f(q), &inner(q)) == 1;
    let mine = normalizer_in(s, q).len();
    let fully_normalised = conjugates.iter().all(|r| normalizer_in(s, r).len() <= mine);
    Flags {
        centric,
        radical,
        fully_normalised,
    }
}

/// `F^{fcr}` of `F_{D8}(S4)`.
pub fn fcr() -> Vec<BTreeSet<P4>> {
    let s = d8();
    subgroups(&s)
        .into_iter()
        .filter(|q| {
            let f = flags(&s, q);
            f.centric && f.radical && f.fully_normalised
        })
        .collect()
}
