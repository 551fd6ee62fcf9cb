//! Subgroup lattices, maximal subgroups and the Frattini subgroup.

mod goursat;
mod invariant;

pub use goursat::*;
pub use invariant::*;

use crate::bitset::Bitset;
use crate::group::{quotient_group, ElemId, FiniteGroup, GroupMap, SubgroupSet};
use crate::{Config, Error, Result};
use std::collections::HashMap;

/// Every subgroup of some `n ≤ G`, sorted by (order, bitmap), together with
/// the partition into `n`-conjugacy classes.
#[derive(Debug, Clone)]
pub struct LatticeIndex {
    pub subgroups: Vec<SubgroupSet>,
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl LatticeIndex {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn position(&self, bits: &Bitset) -> Option<usize> {
        self.subgroups
            .binary_search_by(|h| (h.order(), h.members()).cmp(&(bits.count(), bits)))
            .ok()
    }
}

pub fn sort_subgroups(v: &mut [SubgroupSet]) {
    v.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
}

/// Conjugacy orbit of `h` under the generators of `within`.
fn conjugacy_orbit(g: &FiniteGroup, h: &SubgroupSet, within: &[ElemId]) -> Vec<SubgroupSet> {
    let mut orbit = vec![h.clone()];
    let mut seen: HashMap<Bitset, ()> = HashMap::new();
    seen.insert(h.members().clone(), ());
    let mut head = 0;
    while head < orbit.len() {
        let cur = orbit[head].clone();
        head += 1;
        for &x in within {
            let bits = g.conjugate_bits(cur.members(), x);
            if !seen.contains_key(&bits) {
                seen.insert(bits, ());
                orbit.push(g.conjugate_subgroup(&cur, x));
            }
        }
    }
    orbit
}

/// Partitions a list of subgroups into orbits under conjugation by `within`.
/// The list must be closed under that action.
pub fn conjugacy_partition(
    g: &FiniteGroup,
    subs: &[SubgroupSet],
    within: &[ElemId],
) -> (Vec<usize>, Vec<Vec<usize>>) {
    let pos: HashMap<&Bitset, usize> = subs.iter().enumerate().map(|(i, h)| (h.members(), i)).collect();
    let mut class_of = vec![usize::MAX; subs.len()];
    let mut classes = Vec::new();
    for i in 0..subs.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = vec![i];
        class_of[i] = c;
        let mut head = 0;
        while head < members.len() {
            let cur = members[head];
            head += 1;
            for &x in within {
                let bits = g.conjugate_bits(subs[cur].members(), x);
                let j = *pos.get(&bits).expect("subgroup list closed under conjugation");
                if class_of[j] == usize::MAX {
                    class_of[j] = c;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    (class_of, classes)
}

pub fn all_subgroups(g: &FiniteGroup, cfg: &Config) -> Result<LatticeIndex> {
    subgroups_of(g, &g.whole(), cfg)
}

/// All subgroups of `n`.
///
/// Every subgroup is a join of cyclic subgroups of prime-power order, so the
/// lattice is the closure of `{1}` under joining with those. Only one
/// representative per `n`-conjugacy class is extended; the others are
/// produced by conjugating.
pub fn subgroups_of(g: &FiniteGroup, n: &SubgroupSet, cfg: &Config) -> Result<LatticeIndex> {
    if n.order() > cfg.lattice_cap {
        return Err(Error::cap("subgroup lattice order", cfg.lattice_cap as u64));
    }
    let within = n.generators().to_vec();
    let mut cyclics: Vec<SubgroupSet> = Vec::new();
    let mut cyc_seen = HashMap::new();
    for x in n.elements() {
        if x == 0 || !is_prime_power(g.elem_order(x)) {
            continue;
        }
        let c = g.closure(&[x]);
        if !cyc_seen.contains_key(c.members()) {
            cyc_seen.insert(c.members().clone(), ());
            cyclics.push(c);
        }
    }
    let mut all: Vec<SubgroupSet> = vec![g.trivial_subgroup()];
    let mut seen: HashMap<Bitset, ()> = HashMap::new();
    seen.insert(all[0].members().clone(), ());
    let mut reps = vec![0usize];
    let mut head = 0;
    while head < reps.len() {
        let h = all[reps[head]].clone();
        head += 1;
        for c in &cyclics {
            if c.is_subgroup_of(&h) {
                continue;
            }
            let k = g.join(&h, c.generators()[0]);
            if seen.contains_key(k.members()) {
                continue;
            }
            reps.push(all.len());
            for conj in conjugacy_orbit(g, &k, &within) {
                seen.insert(conj.members().clone(), ());
                all.push(conj);
            }
        }
    }
    sort_subgroups(&mut all);
    let (class_of, classes) = conjugacy_partition(g, &all, &within);
    Ok(LatticeIndex {
        subgroups: all,
        class_of,
        classes,
    })
}

fn is_prime_power(mut k: u32) -> bool {
    if k < 2 {
        return false;
    }
    let mut p = 2;
    while k % p != 0 {
        p += 1;
    }
    while k % p == 0 {
        k /= p;
    }
    k == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Generic,
    StandardLeft,
    StandardRight,
    /// Indices into the left and right maximal-normal lists and into the
    /// isomorphism list between the two quotients.
    Pullback {
        left_normal: usize,
        right_normal: usize,
        iso: usize,
    },
}

#[derive(Debug, Clone)]
pub struct MaximalCatalog {
    pub parent: u64,
    /// Sorted by (order, bitmap).
    pub maximals: Vec<SubgroupSet>,
    pub provenance: Vec<Provenance>,
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl MaximalCatalog {
    pub(crate) fn build(g: &FiniteGroup, mut entries: Vec<(SubgroupSet, Provenance)>) -> Self {
        entries.sort_by(|a, b| (a.0.order(), a.0.members()).cmp(&(b.0.order(), b.0.members())));
        let (maximals, provenance): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        let (class_of, classes) = conjugacy_partition(g, &maximals, &g.generator_ids());
        MaximalCatalog {
            parent: g.uid(),
            maximals,
            provenance,
            class_of,
            classes,
        }
    }

    pub fn len(&self) -> usize {
        self.maximals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maximals.is_empty()
    }

    pub fn position(&self, bits: &Bitset) -> Option<usize> {
        self.maximals
            .binary_search_by(|h| (h.order(), h.members()).cmp(&(bits.count(), bits)))
            .ok()
    }

    /// Same entries as `other`, compared as sets of bitmaps.
    pub fn same_entries(&self, other: &MaximalCatalog) -> bool {
        self.len() == other.len()
            && self
                .maximals
                .iter()
                .zip(&other.maximals)
                .all(|(a, b)| a.same_members(b))
    }
}

/// Maximal elements among the proper subgroups of a sorted list.
pub(crate) fn maximal_among(subs: &[SubgroupSet], full_order: usize) -> Vec<usize> {
    let proper: Vec<usize> = (0..subs.len()).filter(|&i| subs[i].order() < full_order).collect();
    proper
        .iter()
        .copied()
        .filter(|&i| {
            !proper.iter().any(|&j| {
                subs[j].order() > subs[i].order()
                    && subs[j].order() % subs[i].order() == 0
                    && subs[i].is_subgroup_of(&subs[j])
            })
        })
        .collect()
}

/// Maximal subgroups from the full lattice.
pub fn maximal_subgroups(g: &FiniteGroup, cfg: &Config) -> Result<MaximalCatalog> {
    let lat = all_subgroups(g, cfg)?;
    Ok(maximal_catalog_from_lattice(g, &lat))
}

pub fn maximal_catalog_from_lattice(g: &FiniteGroup, lat: &LatticeIndex) -> MaximalCatalog {
    if g.order() == 1 {
        return MaximalCatalog::build(g, Vec::new());
    }
    let entries = maximal_among(&lat.subgroups, g.order())
        .into_iter()
        .map(|i| (lat.subgroups[i].clone(), Provenance::Generic))
        .collect();
    MaximalCatalog::build(g, entries)
}

/// Checks that joining `m` with any outside element gives the whole group;
/// at most `limit` outside elements are tried, in id order.
pub fn verify_maximal(g: &FiniteGroup, m: &SubgroupSet, limit: usize) -> bool {
    if m.order() >= g.order() {
        return false;
    }
    g.all_ids()
        .filter(|&x| !m.contains(x))
        .take(limit)
        .all(|x| g.join(m, x).order() == g.order())
}

pub fn frattini_of(g: &FiniteGroup, catalog: &MaximalCatalog) -> SubgroupSet {
    let mut bits = Bitset::full(g.order());
    for m in &catalog.maximals {
        bits.intersect_with(m.members());
    }
    g.subgroup_from_bits(bits)
}

pub fn frattini(g: &FiniteGroup, cfg: &Config) -> Result<SubgroupSet> {
    Ok(frattini_of(g, &maximal_subgroups(g, cfg)?))
}

pub fn frattini_quotient(g: &FiniteGroup, cfg: &Config) -> Result<(FiniteGroup, GroupMap)> {
    let phi = frattini(g, cfg)?;
    quotient_group(g, &phi, cfg.element_cap)
}

pub fn is_frattini_free(g: &FiniteGroup, cfg: &Config) -> Result<bool> {
    Ok(frattini(g, cfg)?.is_trivial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    fn cfg() -> Config {
        Config::default()
    }

    /// Subgroups by brute force: closures of all subsets of size ≤ 3 are
    /// enough for groups whose subgroups need at most 3 generators.
    fn brute_subgroups(g: &FiniteGroup) -> Vec<Bitset> {
        let n = g.order() as ElemId;
        let mut out = std::collections::BTreeSet::new();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    out.insert(g.closure(&[a, b, c]).members().clone());
                }
            }
        }
        out.into_iter().collect()
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(all_subgroups(&cyclic(6, 100).unwrap(), &cfg()).unwrap().len(), 4);
        assert_eq!(all_subgroups(&symmetric(3, 100).unwrap(), &cfg()).unwrap().len(), 6);
        assert_eq!(all_subgroups(&quaternion8(100).unwrap(), &cfg()).unwrap().len(), 6);
        assert_eq!(all_subgroups(&symmetric(4, 100).unwrap(), &cfg()).unwrap().len(), 30);
        assert_eq!(all_subgroups(&alternating(5, 100).unwrap(), &cfg()).unwrap().len(), 59);
        assert_eq!(all_subgroups(&elementary_abelian(2, 3, 100).unwrap(), &cfg()).unwrap().len(), 16);
    }

    #[test]
    fn lattice_matches_brute_force() {
        for g in [
            symmetric(4, 100).unwrap(),
            dihedral(6, 100).unwrap(),
            quaternion8(100).unwrap(),
            elementary_abelian(2, 3, 100).unwrap(),
        ] {
            let lat = all_subgroups(&g, &cfg()).unwrap();
            let mut ours: Vec<Bitset> = lat.subgroups.iter().map(|h| h.members().clone()).collect();
            ours.sort();
            assert_eq!(ours, brute_subgroups(&g));
            let total: usize = lat.classes.iter().map(|c| c.len()).sum();
            assert_eq!(total, lat.len());
        }
    }

    #[test]
    fn maximal_subgroups_small() {
        let z5 = cyclic(5, 100).unwrap();
        let cat = maximal_subgroups(&z5, &cfg()).unwrap();
        assert_eq!(cat.len(), 1);
        assert!(cat.maximals[0].is_trivial());
        let v4 = elementary_abelian(2, 2, 100).unwrap();
        assert_eq!(maximal_subgroups(&v4, &cfg()).unwrap().len(), 3);
        let a5 = alternating(5, 100).unwrap();
        let cat = maximal_subgroups(&a5, &cfg()).unwrap();
        let mut orders: Vec<usize> = cat.maximals.iter().map(|m| m.order()).collect();
        orders.dedup();
        assert_eq!(orders, vec![6, 10, 12]);
        assert_eq!(cat.len(), 21);
        assert_eq!(cat.classes.len(), 3);
        for m in &cat.maximals {
            assert!(verify_maximal(&a5, m, usize::MAX));
        }
    }

    #[test]
    fn frattini_examples() {
        assert!(frattini(&symmetric(3, 100).unwrap(), &cfg()).unwrap().is_trivial());
        assert_eq!(frattini(&cyclic(4, 100).unwrap(), &cfg()).unwrap().order(), 2);
        assert_eq!(frattini(&quaternion8(100).unwrap(), &cfg()).unwrap().order(), 2);
        let w = wreath_cyclic(3, 1000).unwrap();
        let (q, _) = frattini_quotient(&w, &cfg()).unwrap();
        assert_eq!(q.order(), 9);
        assert!(is_frattini_free(&q, &cfg()).unwrap());
    }

    #[test]
    fn prime_powers() {
        assert!(is_prime_power(8));
        assert!(is_prime_power(7));
        assert!(!is_prime_power(6));
        assert!(!is_prime_power(1));
    }
}
