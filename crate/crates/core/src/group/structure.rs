//! Conjugacy, centralizers, normal structure and quotients.

use super::{ElemId, FiniteGroup, GroupMap, MapKind, SubgroupSet};
use crate::bitset::Bitset;
use crate::perm::Permutation;
use crate::{Config, Error, Result};
use std::collections::HashSet;

#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    /// Classes ordered by smallest member; members ascending.
    pub classes: Vec<Vec<ElemId>>,
    pub class_of: Vec<u32>,
}

pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyClasses {
    let n = g.order();
    let gens = g.generator_ids();
    let mut class_of = vec![u32::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != u32::MAX {
            continue;
        }
        let c = classes.len() as u32;
        let mut orbit = vec![x as ElemId];
        class_of[x] = c;
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            head += 1;
            for &s in &gens {
                let z = g.conj(y, s);
                if class_of[z as usize] == u32::MAX {
                    class_of[z as usize] = c;
                    orbit.push(z);
                }
            }
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    ConjugacyClasses { classes, class_of }
}

/// Elements commuting with every member of `elems`.
pub fn centralizer(g: &FiniteGroup, elems: &[ElemId]) -> SubgroupSet {
    let bits = Bitset::from_indices(
        g.order(),
        g.all_ids()
            .filter(|&x| elems.iter().all(|&e| g.mul(x, e) == g.mul(e, x)))
            .map(|x| x as usize),
    );
    g.subgroup_from_bits(bits)
}

pub fn normalizer(g: &FiniteGroup, sub: &SubgroupSet) -> SubgroupSet {
    let bits = Bitset::from_indices(
        g.order(),
        g.all_ids()
            .filter(|&x| sub.generators().iter().all(|&h| sub.contains(g.conj(h, x))))
            .map(|x| x as usize),
    );
    g.subgroup_from_bits(bits)
}

/// Is `sub` normalized by every element of `within` (default: all of `g`)?
pub fn is_normal_in(g: &FiniteGroup, sub: &SubgroupSet, within: &SubgroupSet) -> bool {
    within
        .generators()
        .iter()
        .all(|&x| sub.generators().iter().all(|&h| sub.contains(g.conj(h, x))))
}

pub fn is_normal(g: &FiniteGroup, sub: &SubgroupSet) -> bool {
    is_normal_in(g, sub, &g.whole())
}

/// Smallest subgroup containing `seed` and normalized by `within`.
pub fn normal_closure_in(g: &FiniteGroup, within: &SubgroupSet, seed: &[ElemId]) -> SubgroupSet {
    let mut h = g.closure(seed);
    loop {
        let mut grown = false;
        let hgens = h.generators().to_vec();
        for &a in &hgens {
            for &x in within.generators() {
                let c = g.conj(a, x);
                if !h.contains(c) {
                    h = g.join(&h, c);
                    grown = true;
                }
            }
        }
        if !grown {
            return h;
        }
    }
}

/// `[a, b]` for subgroups normalized by `within`, as the normal closure of
/// generator commutators.
fn commutator_subgroup(
    g: &FiniteGroup,
    a: &SubgroupSet,
    b: &SubgroupSet,
    within: &SubgroupSet,
) -> SubgroupSet {
    let seeds: Vec<ElemId> = a
        .generators()
        .iter()
        .flat_map(|&x| b.generators().iter().map(move |&y| (x, y)))
        .map(|(x, y)| g.commutator(x, y))
        .collect();
    normal_closure_in(g, within, &seeds)
}

pub fn derived_subgroup(g: &FiniteGroup) -> SubgroupSet {
    derived_subgroup_of(g, &g.whole())
}

pub fn derived_subgroup_of(g: &FiniteGroup, h: &SubgroupSet) -> SubgroupSet {
    commutator_subgroup(g, h, h, h)
}

pub fn is_solvable(g: &FiniteGroup, h: &SubgroupSet) -> bool {
    let mut cur = h.clone();
    loop {
        if cur.is_trivial() {
            return true;
        }
        let next = derived_subgroup_of(g, &cur);
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
}

/// Lower central series reaches the trivial group.
pub fn is_nilpotent(g: &FiniteGroup, h: &SubgroupSet) -> bool {
    let mut cur = h.clone();
    loop {
        if cur.is_trivial() {
            return true;
        }
        let next = commutator_subgroup(g, &cur, h, h);
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
}

/// All normal subgroups, as joins of normal closures of conjugacy classes,
/// sorted by (order, bitmap).
pub fn normal_subgroups(g: &FiniteGroup, cfg: &Config) -> Result<Vec<SubgroupSet>> {
    if g.order() > cfg.lattice_cap {
        return Err(Error::cap("normal subgroup enumeration order", cfg.lattice_cap as u64));
    }
    let cc = conjugacy_classes(g);
    let class_closures: Vec<SubgroupSet> = cc.classes.iter().map(|c| g.closure(c)).collect();
    let mut seen = HashSet::new();
    let triv = g.trivial_subgroup();
    seen.insert(triv.members().clone());
    let mut out = vec![triv];
    let mut head = 0;
    while head < out.len() {
        let n = out[head].clone();
        head += 1;
        for (ci, c) in cc.classes.iter().enumerate() {
            if n.contains(c[0]) {
                continue;
            }
            let k = g.join_subgroups(&n, &class_closures[ci]);
            if seen.insert(k.members().clone()) {
                out.push(k);
            }
        }
    }
    out.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
    Ok(out)
}

pub fn maximal_normal_subgroups(g: &FiniteGroup, cfg: &Config) -> Result<Vec<SubgroupSet>> {
    let all = normal_subgroups(g, cfg)?;
    let n = g.order();
    let proper: Vec<&SubgroupSet> = all.iter().filter(|h| h.order() < n).collect();
    Ok(proper
        .iter()
        .filter(|h| {
            !proper
                .iter()
                .any(|k| k.order() > h.order() && h.is_subgroup_of(k))
        })
        .map(|h| (*h).clone())
        .collect())
}

/// Intersection of the maximal normal subgroups.
pub fn rumpf(g: &FiniteGroup, cfg: &Config) -> Result<SubgroupSet> {
    let mut bits = Bitset::full(g.order());
    for m in maximal_normal_subgroups(g, cfg)? {
        bits.intersect_with(m.members());
    }
    Ok(g.subgroup_from_bits(bits))
}

pub fn is_simple(g: &FiniteGroup, cfg: &Config) -> Result<bool> {
    if g.order() == 1 {
        return Ok(false);
    }
    Ok(normal_subgroups(g, cfg)?.len() == 2)
}

/// `g / n` realized as the permutation action on the cosets of `n`.
/// A trivial `n` reuses the generators of `g` directly.
pub fn quotient_group(g: &FiniteGroup, n: &SubgroupSet, cap: usize) -> Result<(FiniteGroup, GroupMap)> {
    if n.parent_uid() != g.uid() {
        return Err(Error::MixedParents);
    }
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    if n.is_trivial() {
        let q = FiniteGroup::from_generators(g.generators(), cap)?;
        let images = q.generator_ids();
        let map = GroupMap::from_generator_images(g, &q, &images, MapKind::Projection)?;
        return Ok((q, map));
    }
    let order = g.order();
    let mut coset_of = vec![u32::MAX; order];
    let mut reps = Vec::new();
    let nelems: Vec<ElemId> = n.elements().collect();
    for x in g.all_ids() {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &a in &nelems {
            coset_of[g.mul(a, x) as usize] = c;
        }
    }
    let index = reps.len();
    let act = |s: ElemId| -> Permutation {
        let images: Vec<u32> = reps
            .iter()
            .map(|&r| coset_of[g.mul(r, s) as usize])
            .collect();
        Permutation::from_images(images).expect("coset action is a permutation")
    };
    let gen_perms: Vec<Permutation> = g.generator_ids().into_iter().map(act).collect();
    let q = FiniteGroup::from_generators(&gen_perms, cap)?;
    debug_assert_eq!(q.order() * n.order(), order);
    debug_assert_eq!(q.degree(), index);
    let images = q.generator_ids();
    let map = GroupMap::from_generator_images(g, &q, &images, MapKind::Projection)?;
    Ok((q, map))
}
