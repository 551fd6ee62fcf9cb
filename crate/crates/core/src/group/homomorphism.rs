//! Homomorphisms given by generator images, and isomorphism search.

use super::{conjugacy_classes, maximal_normal_subgroups, quotient_group, ElemId, FiniteGroup, SubgroupSet};
use crate::bitset::Bitset;
use crate::{Config, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Homomorphism,
    Isomorphism,
    Projection,
    Embedding,
}

/// A homomorphism, stored as generator images plus the full element map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupMap {
    source: u64,
    target: u64,
    generator_images: Vec<ElemId>,
    map: Vec<ElemId>,
    kind: MapKind,
}

impl GroupMap {
    /// Extends `images` (one per source generator) along the source's
    /// breadth-first tree and checks every Cayley-graph edge.
    pub fn from_generator_images(
        source: &FiniteGroup,
        target: &FiniteGroup,
        images: &[ElemId],
        kind: MapKind,
    ) -> Result<Self> {
        let k = source.generators.len();
        if images.len() != k {
            return Err(Error::InvalidInput(format!(
                "expected {k} generator images, got {}",
                images.len()
            )));
        }
        if images.iter().any(|&y| y as usize >= target.order()) {
            return Err(Error::InvalidInput("generator image out of range".into()));
        }
        let n = source.order();
        let mut map = vec![0 as ElemId; n];
        for x in 1..n {
            let (p, j) = source.parent[x];
            map[x] = target.mul(map[p as usize], images[j as usize]);
        }
        for x in 0..n {
            for (j, &img) in images.iter().enumerate() {
                let y = source.rgen[x * k + j] as usize;
                if map[y] != target.mul(map[x], img) {
                    return Err(Error::InvalidInput(
                        "generator images do not define a homomorphism".into(),
                    ));
                }
            }
        }
        let gm = GroupMap {
            source: source.uid,
            target: target.uid,
            generator_images: images.to_vec(),
            map,
            kind,
        };
        if kind == MapKind::Isomorphism && !(gm.is_injective() && n == target.order()) {
            return Err(Error::InvalidInput("map is not bijective".into()));
        }
        Ok(gm)
    }

    pub fn source_uid(&self) -> u64 {
        self.source
    }

    pub fn target_uid(&self) -> u64 {
        self.target
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn generator_images(&self) -> &[ElemId] {
        &self.generator_images
    }

    #[inline]
    pub fn apply(&self, x: ElemId) -> ElemId {
        self.map[x as usize]
    }

    pub fn table(&self) -> &[ElemId] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.map.iter().all(|y| seen.insert(*y))
    }

    pub fn kernel(&self, source: &FiniteGroup) -> SubgroupSet {
        let bits = Bitset::from_indices(
            source.order(),
            self.map
                .iter()
                .enumerate()
                .filter(|(_, &y)| y == 0)
                .map(|(x, _)| x),
        );
        source.subgroup_from_bits(bits)
    }

    pub fn image_bits(&self, target: &FiniteGroup) -> Bitset {
        Bitset::from_indices(target.order(), self.map.iter().map(|&y| y as usize))
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, target: &FiniteGroup, sub: &SubgroupSet) -> SubgroupSet {
        let gens: Vec<ElemId> = sub.generators().iter().map(|&g| self.apply(g)).collect();
        target.closure(&gens)
    }

    pub fn is_surjective(&self, target: &FiniteGroup) -> bool {
        self.image_bits(target).count() == target.order()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupMap) -> GroupMap {
        assert_eq!(self.target, other.source);
        GroupMap {
            source: self.source,
            target: other.target,
            generator_images: self.generator_images.iter().map(|&y| other.apply(y)).collect(),
            map: self.map.iter().map(|&y| other.apply(y)).collect(),
            kind: MapKind::Homomorphism,
        }
    }
}

/// Per-element `(order, class size)` fingerprints.
fn fingerprints(g: &FiniteGroup) -> Vec<(u32, usize)> {
    let cc = conjugacy_classes(g);
    g.all_ids()
        .map(|x| (g.elem_order(x), cc.classes[cc.class_of[x as usize] as usize].len()))
        .collect()
}

/// A short generating list: a single generator or pair if one exists among
/// class representatives, else the original generators with redundant
/// ones dropped.
pub fn small_generating_set(g: &FiniteGroup) -> Vec<ElemId> {
    if g.order() == 1 {
        return Vec::new();
    }
    let cc = conjugacy_classes(g);
    let reps: Vec<ElemId> = cc.classes.iter().map(|c| c[0]).collect();
    let whole = g.order();
    for &x in &reps {
        if g.closure(&[x]).order() == whole {
            return vec![x];
        }
    }
    // try representatives of large element order first
    let mut by_order = reps.clone();
    by_order.sort_by_key(|&x| std::cmp::Reverse(g.elem_order(x)));
    for &x in by_order.iter().take(4) {
        let hx = g.closure(&[x]);
        for y in g.all_ids() {
            if !hx.contains(y) && g.join(&hx, y).order() == whole {
                return vec![x, y];
            }
        }
    }
    let mut gens = g.generator_ids();
    let mut i = 0;
    while i < gens.len() {
        let rest: Vec<ElemId> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &x)| x)
            .collect();
        if g.closure(&rest).order() == whole {
            gens = rest;
        } else {
            i += 1;
        }
    }
    gens
}

/// All isomorphisms `g → h`, in a deterministic order.
///
/// Backtracks over images of a short generating list of `g`, restricted to
/// elements with matching (order, class size) fingerprints and consistent
/// pairwise product orders.
pub fn isomorphisms(g: &FiniteGroup, h: &FiniteGroup, budget: u64) -> Result<Vec<GroupMap>> {
    search_isomorphisms(g, h, budget, false)
}

pub fn first_isomorphism(g: &FiniteGroup, h: &FiniteGroup, budget: u64) -> Result<Option<GroupMap>> {
    Ok(search_isomorphisms(g, h, budget, true)?.into_iter().next())
}

pub fn automorphisms(g: &FiniteGroup, budget: u64) -> Result<Vec<GroupMap>> {
    isomorphisms(g, g, budget)
}

fn search_isomorphisms(
    g: &FiniteGroup,
    h: &FiniteGroup,
    budget: u64,
    first_only: bool,
) -> Result<Vec<GroupMap>> {
    if g.order() != h.order() {
        return Ok(Vec::new());
    }
    let n = g.order();
    if n == 1 {
        let images = vec![0; g.generators.len()];
        return Ok(vec![GroupMap::from_generator_images(g, h, &images, MapKind::Isomorphism)?]);
    }
    let fg = fingerprints(g);
    let fh = fingerprints(h);
    let mut sg = fg.clone();
    let mut sh = fh.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return Ok(Vec::new());
    }
    let gens = small_generating_set(g);
    let candidates: Vec<Vec<ElemId>> = gens
        .iter()
        .map(|&s| h.all_ids().filter(|&y| fh[y as usize] == fg[s as usize]).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(gens.len());
    let mut nodes = 0u64;
    backtrack(g, h, &gens, &candidates, &mut chosen, &mut out, &mut nodes, budget, first_only)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[ElemId],
    candidates: &[Vec<ElemId>],
    chosen: &mut Vec<ElemId>,
    out: &mut Vec<GroupMap>,
    nodes: &mut u64,
    budget: u64,
    first_only: bool,
) -> Result<()> {
    if first_only && !out.is_empty() {
        return Ok(());
    }
    let level = chosen.len();
    if level == gens.len() {
        if let Some(map) = extend_to_isomorphism(g, h, gens, chosen) {
            out.push(map);
        }
        return Ok(());
    }
    for &y in &candidates[level] {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::cap("isomorphism search nodes", budget));
        }
        let s = gens[level];
        let consistent = (0..level).all(|i| {
            let a = gens[i];
            let b = chosen[i];
            g.elem_order(g.mul(a, s)) == h.elem_order(h.mul(b, y))
                && g.elem_order(g.mul(s, g.inv(a))) == h.elem_order(h.mul(y, h.inv(b)))
        });
        if !consistent {
            continue;
        }
        chosen.push(y);
        backtrack(g, h, gens, candidates, chosen, out, nodes, budget, first_only)?;
        chosen.pop();
    }
    Ok(())
}

fn extend_to_isomorphism(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[ElemId],
    images: &[ElemId],
) -> Option<GroupMap> {
    let n = g.order();
    let mut map = vec![ElemId::MAX; n];
    map[0] = 0;
    let mut queue = vec![0 as ElemId];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let xs = g.mul(x, s) as usize;
            let img = h.mul(map[x as usize], t);
            if map[xs] == ElemId::MAX {
                map[xs] = img;
                queue.push(xs as ElemId);
            } else if map[xs] != img {
                return None;
            }
        }
    }
    let mut seen = Bitset::new(n);
    for &y in &map {
        if !seen.insert(y as usize) {
            return None;
        }
    }
    let gen_images: Vec<ElemId> = g.generator_ids().iter().map(|&x| map[x as usize]).collect();
    Some(GroupMap {
        source: g.uid,
        target: h.uid,
        generator_images: gen_images,
        map,
        kind: MapKind::Isomorphism,
    })
}

/// Result of comparing the nonabelian simple quotients of two groups.
#[derive(Debug, Clone)]
pub struct SimpleQuotientMatch {
    pub found: bool,
    /// Index pairs into the two lists of maximal normal subgroups.
    pub pairs: Vec<(usize, usize)>,
}

/// Do `g` and `h` share a nonabelian simple quotient?
pub fn common_nonabelian_simple_quotient(
    g: &FiniteGroup,
    h: &FiniteGroup,
    cfg: &Config,
) -> Result<SimpleQuotientMatch> {
    let qg = nonabelian_simple_quotients(g, cfg)?;
    let qh = nonabelian_simple_quotients(h, cfg)?;
    let mut pairs = Vec::new();
    for (i, a) in &qg {
        for (j, b) in &qh {
            if first_isomorphism(a, b, cfg.node_budget)?.is_some() {
                pairs.push((*i, *j));
            }
        }
    }
    Ok(SimpleQuotientMatch {
        found: !pairs.is_empty(),
        pairs,
    })
}

fn nonabelian_simple_quotients(g: &FiniteGroup, cfg: &Config) -> Result<Vec<(usize, FiniteGroup)>> {
    let mut out = Vec::new();
    for (i, n) in maximal_normal_subgroups(g, cfg)?.iter().enumerate() {
        let (q, _) = quotient_group(g, n, cfg.element_cap)?;
        if !q.is_abelian() {
            out.push((i, q));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, cyclic, elementary_abelian, symmetric};

    const CAP: usize = 50_000;

    #[test]
    fn z4_not_klein() {
        let a = cyclic(4, CAP).unwrap();
        let b = elementary_abelian(2, 2, CAP).unwrap();
        assert!(isomorphisms(&a, &b, 1_000_000).unwrap().is_empty());
    }

    #[test]
    fn aut_z5_has_four_elements() {
        let z5 = cyclic(5, CAP).unwrap();
        assert_eq!(automorphisms(&z5, 1_000_000).unwrap().len(), 4);
    }

    #[test]
    fn aut_a5_has_120_elements() {
        let a5 = alternating(5, CAP).unwrap();
        let auts = automorphisms(&a5, 1_000_000).unwrap();
        assert_eq!(auts.len(), 120);
        // |Inn(A5)| = 60 and |Out(A5)| = 2
        assert_eq!(auts.len() / a5.order(), 2);
    }

    #[test]
    fn rejects_non_homomorphism() {
        let s3 = symmetric(3, CAP).unwrap();
        let z2 = cyclic(2, CAP).unwrap();
        // (0 1) -> 1 and (0 1 2) -> generator of Z2 is not a homomorphism
        let bad = GroupMap::from_generator_images(&s3, &z2, &[0, 1], MapKind::Homomorphism);
        assert!(bad.is_err());
        let sign = GroupMap::from_generator_images(&s3, &z2, &[1, 0], MapKind::Homomorphism).unwrap();
        assert_eq!(sign.kernel(&s3).order(), 3);
    }

    #[test]
    fn simple_quotient_matching() {
        let cfg = Config::default();
        let a5 = alternating(5, CAP).unwrap();
        let s5 = symmetric(5, CAP).unwrap();
        let s3 = symmetric(3, CAP).unwrap();
        let m = common_nonabelian_simple_quotient(&a5, &a5, &cfg).unwrap();
        assert!(m.found);
        assert_eq!(m.pairs, vec![(0, 0)]);
        assert!(!common_nonabelian_simple_quotient(&a5, &s5, &cfg).unwrap().found);
        assert!(!common_nonabelian_simple_quotient(&s3, &a5, &cfg).unwrap().found);
    }
}
