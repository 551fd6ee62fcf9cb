//! Splitting a general-position family along a normal subgroup.

use super::{general_position_in, is_general_position, MaximalFamily};
use crate::bitset::Bitset;
use crate::group::{is_normal, quotient_group, FiniteGroup, GroupMap, SubgroupSet};
use crate::{Config, Error, Result};

/// Families larger than this are not split exhaustively.
const MAX_SPLIT: usize = 20;

#[derive(Debug)]
pub struct WhistonSplit {
    /// Number of leading members whose traces on `N` are in general position.
    pub l: usize,
    /// Original positions, leading block first.
    pub order: Vec<usize>,
    pub reordered: MaximalFamily,
    /// Intersection of the leading block.
    pub r: SubgroupSet,
    pub quotient: FiniteGroup,
    pub projection: GroupMap,
    /// `π(R ∩ M_j)` for the trailing members, in `G/N`.
    pub quotient_family: Vec<SubgroupSet>,
}

/// Reorders `family` so that the traces `M_i ∩ N` of the first `l` members
/// are in general position with the smallest possible intersection, every
/// later member contains that intersection, and the images of `R ∩ M_j` for
/// the later members are in general position in `G/N`. Both properties are
/// checked and reported as [`Error::ConstructionFailed`] if they fail.
pub fn whiston_split(g: &FiniteGroup, family: &MaximalFamily, n: &SubgroupSet, cfg: &Config) -> Result<WhistonSplit> {
    if family.parent_uid() != g.uid() || n.parent_uid() != g.uid() {
        return Err(Error::MixedParents);
    }
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    if !is_general_position(family) {
        return Err(Error::InvalidInput("family is not in general position".into()));
    }
    let k = family.len();
    if k > MAX_SPLIT {
        return Err(Error::cap("family size for exhaustive split", MAX_SPLIT as u64));
    }
    let traces: Vec<Bitset> = family
        .members()
        .iter()
        .map(|m| m.members().intersection(n.members()))
        .collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for mask in 0u32..(1 << k) {
        let idx: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        let sets: Vec<&Bitset> = idx.iter().map(|&i| &traces[i]).collect();
        if !general_position_in(&sets, n.members()) {
            continue;
        }
        let mut inter = n.members().clone();
        for s in &sets {
            inter.intersect_with(s);
        }
        let key = (inter.count(), idx);
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
    }
    let (_, lead) = best.expect("the empty subfamily is always in general position");
    let l = lead.len();
    let mut d = n.members().clone();
    for &i in &lead {
        d.intersect_with(&traces[i]);
    }
    let trail: Vec<usize> = (0..k).filter(|i| !lead.contains(i)).collect();
    for &j in &trail {
        if !d.is_subset(family.members()[j].members()) {
            return Err(Error::ConstructionFailed(format!(
                "member {j} does not contain the minimal trace intersection"
            )));
        }
    }
    let mut rbits = Bitset::full(g.order());
    for &i in &lead {
        rbits.intersect_with(family.members()[i].members());
    }
    let r = g.subgroup_from_bits(rbits);
    let (quotient, projection) = quotient_group(g, n, cfg.element_cap)?;
    let quotient_family: Vec<SubgroupSet> = trail
        .iter()
        .map(|&j| {
            let rm = r.intersect(g, &family.members()[j]);
            projection.image_of(&quotient, &rm)
        })
        .collect();
    let sets: Vec<&Bitset> = quotient_family.iter().map(|h| h.members()).collect();
    if !general_position_in(&sets, &Bitset::full(quotient.order())) {
        return Err(Error::ConstructionFailed("quotient family is not in general position".into()));
    }
    let order: Vec<usize> = lead.iter().chain(&trail).copied().collect();
    let members = order.iter().map(|&i| family.members()[i].clone()).collect();
    let reordered = MaximalFamily::new(g, members)?;
    Ok(WhistonSplit {
        l,
        order,
        reordered,
        r,
        quotient,
        projection,
        quotient_family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::{i_rank, max_dim};
    use crate::group::*;
    use crate::lattice::maximal_subgroups;

    #[test]
    fn trivial_and_full_normal_subgroups() {
        let cfg = Config::default();
        let s4 = symmetric(4, 100).unwrap();
        let cat = maximal_subgroups(&s4, &cfg).unwrap();
        let (_, fam) = max_dim(&s4, &cat, &cfg).unwrap();
        let all = whiston_split(&s4, &fam, &s4.whole(), &cfg).unwrap();
        assert_eq!(all.l, fam.len());
        assert!(all.quotient_family.is_empty());
        let none = whiston_split(&s4, &fam, &s4.trivial_subgroup(), &cfg).unwrap();
        assert_eq!(none.l, 0);
        assert_eq!(none.quotient_family.len(), fam.len());
    }

    #[test]
    fn quotient_bound_on_s4() {
        let cfg = Config::default();
        let s4 = symmetric(4, 100).unwrap();
        let cat = maximal_subgroups(&s4, &cfg).unwrap();
        let (_, fam) = max_dim(&s4, &cat, &cfg).unwrap();
        for n in normal_subgroups(&s4, &cfg).unwrap() {
            let split = whiston_split(&s4, &fam, &n, &cfg).unwrap();
            let (iq, _) = i_rank(&split.quotient, &cfg).unwrap();
            assert!(fam.len() - split.l <= iq);
        }
    }
}
