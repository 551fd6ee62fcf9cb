//! Subgroups stable under a set of automorphisms.

use super::{maximal_among, subgroups_of, MaximalCatalog, Provenance};
use crate::group::{ElemId, FiniteGroup, SubgroupSet};
use crate::{Config, Result};

/// Something acting on the parent group by automorphisms.
#[derive(Debug, Clone)]
pub enum Actor {
    /// `a ↦ x⁻¹ a x`.
    Conjugation(ElemId),
    /// An automorphism given as its full element table.
    Map(Vec<ElemId>),
}

impl Actor {
    pub fn apply(&self, g: &FiniteGroup, a: ElemId) -> ElemId {
        match self {
            Actor::Conjugation(x) => g.conj(a, *x),
            Actor::Map(t) => t[a as usize],
        }
    }

    pub fn stabilizes(&self, g: &FiniteGroup, h: &SubgroupSet) -> bool {
        h.generators().iter().all(|&a| h.contains(self.apply(g, a)))
    }
}

/// Subgroups of `n` stable under every actor, sorted by (order, bitmap).
pub fn invariant_subgroups(
    g: &FiniteGroup,
    n: &SubgroupSet,
    actors: &[Actor],
    cfg: &Config,
) -> Result<Vec<SubgroupSet>> {
    let lat = subgroups_of(g, n, cfg)?;
    Ok(lat
        .subgroups
        .into_iter()
        .filter(|h| actors.iter().all(|a| a.stabilizes(g, h)))
        .collect())
}

/// Proper invariant subgroups of `n` with no proper invariant overgroup.
pub fn maximal_invariant_subgroups(
    g: &FiniteGroup,
    n: &SubgroupSet,
    actors: &[Actor],
    cfg: &Config,
) -> Result<MaximalCatalog> {
    let inv = invariant_subgroups(g, n, actors, cfg)?;
    let maximals: Vec<SubgroupSet> = maximal_among(&inv, n.order())
        .into_iter()
        .map(|i| inv[i].clone())
        .collect();
    // conjugation by `n` may not preserve invariance, so every entry is its
    // own class here
    let k = maximals.len();
    Ok(MaximalCatalog {
        parent: g.uid(),
        provenance: vec![Provenance::Generic; k],
        maximals,
        class_of: (0..k).collect(),
        classes: (0..k).map(|i| vec![i]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;
    use crate::lattice::all_subgroups;

    #[test]
    fn trivial_action_on_klein() {
        let cfg = Config::default();
        let v4 = elementary_abelian(2, 2, 100).unwrap();
        let cat = maximal_invariant_subgroups(&v4, &v4.whole(), &[], &cfg).unwrap();
        assert_eq!(cat.len(), 3);
    }

    #[test]
    fn s3_on_a3() {
        let cfg = Config::default();
        let s3 = symmetric(3, 100).unwrap();
        let a3 = derived_subgroup(&s3);
        let actors: Vec<Actor> = s3.generator_ids().into_iter().map(Actor::Conjugation).collect();
        let cat = maximal_invariant_subgroups(&s3, &a3, &actors, &cfg).unwrap();
        assert_eq!(cat.len(), 1);
        assert!(cat.maximals[0].is_trivial());
    }

    #[test]
    fn wreath_base_under_top() {
        let cfg = Config::default();
        let w = wreath_cyclic(3, 1000).unwrap();
        let gens = w.generator_ids();
        let base = normal_closure_in(&w, &w.whole(), &[gens[0]]);
        let actors = [Actor::Conjugation(gens[1])];
        let inv = invariant_subgroups(&w, &base, &actors, &cfg).unwrap();
        // oracle: filter the whole lattice of the wreath product
        let all = all_subgroups(&w, &cfg).unwrap();
        let brute = all
            .subgroups
            .iter()
            .filter(|h| h.is_subgroup_of(&base))
            .filter(|h| h.elements().all(|a| h.contains(w.conj(a, gens[1]))))
            .count();
        assert_eq!(inv.len(), brute);
        // F3[x]/(x-1)^3 is uniserial: 0 < J^2 < J < V
        assert_eq!(inv.len(), 4);
        let cat = maximal_invariant_subgroups(&w, &base, &actors, &cfg).unwrap();
        assert_eq!(cat.len(), 1);
        assert_eq!(cat.maximals[0].order(), 9);
    }
}
