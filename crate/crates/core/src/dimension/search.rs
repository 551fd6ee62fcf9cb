//! Exact search for the largest family in general position.

use super::MaximalFamily;
use crate::bitset::Bitset;
use crate::group::{normalizer, FiniteGroup, SubgroupSet};
use crate::lattice::{conjugacy_partition, MaximalCatalog, Provenance};
use crate::{big_omega, Config, Error, Result};

/// Result of a possibly truncated search. When `complete` is false the
/// value is only a lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub value: usize,
    pub witness: Vec<usize>,
    pub complete: bool,
    pub nodes: u64,
}

/// Candidate sets inside a universe, with a symmetry class per candidate.
///
/// A family is enumerated once per orbit: its first member is the smallest
/// representative of the least class occurring among the `restricted`
/// members, and every other restricted member lies in a class at least as
/// large. Setting `restricted` only on some candidates forces at least one
/// of them into every family.
struct Space<'a> {
    cands: Vec<Bitset>,
    universe: Bitset,
    class_of: &'a [usize],
    classes: &'a [Vec<usize>],
    restricted: Vec<bool>,
}

struct Search<'a> {
    space: &'a Space<'a>,
    best: usize,
    witness: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Search<'_> {
    fn run(&mut self) {
        let sp = self.space;
        for (c, class) in sp.classes.iter().enumerate() {
            let first = class[0];
            if !sp.restricted[first] {
                continue;
            }
            let r = sp.universe.intersection(&sp.cands[first]);
            if r.count() == sp.universe.count() {
                continue;
            }
            let pool: Vec<usize> = (0..sp.cands.len())
                .filter(|&j| j != first && (!sp.restricted[j] || sp.class_of[j] >= c))
                .collect();
            self.chosen.push(first);
            let others = vec![sp.universe.clone()];
            self.descend(&r, &others, &pool);
            self.chosen.pop();
            if self.aborted {
                return;
            }
        }
    }

    /// `r` is the current radical and `others[j]` the intersection of every
    /// chosen member except the `j`-th.
    fn descend(&mut self, r: &Bitset, others: &[Bitset], pool: &[usize]) {
        let depth = self.chosen.len();
        if depth > self.best {
            self.best = depth;
            self.witness = self.chosen.clone();
        }
        let rc = r.count();
        if depth + big_omega(rc) as usize <= self.best {
            return;
        }
        let sp = self.space;
        let viable: Vec<usize> = pool
            .iter()
            .copied()
            .filter(|&c| {
                let cand = &sp.cands[c];
                let nr = r.intersection_count(cand);
                nr < rc && others.iter().all(|o| o.intersection_count(cand) > nr)
            })
            .collect();
        if depth + viable.len() <= self.best {
            return;
        }
        for (k, &c) in viable.iter().enumerate() {
            if depth + (viable.len() - k) <= self.best {
                return;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.aborted = true;
                return;
            }
            let cand = &sp.cands[c];
            let nr = r.intersection(cand);
            debug_assert!(nr.count() < rc, "radical must shrink");
            let mut next: Vec<Bitset> = others.iter().map(|o| o.intersection(cand)).collect();
            next.push(r.clone());
            self.chosen.push(c);
            self.descend(&nr, &next, &viable[k + 1..]);
            self.chosen.pop();
            if self.aborted {
                return;
            }
        }
    }
}

fn run_space(space: &Space, cfg: &Config) -> SearchOutcome {
    let mut s = Search {
        space,
        best: 0,
        witness: Vec::new(),
        chosen: Vec::new(),
        nodes: 0,
        budget: cfg.node_budget,
        aborted: false,
    };
    s.run();
    let mut witness = s.witness;
    witness.sort_unstable();
    SearchOutcome {
        value: s.best,
        witness,
        complete: !s.aborted,
        nodes: s.nodes,
    }
}

fn finish(g: &FiniteGroup, catalog: &MaximalCatalog, out: SearchOutcome, cfg: &Config) -> Result<(usize, MaximalFamily)> {
    if !out.complete {
        return Err(Error::cap(
            format!("general-position search nodes (best so far {})", out.value),
            cfg.node_budget,
        ));
    }
    Ok((out.value, MaximalFamily::from_catalog(g, catalog, &out.witness)?))
}

pub fn max_dim_search(g: &FiniteGroup, catalog: &MaximalCatalog, cfg: &Config) -> SearchOutcome {
    let space = Space {
        cands: catalog.maximals.iter().map(|m| m.members().clone()).collect(),
        universe: Bitset::full(g.order()),
        class_of: &catalog.class_of,
        classes: &catalog.classes,
        restricted: vec![true; catalog.len()],
    };
    run_space(&space, cfg)
}

/// `MaxDim(G)` over a complete catalog of maximal subgroups.
pub fn max_dim(g: &FiniteGroup, catalog: &MaximalCatalog, cfg: &Config) -> Result<(usize, MaximalFamily)> {
    if catalog.parent != g.uid() {
        return Err(Error::MixedParents);
    }
    finish(g, catalog, max_dim_search(g, catalog, cfg), cfg)
}

/// Largest general-position family containing at least one pullback entry.
pub fn max_dim_with_pullback(g: &FiniteGroup, catalog: &MaximalCatalog, cfg: &Config) -> SearchOutcome {
    let restricted = catalog
        .provenance
        .iter()
        .map(|p| matches!(p, Provenance::Pullback { .. }))
        .collect();
    let space = Space {
        cands: catalog.maximals.iter().map(|m| m.members().clone()).collect(),
        universe: Bitset::full(g.order()),
        class_of: &catalog.class_of,
        classes: &catalog.classes,
        restricted,
    };
    run_space(&space, cfg)
}

pub fn relative_maxdim_search(
    g: &FiniteGroup,
    h: &SubgroupSet,
    catalog: &MaximalCatalog,
    cfg: &Config,
) -> SearchOutcome {
    // only conjugation by the normalizer of `h` preserves the intersections
    let nh = normalizer(g, h);
    let (class_of, classes) = conjugacy_partition(g, &catalog.maximals, nh.generators());
    let space = Space {
        cands: catalog.maximals.iter().map(|m| m.members().intersection(h.members())).collect(),
        universe: h.members().clone(),
        class_of: &class_of,
        classes: &classes,
        restricted: vec![true; catalog.len()],
    };
    run_space(&space, cfg)
}

/// `MaxDim(G, H)`: general position is measured on the traces `M ∩ H`.
pub fn relative_maxdim(
    g: &FiniteGroup,
    h: &SubgroupSet,
    catalog: &MaximalCatalog,
    cfg: &Config,
) -> Result<(usize, MaximalFamily)> {
    if catalog.parent != g.uid() || h.parent_uid() != g.uid() {
        return Err(Error::MixedParents);
    }
    finish(g, catalog, relative_maxdim_search(g, h, catalog, cfg), cfg)
}

/// `MaxDim_H(N)` over a catalog of maximal invariant subgroups of `n`.
pub fn maxdim_under_action(
    g: &FiniteGroup,
    n: &SubgroupSet,
    invariant_catalog: &MaximalCatalog,
    cfg: &Config,
) -> Result<(usize, MaximalFamily)> {
    if invariant_catalog.parent != g.uid() || n.parent_uid() != g.uid() {
        return Err(Error::MixedParents);
    }
    let space = Space {
        cands: invariant_catalog.maximals.iter().map(|m| m.members().clone()).collect(),
        universe: n.members().clone(),
        class_of: &invariant_catalog.class_of,
        classes: &invariant_catalog.classes,
        restricted: vec![true; invariant_catalog.len()],
    };
    finish(g, invariant_catalog, run_space(&space, cfg), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::{general_position_in, is_general_position};
    use crate::group::*;
    use crate::lattice::{maximal_invariant_subgroups, maximal_subgroups, Actor};

    /// Largest general-position subset by trying every subset.
    fn brute_max(cands: &[Bitset], universe: &Bitset) -> usize {
        let k = cands.len();
        assert!(k <= 20);
        let mut best = 0;
        for mask in 0u32..(1 << k) {
            let sets: Vec<&Bitset> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| &cands[i]).collect();
            if sets.len() > best && general_position_in(&sets, universe) {
                best = sets.len();
            }
        }
        best
    }

    #[test]
    fn matches_brute_force_on_small_groups() {
        let cfg = Config::default();
        for g in [
            cyclic(6, 100).unwrap(),
            symmetric(3, 100).unwrap(),
            symmetric(4, 100).unwrap(),
            elementary_abelian(2, 3, 100).unwrap(),
            dihedral(6, 100).unwrap(),
            alternating(4, 100).unwrap(),
            quaternion8(100).unwrap(),
        ] {
            let cat = maximal_subgroups(&g, &cfg).unwrap();
            let cands: Vec<Bitset> = cat.maximals.iter().map(|m| m.members().clone()).collect();
            let (v, w) = max_dim(&g, &cat, &cfg).unwrap();
            assert_eq!(v, brute_max(&cands, &Bitset::full(g.order())), "{g:?}");
            assert_eq!(w.len(), v);
            assert!(is_general_position(&w));
        }
    }

    #[test]
    fn known_values() {
        let cfg = Config::default();
        let z2_4 = elementary_abelian(2, 4, 100).unwrap();
        let cat = maximal_subgroups(&z2_4, &cfg).unwrap();
        assert_eq!(max_dim(&z2_4, &cat, &cfg).unwrap().0, 4);
        let z6 = cyclic(6, 100).unwrap();
        assert_eq!(max_dim(&z6, &maximal_subgroups(&z6, &cfg).unwrap(), &cfg).unwrap().0, 2);
        let a5 = alternating(5, 100).unwrap();
        let cat = maximal_subgroups(&a5, &cfg).unwrap();
        let (v, w) = max_dim(&a5, &cat, &cfg).unwrap();
        assert_eq!(v, 3);
        assert!(is_general_position(&w));
    }

    #[test]
    fn relative_extremes() {
        let cfg = Config::default();
        let s4 = symmetric(4, 100).unwrap();
        let cat = maximal_subgroups(&s4, &cfg).unwrap();
        let full = max_dim(&s4, &cat, &cfg).unwrap().0;
        assert_eq!(relative_maxdim(&s4, &s4.whole(), &cat, &cfg).unwrap().0, full);
        assert_eq!(relative_maxdim(&s4, &s4.trivial_subgroup(), &cat, &cfg).unwrap().0, 0);
        // oracle on a proper subgroup: brute force over the 8 traces
        let a4 = derived_subgroup(&s4);
        let traces: Vec<Bitset> = cat.maximals.iter().map(|m| m.members().intersection(a4.members())).collect();
        assert!(traces.len() <= 20);
        assert_eq!(
            relative_maxdim(&s4, &a4, &cat, &cfg).unwrap().0,
            brute_max(&traces, a4.members())
        );
    }

    #[test]
    fn action_variants() {
        let cfg = Config::default();
        let z2_3 = elementary_abelian(2, 3, 100).unwrap();
        let inv = maximal_invariant_subgroups(&z2_3, &z2_3.whole(), &[], &cfg).unwrap();
        assert_eq!(maxdim_under_action(&z2_3, &z2_3.whole(), &inv, &cfg).unwrap().0, 3);
        // A4 acting on its Klein subgroup irreducibly
        let a4 = alternating(4, 100).unwrap();
        let v = derived_subgroup(&a4);
        let actors: Vec<Actor> = a4.generator_ids().into_iter().map(Actor::Conjugation).collect();
        let inv = maximal_invariant_subgroups(&a4, &v, &actors, &cfg).unwrap();
        assert_eq!(inv.len(), 1);
        assert_eq!(maxdim_under_action(&a4, &v, &inv, &cfg).unwrap().0, 1);
    }

    #[test]
    fn budget_reports_lower_bound() {
        let cfg = Config {
            node_budget: 2,
            ..Config::default()
        };
        let z2_4 = elementary_abelian(2, 4, 100).unwrap();
        let cat = maximal_subgroups(&z2_4, &cfg).unwrap();
        let out = max_dim_search(&z2_4, &cat, &cfg);
        assert!(!out.complete);
        assert!(matches!(max_dim(&z2_4, &cat, &cfg), Err(Error::CapExceeded { .. })));
    }
}
