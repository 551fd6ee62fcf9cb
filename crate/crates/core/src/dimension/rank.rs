//! Exact `m(G)` and `i(G)`.

use crate::group::{ElemId, FiniteGroup, SubgroupSet};
use crate::lattice::{conjugacy_partition, sort_subgroups};
use crate::{big_omega, Config, Error, Result};
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOutcome {
    pub value: usize,
    pub witness: Vec<ElemId>,
    pub complete: bool,
    pub nodes: u64,
}

/// Irredundancy depends only on the cyclic subgroups `⟨x⟩`, so the search
/// runs over one generator per nontrivial cyclic subgroup, with the first
/// one taken up to conjugacy.
struct RankSearch<'a> {
    g: &'a FiniteGroup,
    cyclics: Vec<SubgroupSet>,
    gens: Vec<ElemId>,
    generating_only: bool,
    best: usize,
    witness: Vec<ElemId>,
    chosen: Vec<ElemId>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl RankSearch<'_> {
    fn record(&mut self, span: &SubgroupSet) {
        let depth = self.chosen.len();
        if depth > self.best && (!self.generating_only || span.order() == self.g.order()) {
            self.best = depth;
            self.witness = self.chosen.clone();
        }
    }

    /// `span` is `⟨S⟩` and `closures[j]` is `⟨S ∖ s_j⟩`.
    fn descend(&mut self, span: &SubgroupSet, closures: &[SubgroupSet], pool: &[usize]) {
        self.record(span);
        let depth = self.chosen.len();
        let g = self.g;
        if span.order() == g.order() {
            return;
        }
        if depth + big_omega(g.order() / span.order()) as usize <= self.best {
            return;
        }
        let viable: Vec<usize> = pool
            .iter()
            .copied()
            .filter(|&c| {
                let x = self.gens[c];
                !span.contains(x)
                    && closures
                        .iter()
                        .zip(&self.chosen)
                        .all(|(cl, &s)| !g.join(cl, x).contains(s))
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
            let x = self.gens[c];
            let mut next: Vec<SubgroupSet> = closures.iter().map(|cl| g.join(cl, x)).collect();
            next.push(span.clone());
            let nspan = g.join(span, x);
            self.chosen.push(x);
            self.descend(&nspan, &next, &viable[k + 1..]);
            self.chosen.pop();
            if self.aborted {
                return;
            }
        }
    }
}

pub fn rank_search(g: &FiniteGroup, generating_only: bool, cfg: &Config) -> RankOutcome {
    let mut seen = HashSet::new();
    let mut cyclics = Vec::new();
    for x in g.all_ids().skip(1) {
        let c = g.closure(&[x]);
        if seen.insert(c.members().clone()) {
            cyclics.push(c);
        }
    }
    sort_subgroups(&mut cyclics);
    let (class_of, classes) = conjugacy_partition(g, &cyclics, &g.generator_ids());
    let gens: Vec<ElemId> = cyclics.iter().map(|c| c.elements().nth(1).expect("nontrivial")).collect();
    let mut s = RankSearch {
        g,
        cyclics,
        gens,
        generating_only,
        best: 0,
        witness: Vec::new(),
        chosen: Vec::new(),
        nodes: 0,
        budget: cfg.node_budget,
        aborted: false,
    };
    s.record(&g.trivial_subgroup());
    for (c, class) in classes.iter().enumerate() {
        let first = class[0];
        let pool: Vec<usize> = (0..s.cyclics.len())
            .filter(|&j| j != first && class_of[j] >= c)
            .collect();
        let x = s.gens[first];
        s.chosen.push(x);
        let span = s.cyclics[first].clone();
        s.descend(&span, &[g.trivial_subgroup()], &pool);
        s.chosen.pop();
        if s.aborted {
            break;
        }
    }
    RankOutcome {
        value: s.best,
        witness: s.witness,
        complete: !s.aborted,
        nodes: s.nodes,
    }
}

fn finish(out: RankOutcome, what: &str, cfg: &Config) -> Result<(usize, Vec<ElemId>)> {
    if !out.complete {
        return Err(Error::cap(format!("{what} search nodes (best so far {})", out.value), cfg.node_budget));
    }
    Ok((out.value, out.witness))
}

/// Largest irredundant generating set.
pub fn m_rank(g: &FiniteGroup, cfg: &Config) -> Result<(usize, Vec<ElemId>)> {
    finish(rank_search(g, true, cfg), "m(G)", cfg)
}

/// Largest irredundant set.
pub fn i_rank(g: &FiniteGroup, cfg: &Config) -> Result<(usize, Vec<ElemId>)> {
    finish(rank_search(g, false, cfg), "i(G)", cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::is_irredundant;
    use crate::group::*;

    /// Largest irredundant set by trying all element subsets of size ≤ 4.
    fn brute_rank(g: &FiniteGroup, generating_only: bool) -> usize {
        let n = g.order() as ElemId;
        let mut best = 0;
        let mut stack: Vec<Vec<ElemId>> = vec![vec![]];
        while let Some(s) = stack.pop() {
            if is_irredundant(g, &s, generating_only) {
                best = best.max(s.len());
            }
            if s.len() < 4 {
                let start = s.last().map_or(1, |&x| x + 1);
                for y in start..n {
                    let mut t = s.clone();
                    t.push(y);
                    if is_irredundant(g, &t, false) {
                        stack.push(t);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn matches_brute_force() {
        let cfg = Config::default();
        for g in [
            cyclic(6, 100).unwrap(),
            symmetric(3, 100).unwrap(),
            dihedral(4, 100).unwrap(),
            elementary_abelian(2, 3, 100).unwrap(),
            quaternion8(100).unwrap(),
            alternating(4, 100).unwrap(),
            dihedral(6, 100).unwrap(),
        ] {
            let (m, mw) = m_rank(&g, &cfg).unwrap();
            let (i, iw) = i_rank(&g, &cfg).unwrap();
            assert_eq!(m, brute_rank(&g, true), "{g:?}");
            assert_eq!(i, brute_rank(&g, false), "{g:?}");
            assert!(is_irredundant(&g, &mw, true));
            assert!(is_irredundant(&g, &iw, false));
        }
    }

    #[test]
    fn known_values() {
        let cfg = Config::default();
        let z2_4 = elementary_abelian(2, 4, 100).unwrap();
        assert_eq!(m_rank(&z2_4, &cfg).unwrap().0, 4);
        assert_eq!(i_rank(&z2_4, &cfg).unwrap().0, 4);
        let s4 = symmetric(4, 100).unwrap();
        assert_eq!(m_rank(&s4, &cfg).unwrap().0, 3);
        assert_eq!(i_rank(&s4, &cfg).unwrap().0, 3);
        let t = trivial_group();
        assert_eq!(m_rank(&t, &cfg).unwrap(), (0, vec![]));
    }
}
