//! General position, irredundant sets and the invariants built on them.

mod certificate;
mod rank;
mod search;
mod whiston;

pub use certificate::*;
pub use rank::*;
pub use search::*;
pub use whiston::*;

use crate::bitset::Bitset;
use crate::group::{ElemId, FiniteGroup, SubgroupSet};
use crate::lattice::MaximalCatalog;
use crate::{Error, Result};

/// A set of distinct subgroups of one parent, with its radical (the
/// intersection of all members).
#[derive(Debug, Clone)]
pub struct MaximalFamily {
    parent: u64,
    members: Vec<SubgroupSet>,
    /// Catalog positions, when the members came from a catalog.
    indices: Vec<usize>,
    radical: Bitset,
}

impl MaximalFamily {
    pub fn new(parent: &FiniteGroup, members: Vec<SubgroupSet>) -> Result<Self> {
        if members.iter().any(|m| m.parent_uid() != parent.uid()) {
            return Err(Error::MixedParents);
        }
        for (i, a) in members.iter().enumerate() {
            if members[..i].iter().any(|b| b.same_members(a)) {
                return Err(Error::InvalidInput("family members must be distinct".into()));
            }
        }
        let mut radical = Bitset::full(parent.order());
        for m in &members {
            radical.intersect_with(m.members());
        }
        Ok(MaximalFamily {
            parent: parent.uid(),
            members,
            indices: Vec::new(),
            radical,
        })
    }

    pub fn from_catalog(parent: &FiniteGroup, catalog: &MaximalCatalog, indices: &[usize]) -> Result<Self> {
        if catalog.parent != parent.uid() {
            return Err(Error::MixedParents);
        }
        let members = indices.iter().map(|&i| catalog.maximals[i].clone()).collect();
        let mut f = Self::new(parent, members)?;
        f.indices = indices.to_vec();
        Ok(f)
    }

    pub fn parent_uid(&self) -> u64 {
        self.parent
    }

    pub fn members(&self) -> &[SubgroupSet] {
        &self.members
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn radical(&self) -> &Bitset {
        &self.radical
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Intersection of all members except `skip`.
    pub fn intersection_without(&self, skip: usize) -> Bitset {
        let mut bits = Bitset::full(self.radical.len());
        for (i, m) in self.members.iter().enumerate() {
            if i != skip {
                bits.intersect_with(m.members());
            }
        }
        bits
    }

    /// Conjugate of every member by `x`.
    pub fn conjugate(&self, g: &FiniteGroup, x: ElemId) -> MaximalFamily {
        let members: Vec<SubgroupSet> = self.members.iter().map(|m| g.conjugate_subgroup(m, x)).collect();
        MaximalFamily::new(g, members).expect("conjugation preserves distinctness")
    }
}

/// Dropping any one set strictly enlarges the intersection, everything
/// taken inside `universe`. The empty family qualifies, and so does a single
/// set not containing the universe.
pub fn general_position_in(sets: &[&Bitset], universe: &Bitset) -> bool {
    let mut total = universe.clone();
    for s in sets {
        total.intersect_with(s);
    }
    let base = total.count();
    (0..sets.len()).all(|j| {
        let mut others = universe.clone();
        for (i, s) in sets.iter().enumerate() {
            if i != j {
                others.intersect_with(s);
            }
        }
        others.count() > base
    })
}

pub fn is_general_position(family: &MaximalFamily) -> bool {
    let sets: Vec<&Bitset> = family.members.iter().map(|m| m.members()).collect();
    general_position_in(&sets, &Bitset::full(family.radical.len()))
}

/// General position of arbitrary subgroups of one parent.
pub fn subgroups_in_general_position(g: &FiniteGroup, subs: &[SubgroupSet]) -> Result<bool> {
    if subs.iter().any(|m| m.parent_uid() != g.uid()) {
        return Err(Error::MixedParents);
    }
    let sets: Vec<&Bitset> = subs.iter().map(|m| m.members()).collect();
    Ok(general_position_in(&sets, &Bitset::full(g.order())))
}

/// No element lies in the subgroup generated by the others; with
/// `require_generating` the elements must also generate `g`.
pub fn is_irredundant(g: &FiniteGroup, elems: &[ElemId], require_generating: bool) -> bool {
    for (i, &h) in elems.iter().enumerate() {
        let rest: Vec<ElemId> = elems
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &x)| x)
            .collect();
        if g.closure(&rest).contains(h) {
            return false;
        }
    }
    !require_generating || g.closure(elems).order() == g.order()
}
