//! Concrete finite groups given by permutation generators.
//!
//! Every element gets a stable [`ElemId`]: the position at which a
//! breadth-first walk from the identity first reaches it, multiplying on the
//! right by the generators in the order they were given.

mod families;
mod homomorphism;
mod product;
mod structure;

pub use families::*;
pub use homomorphism::*;
pub use product::*;
pub use structure::*;

use crate::bitset::Bitset;
use crate::perm::Permutation;
use crate::{Error, Result};
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

pub type ElemId = u32;

/// Groups up to this order keep a full multiplication table.
const TABLE_LIMIT: usize = 4096;

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

pub struct FiniteGroup {
    uid: u64,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, ElemId>,
    /// `rgen[x * k + j] = x * g_j`.
    rgen: Vec<ElemId>,
    /// Breadth-first tree: `x = parent[x].0 * g_{parent[x].1}`.
    parent: Vec<(ElemId, u32)>,
    inverse: Vec<ElemId>,
    orders: Vec<u32>,
    table: Option<Vec<u16>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl FiniteGroup {
    /// Enumerates the group generated by `perms`, refusing to grow past `cap`.
    pub fn from_generators(perms: &[Permutation], cap: usize) -> Result<Self> {
        if perms.is_empty() {
            return Err(Error::InvalidInput("no generators given".into()));
        }
        if cap == 0 {
            return Err(Error::InvalidInput("element cap must be positive".into()));
        }
        let degree = perms[0].degree();
        if perms.iter().any(|p| p.degree() != degree) {
            return Err(Error::InvalidInput("generators have different degrees".into()));
        }
        for p in perms {
            Permutation::from_images(p.images().to_vec())?;
        }
        let k = perms.len();
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut parent = vec![(0u32, u32::MAX)];
        let mut rgen: Vec<ElemId> = Vec::new();
        let mut head = 0;
        while head < elements.len() {
            for (j, g) in perms.iter().enumerate() {
                let y = elements[head].mul(g);
                let next = elements.len() as ElemId;
                let yid = *index.entry(y.clone()).or_insert(next);
                if yid == next {
                    if elements.len() >= cap {
                        return Err(Error::cap("group order", cap as u64));
                    }
                    elements.push(y);
                    parent.push((head as ElemId, j as u32));
                }
                rgen.push(yid);
            }
            head += 1;
        }
        let n = elements.len();
        debug_assert_eq!(rgen.len(), n * k);
        let inverse = elements
            .iter()
            .map(|e| index[&e.inverse()])
            .collect::<Vec<_>>();
        let orders = elements.iter().map(|e| e.order() as u32).collect();
        let mut g = FiniteGroup {
            uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
            degree,
            generators: perms.to_vec(),
            elements,
            index,
            rgen,
            parent,
            inverse,
            orders,
            table: None,
        };
        if n <= TABLE_LIMIT {
            let mut table = vec![0u16; n * n];
            for a in 0..n {
                let row = a * n;
                table[row] = a as u16;
                for b in 1..n {
                    let (pb, j) = g.parent[b];
                    let ap = table[row + pb as usize] as usize;
                    table[row + b] = g.rgen[ap * k + j as usize] as u16;
                }
            }
            g.table = Some(table);
        }
        Ok(g)
    }

    pub fn uid(&self) -> u64 {
        self.uid
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Element ids of the generators, in generator order.
    pub fn generator_ids(&self) -> Vec<ElemId> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    /// Breadth-first tree edge into `x`: `x = parent * g_j`.
    pub fn bfs_parent(&self, x: ElemId) -> Option<(ElemId, usize)> {
        if x == 0 {
            return None;
        }
        let (p, j) = self.parent[x as usize];
        Some((p, j as usize))
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    pub fn element(&self, x: ElemId) -> &Permutation {
        &self.elements[x as usize]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn id_of(&self, p: &Permutation) -> Option<ElemId> {
        self.index.get(p).copied()
    }

    pub fn same_group(&self, other: &FiniteGroup) -> bool {
        self.uid == other.uid
    }

    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let n = self.elements.len();
        if let Some(t) = &self.table {
            return t[a as usize * n + b as usize] as ElemId;
        }
        let k = self.generators.len();
        let mut path = [0u32; 128];
        let mut len = 0;
        let mut x = b;
        let mut spill = Vec::new();
        while x != 0 {
            let (p, j) = self.parent[x as usize];
            if len < path.len() {
                path[len] = j;
                len += 1;
            } else {
                spill.push(j);
            }
            x = p;
        }
        let mut acc = a;
        for &j in spill.iter().rev() {
            acc = self.rgen[acc as usize * k + j as usize];
        }
        for &j in path[..len].iter().rev() {
            acc = self.rgen[acc as usize * k + j as usize];
        }
        acc
    }

    #[inline]
    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inverse[a as usize]
    }

    /// `x^-1 * a * x`.
    #[inline]
    pub fn conj(&self, a: ElemId, x: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(x), a), x)
    }

    /// `a^-1 * b^-1 * a * b`.
    pub fn commutator(&self, a: ElemId, b: ElemId) -> ElemId {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    pub fn pow(&self, a: ElemId, mut e: u64) -> ElemId {
        let mut base = a;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn elem_order(&self, a: ElemId) -> u32 {
        self.orders[a as usize]
    }

    pub fn all_ids(&self) -> impl Iterator<Item = ElemId> {
        0..self.order() as ElemId
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_ids();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn trivial_subgroup(&self) -> SubgroupSet {
        SubgroupSet {
            parent: self.uid,
            members: Bitset::from_indices(self.order(), [0]),
            gens: Vec::new(),
            order: 1,
        }
    }

    pub fn whole(&self) -> SubgroupSet {
        SubgroupSet {
            parent: self.uid,
            members: Bitset::full(self.order()),
            gens: self.generator_ids(),
            order: self.order(),
        }
    }

    /// Smallest subgroup containing `seed`.
    pub fn closure(&self, seed: &[ElemId]) -> SubgroupSet {
        let mut h = self.trivial_subgroup();
        for &g in seed {
            h = self.join(&h, g);
        }
        h
    }

    /// `<h, g>`, built by adjoining whole right cosets of `h`.
    pub fn join(&self, h: &SubgroupSet, g: ElemId) -> SubgroupSet {
        debug_assert_eq!(h.parent, self.uid);
        if h.contains(g) {
            return h.clone();
        }
        let mut gens = h.gens.clone();
        gens.push(g);
        let base: Vec<ElemId> = h.elements().collect();
        let mut members = h.members.clone();
        let mut order = h.order;
        for &x in &base {
            members.insert(self.mul(x, g) as usize);
        }
        order += base.len();
        let mut reps = vec![0, g];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            i += 1;
            for &s in &gens {
                let x = self.mul(r, s);
                if !members.contains(x as usize) {
                    for &b in &base {
                        members.insert(self.mul(b, x) as usize);
                    }
                    order += base.len();
                    reps.push(x);
                }
            }
        }
        SubgroupSet {
            parent: self.uid,
            members,
            gens,
            order,
        }
    }

    /// Joins two subgroups.
    pub fn join_subgroups(&self, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
        let mut h = a.clone();
        for &g in &b.gens {
            h = self.join(&h, g);
        }
        h
    }

    /// Builds a subgroup record from a bitmap known to be a subgroup.
    pub fn subgroup_from_bits(&self, members: Bitset) -> SubgroupSet {
        let mut h = self.trivial_subgroup();
        for x in members.iter() {
            if !h.contains(x as ElemId) {
                h = self.join(&h, x as ElemId);
            }
        }
        debug_assert_eq!(h.members, members);
        h
    }

    /// Verifies that a bitmap is a subgroup (contains identity, closed).
    pub fn is_subgroup_bits(&self, members: &Bitset) -> bool {
        if members.len() != self.order() || !members.contains(0) {
            return false;
        }
        let gens: Vec<ElemId> = members.iter().map(|x| x as ElemId).collect();
        let h = self.closure(&gens);
        &h.members == members
    }

    pub fn conjugate_subgroup(&self, h: &SubgroupSet, x: ElemId) -> SubgroupSet {
        let mut members = Bitset::new(self.order());
        for a in h.elements() {
            members.insert(self.conj(a, x) as usize);
        }
        SubgroupSet {
            parent: self.uid,
            members,
            gens: h.gens.iter().map(|&g| self.conj(g, x)).collect(),
            order: h.order,
        }
    }

    pub fn conjugate_bits(&self, bits: &Bitset, x: ElemId) -> Bitset {
        let mut out = Bitset::new(self.order());
        for a in bits.iter() {
            out.insert(self.conj(a as ElemId, x) as usize);
        }
        out
    }
}

/// A subgroup stored as a dense membership bitmap plus generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubgroupSet {
    parent: u64,
    members: Bitset,
    gens: Vec<ElemId>,
    order: usize,
}

impl std::fmt::Debug for SubgroupSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubgroupSet")
            .field("order", &self.order)
            .field("gens", &self.gens)
            .finish()
    }
}

impl SubgroupSet {
    pub fn parent_uid(&self) -> u64 {
        self.parent
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &Bitset {
        &self.members
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.gens
    }

    #[inline]
    pub fn contains(&self, x: ElemId) -> bool {
        self.members.contains(x as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.members.iter().map(|x| x as ElemId)
    }

    pub fn is_subgroup_of(&self, other: &SubgroupSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Intersection; generators are recomputed from the bitmap.
    pub fn intersect(&self, group: &FiniteGroup, other: &SubgroupSet) -> SubgroupSet {
        debug_assert_eq!(self.parent, other.parent);
        group.subgroup_from_bits(self.members.intersection(&other.members))
    }

    pub fn same_members(&self, other: &SubgroupSet) -> bool {
        self.members == other.members
    }
}
