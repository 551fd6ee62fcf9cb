//! Semidirect products `V ⋊ S` and their subgroups of the form
//! `{(u + t - s·t, s) : u ∈ U, s ∈ K}`.

use super::linalg::{vadd, vsub, LinearSystem, Matrix, Subspace};
use super::module::*;
use crate::bitset::Bitset;
use crate::dimension::{i_rank, subgroups_in_general_position};
use crate::group::{ElemId, FiniteGroup, SubgroupSet};
use crate::perm::Permutation;
use crate::{Config, Error, Result};
use std::sync::Arc;

/// Regular representations larger than this are not built.
pub const MATERIALIZE_LIMIT: usize = 4096;

#[derive(Debug, Clone)]
pub struct SemidirectDescription {
    pub module: Arc<ModuleAction>,
    /// `V = W_1 ⊕ … ⊕ W_m`.
    pub summands: Vec<Subspace>,
    /// `v_k` spins to `W_k`.
    pub distinguished: Vec<DistinguishedVector>,
}

impl SemidirectDescription {
    pub fn new(
        module: Arc<ModuleAction>,
        summands: Vec<Subspace>,
        distinguished: Vec<DistinguishedVector>,
    ) -> Result<Self> {
        if !is_decomposition(&module, &summands) {
            return Err(Error::InvalidInput("summands are not an invariant direct sum decomposition".into()));
        }
        if distinguished.len() > summands.len() {
            return Err(Error::InvalidInput("more distinguished vectors than summands".into()));
        }
        for (k, v) in distinguished.iter().enumerate() {
            if v.coords.len() != module.dim() || spin(&module, &v.coords) != summands[k] {
                return Err(Error::InvalidInput(format!("vector {k} does not spin to summand {k}")));
            }
        }
        Ok(SemidirectDescription {
            module,
            summands,
            distinguished,
        })
    }

    pub fn top(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }

    /// `⊕_{j≠i} W_j`.
    pub fn complement_of(&self, i: usize) -> Subspace {
        let mut s = Subspace::zero(self.module.p(), self.module.dim());
        for (j, w) in self.summands.iter().enumerate() {
            if j != i {
                s = s.sum(w);
            }
        }
        s
    }
}

/// `{(u + t - s·t, s) : u ∈ U, s ∈ K}` for a `K`-invariant `U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredSubgroup {
    pub subspace: Subspace,
    /// Reduced modulo `subspace`.
    pub twist: Vec<u32>,
    pub top: SubgroupSet,
}

impl StructuredSubgroup {
    pub fn new(desc: &SemidirectDescription, subspace: Subspace, twist: &[u32], top: SubgroupSet) -> Result<Self> {
        let module = &desc.module;
        if top.parent_uid() != desc.top().uid() {
            return Err(Error::MixedParents);
        }
        if subspace.ambient() != module.dim() || twist.len() != module.dim() {
            return Err(Error::InvalidInput("dimension mismatch".into()));
        }
        for &s in top.generators() {
            let m = module.matrix(s);
            if subspace.basis().iter().any(|b| !subspace.contains(&m.mul_vec(b))) {
                return Err(Error::InvalidInput("subspace is not invariant under the top subgroup".into()));
            }
        }
        let twist = subspace.reduce(twist);
        Ok(StructuredSubgroup {
            subspace,
            twist,
            top,
        })
    }

    /// `t - s·t`.
    pub fn cocycle(&self, module: &ModuleAction, s: ElemId) -> Vec<u32> {
        vsub(&self.twist, &module.act(s, &self.twist), module.p())
    }

    pub fn contains(&self, module: &ModuleAction, w: &[u32], s: ElemId) -> bool {
        self.top.contains(s) && self.subspace.contains(&vsub(w, &self.cocycle(module, s), module.p()))
    }
}

/// Affine constraints `w ∈ U_i + c_i(s)` for several members at once.
struct Constraints<'a> {
    module: &'a ModuleAction,
    members: Vec<&'a StructuredSubgroup>,
    equations: Vec<Matrix>,
    system: LinearSystem,
    top: Bitset,
}

impl<'a> Constraints<'a> {
    fn new(desc: &'a SemidirectDescription, members: Vec<&'a StructuredSubgroup>) -> Self {
        let module = &*desc.module;
        let dim = module.dim();
        let equations: Vec<Matrix> = members.iter().map(|m| m.subspace.equations()).collect();
        let rows: Vec<Vec<u32>> = equations.iter().flat_map(Matrix::to_rows).collect();
        let stacked = if rows.is_empty() {
            Matrix::zeros(module.p(), 0, dim)
        } else {
            Matrix::from_rows(module.p(), &rows).expect("rectangular")
        };
        let mut top = Bitset::full(desc.top().order());
        for m in &members {
            top.intersect_with(m.top.members());
        }
        Constraints {
            module,
            members,
            equations,
            system: LinearSystem::new(&stacked),
            top,
        }
    }

    /// Some `w` with `(w, s)` in every member.
    fn solve(&self, s: ElemId) -> Option<Vec<u32>> {
        if !self.top.contains(s as usize) {
            return None;
        }
        let rhs: Vec<u32> = self
            .members
            .iter()
            .zip(&self.equations)
            .flat_map(|(m, e)| e.mul_vec(&m.cocycle(self.module, s)))
            .collect();
        self.system.solve(&rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredGp {
    pub holds: bool,
    /// For each member `j`, an element of the other members' intersection outside `j`.
    pub witnesses: Vec<Option<(Vec<u32>, ElemId)>>,
}

impl StructuredGp {
    pub fn missing(&self) -> Vec<usize> {
        (0..self.witnesses.len()).filter(|&j| self.witnesses[j].is_none()).collect()
    }
}

/// Checks general position by solving, for each member and each `s`, the
/// linear system cut out by the other members.
pub fn structured_general_position(desc: &SemidirectDescription, family: &[StructuredSubgroup]) -> StructuredGp {
    let module = &*desc.module;
    let p = module.p();
    let witnesses: Vec<Option<(Vec<u32>, ElemId)>> = (0..family.len())
        .map(|j| {
            let others: Vec<&StructuredSubgroup> =
                family.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, m)| m).collect();
            let cons = Constraints::new(desc, others);
            let target = &family[j];
            for s in desc.top().all_ids() {
                let Some(a) = cons.solve(s) else { continue };
                if !target.contains(module, &a, s) {
                    return Some((a, s));
                }
                let off = cons
                    .system
                    .kernel()
                    .iter()
                    .find(|l| !target.subspace.contains(l));
                if let Some(l) = off {
                    return Some((vadd(&a, l, p), s));
                }
            }
            None
        })
        .collect();
    StructuredGp {
        holds: witnesses.iter().all(Option::is_some),
        witnesses,
    }
}

/// `{s : (w, s) lies in every member for some w}`.
pub fn top_projection(desc: &SemidirectDescription, members: &[&StructuredSubgroup]) -> SubgroupSet {
    let cons = Constraints::new(desc, members.to_vec());
    let g = desc.top();
    let bits = Bitset::from_indices(
        g.order(),
        g.all_ids().filter(|&s| cons.solve(s).is_some()).map(|s| s as usize),
    );
    g.subgroup_from_bits(bits)
}

/// `V ⋊ S` as a permutation group, acting on itself by right multiplication.
#[derive(Debug)]
pub struct MaterializedSemidirect {
    pub group: FiniteGroup,
    module: Arc<ModuleAction>,
    /// Element whose image of the identity point is the given point.
    elem_at: Vec<ElemId>,
    point_of: Vec<usize>,
}

impl MaterializedSemidirect {
    fn vindex(&self, v: &[u32]) -> usize {
        let p = self.module.p() as usize;
        v.iter().rev().fold(0, |acc, &x| acc * p + x as usize)
    }

    fn point(&self, v: &[u32], s: ElemId) -> usize {
        self.vindex(v) * self.module.group().order() + s as usize
    }

    pub fn element_of(&self, v: &[u32], s: ElemId) -> ElemId {
        self.elem_at[self.point(v, s)]
    }

    pub fn coords(&self, x: ElemId) -> (Vec<u32>, ElemId) {
        decode(&self.module, self.point_of[x as usize])
    }

    pub fn subgroup_of(&self, h: &StructuredSubgroup) -> SubgroupSet {
        let bits = Bitset::from_indices(
            self.group.order(),
            self.group
                .all_ids()
                .filter(|&x| {
                    let (v, s) = self.coords(x);
                    h.contains(&self.module, &v, s)
                })
                .map(|x| x as usize),
        );
        self.group.subgroup_from_bits(bits)
    }

    /// The normal subgroup `V`.
    pub fn module_subgroup(&self) -> SubgroupSet {
        let bits = Bitset::from_indices(
            self.group.order(),
            self.group.all_ids().filter(|&x| self.coords(x).1 == 0).map(|x| x as usize),
        );
        self.group.subgroup_from_bits(bits)
    }

    /// The complement `S`.
    pub fn top_subgroup(&self) -> SubgroupSet {
        let bits = Bitset::from_indices(
            self.group.order(),
            self.group
                .all_ids()
                .filter(|&x| self.coords(x).0.iter().all(|&c| c == 0))
                .map(|x| x as usize),
        );
        self.group.subgroup_from_bits(bits)
    }
}

fn decode(module: &ModuleAction, point: usize) -> (Vec<u32>, ElemId) {
    let n = module.group().order();
    let p = module.p() as usize;
    let (mut vi, s) = (point / n, (point % n) as ElemId);
    let v = (0..module.dim())
        .map(|_| {
            let c = (vi % p) as u32;
            vi /= p;
            c
        })
        .collect();
    (v, s)
}

/// Builds `V ⋊ S` with `(v, s)(w, t) = (v + s·w, st)`.
pub fn materialize_semidirect(module: Arc<ModuleAction>, cap: usize) -> Result<MaterializedSemidirect> {
    let limit = cap.min(MATERIALIZE_LIMIT);
    let n = module.group().order();
    let size = (module.p() as usize)
        .checked_pow(module.dim() as u32)
        .and_then(|q| q.checked_mul(n))
        .filter(|&x| x <= limit)
        .ok_or_else(|| Error::cap("semidirect product order", limit as u64))?;
    let top = module.group().clone();
    let mut shell = MaterializedSemidirect {
        group: crate::group::trivial_group(),
        module: module.clone(),
        elem_at: Vec::new(),
        point_of: Vec::new(),
    };
    let points: Vec<(Vec<u32>, ElemId)> = (0..size).map(|x| decode(&module, x)).collect();
    let right_mul = |w: &[u32], t: ElemId| -> Result<Permutation> {
        let images = points
            .iter()
            .map(|(v, s)| {
                let nv = vadd(v, &module.act(*s, w), module.p());
                shell.point(&nv, top.mul(*s, t)) as u32
            })
            .collect();
        Permutation::from_images(images)
    };
    let mut gens = Vec::new();
    let zero = vec![0u32; module.dim()];
    for i in 0..module.dim() {
        let mut e = zero.clone();
        e[i] = 1;
        gens.push(right_mul(&e, 0)?);
    }
    for t in top.generator_ids() {
        gens.push(right_mul(&zero, t)?);
    }
    if gens.is_empty() {
        gens.push(Permutation::identity(size));
    }
    let group = FiniteGroup::from_generators(&gens, limit)?;
    if group.order() != size {
        return Err(Error::ConstructionFailed(format!("semidirect product has order {}", group.order())));
    }
    let mut elem_at = vec![0; size];
    let mut point_of = vec![0; size];
    for x in group.all_ids() {
        let pt = group.element(x).apply(0);
        elem_at[pt] = x;
        point_of[x as usize] = pt;
    }
    shell.group = group;
    shell.elem_at = elem_at;
    shell.point_of = point_of;
    Ok(shell)
}

#[derive(Debug, Clone)]
pub struct StructuredFamily {
    pub desc: SemidirectDescription,
    /// `M_1..M_m` followed by `T_1..T_n`.
    pub family: Vec<StructuredSubgroup>,
    pub irredundant: Vec<ElemId>,
    /// `H_k = Stab(v_k)`, in general position in `S`.
    pub subgroups: Vec<SubgroupSet>,
    /// Positions `k` whose spin stayed reducible because no component kept general position.
    pub replacement_failures: Vec<usize>,
}

impl StructuredFamily {
    /// `i(S)`.
    pub fn n(&self) -> usize {
        self.desc.distinguished.len()
    }

    /// Number of irreducible summands of `V`.
    pub fn m(&self) -> usize {
        self.desc.summands.len()
    }

    /// `π(R ∩ T_k) = H_k` for every `k`, with `R` the intersection of the `M_i`.
    pub fn projections_match(&self) -> bool {
        let m = self.m();
        let ms: Vec<&StructuredSubgroup> = self.family[..m].iter().collect();
        (0..self.n()).all(|k| {
            let mut with_t = ms.clone();
            with_t.push(&self.family[m + k]);
            top_projection(&self.desc, &with_t).same_members(&self.subgroups[k])
        })
    }
}

/// Structured family in `V ⋊ S` built from an irredundant set of size `i(S)`.
pub fn build_structured_family(s: Arc<FiniteGroup>, p: u32, cfg: &Config) -> Result<StructuredFamily> {
    require_coprime(p, s.order())?;
    let (n, wit) = i_rank(&s, cfg)?;
    let mut subgroups: Vec<SubgroupSet> = (0..n)
        .map(|i| {
            let rest: Vec<ElemId> = wit.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
            s.closure(&rest)
        })
        .collect();
    let induced: Vec<DistinguishedVector> = subgroups
        .iter()
        .map(|h| induce_trivial_module(s.clone(), h, p))
        .collect::<Result<_>>()?;
    let dim: usize = induced.iter().map(|d| d.module.dim()).sum();
    let module = if induced.is_empty() {
        Arc::new(ModuleAction::trivial(s.clone(), p, 0)?)
    } else {
        let parts: Vec<&ModuleAction> = induced.iter().map(|d| &*d.module).collect();
        Arc::new(ModuleAction::direct_sum(&parts)?)
    };
    let mut vectors = Vec::with_capacity(n);
    let mut off = 0;
    for d in &induced {
        let mut v = vec![0u32; dim];
        v[off..off + d.coords.len()].copy_from_slice(&d.coords);
        off += d.coords.len();
        vectors.push(v);
    }
    let mut replacement_failures = Vec::new();
    for k in 0..n {
        let x = spin(&module, &vectors[k]);
        let parts = decompose_subspace(&module, &x, cfg)?;
        if parts.len() <= 1 {
            continue;
        }
        let comps = components(&parts, &vectors[k])?;
        let mut chosen = None;
        for c in comps.iter().filter(|c| c.iter().any(|&a| a != 0)) {
            let mut trial = subgroups.clone();
            trial[k] = module.stabilizer(c);
            if subgroups_in_general_position(&s, &trial)? {
                chosen = Some((c.clone(), trial));
                break;
            }
        }
        match chosen {
            Some((c, trial)) => {
                vectors[k] = c;
                subgroups = trial;
            }
            None => replacement_failures.push(k),
        }
    }
    let mut summands: Vec<Subspace> = vectors.iter().map(|v| spin(&module, v)).collect();
    let mut covered = Subspace::zero(p, dim);
    for w in &summands {
        covered = covered.sum(w);
    }
    if covered.dim() != summands.iter().map(Subspace::dim).sum::<usize>() {
        return Err(Error::ConstructionFailed("spins of the distinguished vectors are not independent".into()));
    }
    if covered.dim() < dim {
        let rest = maschke_complement(&module, &covered)?;
        summands.extend(decompose_subspace(&module, &rest, cfg)?);
    }
    let distinguished: Vec<DistinguishedVector> = vectors
        .into_iter()
        .map(|v| DistinguishedVector::new(module.clone(), v))
        .collect::<Result<_>>()?;
    for (d, h) in distinguished.iter().zip(&subgroups) {
        if !d.stabilizer.same_members(h) {
            return Err(Error::ConstructionFailed("distinguished vector has the wrong stabilizer".into()));
        }
    }
    let desc = SemidirectDescription::new(module, summands, distinguished)?;
    let zero = vec![0u32; dim];
    let mut family = Vec::new();
    for i in 0..desc.summands.len() {
        family.push(StructuredSubgroup::new(&desc, desc.complement_of(i), &zero, s.whole())?);
    }
    for k in 0..n {
        let t = desc.distinguished[k].coords.clone();
        family.push(StructuredSubgroup::new(&desc, desc.complement_of(k), &t, s.whole())?);
    }
    Ok(StructuredFamily {
        desc,
        family,
        irredundant: wit,
        subgroups,
        replacement_failures,
    })
}
