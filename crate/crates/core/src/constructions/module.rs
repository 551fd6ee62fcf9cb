//! Linear actions of permutation groups over prime fields.

use super::linalg::{check_prime, is_zero, projective_points, Matrix, Subspace};
use crate::bitset::Bitset;
use crate::group::{ElemId, FiniteGroup, SubgroupSet};
use crate::{Config, Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Left action `s ↦ L_s` on column vectors with `L_{st} = L_s L_t`.
#[derive(Debug, Clone)]
pub struct ModuleAction {
    p: u32,
    dim: usize,
    group: Arc<FiniteGroup>,
    gens: Vec<Matrix>,
    elems: Vec<Matrix>,
}

impl ModuleAction {
    /// One matrix per generator of `group`, checked to define a homomorphism.
    pub fn new(group: Arc<FiniteGroup>, p: u32, gens: Vec<Matrix>) -> Result<Self> {
        check_prime(p)?;
        if gens.len() != group.generators().len() {
            return Err(Error::InvalidInput(format!(
                "{} matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        let dim = gens.first().map_or(0, |m| m.rows());
        for m in &gens {
            if m.p() != p || m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidInput("generator matrices must be square of one size".into()));
            }
            if dim > 0 && m.inverse().is_none() {
                return Err(Error::InvalidInput("generator matrix is singular".into()));
            }
        }
        let n = group.order();
        let mut elems = Vec::with_capacity(n);
        elems.push(Matrix::identity(p, dim));
        for x in 1..n as ElemId {
            let (par, j) = group.bfs_parent(x).expect("non-identity");
            let m = elems[par as usize].mul(&gens[j]);
            elems.push(m);
        }
        let gid = group.generator_ids();
        for x in group.all_ids() {
            for (j, &gj) in gid.iter().enumerate() {
                let y = group.mul(x, gj);
                if elems[y as usize] != elems[x as usize].mul(&gens[j]) {
                    return Err(Error::InvalidInput("matrices do not define a group action".into()));
                }
            }
        }
        Ok(ModuleAction {
            p,
            dim,
            group,
            gens,
            elems,
        })
    }

    pub fn trivial(group: Arc<FiniteGroup>, p: u32, dim: usize) -> Result<Self> {
        let k = group.generators().len();
        Self::new(group, p, vec![Matrix::identity(p, dim); k])
    }

    /// Block diagonal sum.
    pub fn direct_sum(parts: &[&ModuleAction]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidInput("empty direct sum".into()))?;
        if parts.iter().any(|m| !m.group.same_group(&first.group) || m.p != first.p) {
            return Err(Error::MixedParents);
        }
        let dim: usize = parts.iter().map(|m| m.dim).sum();
        let gens = (0..first.gens.len())
            .map(|j| {
                let mut big = Matrix::zeros(first.p, dim, dim);
                let mut off = 0;
                for m in parts {
                    let g = &m.gens[j];
                    for a in 0..m.dim {
                        for b in 0..m.dim {
                            big.set(off + a, off + b, g.get(a, b));
                        }
                    }
                    off += m.dim;
                }
                big
            })
            .collect();
        Self::new(first.group.clone(), first.p, gens)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn generator_matrices(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn matrix(&self, s: ElemId) -> &Matrix {
        &self.elems[s as usize]
    }

    pub fn act(&self, s: ElemId, v: &[u32]) -> Vec<u32> {
        self.elems[s as usize].mul_vec(v)
    }

    pub fn is_invariant(&self, w: &Subspace) -> bool {
        w.basis()
            .iter()
            .all(|b| self.gens.iter().all(|g| w.contains(&g.mul_vec(b))))
    }

    pub fn stabilizer(&self, v: &[u32]) -> SubgroupSet {
        let bits = Bitset::from_indices(
            self.group.order(),
            self.group
                .all_ids()
                .filter(|&s| self.act(s, v) == v)
                .map(|s| s as usize),
        );
        self.group.subgroup_from_bits(bits)
    }

    /// The action on an invariant subspace, in coordinates of its echelon basis.
    pub fn restrict(&self, w: &Subspace) -> Result<ModuleAction> {
        if !self.is_invariant(w) {
            return Err(Error::InvalidInput("subspace is not invariant".into()));
        }
        let k = w.dim();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let cols: Vec<Vec<u32>> = w
                    .basis()
                    .iter()
                    .map(|b| w.coordinates(&g.mul_vec(b)).expect("invariant"))
                    .collect();
                Matrix::from_columns(self.p, k, &cols)
            })
            .collect();
        ModuleAction::new(self.group.clone(), self.p, gens)
    }

    fn transposed(&self) -> Vec<Matrix> {
        self.gens.iter().map(Matrix::transpose).collect()
    }
}

fn spin_with(gens: &[Matrix], p: u32, dim: usize, v: &[u32]) -> Subspace {
    let mut s = Subspace::zero(p, dim);
    let mut queue = Vec::new();
    if s.insert(v) {
        queue.push(v.to_vec());
    }
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.mul_vec(&x);
            if s.insert(&y) {
                queue.push(y);
            }
        }
    }
    s
}

/// Smallest invariant subspace containing `v`.
pub fn spin(module: &ModuleAction, v: &[u32]) -> Subspace {
    spin_with(&module.gens, module.p, module.dim, v)
}

/// A vector of a module together with its stabilizer.
#[derive(Debug, Clone)]
pub struct DistinguishedVector {
    pub module: Arc<ModuleAction>,
    pub coords: Vec<u32>,
    pub stabilizer: SubgroupSet,
}

impl DistinguishedVector {
    pub fn new(module: Arc<ModuleAction>, coords: Vec<u32>) -> Result<Self> {
        if coords.len() != module.dim() {
            return Err(Error::InvalidInput("vector length differs from module dimension".into()));
        }
        let coords: Vec<u32> = coords.iter().map(|&x| x % module.p()).collect();
        let stabilizer = module.stabilizer(&coords);
        Ok(DistinguishedVector {
            module,
            coords,
            stabilizer,
        })
    }

    pub fn is_consistent(&self) -> bool {
        self.module.stabilizer(&self.coords).same_members(&self.stabilizer)
    }
}

pub fn require_coprime(p: u32, order: usize) -> Result<()> {
    check_prime(p)?;
    if order % p as usize == 0 {
        return Err(Error::PrimeDividesOrder { p, order });
    }
    Ok(())
}

/// Permutation module on the left cosets of `h`, with the vector that is 0
/// on the coset `h` and 1 elsewhere.
pub fn induce_trivial_module(s: Arc<FiniteGroup>, h: &SubgroupSet, p: u32) -> Result<DistinguishedVector> {
    if h.parent_uid() != s.uid() {
        return Err(Error::MixedParents);
    }
    require_coprime(p, s.order())?;
    let n = s.order();
    let mut coset_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for g in s.all_ids() {
        if coset_of[g as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(g);
        for x in h.elements() {
            coset_of[s.mul(g, x) as usize] = c;
        }
    }
    let dim = reps.len();
    let gens = s
        .generator_ids()
        .iter()
        .map(|&t| {
            let mut m = Matrix::zeros(p, dim, dim);
            for (c, &g) in reps.iter().enumerate() {
                m.set(coset_of[s.mul(t, g) as usize] as usize, c, 1);
            }
            m
        })
        .collect();
    let module = Arc::new(ModuleAction::new(s, p, gens)?);
    let mut f = vec![1u32; dim];
    f[0] = 0;
    let dv = DistinguishedVector::new(module, f)?;
    if !dv.stabilizer.same_members(h) {
        return Err(Error::ConstructionFailed("stabilizer of the induced vector differs from H".into()));
    }
    Ok(dv)
}

const RETRIES: usize = 50;
const TERMS: usize = 4;
const KERNEL_POINTS: usize = 2000;
const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

/// A proper nonzero submodule, or `None` if the module is irreducible.
pub fn find_submodule(module: &ModuleAction, rng: &mut ChaCha8Rng) -> Result<Option<Subspace>> {
    let (p, k) = (module.p, module.dim);
    if k <= 1 {
        return Ok(None);
    }
    let tgens = module.transposed();
    let n = module.group.order();
    let max_deg = if p <= 3 { 3 } else { 2 };
    for _ in 0..RETRIES {
        let mut alpha = Matrix::zeros(p, k, k);
        for _ in 0..TERMS {
            let s = rng.gen_range(0..n);
            let c = rng.gen_range(1..p);
            alpha = alpha.add(&module.elems[s].scale(c));
        }
        for deg in 1..=max_deg {
            for code in 0..(p as u64).pow(deg) {
                let mut theta = Matrix::identity(p, k);
                let mut rest = code;
                for _ in 0..deg {
                    let c = (rest % p as u64) as u32;
                    rest /= p as u64;
                    theta = theta.mul(&alpha).add_scalar(c);
                }
                let kernel = theta.kernel();
                if kernel.is_empty() {
                    continue;
                }
                let points = (p as u64).saturating_pow(kernel.len() as u32);
                if points / (p as u64 - 1) > KERNEL_POINTS as u64 {
                    continue;
                }
                for v in projective_points(p, &kernel) {
                    let w = spin(module, &v);
                    if w.dim() < k {
                        return Ok(Some(w));
                    }
                }
                let tk = theta.transpose().kernel();
                let w = spin_with(&tgens, p, k, &tk[0]);
                if w.dim() < k {
                    return Ok(Some(w.annihilator()));
                }
                return Ok(None);
            }
        }
    }
    if (p as u64).checked_pow(k as u32).map_or(false, |n| n <= EXHAUSTIVE_LIMIT) {
        let full: Vec<Vec<u32>> = Subspace::full(p, k).basis().to_vec();
        for v in projective_points(p, &full) {
            let w = spin(module, &v);
            if w.dim() < k {
                return Ok(Some(w));
            }
        }
        return Ok(None);
    }
    Err(Error::DecompositionBudgetExceeded { dim: k })
}

pub fn is_irreducible(module: &ModuleAction, cfg: &Config) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok(find_submodule(module, &mut rng)?.is_none())
}

/// Invariant complement of `w` from the averaged projection.
pub fn maschke_complement(module: &ModuleAction, w: &Subspace) -> Result<Subspace> {
    let (p, k) = (module.p, module.dim);
    require_coprime(p, module.group.order())?;
    let mut cols: Vec<Vec<u32>> = w.basis().to_vec();
    let mut span = w.clone();
    for i in 0..k {
        let mut e = vec![0; k];
        e[i] = 1;
        if span.insert(&e) {
            cols.push(e);
        }
    }
    let basis = Matrix::from_columns(p, k, &cols);
    let mut diag = Matrix::zeros(p, k, k);
    for i in 0..w.dim() {
        diag.set(i, i, 1);
    }
    let proj = basis.mul(&diag).mul(&basis.inverse().expect("basis"));
    let mut avg = Matrix::zeros(p, k, k);
    let g = &module.group;
    for s in g.all_ids() {
        let term = module.matrix(s).mul(&proj).mul(module.matrix(g.inv(s)));
        avg = avg.add(&term);
    }
    let avg = avg.scale(super::linalg::inv_mod((g.order() % p as usize) as u32, p));
    let c = Subspace::span(p, k, &avg.kernel());
    if c.dim() + w.dim() != k || c.sum(w).dim() != k || !module.is_invariant(&c) {
        return Err(Error::ConstructionFailed("averaged projection gave no invariant complement".into()));
    }
    Ok(c)
}

fn lift(w: &Subspace, local: &Subspace) -> Subspace {
    let vecs: Vec<Vec<u32>> = local.basis().iter().map(|c| w.combine(c)).collect();
    Subspace::span(w.p(), w.ambient(), &vecs)
}

fn decompose_rec(module: &ModuleAction, rng: &mut ChaCha8Rng, out: &mut Vec<Subspace>) -> Result<()> {
    if module.dim == 0 {
        return Ok(());
    }
    let Some(w) = find_submodule(module, rng)? else {
        out.push(Subspace::full(module.p, module.dim));
        return Ok(());
    };
    let c = maschke_complement(module, &w)?;
    for part in [w, c] {
        let sub = module.restrict(&part)?;
        let mut pieces = Vec::new();
        decompose_rec(&sub, rng, &mut pieces)?;
        out.extend(pieces.iter().map(|x| lift(&part, x)));
    }
    Ok(())
}

/// Irreducible invariant subspaces whose direct sum is the module.
pub fn module_decompose(module: &ModuleAction, cfg: &Config) -> Result<Vec<Subspace>> {
    require_coprime(module.p, module.group.order())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    decompose_rec(module, &mut rng, &mut out)?;
    Ok(out)
}

/// Decomposition of an invariant subspace, expressed in ambient coordinates.
pub fn decompose_subspace(module: &ModuleAction, w: &Subspace, cfg: &Config) -> Result<Vec<Subspace>> {
    let sub = module.restrict(w)?;
    Ok(module_decompose(&sub, cfg)?.iter().map(|x| lift(w, x)).collect())
}

/// Components of `v` along a direct sum decomposition.
pub fn components(parts: &[Subspace], v: &[u32]) -> Result<Vec<Vec<u32>>> {
    let p = parts.first().map_or(2, |w| w.p());
    let dim = v.len();
    let cols: Vec<Vec<u32>> = parts.iter().flat_map(|w| w.basis().iter().cloned()).collect();
    let m = Matrix::from_columns(p, dim, &cols);
    let sys = super::linalg::LinearSystem::new(&m);
    if !sys.kernel().is_empty() {
        return Err(Error::InvalidInput("subspaces are not independent".into()));
    }
    let coeffs = sys
        .solve(v)
        .ok_or_else(|| Error::InvalidInput("vector outside the sum".into()))?;
    let mut off = 0;
    Ok(parts
        .iter()
        .map(|w| {
            let c = &coeffs[off..off + w.dim()];
            off += w.dim();
            w.combine(c)
        })
        .collect())
}

/// Checks that `parts` are invariant, independent and span the module.
pub fn is_decomposition(module: &ModuleAction, parts: &[Subspace]) -> bool {
    let total: usize = parts.iter().map(Subspace::dim).sum();
    let mut sum = Subspace::zero(module.p, module.dim);
    for w in parts {
        sum = sum.sum(w);
    }
    total == module.dim && sum.dim() == module.dim && parts.iter().all(|w| module.is_invariant(w))
}

/// Every nonzero vector of `w` spins to all of `w`; exhaustive when small,
/// otherwise on random vectors.
pub fn spins_to_whole(module: &ModuleAction, w: &Subspace, rng: &mut ChaCha8Rng) -> bool {
    let p = module.p;
    if (p as u64).checked_pow(w.dim() as u32).map_or(false, |n| n <= EXHAUSTIVE_LIMIT) {
        return projective_points(p, w.basis())
            .iter()
            .all(|v| spin(module, v).dim() == w.dim());
    }
    (0..100).all(|_| {
        let c: Vec<u32> = (0..w.dim()).map(|_| rng.gen_range(0..p)).collect();
        let v = w.combine(&c);
        is_zero(&v) || spin(module, &v).dim() == w.dim()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    fn perm_module(g: Arc<FiniteGroup>, p: u32) -> ModuleAction {
        let n = g.degree();
        let gens = g
            .generators()
            .iter()
            .map(|perm| {
                let mut m = Matrix::zeros(p, n, n);
                for i in 0..n {
                    m.set(perm.apply(i), i, 1);
                }
                m
            })
            .collect();
        ModuleAction::new(g, p, gens).unwrap()
    }

    /// All invariant subspaces, by spinning every subset of at most two vectors.
    fn brute_invariant_dims(m: &ModuleAction) -> Vec<usize> {
        let full = Subspace::full(m.p(), m.dim());
        let pts = projective_points(m.p(), full.basis());
        let mut seen = std::collections::HashSet::new();
        for a in &pts {
            let wa = spin(m, a);
            seen.insert(wa.clone());
            for b in &pts {
                let w = wa.sum(&spin(m, b));
                seen.insert(w);
            }
        }
        let mut dims: Vec<usize> = seen.iter().map(Subspace::dim).collect();
        dims.sort();
        dims
    }

    #[test]
    fn permutation_module_of_s3() {
        let cfg = Config::default();
        let s3 = Arc::new(symmetric(3, 100).unwrap());
        let m = perm_module(s3, 5);
        assert_eq!(brute_invariant_dims(&m), vec![1, 2, 3]);
        let parts = module_decompose(&m, &cfg).unwrap();
        let mut dims: Vec<usize> = parts.iter().map(Subspace::dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        assert!(is_decomposition(&m, &parts));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(parts.iter().all(|w| spins_to_whole(&m, w, &mut rng)));
    }

    #[test]
    fn irreducible_and_doubled() {
        let cfg = Config::default();
        let z3 = Arc::new(cyclic(3, 100).unwrap());
        let rot = Matrix::from_rows(2, &[vec![0, 1], vec![1, 1]]).unwrap();
        let v = ModuleAction::new(z3.clone(), 2, vec![rot]).unwrap();
        assert!(is_irreducible(&v, &cfg).unwrap());
        assert_eq!(module_decompose(&v, &cfg).unwrap(), vec![Subspace::full(2, 2)]);
        let vv = ModuleAction::direct_sum(&[&v, &v]).unwrap();
        let parts = module_decompose(&vv, &cfg).unwrap();
        assert_eq!(parts.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![2, 2]);
        assert!(is_decomposition(&vv, &parts));
        // V ⊕ V has exactly the five 2-dimensional submodules of a projective line over F4.
        let twos = brute_invariant_dims(&vv).iter().filter(|&&d| d == 2).count();
        assert_eq!(twos, 5);
    }

    #[test]
    fn rejects_non_actions() {
        let z3 = Arc::new(cyclic(3, 100).unwrap());
        let bad = Matrix::from_rows(5, &[vec![2]]).unwrap();
        assert!(ModuleAction::new(z3, 5, vec![bad]).is_err());
    }

    #[test]
    fn induced_modules() {
        let s3 = Arc::new(symmetric(3, 100).unwrap());
        let t = s3.all_ids().map(|x| s3.closure(&[x])).find(|c| c.order() == 2).unwrap();
        let dv = induce_trivial_module(s3.clone(), &t, 5).unwrap();
        assert_eq!(dv.module.dim(), 3);
        assert!(dv.stabilizer.same_members(&t));
        assert!(dv.is_consistent());
        let whole = induce_trivial_module(s3.clone(), &s3.whole(), 5).unwrap();
        assert_eq!(whole.module.dim(), 1);
        assert!(is_zero(&whole.coords));
        assert!(matches!(
            induce_trivial_module(s3.clone(), &t, 3),
            Err(Error::PrimeDividesOrder { .. })
        ));

        let a4 = Arc::new(alternating(4, 100).unwrap());
        let sylow = a4.all_ids().map(|x| a4.closure(&[x])).find(|c| c.order() == 3).unwrap();
        let dv = induce_trivial_module(a4.clone(), &sylow, 5).unwrap();
        assert_eq!(dv.module.dim(), 4);
        let brute: Vec<ElemId> = a4
            .all_ids()
            .filter(|&s| dv.module.act(s, &dv.coords) == dv.coords)
            .collect();
        assert_eq!(brute, sylow.elements().collect::<Vec<_>>());
        let ones = vec![1u32; 4];
        assert_eq!(spin(&dv.module, &ones).dim(), 1);
        assert_eq!(spin(&dv.module, &[0, 0, 0, 0]).dim(), 0);
    }

    #[test]
    fn components_split_a_vector() {
        let s3 = Arc::new(symmetric(3, 100).unwrap());
        let m = perm_module(s3, 5);
        let parts = module_decompose(&m, &Config::default()).unwrap();
        let v = vec![1, 0, 0];
        let comps = components(&parts, &v).unwrap();
        let mut sum = vec![0; 3];
        for (c, w) in comps.iter().zip(&parts) {
            assert!(w.contains(c));
            sum = super::super::linalg::vadd(&sum, c, 5);
        }
        assert_eq!(sum, v);
    }
}
