//! Named group recipes and the built-in corpus.

use crate::constructions::{materialize_semidirect, Matrix, ModuleAction};
use crate::group::*;
use crate::perm::Permutation;
use crate::{is_prime, Error, Result};
use std::sync::Arc;

/// A reproducible construction of a finite group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Recipe {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    ElementaryAbelian(usize, usize),
    Quaternion8,
    WreathCyclic(usize),
    Psl2(u32),
    DirectProduct(Box<Recipe>, Box<Recipe>),
    /// `F_p^d ⋊ S` with one `d×d` matrix per generator of `S`.
    Semidirect {
        top: Box<Recipe>,
        p: u32,
        matrices: Vec<Vec<Vec<u32>>>,
    },
    /// Explicit permutations on `degree` points.
    Permutations { degree: usize, gens: Vec<Permutation> },
}

impl Recipe {
    pub fn product(a: Recipe, b: Recipe) -> Recipe {
        Recipe::DirectProduct(Box::new(a), Box::new(b))
    }

    /// Rejects parameters outside the supported ranges.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        match self {
            Recipe::Cyclic(n) if *n == 0 => bad("cyclic order must be positive".into()),
            Recipe::Dihedral(n) if *n < 2 => bad("dihedral needs n ≥ 2".into()),
            Recipe::Symmetric(n) | Recipe::Alternating(n) if *n == 0 || *n > 6 => {
                bad(format!("degree {n} outside 1..=6"))
            }
            Recipe::ElementaryAbelian(p, k) if !is_prime(*p as u64) || *k == 0 => {
                bad(format!("elementaryAbelian needs a prime and k ≥ 1, got {p} {k}"))
            }
            Recipe::WreathCyclic(p) if !matches!(p, 2 | 3) => bad(format!("wreathCyclic needs p ∈ {{2, 3}}, got {p}")),
            Recipe::Psl2(p) if !is_prime(*p as u64) || !(5..=13).contains(p) => {
                Err(Error::UnsupportedPrime(*p))
            }
            Recipe::DirectProduct(a, b) => {
                a.validate()?;
                b.validate()
            }
            Recipe::Semidirect { top, p, matrices } => {
                top.validate()?;
                if !is_prime(*p as u64) {
                    return bad(format!("{p} is not prime"));
                }
                if matrices.is_empty() {
                    return bad("semidirect needs one matrix per generator".into());
                }
                Ok(())
            }
            Recipe::Permutations { degree, gens } => {
                if gens.is_empty() {
                    return bad("no generators".into());
                }
                if gens.iter().any(|g| g.degree() != *degree) {
                    return bad("generators of different degrees".into());
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn build(&self, cap: usize) -> Result<Arc<FiniteGroup>> {
        self.validate()?;
        Ok(match self {
            Recipe::Cyclic(n) => Arc::new(cyclic(*n, cap)?),
            Recipe::Dihedral(n) => Arc::new(dihedral(*n, cap)?),
            Recipe::Symmetric(n) => Arc::new(symmetric(*n, cap)?),
            Recipe::Alternating(n) => Arc::new(alternating(*n, cap)?),
            Recipe::ElementaryAbelian(p, k) => Arc::new(elementary_abelian(*p, *k, cap)?),
            Recipe::Quaternion8 => Arc::new(quaternion8(cap)?),
            Recipe::WreathCyclic(p) => Arc::new(wreath_cyclic(*p, cap)?),
            Recipe::Psl2(p) => Arc::new(psl2(*p as u64, cap)?),
            Recipe::DirectProduct(..) => self.build_product(cap)?.expect("product").group,
            Recipe::Semidirect { .. } => {
                let module = self.build_module(cap)?.expect("semidirect");
                Arc::new(materialize_semidirect(Arc::new(module), cap)?.group)
            }
            Recipe::Permutations { gens, .. } => Arc::new(FiniteGroup::from_generators(gens, cap)?),
        })
    }

    /// Factors and coordinates for direct products.
    pub fn build_product(&self, cap: usize) -> Result<Option<DirectProduct>> {
        let Recipe::DirectProduct(a, b) = self else {
            return Ok(None);
        };
        let (ga, gb) = (a.build(cap)?, b.build(cap)?);
        Ok(Some(direct_product(ga, gb, cap)?))
    }

    /// The module behind a semidirect recipe.
    pub fn build_module(&self, cap: usize) -> Result<Option<ModuleAction>> {
        let Recipe::Semidirect { top, p, matrices } = self else {
            return Ok(None);
        };
        let s = top.build(cap)?;
        let mats = matrices
            .iter()
            .map(|m| Matrix::from_rows(*p, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(ModuleAction::new(s, *p, mats)?))
    }

    /// Short human-readable name.
    pub fn name(&self) -> String {
        match self {
            Recipe::Cyclic(n) => format!("Z{n}"),
            Recipe::Dihedral(n) => format!("D{}", 2 * n),
            Recipe::Symmetric(n) => format!("S{n}"),
            Recipe::Alternating(n) => format!("A{n}"),
            Recipe::ElementaryAbelian(p, k) => format!("Z{p}^{k}"),
            Recipe::Quaternion8 => "Q8".into(),
            Recipe::WreathCyclic(p) => format!("Z{p}wrZ{p}"),
            Recipe::Psl2(p) => format!("PSL(2,{p})"),
            Recipe::DirectProduct(a, b) => format!("{}x{}", a.name(), b.name()),
            Recipe::Semidirect { top, p, matrices } => {
                let d = matrices.first().map_or(0, Vec::len);
                format!("F{p}^{d}:{}", top.name())
            }
            Recipe::Permutations { degree, gens } => format!("perm{degree}[{}]", gens.len()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub recipe: Recipe,
    /// Group order, recorded so filters need not build the group.
    pub order: usize,
}

fn entry(recipe: Recipe, order: usize) -> CorpusEntry {
    CorpusEntry {
        name: recipe.name(),
        recipe,
        order,
    }
}

fn semidirect(top: Recipe, p: u32, matrices: Vec<Vec<Vec<u32>>>) -> Recipe {
    Recipe::Semidirect {
        top: Box::new(top),
        p,
        matrices,
    }
}

use Recipe::{Alternating, Cyclic, Dihedral, ElementaryAbelian, Psl2, Quaternion8, Symmetric, WreathCyclic};

/// Groups of order at most 200 covering abelian, nilpotent, solvable,
/// simple and product cases.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in [2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 30] {
        out.push(entry(Cyclic(n), n));
    }
    for n in [3, 4, 5, 6, 8, 10] {
        out.push(entry(Dihedral(n), 2 * n));
    }
    out.push(entry(Symmetric(3), 6));
    out.push(entry(Symmetric(4), 24));
    out.push(entry(Symmetric(5), 120));
    out.push(entry(Alternating(4), 12));
    out.push(entry(Alternating(5), 60));
    for (p, k) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        out.push(entry(ElementaryAbelian(p, k), p.pow(k as u32)));
    }
    out.push(entry(Quaternion8, 8));
    out.push(entry(WreathCyclic(2), 8));
    out.push(entry(WreathCyclic(3), 81));
    out.push(entry(Psl2(7), 168));
    let products = [
        (Symmetric(3), Cyclic(5), 30),
        (Symmetric(3), Symmetric(3), 36),
        (Cyclic(2), Symmetric(4), 48),
        (Alternating(4), Cyclic(3), 36),
        (Quaternion8, Cyclic(2), 16),
        (Dihedral(4), Cyclic(3), 24),
        (Alternating(5), Cyclic(2), 120),
        (Cyclic(4), Cyclic(2), 8),
        (Alternating(4), Cyclic(2), 24),
        (Symmetric(3), Dihedral(5), 60),
    ];
    for (a, b, n) in products {
        out.push(entry(Recipe::product(a, b), n));
    }
    out.push(entry(semidirect(Cyclic(2), 3, vec![vec![vec![2, 0], vec![0, 2]]]), 18));
    out.push(entry(semidirect(Cyclic(3), 2, vec![vec![vec![0, 1], vec![1, 1]]]), 12));
    out.push(entry(semidirect(Cyclic(4), 5, vec![vec![vec![2]]]), 20));
    out.push(entry(semidirect(Cyclic(3), 7, vec![vec![vec![2]]]), 21));
    out.push(entry(
        semidirect(Cyclic(7), 2, vec![vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]]]),
        56,
    ));
    out.push(entry(semidirect(Cyclic(3), 5, vec![vec![vec![0, 4], vec![1, 4]]]), 75));
    out.push(entry(semidirect(Cyclic(4), 3, vec![vec![vec![0, 2], vec![1, 0]]]), 36));
    out
}

/// Factor pairs for the additivity sweep.
pub fn additivity_pairs() -> Vec<(Recipe, Recipe)> {
    vec![
        (Symmetric(3), Cyclic(5)),
        (Alternating(5), Symmetric(3)),
        (Symmetric(3), Symmetric(3)),
        (Cyclic(2), Symmetric(4)),
        (Alternating(4), Cyclic(3)),
        (Quaternion8, Cyclic(2)),
        (Dihedral(4), Cyclic(3)),
        (Alternating(5), Cyclic(2)),
        (Cyclic(4), Cyclic(2)),
        (Alternating(4), Cyclic(2)),
        (Symmetric(3), Dihedral(5)),
        (Cyclic(6), Cyclic(10)),
        (Alternating(5), Cyclic(3)),
        (Alternating(5), Alternating(4)),
        (Symmetric(4), Symmetric(3)),
        (Dihedral(4), Quaternion8),
        (ElementaryAbelian(2, 2), Symmetric(3)),
        (Alternating(4), Alternating(4)),
        (Symmetric(5), Cyclic(2)),
        (Alternating(5), Dihedral(4)),
        (Psl2(7), Cyclic(2)),
        (Alternating(5), Alternating(5)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_orders_are_recorded_correctly() {
        let entries = corpus();
        assert!(entries.len() >= 40);
        for e in &entries {
            let g = e.recipe.build(50_000).unwrap();
            assert_eq!(g.order(), e.order, "{}", e.name);
            assert!(e.order <= 200);
        }
    }

    #[test]
    fn builds_are_reproducible() {
        for e in corpus().iter().take(12) {
            let a = e.recipe.build(50_000).unwrap();
            let b = e.recipe.build(50_000).unwrap();
            assert_eq!(a.elements(), b.elements());
        }
    }

    #[test]
    fn validation() {
        assert!(Cyclic(0).validate().is_err());
        assert!(Symmetric(7).validate().is_err());
        assert!(matches!(Psl2(17).validate(), Err(Error::UnsupportedPrime(17))));
        assert!(ElementaryAbelian(4, 2).validate().is_err());
    }
}
