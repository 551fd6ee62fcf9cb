//! Exact computation of dimension-like invariants of finite groups.
//!
//! The crate enumerates concrete permutation groups element by element and
//! computes `m(G)` (largest irredundant generating set), `i(G)` (largest
//! irredundant set), `MaxDim(G)` (largest family of maximal subgroups in
//! general position) together with relative and action variants. On top of
//! that it provides the constructions used to study these invariants: the
//! Goursat description of maximal subgroups of direct products, the subgroup
//! structure of `PSL(2, p)`, induced modules and split extensions `V ⋊ S`
//! whose general-position families are checked symbolically.

pub mod bitset;
pub mod constructions;
pub mod dimension;
pub mod group;
pub mod harness;
pub mod lattice;
pub mod perm;

pub use bitset::Bitset;
pub use group::{ElemId, FiniteGroup, GroupMap, MapKind, SubgroupSet};
pub use perm::Permutation;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cap exceeded: {what} (limit {limit})")]
    CapExceeded { what: String, limit: u64 },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("subgroups belong to different parent groups")]
    MixedParents,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("no maximal subgroup contains the given set; catalog is incomplete")]
    NoMaximalOvergroup,
    #[error("member {0} has an empty certificate difference; family is not in general position")]
    EmptyDifference(usize),
    #[error("construction post-condition violated: {0}")]
    ConstructionFailed(String),
    #[error("unsupported prime {0}")]
    UnsupportedPrime(u32),
    #[error("prime {p} divides group order {order}")]
    PrimeDividesOrder { p: u32, order: usize },
    #[error("module decomposition budget exceeded (dimension {dim})")]
    DecompositionBudgetExceeded { dim: usize },
    #[error("no irreducible component preserves general position: {0}")]
    ReplacementFailed(String),
}

impl Error {
    pub fn cap(what: impl Into<String>, limit: u64) -> Self {
        Error::CapExceeded {
            what: what.into(),
            limit,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Resource limits and the seed for every randomized subroutine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// Largest group that may be enumerated element by element.
    pub element_cap: usize,
    /// Largest group whose full subgroup lattice may be enumerated.
    pub lattice_cap: usize,
    /// Search nodes allowed per invariant computation.
    pub node_budget: u64,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            element_cap: 50_000,
            lattice_cap: 2_000,
            node_budget: 10_000_000,
            seed: 0x5eed,
        }
    }
}

/// Number of prime factors of `n`, counted with multiplicity.
pub fn big_omega(mut n: usize) -> u32 {
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            n /= d;
            count += 1;
        }
        d += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_counts_multiplicity() {
        assert_eq!(big_omega(1), 0);
        assert_eq!(big_omega(3600), 8);
        assert_eq!(big_omega(168), 5);
        assert_eq!(big_omega(97), 1);
    }
}
