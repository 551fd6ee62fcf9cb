//! Maximal subgroups of `G × H` from those of the factors.

use super::{maximal_subgroups, verify_maximal, MaximalCatalog, Provenance};
use crate::bitset::Bitset;
use crate::group::{isomorphisms, maximal_normal_subgroups, quotient_group, DirectProduct, GroupMap};
use crate::{Config, Error, Result};

/// Number of outside elements tried when spot-checking each entry.
const SPOT_CHECK: usize = 8;

#[derive(Debug)]
pub struct ProductCatalog {
    pub catalog: MaximalCatalog,
    pub left: MaximalCatalog,
    pub right: MaximalCatalog,
    pub standard_left: usize,
    pub standard_right: usize,
    pub pullbacks: usize,
}

/// The maximal subgroups of a direct product are `M × H`, `G × M′` and the
/// graphs `{(x, y) : α(xN) = yN′}` of isomorphisms `α : G/N → H/N′` between
/// simple quotients.
pub fn maximal_subgroups_of_product(prod: &DirectProduct, cfg: &Config) -> Result<ProductCatalog> {
    let left = maximal_subgroups(&prod.left, cfg)?;
    let right = maximal_subgroups(&prod.right, cfg)?;
    let g = &*prod.group;
    let (n, m) = (prod.left.order(), prod.right.order());
    let mut entries = Vec::new();
    for mx in &left.maximals {
        let bits = Bitset::from_indices(
            g.order(),
            mx.elements()
                .flat_map(|a| (0..m as u32).map(move |b| (a, b)))
                .map(|(a, b)| prod.element_of(a, b) as usize),
        );
        entries.push((g.subgroup_from_bits(bits), Provenance::StandardLeft));
    }
    for my in &right.maximals {
        let bits = Bitset::from_indices(
            g.order(),
            my.elements()
                .flat_map(|b| (0..n as u32).map(move |a| (a, b)))
                .map(|(a, b)| prod.element_of(a, b) as usize),
        );
        entries.push((g.subgroup_from_bits(bits), Provenance::StandardRight));
    }
    let (standard_left, standard_right) = (left.len(), right.len());
    let ln = maximal_normal_subgroups(&prod.left, cfg)?;
    let rn = maximal_normal_subgroups(&prod.right, cfg)?;
    let lq: Vec<_> = ln
        .iter()
        .map(|k| quotient_group(&prod.left, k, cfg.element_cap))
        .collect::<Result<_>>()?;
    let rq: Vec<_> = rn
        .iter()
        .map(|k| quotient_group(&prod.right, k, cfg.element_cap))
        .collect::<Result<_>>()?;
    let mut pullbacks = 0;
    for (i, (qa, pa)) in lq.iter().enumerate() {
        for (j, (qb, pb)) in rq.iter().enumerate() {
            if qa.order() != qb.order() {
                continue;
            }
            for (k, alpha) in isomorphisms(qa, qb, cfg.node_budget)?.iter().enumerate() {
                let bits = pullback_bits(prod, pa, pb, alpha, qb.order());
                entries.push((
                    g.subgroup_from_bits(bits),
                    Provenance::Pullback {
                        left_normal: i,
                        right_normal: j,
                        iso: k,
                    },
                ));
                pullbacks += 1;
            }
        }
    }
    for (h, _) in &entries {
        if !verify_maximal(g, h, SPOT_CHECK) {
            return Err(Error::ConstructionFailed(format!(
                "product catalog entry of order {} is not maximal",
                h.order()
            )));
        }
    }
    Ok(ProductCatalog {
        catalog: MaximalCatalog::build(g, entries),
        left,
        right,
        standard_left,
        standard_right,
        pullbacks,
    })
}

fn pullback_bits(prod: &DirectProduct, pa: &GroupMap, pb: &GroupMap, alpha: &GroupMap, qorder: usize) -> Bitset {
    let mut fibres: Vec<Vec<u32>> = vec![Vec::new(); qorder];
    for b in prod.right.all_ids() {
        fibres[pb.apply(b) as usize].push(b);
    }
    let mut bits = Bitset::new(prod.group.order());
    for a in prod.left.all_ids() {
        for &b in &fibres[alpha.apply(pa.apply(a)) as usize] {
            bits.insert(prod.element_of(a, b) as usize);
        }
    }
    bits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, symmetric};
    use std::sync::Arc;

    #[test]
    fn s3_times_z5_is_standard_only() {
        let cfg = Config::default();
        let p = direct_product(
            Arc::new(symmetric(3, 100).unwrap()),
            Arc::new(cyclic(5, 100).unwrap()),
            1000,
        )
        .unwrap();
        let pc = maximal_subgroups_of_product(&p, &cfg).unwrap();
        assert_eq!(pc.catalog.len(), 5);
        assert_eq!(pc.pullbacks, 0);
        assert_eq!(pc.standard_left, 4);
        assert_eq!(pc.standard_right, 1);
        let generic = crate::lattice::maximal_subgroups(&p.group, &cfg).unwrap();
        assert!(pc.catalog.same_entries(&generic));
    }

    #[test]
    fn klein_from_two_z2() {
        let cfg = Config::default();
        let z2 = Arc::new(cyclic(2, 100).unwrap());
        let p = direct_product(z2.clone(), z2, 100).unwrap();
        let pc = maximal_subgroups_of_product(&p, &cfg).unwrap();
        assert_eq!(pc.catalog.len(), 3);
        assert_eq!(pc.pullbacks, 1);
    }
}
