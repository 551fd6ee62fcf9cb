//! `PSL(2, p)` with its maximal subgroups sorted into Dickson's types.

use crate::bitset::Bitset;
use crate::group::{alternating, first_isomorphism, normalizer, psl2, symmetric, FiniteGroup, SubgroupSet};
use crate::lattice::{maximal_subgroups, MaximalCatalog};
use crate::{is_prime, Config, Error, Result};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exceptional {
    A4,
    S4,
    A5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DicksonType {
    PointStab,
    DihedralMinus,
    DihedralPlus,
    Exceptional(Exceptional),
}

impl DicksonType {
    pub fn label(&self) -> String {
        match self {
            DicksonType::PointStab => "pointStab".into(),
            DicksonType::DihedralMinus => "dihedralMinus".into(),
            DicksonType::DihedralPlus => "dihedralPlus".into(),
            DicksonType::Exceptional(e) => format!("exceptional({e:?})"),
        }
    }
}

#[derive(Debug)]
pub struct Psl2Catalog {
    pub p: u32,
    pub group: FiniteGroup,
    pub maximals: MaximalCatalog,
    pub types: Vec<DicksonType>,
}

impl Psl2Catalog {
    /// Number of maximal subgroups of each type, keyed by label and order.
    pub fn type_counts(&self) -> BTreeMap<(String, usize), usize> {
        let mut out = BTreeMap::new();
        for (t, m) in self.types.iter().zip(&self.maximals.maximals) {
            *out.entry((t.label(), m.order())).or_default() += 1;
        }
        out
    }
}

fn fixes_a_point(g: &FiniteGroup, h: &SubgroupSet) -> bool {
    (0..g.degree()).any(|a| h.generators().iter().all(|&x| g.element(x).apply(a) == a))
}

/// A cyclic subgroup of index 2 whose complement consists of involutions.
fn is_dihedral(g: &FiniteGroup, h: &SubgroupSet) -> bool {
    let n = h.order();
    if n < 4 || n % 2 == 1 {
        return false;
    }
    h.elements().any(|c| {
        if g.elem_order(c) as usize != n / 2 {
            return false;
        }
        let cyc = g.closure(&[c]);
        h.elements().all(|x| cyc.contains(x) || g.elem_order(x) == 2)
    })
}

/// The subgroup as a permutation group in its own right.
pub fn subgroup_as_group(g: &FiniteGroup, h: &SubgroupSet, cap: usize) -> Result<FiniteGroup> {
    let gens: Vec<_> = if h.generators().is_empty() {
        vec![g.element(g.identity()).clone()]
    } else {
        h.generators().iter().map(|&x| g.element(x).clone()).collect()
    };
    FiniteGroup::from_generators(&gens, cap)
}

fn exceptional_type(g: &FiniteGroup, h: &SubgroupSet, cfg: &Config) -> Result<Option<Exceptional>> {
    let (kind, model) = match h.order() {
        12 => (Exceptional::A4, alternating(4, cfg.element_cap)?),
        24 => (Exceptional::S4, symmetric(4, cfg.element_cap)?),
        60 => (Exceptional::A5, alternating(5, cfg.element_cap)?),
        _ => return Ok(None),
    };
    let sub = subgroup_as_group(g, h, cfg.element_cap)?;
    Ok(first_isomorphism(&sub, &model, cfg.node_budget)?.map(|_| kind))
}

/// Builds `PSL(2, p)` for `5 ≤ p ≤ 13`, enumerates its maximal subgroups and
/// assigns each exactly one Dickson type.
pub fn build_psl2(p: u32, cfg: &Config) -> Result<Psl2Catalog> {
    if !is_prime(p as u64) || !(5..=13).contains(&p) {
        return Err(Error::UnsupportedPrime(p));
    }
    let group = psl2(p as u64, cfg.element_cap)?;
    let pu = p as usize;
    if group.order() != pu * (pu * pu - 1) / 2 {
        return Err(Error::ConstructionFailed(format!("|PSL(2,{p})| = {}", group.order())));
    }
    let maximals = maximal_subgroups(&group, cfg)?;
    let mut types = Vec::with_capacity(maximals.len());
    for m in &maximals.maximals {
        let mut hits = Vec::new();
        if m.order() == pu * (pu - 1) / 2 && fixes_a_point(&group, m) {
            hits.push(DicksonType::PointStab);
        }
        if m.order() == pu - 1 && is_dihedral(&group, m) {
            hits.push(DicksonType::DihedralMinus);
        }
        if m.order() == pu + 1 && is_dihedral(&group, m) {
            hits.push(DicksonType::DihedralPlus);
        }
        if let Some(e) = exceptional_type(&group, m, cfg)? {
            hits.push(DicksonType::Exceptional(e));
        }
        if hits.len() != 1 {
            return Err(Error::ConstructionFailed(format!(
                "maximal subgroup of order {} matched Dickson types {hits:?}",
                m.order()
            )));
        }
        types.push(hits[0]);
    }
    Ok(Psl2Catalog {
        p,
        group,
        maximals,
        types,
    })
}

/// Isomorphism label of a small subgroup: `1`, `Z{n}`, `Z2xZ2` or `order{n}`.
pub fn intersection_label(g: &FiniteGroup, h: &SubgroupSet) -> String {
    let n = h.order();
    if n == 1 {
        "1".into()
    } else if h.elements().any(|x| g.elem_order(x) as usize == n) {
        format!("Z{n}")
    } else if n == 4 {
        "Z2xZ2".into()
    } else {
        format!("order{n}")
    }
}

#[derive(Debug, Clone)]
pub struct CollinsCase {
    pub case: u8,
    pub description: String,
    /// The outcomes the table states.
    pub expected: Vec<String>,
    /// Whether every observation must be an expected outcome.
    pub exact: bool,
    pub observed: BTreeMap<String, usize>,
}

impl CollinsCase {
    pub fn unexpected(&self) -> Vec<(&String, usize)> {
        self.observed
            .iter()
            .filter(|(k, _)| !self.expected.contains(k))
            .map(|(k, &v)| (k, v))
            .collect()
    }

    /// Only expected outcomes, and at least one observation.
    pub fn holds(&self) -> bool {
        self.unexpected().is_empty() && !self.observed.is_empty()
    }

    pub fn discrepancies(&self) -> Vec<String> {
        self.unexpected()
            .into_iter()
            .map(|(k, v)| {
                format!(
                    "case ({}) {}: observed {k} x{v}, stated {}",
                    self.case,
                    self.description,
                    self.expected.join(" or ")
                )
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct CollinsReport {
    pub p: u32,
    pub cases: Vec<CollinsCase>,
}

impl CollinsReport {
    pub fn exact_cases_hold(&self) -> bool {
        self.cases.iter().filter(|c| c.exact).all(CollinsCase::holds)
    }

    /// Some stated outcome of `case` is observed in at least one of its subcases.
    pub fn stated_values_present(&self, case: u8) -> bool {
        self.cases
            .iter()
            .filter(|c| c.case == case)
            .any(|c| c.expected.iter().any(|e| c.observed.contains_key(e)))
    }

    pub fn outcomes_within(&self, case: u8, allowed: &[&str]) -> bool {
        self.cases
            .iter()
            .filter(|c| c.case == case)
            .all(|c| c.observed.keys().all(|k| allowed.contains(&k.as_str())))
    }

    pub fn discrepancies(&self) -> Vec<String> {
        self.cases.iter().flat_map(CollinsCase::discrepancies).collect()
    }
}

fn stabilizer_bits(g: &FiniteGroup, test: impl Fn(&crate::Permutation) -> bool) -> SubgroupSet {
    let bits = Bitset::from_indices(g.order(), g.all_ids().filter(|&x| test(g.element(x))).map(|x| x as usize));
    g.subgroup_from_bits(bits)
}

fn tally(g: &FiniteGroup, subs: impl Iterator<Item = SubgroupSet>) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for h in subs {
        *out.entry(intersection_label(g, &h)).or_default() += 1;
    }
    out
}

/// Intersections of point stabilizers `G_a`, stabilizers `G_{a,b}` of pairs
/// of points of the projective line, and normalizers of the nonsplit tori
/// (stabilizers of conjugate pairs over `F_{p²}`).
pub fn collins_table(cat: &Psl2Catalog) -> CollinsReport {
    let g = &cat.group;
    let p = cat.p as usize;
    let pts = p + 1;
    let point: Vec<SubgroupSet> = (0..pts).map(|a| stabilizer_bits(g, |x| x.apply(a) == a)).collect();
    let mut pairs = Vec::new();
    let mut pair_stab = Vec::new();
    for a in 0..pts {
        for b in a + 1..pts {
            pairs.push((a, b));
            pair_stab.push(stabilizer_bits(g, |x| {
                let (u, v) = (x.apply(a), x.apply(b));
                (u == a && v == b) || (u == b && v == a)
            }));
        }
    }
    let torus_order = (p + 1) / 2;
    let mut tori: Vec<Bitset> = Vec::new();
    let mut nonsplit = Vec::new();
    for x in g.all_ids() {
        if g.elem_order(x) as usize == torus_order {
            let c = g.closure(&[x]);
            if !tori.contains(c.members()) {
                tori.push(c.members().clone());
                nonsplit.push(normalizer(g, &c));
            }
        }
    }
    let meet = |a: &SubgroupSet, b: &SubgroupSet| a.intersect(g, b);

    let case1 = tally(
        g,
        (0..pts).flat_map(|a| (a + 1..pts).map(move |b| (a, b))).map(|(a, b)| meet(&point[a], &point[b])),
    );
    let case2 = tally(
        g,
        (0..pts)
            .flat_map(|a| (a + 1..pts).flat_map(move |b| (b + 1..pts).map(move |c| (a, b, c))))
            .map(|(a, b, c)| meet(&meet(&point[a], &point[b]), &point[c])),
    );
    let case3_split = tally(
        g,
        (0..pts)
            .flat_map(|a| pairs.iter().enumerate().map(move |(k, &pr)| (a, k, pr)))
            .filter(|&(a, _, (b, c))| a != b && a != c)
            .map(|(a, k, _)| meet(&point[a], &pair_stab[k])),
    );
    let case3_nonsplit = tally(
        g,
        (0..pts)
            .flat_map(|a| (0..nonsplit.len()).map(move |k| (a, k)))
            .map(|(a, k)| meet(&point[a], &nonsplit[k])),
    );
    let disjoint = |i: usize, j: usize| {
        let ((a, b), (c, d)) = (pairs[i], pairs[j]);
        a != c && a != d && b != c && b != d
    };
    let case4_split = tally(
        g,
        (0..pairs.len())
            .flat_map(|i| (i + 1..pairs.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| disjoint(i, j))
            .map(|(i, j)| meet(&pair_stab[i], &pair_stab[j])),
    );
    let case4_nonsplit = tally(
        g,
        (0..nonsplit.len())
            .flat_map(|i| (i + 1..nonsplit.len()).map(move |j| (i, j)))
            .map(|(i, j)| meet(&nonsplit[i], &nonsplit[j])),
    );
    let case4_mixed = tally(
        g,
        (0..pairs.len())
            .flat_map(|i| (0..nonsplit.len()).map(move |j| (i, j)))
            .map(|(i, j)| meet(&pair_stab[i], &nonsplit[j])),
    );
    let z_half = if (p - 1) / 2 == 1 { "1".to_string() } else { format!("Z{}", (p - 1) / 2) };
    let small = vec!["1".to_string(), "Z2".to_string()];
    let klein = vec!["Z2xZ2".to_string()];
    let case = |case, description: &str, expected: Vec<String>, exact, observed| CollinsCase {
        case,
        description: description.into(),
        expected,
        exact,
        observed,
    };
    CollinsReport {
        p: cat.p,
        cases: vec![
            case(1, "G_a ∩ G_b", vec![z_half], true, case1),
            case(2, "G_a ∩ G_b ∩ G_c", vec!["1".into()], true, case2),
            case(3, "G_a ∩ G_{b,c}, b,c in F_p ∪ {∞}, a ∉ {b,c}", small.clone(), false, case3_split),
            case(3, "G_a ∩ G_{b,c}, b,c conjugate in F_p²", small, false, case3_nonsplit),
            case(4, "G_{a,b} ∩ G_{c,d}, disjoint pairs in F_p ∪ {∞}", klein.clone(), false, case4_split),
            case(4, "G_{a,b} ∩ G_{c,d}, distinct conjugate pairs in F_p²", klein.clone(), false, case4_nonsplit),
            case(4, "G_{a,b} ∩ G_{c,d}, one rational and one conjugate pair", klein, false, case4_mixed),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(cat: &Psl2Catalog, t: DicksonType) -> usize {
        cat.types.iter().filter(|&&x| x == t).count()
    }

    #[test]
    fn dickson_types_small_primes() {
        let cfg = Config::default();
        let c5 = build_psl2(5, &cfg).unwrap();
        assert_eq!(c5.group.order(), 60);
        assert!(first_isomorphism(&c5.group, &alternating(5, 100).unwrap(), cfg.node_budget)
            .unwrap()
            .is_some());
        let a5 = alternating(5, 100).unwrap();
        assert_eq!(c5.maximals.len(), maximal_subgroups(&a5, &cfg).unwrap().len());
        assert_eq!(count(&c5, DicksonType::PointStab), 6);
        assert_eq!(count(&c5, DicksonType::DihedralPlus), 10);
        assert_eq!(count(&c5, DicksonType::Exceptional(Exceptional::A4)), 5);

        let c7 = build_psl2(7, &cfg).unwrap();
        assert_eq!(c7.group.order(), 168);
        assert_eq!(count(&c7, DicksonType::PointStab), 8);
        assert_eq!(count(&c7, DicksonType::Exceptional(Exceptional::S4)), 14);
        assert!(c7
            .types
            .iter()
            .zip(&c7.maximals.maximals)
            .all(|(t, m)| *t != DicksonType::PointStab || m.order() == 21));
        assert!(matches!(build_psl2(4, &cfg), Err(Error::UnsupportedPrime(4))));
        assert!(matches!(build_psl2(17, &cfg), Err(Error::UnsupportedPrime(17))));
    }

    #[test]
    fn collins_exact_cases() {
        let cfg = Config::default();
        for p in [5, 7] {
            let cat = build_psl2(p, &cfg).unwrap();
            let rep = collins_table(&cat);
            assert!(rep.exact_cases_hold(), "{rep:?}");
            let n = (p + 1) as usize;
            assert_eq!(rep.cases[0].observed.values().sum::<usize>(), n * (n - 1) / 2);
        }
        let rep = collins_table(&build_psl2(7, &cfg).unwrap());
        assert!(rep.cases[2].observed.keys().all(|k| k == "1" || k == "Z2"));
        assert!(rep.stated_values_present(3) && rep.stated_values_present(4));
        assert!(rep.outcomes_within(3, &["1", "Z2", "Z2xZ2"]));
        assert!(rep.outcomes_within(4, &["1", "Z2", "Z2xZ2"]));
    }

    #[test]
    fn labels() {
        let v4 = crate::group::elementary_abelian(2, 2, 100).unwrap();
        assert_eq!(intersection_label(&v4, &v4.whole()), "Z2xZ2");
        assert_eq!(intersection_label(&v4, &v4.trivial_subgroup()), "1");
        let s3 = symmetric(3, 100).unwrap();
        assert_eq!(intersection_label(&s3, &s3.whole()), "order6");
    }
}
