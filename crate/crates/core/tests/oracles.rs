//! Library results against exhaustive enumeration on small groups.

use maxdim_core::bitset::Bitset;
use maxdim_core::dimension::{i_rank, m_rank, max_dim};
use maxdim_core::harness::{corpus, Recipe};
use maxdim_core::lattice::{maximal_subgroups, maximal_subgroups_of_product};
use maxdim_core::{Config, ElemId, FiniteGroup};

fn subsets(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

fn irredundant(g: &FiniteGroup, xs: &[ElemId]) -> bool {
    (0..xs.len()).all(|k| {
        let rest: Vec<ElemId> = xs.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect();
        !g.closure(&rest).contains(xs[k])
    })
}

/// Largest irredundant (generating) set by trying every subset.
fn brute_rank(g: &FiniteGroup, generating: bool) -> usize {
    let elems: Vec<ElemId> = g.all_ids().filter(|&x| x != g.identity()).collect();
    let mut best = 0;
    for k in 1..=elems.len().min(6) {
        let mut found = false;
        subsets(elems.len(), k, &mut |ix| {
            if found {
                return;
            }
            let xs: Vec<ElemId> = ix.iter().map(|&i| elems[i]).collect();
            if irredundant(g, &xs) && (!generating || g.closure(&xs).order() == g.order()) {
                found = true;
            }
        });
        if found {
            best = k;
        }
    }
    best
}

/// Maximal subgroups as maximal proper closures of at most three elements.
fn brute_maximals(g: &FiniteGroup) -> Vec<Bitset> {
    let ids: Vec<ElemId> = g.all_ids().collect();
    let mut subs: Vec<Bitset> = Vec::new();
    for k in 1..=3 {
        subsets(ids.len(), k, &mut |ix| {
            let h = g.closure(&ix.iter().map(|&i| ids[i]).collect::<Vec<_>>());
            if h.order() < g.order() && !subs.contains(h.members()) {
                subs.push(h.members().clone());
            }
        });
    }
    let subset = |a: &Bitset, b: &Bitset| a.is_subset(b);
    subs.iter()
        .filter(|a| !subs.iter().any(|b| *a != b && subset(a, b)))
        .cloned()
        .collect()
}

fn in_general_position(sets: &[&Bitset]) -> bool {
    let inter = |skip: Option<usize>| {
        let mut acc: Option<Bitset> = None;
        for (k, s) in sets.iter().enumerate() {
            if Some(k) == skip {
                continue;
            }
            acc = Some(match acc {
                None => (*s).clone(),
                Some(a) => a.intersection(s),
            });
        }
        acc
    };
    let all = inter(None).unwrap();
    (0..sets.len()).all(|k| inter(Some(k)).map_or(true, |r| r.count() > all.count()))
}

fn brute_maxdim(g: &FiniteGroup) -> usize {
    let maxes = brute_maximals(g);
    let mut best = 0;
    for k in 1..=maxes.len().min(6) {
        let mut found = false;
        subsets(maxes.len(), k, &mut |ix| {
            if !found {
                let sets: Vec<&Bitset> = ix.iter().map(|&i| &maxes[i]).collect();
                found = in_general_position(&sets);
            }
        });
        if found {
            best = k;
        } else {
            break;
        }
    }
    best
}

fn small_groups() -> Vec<(String, std::sync::Arc<FiniteGroup>)> {
    corpus()
        .into_iter()
        .filter(|e| e.order <= 16 && e.order > 1)
        .map(|e| (e.name.clone(), e.recipe.build(10_000).unwrap()))
        .collect()
}

#[test]
fn ranks_match_exhaustive_search() {
    let cfg = Config::default();
    for (name, g) in small_groups() {
        assert_eq!(m_rank(&g, &cfg).unwrap().0, brute_rank(&g, true), "m of {name}");
        assert_eq!(i_rank(&g, &cfg).unwrap().0, brute_rank(&g, false), "i of {name}");
    }
}

#[test]
fn maximal_catalogs_match_exhaustive_search() {
    let cfg = Config::default();
    for (name, g) in small_groups() {
        let cat = maximal_subgroups(&g, &cfg).unwrap();
        let mut ours: Vec<Bitset> = cat.maximals.iter().map(|h| h.members().clone()).collect();
        let mut brute = brute_maximals(&g);
        ours.sort();
        brute.sort();
        assert_eq!(ours, brute, "{name}");
    }
}

#[test]
fn maxdim_matches_exhaustive_search() {
    let cfg = Config::default();
    for (name, g) in small_groups() {
        let cat = maximal_subgroups(&g, &cfg).unwrap();
        assert_eq!(max_dim(&g, &cat, &cfg).unwrap().0, brute_maxdim(&g), "{name}");
    }
}

#[test]
fn goursat_matches_exhaustive_search_on_small_products() {
    let cfg = Config::default();
    for (a, b) in [
        (Recipe::Cyclic(2), Recipe::Cyclic(2)),
        (Recipe::Symmetric(3), Recipe::Cyclic(2)),
        (Recipe::Symmetric(3), Recipe::Cyclic(3)),
        (Recipe::Cyclic(4), Recipe::Cyclic(2)),
    ] {
        let prod = Recipe::product(a, b).build_product(10_000).unwrap().unwrap();
        let pc = maximal_subgroups_of_product(&prod, &cfg).unwrap();
        let mut ours: Vec<Bitset> = pc.catalog.maximals.iter().map(|h| h.members().clone()).collect();
        let mut brute = brute_maximals(&prod.group);
        ours.sort();
        brute.sort();
        assert_eq!(ours, brute);
    }
}
