//! One function per checkable statement.

use super::*;
use crate::bitset::Bitset;
use crate::constructions::*;
use crate::dimension::*;
use crate::group::*;
use crate::lattice::*;
use crate::{Config, Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// `m`, `i` and `MaxDim` of one group with their witnesses.
pub struct Invariants {
    pub m: usize,
    pub m_witness: Vec<ElemId>,
    pub i: usize,
    pub i_witness: Vec<ElemId>,
    pub maxdim: usize,
    pub family: MaximalFamily,
    pub catalog: MaximalCatalog,
}

pub fn invariants(g: &FiniteGroup, cfg: &Config) -> Result<Invariants> {
    let catalog = maximal_subgroups(g, cfg)?;
    let (m, m_witness) = m_rank(g, cfg)?;
    let (i, i_witness) = i_rank(g, cfg)?;
    let (maxdim, family) = max_dim(g, &catalog, cfg)?;
    Ok(Invariants {
        m,
        m_witness,
        i,
        i_witness,
        maxdim,
        family,
        catalog,
    })
}

/// `m` and `MaxDim` agree on `G` and `G/Φ(G)`.
pub fn check_frattini(entry: &CorpusEntry, cfg: &Config) -> CheckResult {
    guarded("frattini", &entry.name, |r| {
        let g = entry.recipe.build(cfg.element_cap)?;
        let inv = invariants(&g, cfg)?;
        let phi = frattini_of(&g, &inv.catalog);
        let (q, _) = quotient_group(&g, &phi, cfg.element_cap)?;
        let qinv = invariants(&q, cfg)?;
        r.number("frattini_order", phi.order());
        r.number("m", inv.m);
        r.number("m_quotient", qinv.m);
        r.number("maxdim", inv.maxdim);
        r.number("maxdim_quotient", qinv.maxdim);
        r.number("i", inv.i);
        r.number("i_quotient", qinv.i);
        r.require(inv.m == qinv.m, "m(G) = m(G/Φ(G))");
        r.require(inv.maxdim == qinv.maxdim, "MaxDim(G) = MaxDim(G/Φ(G))");
        if inv.i != qinv.i {
            r.note(format!("i(G) = {} but i(G/Φ(G)) = {}; recorded only", inv.i, qinv.i));
        }
        Ok(())
    })
}

/// `m ≤ MaxDim ≤ i`, with both certificate constructions.
pub fn check_sandwich(entry: &CorpusEntry, cfg: &Config) -> CheckResult {
    guarded("sandwich", &entry.name, |r| {
        let g = entry.recipe.build(cfg.element_cap)?;
        let inv = invariants(&g, cfg)?;
        r.number("order", g.order());
        r.number("m", inv.m);
        r.number("maxdim", inv.maxdim);
        r.number("i", inv.i);
        r.require(inv.m <= inv.maxdim, "m ≤ MaxDim");
        r.require(inv.maxdim <= inv.i, "MaxDim ≤ i");
        if g.order() > 1 {
            let up = certify_family_from_generators(&g, &inv.m_witness, &inv.catalog)?;
            r.require(up.is_valid() && up.family.len() == inv.m, "family from generating set");
            let down = certify_irredundant_from_family(&g, &inv.family)?;
            r.require(
                down.is_valid() && is_irredundant(&g, &down.elements, false),
                "irredundant set from family",
            );
            r.witness = family_witness(&g, "M", &inv.family);
            r.witness.extend(element_witness(&g, "g", &down.elements));
        }
        Ok(())
    })
}

/// Goursat catalog equals the generic catalog for a direct product.
pub fn check_goursat(recipe: &Recipe, cfg: &Config) -> CheckResult {
    guarded("goursat", recipe.name(), |r| {
        let Some(prod) = recipe.build_product(cfg.element_cap)? else {
            r.skip("not a direct product");
            return Ok(());
        };
        let pc = maximal_subgroups_of_product(&prod, cfg)?;
        let generic = maximal_subgroups(&prod.group, cfg)?;
        r.number("order", prod.group.order());
        r.number("entries", pc.catalog.len());
        r.number("standard_left", pc.standard_left);
        r.number("standard_right", pc.standard_right);
        r.number("pullbacks", pc.pullbacks);
        r.number("generic_entries", generic.len());
        r.require(pc.catalog.same_entries(&generic), "Goursat catalog equals generic catalog");
        Ok(())
    })
}

pub const GOURSAT_RECHECK_LIMIT: usize = 2000;

/// `MaxDim(H × K) = MaxDim(H) + MaxDim(K)` whenever a sufficient hypothesis holds.
pub fn check_additivity(a: &Recipe, b: &Recipe, cfg: &Config) -> CheckResult {
    guarded("additivity", format!("{} x {}", a.name(), b.name()), |r| {
        let prod = Recipe::product(a.clone(), b.clone())
            .build_product(cfg.element_cap)?
            .expect("product recipe");
        let pc = maximal_subgroups_of_product(&prod, cfg)?;
        if prod.group.order() <= GOURSAT_RECHECK_LIMIT {
            let generic = maximal_subgroups(&prod.group, cfg)?;
            r.require(pc.catalog.same_entries(&generic), "Goursat catalog equals generic catalog");
        }
        let (dl, _) = max_dim(&prod.left, &pc.left, cfg)?;
        let (dr, _) = max_dim(&prod.right, &pc.right, cfg)?;
        let (dp, fam) = max_dim(&prod.group, &pc.catalog, cfg)?;
        let (l, rt) = (&prod.left, &prod.right);
        let hypothesis = if is_solvable(l, &l.whole()) || is_solvable(rt, &rt.whole()) {
            Some("solvable factor")
        } else if !common_nonabelian_simple_quotient(l, rt, cfg)?.found {
            Some("no common nonabelian simple quotient")
        } else if dl == i_rank(l, cfg)?.0 || dr == i_rank(rt, cfg)?.0 {
            Some("a factor with MaxDim = i")
        } else {
            None
        };
        r.number("maxdim_left", dl);
        r.number("maxdim_right", dr);
        r.number("maxdim_product", dp);
        r.number("catalog_entries", pc.catalog.len());
        r.witness = family_witness(&prod.group, "M", &fam);
        match hypothesis {
            Some(h) => {
                r.note(format!("hypothesis: {h}"));
                r.require(dp == dl + dr, "MaxDim(H×K) = MaxDim(H) + MaxDim(K)");
            }
            None => r.note(format!("no hypothesis applies; evidence {dp} vs {}", dl + dr)),
        }
        Ok(())
    })
}

/// `MaxDim(G × G) = 2·MaxDim(G)` for `G = PSL(2, p)`, with the pullback bound.
pub fn check_psl2_square(p: u32, cfg: &Config) -> CheckResult {
    guarded("psl2_square", format!("PSL(2,{p})"), |r| {
        let g = Arc::new(psl2(p as u64, cfg.element_cap)?);
        let prod = direct_product(g.clone(), g.clone(), cfg.element_cap)?;
        let pc = maximal_subgroups_of_product(&prod, cfg)?;
        let (dg, _) = max_dim(&prod.left, &pc.left, cfg)?;
        let (ig, _) = i_rank(&prod.left, cfg)?;
        r.number("maxdim", dg);
        r.number("i", ig);
        r.number("catalog_entries", pc.catalog.len());
        r.number("pullbacks", pc.pullbacks);
        r.require(dg <= 4, "MaxDim(PSL(2,p)) ≤ 4");
        let (dp, fam) = max_dim(&prod.group, &pc.catalog, cfg)?;
        r.number("maxdim_square", dp);
        r.note(format!("MaxDim(G×G) = {dp}, 2·MaxDim(G) = 2·{dg}"));
        r.require(dp == 2 * dg, "MaxDim(G×G) = 2·MaxDim(G)");
        r.witness = family_witness(&prod.group, "M", &fam);
        let pb = max_dim_with_pullback(&prod.group, &pc.catalog, cfg);
        if !pb.complete {
            return Err(Error::cap("pullback family search nodes", cfg.node_budget));
        }
        r.number("maxdim_with_pullback", pb.value);
        r.require(pb.value <= ig + 1, "families with a pullback have size ≤ i(G) + 1");
        Ok(())
    })
}

fn standard_only(g: &FiniteGroup, cat: &MaximalCatalog) -> MaximalCatalog {
    let entries = cat
        .maximals
        .iter()
        .zip(&cat.provenance)
        .filter(|(_, p)| !matches!(p, Provenance::Pullback { .. }))
        .map(|(m, p)| (m.clone(), p.clone()))
        .collect();
    MaximalCatalog::build(g, entries)
}

/// On `S × S` for simple `S`: standard families are at most `2·MaxDim(S)`
/// and families with a pullback at most `i(S) + 1`.
pub fn check_pullback_bound(s: &Recipe, cfg: &Config) -> CheckResult {
    guarded("pullback_bound", s.name(), |r| {
        let g = s.build(cfg.element_cap)?;
        if !is_simple(&g, cfg)? || g.is_abelian() {
            r.skip("not a nonabelian simple group");
            return Ok(());
        }
        let prod = direct_product(g.clone(), g, cfg.element_cap)?;
        let pc = maximal_subgroups_of_product(&prod, cfg)?;
        let (ds, _) = max_dim(&prod.left, &pc.left, cfg)?;
        let (is, _) = i_rank(&prod.left, cfg)?;
        let std = standard_only(&prod.group, &pc.catalog);
        let (dstd, _) = max_dim(&prod.group, &std, cfg)?;
        let pb = max_dim_with_pullback(&prod.group, &pc.catalog, cfg);
        if !pb.complete {
            return Err(Error::cap("pullback family search nodes", cfg.node_budget));
        }
        r.number("maxdim", ds);
        r.number("i", is);
        r.number("standard_max", dstd);
        r.number("pullback_max", pb.value);
        r.require(dstd <= 2 * ds, "standard families ≤ 2·MaxDim(S)");
        r.require(pb.value <= is + 1, "families with a pullback ≤ i(S) + 1");
        let fam = MaximalFamily::from_catalog(&prod.group, &pc.catalog, &pb.witness)?;
        r.witness = family_witness(&prod.group, "M", &fam);
        Ok(())
    })
}

/// A general-position family grown greedily in a random order.
pub fn random_gp_family(g: &FiniteGroup, cat: &MaximalCatalog, rng: &mut ChaCha8Rng) -> Result<MaximalFamily> {
    let mut order: Vec<usize> = (0..cat.len()).collect();
    order.shuffle(rng);
    let universe = Bitset::full(g.order());
    let mut chosen: Vec<usize> = Vec::new();
    for i in order {
        let mut trial = chosen.clone();
        trial.push(i);
        let sets: Vec<&Bitset> = trial.iter().map(|&j| cat.maximals[j].members()).collect();
        if general_position_in(&sets, &universe) {
            chosen = trial;
        }
    }
    chosen.sort_unstable();
    MaximalFamily::from_catalog(g, cat, &chosen)
}

pub const RANDOM_FAMILIES: usize = 20;

/// Bounds on the leading block of a split along a normal subgroup.
pub fn check_normal_split(h: &Recipe, n_order: usize, cfg: &Config) -> CheckResult {
    guarded("normal_split", format!("{} / N of order {n_order}", h.name()), |r| {
        let g = h.build(cfg.element_cap)?;
        let n = normal_subgroups(&g, cfg)?
            .into_iter()
            .find(|n| n.order() == n_order)
            .ok_or_else(|| Error::InvalidInput(format!("no normal subgroup of order {n_order}")))?;
        let cat = maximal_subgroups(&g, cfg)?;
        let (md, fam) = max_dim(&g, &cat, cfg)?;
        let (q, proj) = quotient_group(&g, &n, cfg.element_cap)?;
        let qcat = maximal_subgroups(&q, cfg)?;
        let (md_q, _) = max_dim(&q, &qcat, cfg)?;
        let ng = crate::constructions::subgroup_as_group(&g, &n, cfg.element_cap)?;
        let abelian_mod_frattini = derived_subgroup(&ng).is_subgroup_of(&frattini(&ng, cfg)?);
        let actors: Vec<Actor> = g.generator_ids().into_iter().map(Actor::Conjugation).collect();
        let inv_cat = maximal_invariant_subgroups(&g, &n, &actors, cfg)?;
        let (md_action, _) = maxdim_under_action(&g, &n, &inv_cat, cfg)?;
        r.number("maxdim", md);
        r.number("maxdim_quotient", md_q);
        r.number("maxdim_under_action", md_action);
        r.number("abelian_mod_frattini", abelian_mod_frattini as i64);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut families = vec![fam];
        for _ in 0..RANDOM_FAMILIES {
            families.push(random_gp_family(&g, &cat, &mut rng)?);
        }
        let mut max_l = 0;
        for f in &families {
            let split = whiston_split(&g, f, &n, cfg)?;
            let pr = proj.image_of(&q, &split.r);
            let (rel, _) = relative_maxdim(&q, &pr, &qcat, cfg)?;
            max_l = max_l.max(split.l);
            r.require(split.l + rel <= md, format!("l = {} ≤ MaxDim(H) − MaxDim(H/N, π(R)) = {md} − {rel}", split.l));
            if abelian_mod_frattini {
                r.require(split.l + md_q <= md, format!("l = {} ≤ MaxDim(H) − MaxDim(H/N)", split.l));
                r.require(split.l <= md_action, format!("l = {} ≤ MaxDim_H(N) = {md_action}", split.l));
            }
        }
        r.number("families", families.len());
        r.number("max_l", max_l);
        Ok(())
    })
}

/// `MaxDim(N ⋊ T) = MaxDim_T(N) + MaxDim(T)` for abelian `N` and flat `T`.
pub fn check_split_extension(recipe: &Recipe, cfg: &Config) -> CheckResult {
    guarded("split_extension", recipe.name(), |r| {
        let Some(module) = recipe.build_module(cfg.element_cap)? else {
            r.skip("not a semidirect recipe");
            return Ok(());
        };
        let t = module.group().clone();
        let tinv = invariants(&t, cfg)?;
        r.number("m_top", tinv.m);
        r.number("i_top", tinv.i);
        if tinv.m != tinv.i {
            r.skip("top group is not flat");
            return Ok(());
        }
        let mat = materialize_semidirect(Arc::new(module), cfg.element_cap)?;
        let g = &mat.group;
        let cat = maximal_subgroups(g, cfg)?;
        let (md, fam) = max_dim(g, &cat, cfg)?;
        let n = mat.module_subgroup();
        let actors: Vec<Actor> = mat
            .top_subgroup()
            .generators()
            .iter()
            .map(|&x| Actor::Conjugation(x))
            .collect();
        let inv_cat = maximal_invariant_subgroups(g, &n, &actors, cfg)?;
        let (md_action, _) = maxdim_under_action(g, &n, &inv_cat, cfg)?;
        r.number("maxdim", md);
        r.number("maxdim_under_action", md_action);
        r.number("maxdim_top", tinv.maxdim);
        r.require(md == md_action + tinv.maxdim, "MaxDim(H) = MaxDim_T(N) + MaxDim(T)");
        r.witness = family_witness(g, "M", &fam);
        Ok(())
    })
}

pub const NILPOTENT_SWEEP_ORDER: usize = 100;

/// `MaxDim = m` when the derived subgroup is nilpotent.
pub fn check_derived_nilpotent(entry: &CorpusEntry, cfg: &Config) -> CheckResult {
    guarded("derived_nilpotent", &entry.name, |r| {
        let g = entry.recipe.build(cfg.element_cap)?;
        let d = derived_subgroup(&g);
        r.number("derived_order", d.order());
        if !is_nilpotent(&g, &d) {
            r.skip("derived subgroup is not nilpotent");
            return Ok(());
        }
        let cat = maximal_subgroups(&g, cfg)?;
        let (md, _) = max_dim(&g, &cat, cfg)?;
        let (m, _) = m_rank(&g, cfg)?;
        r.number("m", m);
        r.number("maxdim", md);
        r.require(md == m, "MaxDim(G) = m(G)");
        Ok(())
    })
}

/// Corpus entries up to `max_order` with `m < i`, smallest first.
pub fn find_smallest_nonflat(max_order: usize, cfg: &Config) -> CheckResult {
    guarded("nonflat", format!("corpus up to order {max_order}"), |r| {
        let mut entries: Vec<CorpusEntry> = corpus().into_iter().filter(|e| e.order <= max_order).collect();
        entries.sort_by(|a, b| (a.order, &a.name).cmp(&(b.order, &b.name)));
        r.note("search covers the built-in corpus only, not every group of each order");
        let mut found = Vec::new();
        for e in &entries {
            let g = e.recipe.build(cfg.element_cap)?;
            let (m, _) = m_rank(&g, cfg)?;
            let (i, _) = i_rank(&g, cfg)?;
            if m < i {
                found.push((e.order, e.name.clone(), m, i));
            }
        }
        r.number("scanned", entries.len());
        r.number("nonflat", found.len());
        if let Some((o, ..)) = found.first() {
            r.number("smallest_order", *o);
        }
        for (o, name, m, i) in &found {
            r.note(format!("{name} (order {o}): m = {m} < i = {i}"));
        }
        if max_order >= 81 {
            r.require(found.iter().any(|f| f.1 == "Z3wrZ3"), "Z3 wr Z3 is not flat");
        }
        r.require(!found.iter().any(|f| f.1 == "Z2wrZ2"), "Z2 wr Z2 is flat");
        Ok(())
    })
}

/// The structured family in `V ⋊ S` and its comparison with `m(V ⋊ S)`.
pub fn check_semidirect_family(s: &Recipe, p: u32, cfg: &Config) -> CheckResult {
    guarded("semidirect_family", format!("{} over F{p}", s.name()), |r| {
        let top = s.build(cfg.element_cap)?;
        let built = build_structured_family(top.clone(), p, cfg)?;
        let gp = structured_general_position(&built.desc, &built.family);
        let (ms, _) = m_rank(&top, cfg)?;
        let (n, m) = (built.n(), built.m());
        let m_product = ms + m;
        let size = built.family.len();
        r.number("dim", built.desc.module.dim());
        r.number("i_top", n);
        r.number("m_top", ms);
        r.number("summands", m);
        r.number("family_size", size);
        r.number("m_product", m_product);
        r.require(gp.holds, format!("structured family in general position (missing {:?})", gp.missing()));
        r.require(built.projections_match(), "π(R ∩ T_k) = H_k");
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let module = &built.desc.module;
        r.require(
            built.desc.summands.iter().all(|w| spins_to_whole(module, w, &mut rng)),
            "every summand is irreducible",
        );
        for (k, h) in built.subgroups.iter().enumerate() {
            r.witness.push(subgroup_witness(&top, format!("H{}", k + 1), h));
        }
        if n > ms {
            if built.replacement_failures.is_empty() {
                r.require(m_product < size, format!("m(V⋊S) = {m_product} < family size {size}"));
            } else {
                r.discrepancy(format!(
                    "no component kept general position for positions {:?}; strict inequality not claimed",
                    built.replacement_failures
                ));
            }
        }
        let points = (p as usize)
            .checked_pow(module.dim() as u32)
            .and_then(|x| x.checked_mul(top.order()));
        if points.map_or(false, |x| x <= MATERIALIZE_LIMIT.min(cfg.element_cap)) {
            let mat = materialize_semidirect(module.clone(), cfg.element_cap)?;
            let subs: Vec<SubgroupSet> = built.family.iter().map(|h| mat.subgroup_of(h)).collect();
            let brute = subgroups_in_general_position(&mat.group, &subs)?;
            r.require(brute == gp.holds, "structured and bitmap general position agree");
            let cat = maximal_subgroups(&mat.group, cfg)?;
            let (md, _) = max_dim(&mat.group, &cat, cfg)?;
            r.number("maxdim_materialized", md);
            r.require(md == m + n, format!("MaxDim(V⋊S) = {md} = {m} + {n}"));
        }
        Ok(())
    })
}

/// Intersections of the geometric maximal subgroups of `PSL(2, p)`.
pub fn check_collins(p: u32, cfg: &Config) -> CheckResult {
    guarded("collins", format!("PSL(2,{p})"), |r| {
        let cat = build_psl2(p, cfg)?;
        let rep = collins_table(&cat);
        for c in &rep.cases {
            for (k, v) in &c.observed {
                r.number(&format!("case{}:{}:{k}", c.case, c.description), *v as i64);
            }
        }
        r.require(rep.exact_cases_hold(), "cases (1) and (2) hold exactly");
        let allowed = ["1", "Z2", "Z2xZ2"];
        for case in [3, 4] {
            r.require(rep.outcomes_within(case, &allowed), format!("case ({case}) outcomes within 1, Z2, Z2xZ2"));
            r.require(rep.stated_values_present(case), format!("case ({case}) stated outcome observed"));
        }
        for d in rep.discrepancies() {
            r.discrepancy(d);
        }
        Ok(())
    })
}

/// Every maximal subgroup of `PSL(2, p)` gets exactly one Dickson type.
pub fn check_dickson(p: u32, cfg: &Config) -> CheckResult {
    guarded("dickson", format!("PSL(2,{p})"), |r| {
        let cat = build_psl2(p, cfg)?;
        r.number("order", cat.group.order());
        r.number("maximals", cat.maximals.len());
        for ((label, order), count) in cat.type_counts() {
            r.number(&format!("{label}:{order}"), count);
        }
        let pu = p as usize;
        let point_stabs = cat.types.iter().filter(|&&t| t == DicksonType::PointStab).count();
        r.require(point_stabs == pu + 1, "one point stabilizer per projective point");
        Ok(())
    })
}

/// Random `(S, H, p)` with `|S| ≤ 60`: the induced vector has stabilizer `H`.
pub fn check_induced_stabilizer(count: usize, cfg: &Config) -> CheckResult {
    guarded("induced_stabilizer", format!("{count} random triples"), |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let small: Vec<CorpusEntry> = corpus().into_iter().filter(|e| e.order <= 60).collect();
        for t in 0..count {
            let e = &small[rng.gen_range(0..small.len())];
            let s = e.recipe.build(cfg.element_cap)?;
            let k = rng.gen_range(1..=2);
            let seed: Vec<ElemId> = (0..k).map(|_| rng.gen_range(0..s.order()) as ElemId).collect();
            let h = s.closure(&seed);
            let primes: Vec<u32> = [2, 3, 5, 7, 11, 13]
                .into_iter()
                .filter(|&q| s.order() % q as usize != 0)
                .collect();
            let p = primes[rng.gen_range(0..primes.len())];
            let dv = induce_trivial_module(s.clone(), &h, p)?;
            let brute = Bitset::from_indices(
                s.order(),
                s.all_ids()
                    .filter(|&x| dv.module.act(x, &dv.coords) == dv.coords)
                    .map(|x| x as usize),
            );
            r.note(format!("{}: |H| = {}, p = {p}, dim {}", e.name, h.order(), dv.module.dim()));
            r.require(&brute == h.members(), format!("triple {t}: stabilizer equals H"));
        }
        r.number("triples", count);
        Ok(())
    })
}

/// `m(Z_p wr Z_p) = 2` and `i = p`.
pub fn check_wreath(p: usize, cfg: &Config) -> CheckResult {
    guarded("wreath", format!("Z{p}wrZ{p}"), |r| {
        let g = wreath_cyclic(p, cfg.element_cap)?;
        let (m, mw) = m_rank(&g, cfg)?;
        let (i, iw) = i_rank(&g, cfg)?;
        r.number("m", m);
        r.number("i", i);
        r.require(m == 2, "m = 2");
        r.require(i == p, "i = p");
        r.witness = element_witness(&g, "g", &mw);
        r.witness.extend(element_witness(&g, "x", &iw));
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn passes(r: &CheckResult) -> bool {
        matches!(r.status, CheckStatus::Pass | CheckStatus::Discrepancy | CheckStatus::Skipped)
    }

    #[test]
    fn small_checks_pass() {
        let cfg = Config::default();
        let entries = corpus();
        let s4 = entries.iter().find(|e| e.name == "S4").unwrap();
        for r in [
            check_frattini(s4, &cfg),
            check_sandwich(s4, &cfg),
            check_derived_nilpotent(entries.iter().find(|e| e.name == "A4").unwrap(), &cfg),
            check_goursat(&Recipe::product(Recipe::Symmetric(3), Recipe::Cyclic(5)), &cfg),
            check_additivity(&Recipe::Symmetric(3), &Recipe::Cyclic(5), &cfg),
            check_wreath(2, &cfg),
        ] {
            assert_eq!(r.status, CheckStatus::Pass, "{r:?}");
        }
        assert_eq!(check_derived_nilpotent(s4, &cfg).status, CheckStatus::Skipped);
        let r = check_sandwich(s4, &cfg);
        assert_eq!((r.get("m"), r.get("maxdim"), r.get("i")), (Some(3), Some(3), Some(3)));
    }

    #[test]
    fn normal_split_bounds() {
        let cfg = Config::default();
        for (h, n) in [(Recipe::Cyclic(6), 3), (Recipe::Symmetric(4), 4), (Recipe::Symmetric(4), 24)] {
            let r = check_normal_split(&h, n, &cfg);
            assert_eq!(r.status, CheckStatus::Pass, "{r:?}");
        }
        let r = check_normal_split(&Recipe::Cyclic(6), 3, &cfg);
        assert_eq!(r.get("maxdim_under_action"), Some(1));
    }

    #[test]
    fn split_extensions() {
        let cfg = Config::default();
        let neg = Recipe::Semidirect {
            top: Box::new(Recipe::Cyclic(2)),
            p: 3,
            matrices: vec![vec![vec![2, 0], vec![0, 2]]],
        };
        let r = check_split_extension(&neg, &cfg);
        assert_eq!(r.status, CheckStatus::Pass, "{r:?}");
        assert_eq!((r.get("maxdim_under_action"), r.get("maxdim_top")), (Some(2), Some(1)));
        let rot = Recipe::Semidirect {
            top: Box::new(Recipe::Cyclic(3)),
            p: 2,
            matrices: vec![vec![vec![0, 1], vec![1, 1]]],
        };
        let r = check_split_extension(&rot, &cfg);
        assert_eq!((r.get("maxdim_under_action"), r.get("maxdim")), (Some(1), Some(2)));
    }

    #[test]
    fn induced_stabilizers_and_errors() {
        let cfg = Config::default();
        assert!(passes(&check_induced_stabilizer(10, &cfg)));
        let r = check_normal_split(&Recipe::Cyclic(6), 5, &cfg);
        assert_eq!(r.status, CheckStatus::Fail);
        let tiny = Config {
            node_budget: 1,
            ..Config::default()
        };
        let s4 = corpus().into_iter().find(|e| e.name == "S4").unwrap();
        assert_eq!(check_sandwich(&s4, &tiny).status, CheckStatus::CapExceeded);
    }

    #[test]
    fn semidirect_family_small() {
        let cfg = Config::default();
        let r = check_semidirect_family(&Recipe::Cyclic(2), 3, &cfg);
        assert_eq!(r.status, CheckStatus::Pass, "{r:?}");
        assert_eq!(r.get("maxdim_materialized"), Some(3));
        let r = check_semidirect_family(&Recipe::Symmetric(3), 5, &cfg);
        assert_eq!(r.status, CheckStatus::Pass, "{r:?}");
    }
}
