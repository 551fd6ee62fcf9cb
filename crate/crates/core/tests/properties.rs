use maxdim_core::constructions::{induce_trivial_module, spin, Matrix, Subspace};
use maxdim_core::dimension::*;
use maxdim_core::group::{direct_product, quotient_group};
use maxdim_core::harness::Recipe;
use maxdim_core::lattice::*;
use maxdim_core::{Bitset, Config, FiniteGroup, Permutation};
use proptest::prelude::*;
use std::sync::Arc;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

/// Groups generated by one or two random permutations of degree at most 5.
fn small_group() -> impl Strategy<Value = Arc<FiniteGroup>> {
    (2usize..=5)
        .prop_flat_map(|d| prop::collection::vec(perm(d), 1..=2))
        .prop_map(|gens| Arc::new(FiniteGroup::from_generators(&gens, 1000).unwrap()))
}

fn small_recipe() -> impl Strategy<Value = Recipe> {
    prop_oneof![
        (1usize..=6).prop_map(Recipe::Cyclic),
        (2usize..=5).prop_map(Recipe::Dihedral),
        (2usize..=4).prop_map(Recipe::Symmetric),
        Just(Recipe::Quaternion8),
        Just(Recipe::Alternating(4)),
    ]
}

fn matrix(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(0..p, cols), rows).prop_map(move |r| Matrix::from_rows(p, &r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn invariants_are_sandwiched(g in small_group()) {
        let cfg = Config::default();
        let cat = maximal_subgroups(&g, &cfg).unwrap();
        let (m, gens) = m_rank(&g, &cfg).unwrap();
        let (i, _) = i_rank(&g, &cfg).unwrap();
        let (d, fam) = max_dim(&g, &cat, &cfg).unwrap();
        prop_assert!(m <= d && d <= i);
        prop_assert!(is_general_position(&fam));
        if g.order() > 1 {
            prop_assert!(is_irredundant(&g, &gens, true));
            let down = certify_irredundant_from_family(&g, &fam).unwrap();
            prop_assert!(down.is_valid());
            prop_assert!(is_irredundant(&g, &down.elements, false));
            let up = certify_family_from_generators(&g, &gens, &cat).unwrap();
            prop_assert!(up.is_valid() && up.family.len() == m);
        }
    }

    #[test]
    fn catalog_members_are_maximal(g in small_group()) {
        let cat = maximal_subgroups(&g, &Config::default()).unwrap();
        for h in &cat.maximals {
            prop_assert!(verify_maximal(&g, h, usize::MAX));
        }
        for class in &cat.classes {
            let orders: Vec<usize> = class.iter().map(|&k| cat.maximals[k].order()).collect();
            prop_assert!(orders.windows(2).all(|w| w[0] == w[1]));
        }
    }

    #[test]
    fn frattini_quotient_keeps_m_and_maxdim(g in small_group()) {
        let cfg = Config::default();
        let cat = maximal_subgroups(&g, &cfg).unwrap();
        let phi = frattini_of(&g, &cat);
        let (q, _) = quotient_group(&g, &phi, 1000).unwrap();
        let qcat = maximal_subgroups(&q, &cfg).unwrap();
        prop_assert_eq!(m_rank(&g, &cfg).unwrap().0, m_rank(&q, &cfg).unwrap().0);
        prop_assert_eq!(max_dim(&g, &cat, &cfg).unwrap().0, max_dim(&q, &qcat, &cfg).unwrap().0);
    }

    #[test]
    fn closure_is_idempotent(g in small_group(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        let seed: Vec<_> = picks.iter().map(|i| i.index(g.order()) as u32).collect();
        let h = g.closure(&seed);
        prop_assert!(seed.iter().all(|&x| h.contains(x)));
        prop_assert!(g.closure(h.generators()).same_members(&h));
        prop_assert_eq!(g.order() % h.order(), 0);
    }

    #[test]
    fn goursat_catalog_is_complete(a in small_recipe(), b in small_recipe()) {
        let cfg = Config::default();
        let prod = direct_product(a.build(1000).unwrap(), b.build(1000).unwrap(), 10_000).unwrap();
        let pc = maximal_subgroups_of_product(&prod, &cfg).unwrap();
        let generic = maximal_subgroups(&prod.group, &cfg).unwrap();
        prop_assert!(pc.catalog.same_entries(&generic));
    }

    #[test]
    fn rank_plus_nullity((p, a) in prop_oneof![Just(2u32), Just(3), Just(5), Just(7)]
        .prop_flat_map(|p| (Just(p), (1usize..5, 1usize..5).prop_flat_map(move |(r, c)| matrix(p, r, c)))))
    {
        let kernel = a.kernel();
        prop_assert_eq!(a.rank() + kernel.len(), a.cols());
        for v in &kernel {
            prop_assert!(a.mul_vec(v).iter().all(|&x| x == 0));
        }
        let space = Subspace::span(p, a.cols(), &kernel);
        prop_assert_eq!(space.dim(), kernel.len());
        prop_assert_eq!(space.annihilator().dim() + space.dim(), a.cols());
        if a.rows() == a.cols() {
            if let Some(inv) = a.inverse() {
                prop_assert_eq!(a.mul(&inv), Matrix::identity(p, a.rows()));
            } else {
                prop_assert!(a.rank() < a.rows());
            }
        }
    }

    #[test]
    fn induced_vector_has_stabilizer_h(s in small_group(), pick in any::<prop::sample::Index>(), p in prop_oneof![Just(7u32), Just(11), Just(13)]) {
        prop_assume!(s.order() % p as usize != 0);
        let h = s.closure(&[pick.index(s.order()) as u32]);
        let dv = induce_trivial_module(s.clone(), &h, p).unwrap();
        prop_assert_eq!(dv.module.dim(), s.order() / h.order());
        let fixed = Bitset::from_indices(
            s.order(),
            s.all_ids().filter(|&x| dv.module.act(x, &dv.coords) == dv.coords).map(|x| x as usize),
        );
        prop_assert_eq!(&fixed, h.members());
        let w = spin(&dv.module, &dv.coords);
        prop_assert!(dv.module.is_invariant(&w));
    }
}
