use maxdim_cli::cache::{cache_key, decode_cache_entry, encode_cache_entry, CacheEntry};
use maxdim_cli::report::{decode_report, encode_report, InputRecord, Report, ResultRecord, WitnessRecord, STATUSES};
use maxdim_cli::spec::{
    canonical_inline, format_cycles, no_files, parse_cycles, parse_group_spec_with, parse_module_file,
    serialize_group_spec, serialize_module_file, GroupSpec,
};
use maxdim_core::harness::Recipe;
use maxdim_core::Permutation;
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn leaf() -> impl Strategy<Value = Recipe> {
    prop_oneof![
        (1usize..40).prop_map(Recipe::Cyclic),
        (2usize..20).prop_map(Recipe::Dihedral),
        (1usize..7).prop_map(Recipe::Symmetric),
        (3usize..7).prop_map(Recipe::Alternating),
        (prop_oneof![Just(2usize), Just(3), Just(5)], 1usize..4).prop_map(|(p, k)| Recipe::ElementaryAbelian(p, k)),
        Just(Recipe::Quaternion8),
        prop_oneof![Just(2usize), Just(3)].prop_map(Recipe::WreathCyclic),
        prop_oneof![Just(5u32), Just(7), Just(11)].prop_map(Recipe::Psl2),
        (2usize..8)
            .prop_flat_map(|d| (Just(d), prop::collection::vec(perm(d), 1..3)))
            .prop_map(|(degree, gens)| Recipe::Permutations { degree, gens }),
        (prop_oneof![Just(3u32), Just(5)], 1usize..4)
            .prop_flat_map(|(p, d)| (Just(p), prop::collection::vec(any::<bool>(), d)))
            .prop_map(|(p, signs)| {
                let d = signs.len();
                let m = (0..d)
                    .map(|r| (0..d).map(|c| if r != c { 0 } else if signs[r] { p - 1 } else { 1 }).collect())
                    .collect();
                Recipe::Semidirect { top: Box::new(Recipe::Cyclic(2)), p, matrices: vec![m] }
            }),
    ]
}

fn recipe() -> impl Strategy<Value = Recipe> {
    leaf().prop_recursive(3, 8, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| Recipe::product(a, b)))
}

fn word() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9 :;#\\[\\]()/]{0,24}"
}

fn report() -> impl Strategy<Value = Report> {
    let witness = (word(), 1usize..1000, prop::collection::vec(word(), 0..3))
        .prop_map(|(label, order, generators)| WitnessRecord { label, order, generators });
    let result = (
        word(),
        word(),
        prop::sample::select(STATUSES.to_vec()),
        prop::collection::btree_map(word(), any::<i64>(), 0..4),
        prop::collection::vec(witness, 0..2),
        prop::collection::vec(word(), 0..3),
    )
        .prop_map(|(check_id, instance, s, numbers, witness, notes)| ResultRecord {
            check_id,
            instance,
            status: s.label().to_string(),
            numbers,
            witness,
            notes,
        });
    (
        any::<u64>(),
        any::<u64>(),
        prop::collection::vec(word(), 0..4),
        prop::collection::vec((word(), prop::option::of(0usize..10_000)), 0..3),
        prop::collection::vec(result, 0..4),
        0i32..4,
    )
        .prop_map(|(config_seed, budget, command, inputs, results, exit_code)| Report {
            schema_version: maxdim_cli::report::SCHEMA_VERSION,
            tool_version: maxdim_cli::report::TOOL_VERSION.into(),
            config_seed,
            budget,
            command,
            inputs: inputs.into_iter().map(|(spec, order)| InputRecord { spec, order }).collect(),
            results,
            exit_code,
            timings: Vec::new(),
        })
}

proptest! {
    #[test]
    fn specs_round_trip(r in recipe(), cap in prop::option::of(1usize..1_000_000)) {
        let spec = GroupSpec { recipe: r, cap };
        let text = serialize_group_spec(&spec);
        prop_assert_eq!(&parse_group_spec_with(&text, &no_files).unwrap(), &spec);
        let line = canonical_inline(&spec);
        prop_assert!(!line.contains('\n'));
        prop_assert_eq!(parse_group_spec_with(&line, &no_files).unwrap(), spec);
    }

    #[test]
    fn module_files_round_trip(r in leaf()) {
        if let Some(text) = serialize_module_file(&r) {
            prop_assert_eq!(parse_module_file(&text).unwrap(), r);
        }
    }

    #[test]
    fn cycles_round_trip(p in (1usize..12).prop_flat_map(perm)) {
        let cycles = parse_cycles(&format_cycles(&p)).unwrap();
        prop_assert_eq!(Permutation::from_cycles(p.degree(), &cycles).unwrap(), p);
    }

    #[test]
    fn reports_round_trip(r in report()) {
        let text = encode_report(&r);
        prop_assert_eq!(decode_report(text.as_bytes()).unwrap(), r);
    }

    #[test]
    fn cache_entries_round_trip(material in word(), budget in any::<u64>(), values in prop::collection::btree_map(word(), any::<i64>(), 0..4)) {
        let e = CacheEntry {
            key: cache_key(&material, budget),
            tool_version: maxdim_cli::report::TOOL_VERSION.into(),
            budget,
            material,
            values,
            witness: Vec::new(),
        };
        prop_assert_eq!(decode_cache_entry(encode_cache_entry(&e).as_bytes()).unwrap(), e);
    }

    #[test]
    fn parsers_never_panic(text in "\\PC{0,64}") {
        let _ = parse_group_spec_with(&text, &no_files);
        let _ = parse_cycles(&text);
        let _ = parse_module_file(&text);
        let _ = decode_report(text.as_bytes());
        let _ = decode_cache_entry(text.as_bytes());
    }
}
