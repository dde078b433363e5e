use proptest::prelude::*;
use rcm_cli::format::{parse_module_file, write_json, write_text};
use rcm_core::corpus::{random_module, RandomSizes};
use rcm_core::{BiDegree, PrimeField};

fn sizes() -> impl Strategy<Value = RandomSizes> {
    (1usize..=3, 1usize..=3, 0usize..=4, 0i32..=3, 0i32..=3).prop_map(|(m, n, relations, dx, dy)| RandomSizes {
        m,
        n,
        relations,
        max_degree: BiDegree::new(dx.max(1), dy),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(seed in any::<u64>(), sizes in sizes(), p in prop::sample::select(vec![2u32, 3, 101, 32003])) {
        let field = PrimeField::new(p).unwrap();
        let module = random_module(field, seed, sizes).module;
        let text = write_text(&module);
        let back = parse_module_file(&text, None).unwrap();
        prop_assert_eq!(&back, &module);
        prop_assert_eq!(write_text(&back), text);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), sizes in sizes()) {
        let field = PrimeField::new(32003).unwrap();
        let module = random_module(field, seed, sizes).module;
        let json = write_json(&module);
        let back = parse_module_file(&json, None).unwrap();
        prop_assert_eq!(&back, &module);
        prop_assert_eq!(parse_module_file(&write_text(&module), None).unwrap(), back);
    }
}
