mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use swapl::frontend::{parse_source, pretty_print};
use swapl::runtime::{live_cells, run_program, EvalConfig};
use swapl::{compile, oracle};

#[test]
fn updates_never_leak_into_aliases() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..1200 {
        let src = common::aliasing_program(&mut rng);
        let expected = oracle::run(&parse_source(&src).unwrap()).unwrap().output;
        assert!(expected.starts_with("true\n"), "{src}");
        let ir = compile(&src).unwrap();
        let before = live_cells();
        for reuse in [true, false] {
            let out = run_program(&ir, EvalConfig { reuse_enabled: reuse, ..EvalConfig::default() }).unwrap();
            assert_eq!(out.output, expected, "reuse={reuse}\n{src}");
        }
        assert_eq!(live_cells(), before, "{src}");
    }
}

#[test]
fn pretty_printing_round_trips_generated_programs() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..300 {
        let src = common::aliasing_program(&mut rng);
        let once = pretty_print(&parse_source(&src).unwrap());
        let twice = pretty_print(&parse_source(&once).unwrap());
        assert_eq!(once, twice);
    }
}

fn arith() -> impl Strategy<Value = String> {
    let leaf = (-20i64..20).prop_map(|n| n.to_string());
    leaf.prop_recursive(4, 24, 2, |inner| {
        (inner.clone(), prop::sample::select(vec!["+", "-", "*"]), inner)
            .prop_map(|(a, op, b)| format!("({a} {op} {b})"))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_expressions_keep_their_value(e in arith()) {
        let src = format!("print({e})");
        let printed = pretty_print(&parse_source(&src).unwrap());
        let a = oracle::run(&parse_source(&src).unwrap()).unwrap().output;
        let b = oracle::run(&parse_source(&printed).unwrap()).unwrap().output;
        prop_assert_eq!(&a, &b);
        let c = run_program(&compile(&printed).unwrap(), EvalConfig::default()).unwrap().output;
        prop_assert_eq!(a, c);
    }
}
