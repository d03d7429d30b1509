mod common;

use common::*;
use perverx::local::LocalGroup;
use perverx::{Gf2, Gf3};
use proptest::prelude::*;
use std::sync::OnceLock;

fn f3(name: &'static str) -> &'static LocalGroup<Gf3> {
    static CELLS: OnceLock<Vec<(&'static str, LocalGroup<Gf3>)>> = OnceLock::new();
    let all = CELLS.get_or_init(|| {
        ["C4", "Q8", "D8", "SD16", "S3"].into_iter().map(|n| (n, LocalGroup::load(n, 0).unwrap())).collect()
    });
    &all.iter().find(|(n, _)| *n == name).unwrap().1
}

fn f2(name: &'static str) -> &'static LocalGroup<Gf2> {
    static CELLS: OnceLock<Vec<(&'static str, LocalGroup<Gf2>)>> = OnceLock::new();
    let all = CELLS.get_or_init(|| ["A4", "C2^3:C7"].into_iter().map(|n| (n, LocalGroup::load(n, 0).unwrap())).collect());
    &all.iter().find(|(n, _)| *n == name).unwrap().1
}

fn f3_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["C4", "Q8", "D8", "SD16", "S3"])
}

fn f2_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A4", "C2^3:C7"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chop_and_loewy_agree(name in f3_name(), seed in any::<u64>()) {
        let lg = f3(name);
        let m = random_module(lg, seed);
        prop_assert_eq!(chop_loewy(lg, &m), Ok(()));
    }

    #[test]
    fn chop_and_loewy_agree_f2(name in f2_name(), seed in any::<u64>()) {
        let lg = f2(name);
        let m = random_module(lg, seed);
        prop_assert_eq!(chop_loewy(lg, &m), Ok(()));
    }

    #[test]
    fn omega_inverts_omega_inv(name in f3_name(), seed in any::<u64>()) {
        let lg = f3(name);
        let m = random_module(lg, seed);
        prop_assert_eq!(omega_round_trip(lg, &m), Ok(()));
    }

    #[test]
    fn omega_inverts_omega_inv_f2(name in f2_name(), seed in any::<u64>()) {
        let lg = f2(name);
        let m = random_module(lg, seed);
        prop_assert_eq!(omega_round_trip(lg, &m), Ok(()));
    }

    #[test]
    fn cover_complex_euler_and_minimize(name in f3_name(), seed in any::<u64>()) {
        let lg = f3(name);
        let c = cover_complex(lg, &random_module(lg, seed));
        prop_assert_eq!(euler(lg, &c), Ok(()));
        prop_assert_eq!(minimize_idempotent(&c, seed), Ok(()));
    }

    #[test]
    fn frobenius_reciprocity(name in f3_name(), seed in any::<u64>()) {
        let lg = f3(name);
        let m = random_module(lg, seed);
        prop_assert_eq!(frobenius(lg, &m), Ok(()));
    }

    #[test]
    fn frobenius_reciprocity_f2(name in f2_name(), seed in any::<u64>()) {
        let lg = f2(name);
        let m = random_module(lg, seed);
        prop_assert_eq!(frobenius(lg, &m), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn perverse_complexes_satisfy_euler(name in f3_name(), seed in any::<u64>()) {
        prop_assert_eq!(perverse_euler(f3(name), seed), Ok(()));
    }
}

#[test]
fn cartan_matrices_are_symmetric() {
    for name in ["C4", "Q8", "D8", "SD16", "S3"] {
        assert_eq!(cartan_symmetric(f3(name)), Ok(()), "{name}");
    }
    for name in ["A4", "C2^3:C7"] {
        assert_eq!(cartan_symmetric(f2(name)), Ok(()), "{name}");
    }
}
