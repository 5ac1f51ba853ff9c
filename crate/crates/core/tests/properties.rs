mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn operations_preserve_homogeneity(cs in coeffs(5), ds in coeffs(5)) {
        homogeneity(&cs, &ds)?;
    }

    #[test]
    fn reversion_round_trips_to_degree_12(cs in rationals(11)) {
        reversion_round_trip(&cs)?;
    }

    #[test]
    fn pushforward_laws_satisfy_the_axioms(cs in coeffs(7)) {
        pushforward_axioms(&cs)?;
    }

    #[test]
    fn k_series_are_additive(k in -4i64..=4, l in -4i64..=4) {
        k_additivity(&k_laws(), k, l)?;
    }

    #[test]
    fn long_division_reconstructs(cs in prop::collection::vec((-30i64..=30, 1i64..=8), 8), bound in -2i32..=3, p in prop::sample::select(vec![2u32, 3, 5])) {
        division_reconstruction(&cs, bound, p)?;
    }

    #[test]
    fn reported_coefficients_are_window_stable(x in 2u32..=6, t in 0i32..=3, dx in 0u32..=2, dt in 0i32..=2, p in prop::sample::select(vec![2u32, 3])) {
        window_stability(x, t, dx, dt, p)?;
    }
}

#[test]
fn universal_law_is_associative_to_degree_8() {
    universal_axioms().unwrap();
}

#[test]
fn universal_law_is_integral_to_degree_10() {
    universal_integrality(10).unwrap();
}
