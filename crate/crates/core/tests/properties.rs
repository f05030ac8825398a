//! Randomized invariants of the algebra, automaton and classification layers.

mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cartier_reconstruction(f in prop::sample::select(vec![2u32, 3, 5]).prop_flat_map(|p| arb_poly(p, 48))) {
        check_cartier_reconstruction(&f)?;
    }

    #[test]
    fn hensel_residual_binary(f in arb_hensel_equation(2), n in 1usize..120) {
        check_hensel_residual(&f, n)?;
    }

    #[test]
    fn hensel_residual_ternary(f in arb_hensel_equation(3), n in 1usize..60) {
        check_hensel_residual(&f, n)?;
    }

    #[test]
    fn minimize_is_idempotent(a in arb_dfao(2, 8)) {
        check_minimize_idempotent(&a)?;
    }

    #[test]
    fn minimize_is_idempotent_ternary(a in arb_dfao(3, 5)) {
        check_minimize_idempotent(&a)?;
    }

    #[test]
    fn equal_series_laws(
        (a, renumbered) in arb_dfao(2, 4).prop_flat_map(arb_renumbered),
        b in arb_dfao(2, 3),
    ) {
        check_equal_series_laws(&a, &renumbered, &b)?;
    }

    #[test]
    fn counting_function_and_rank(a in arb_dfao(2, 6), n in 0u128..3000) {
        check_counting_and_rank(&a, n)?;
    }

    #[test]
    fn witt_axioms_length_two(a in arb_witt(2), b in arb_witt(2), c in arb_witt(2)) {
        check_witt_axioms(&a, &b, &c)?;
    }

    #[test]
    fn witt_axioms_length_three(a in arb_witt(3), b in arb_witt(3), c in arb_witt(3)) {
        check_witt_axioms(&a, &b, &c)?;
    }
}
