//! Cross-checks between independent computations on seeded random complexes.

use tkr_core::random::random_family;
use tkr_core::skein::{skein_evaluate, skein_evaluate_ordered, CellOrder};
use tkr_core::trees::{default_gamma, is_apc, matrix_tree_weighted, weighted_tau};
use tkr_core::{bott_direct, bott_via_tkr, tkr, Limits};

const SEED: u64 = 20;

#[test]
fn skein_evaluation_matches_enumeration() {
    let limits = Limits::default();
    for k in random_family(SEED, 100) {
        let expected = tkr(&k, k.dim(), &limits).unwrap();
        let up = skein_evaluate(&k, &limits).unwrap();
        assert_eq!(up.result, expected, "{}\n{up}", k.name());
        let down = skein_evaluate_ordered(&k, &limits, CellOrder::Descending).unwrap();
        assert_eq!(down.result, expected, "{}", k.name());
    }
}

#[test]
fn bott_polynomial_two_ways() {
    let limits = Limits::default();
    for k in random_family(SEED, 100) {
        assert_eq!(
            bott_direct(&k, &limits).unwrap(),
            bott_via_tkr(&k, &limits).unwrap(),
            "{}",
            k.name()
        );
    }
}

#[test]
fn matrix_tree_matches_weighted_count() {
    let limits = Limits::default();
    let mut checked = 0;
    for k in random_family(SEED + 1, 300) {
        if !is_apc(&k) {
            continue;
        }
        for j in 1..=k.dim() {
            let gamma = default_gamma(&k, j).unwrap();
            let mt = matrix_tree_weighted(&k, j, &gamma).unwrap();
            assert_eq!(mt.weighted, weighted_tau(&k, j, &limits).unwrap(), "{} j={j}", k.name());
            checked += 1;
        }
    }
    assert!(checked >= 10, "only {checked} APC cases");
}
