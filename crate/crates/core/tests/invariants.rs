//! Structural identities checked over every builtin and a seeded random family.

use num_bigint::BigInt;
use num_traits::Zero;
use tkr_core::catalog::{builtin, catalog, test_family};
use tkr_core::homology::{euler_characteristic, homology_all, reduced_betti};
use tkr_core::random::random_family;
use tkr_core::subcomplex::spanning_subcomplexes;
use tkr_core::tkr::tkr_reduced;
use tkr_core::trees::{cst_verdict, is_apc, tau, weighted_tau};
use tkr_core::{homology, manifold_closed_form, modified_tkr, tkr, CellComplex, CellRef, Limits};

fn everything() -> Vec<CellComplex> {
    let mut v = test_family();
    v.extend(random_family(11, 40));
    v
}

fn assert_chain_complex(k: &CellComplex) {
    for j in 2..=k.dim() {
        let dd = k.boundary(j - 1).mul(k.boundary(j));
        assert!(dd.is_zero(), "{}: D{} D{} != 0", k.name(), j - 1, j);
    }
}

#[test]
fn constructors_preserve_chain_condition() {
    for k in everything() {
        assert_chain_complex(&k);
        for j in 0..=k.dim() {
            assert_chain_complex(&k.skeleton(j).unwrap());
            for c in k.cells(j) {
                assert_chain_complex(&k.subcomplex(&k.closure(c), "closure"));
                assert_chain_complex(&k.contract_closure(c).unwrap());
                assert_chain_complex(&k.flip_orientation(c).unwrap());
                if let Ok(d) = k.delete_cell(c) {
                    assert_chain_complex(&d);
                }
            }
        }
        for c in k.cells(k.dim()) {
            for f in k.cells(k.dim().saturating_sub(1)) {
                if let Ok(col) = k.collapse(c, f) {
                    assert_chain_complex(&col);
                }
            }
        }
        let twice = k.disjoint_union(&k, "twice");
        assert_chain_complex(&twice);
        let parsed = tkr_core::format::parse(&tkr_core::format::serialize(&k)).unwrap();
        assert_eq!(parsed, k);
    }
}

#[test]
fn collapse_preserves_homology() {
    let mut collapses = 0;
    for k in everything() {
        let before = homology_all(&k, false);
        for j in 1..=k.dim() {
            for c in k.cells(j) {
                for f in k.cells(j - 1) {
                    let Ok(col) = k.collapse(c, f) else { continue };
                    collapses += 1;
                    let after = homology_all(&col, false);
                    for (a, b) in before.iter().zip(&after) {
                        assert_eq!(
                            (a.betti, &a.torsion_factors),
                            (b.betti, &b.torsion_factors),
                            "{} collapse {} across {}",
                            k.name(),
                            k.id(c),
                            k.id(f)
                        );
                    }
                }
            }
        }
    }
    assert!(collapses > 20, "only {collapses} collapses exercised");
}

#[test]
fn euler_characteristic_two_ways() {
    for k in everything() {
        let by_cells: i64 = (0..=k.dim()).map(|j| if j % 2 == 0 { 1 } else { -1 } * k.f(j) as i64).sum();
        assert_eq!(euler_characteristic(&k), by_cells, "{}", k.name());
    }
}

/// `b_{k-1}(S) - b_{k-1}(K) = f_k(K) - f_k(S) - b_k(K) + b_k(S)`.
#[test]
fn top_betti_identity() {
    let limits = Limits::default();
    for k in everything() {
        let top = k.dim();
        if top == 0 {
            continue;
        }
        let bk = homology(&k, top, false).unwrap().betti as i64;
        let bk1 = homology(&k, top - 1, false).unwrap().betti as i64;
        for s in spanning_subcomplexes(&k, top, &limits).unwrap() {
            let lhs = homology(s, top - 1, false).unwrap().betti as i64 - bk1;
            let rhs = k.f(top) as i64 - s.len() as i64 - bk + homology(s, top, false).unwrap().betti as i64;
            assert_eq!(lhs, rhs, "{} {:?}", k.name(), s);
        }
    }
}

#[test]
fn any_two_tree_conditions_imply_the_third() {
    let limits = Limits::default();
    for k in everything() {
        for j in 0..=k.dim() {
            if k.f(j) > 12 {
                continue;
            }
            for s in spanning_subcomplexes(&k, j, &limits).unwrap() {
                let v = cst_verdict(&s);
                assert!(v.two_of_three_holds(), "{} {:?}: {v:?}", k.name(), s);
                assert_eq!(v.is_cst, v.cond1 && v.cond2 && v.cond3);
            }
        }
    }
}

#[test]
fn shifted_polynomial_is_nonnegative() {
    let limits = Limits::default();
    for k in everything() {
        for j in 1..=k.dim() {
            let p = tkr(&k, j, &limits).unwrap().shift(-1, -1);
            assert!(p.is_nonnegative(), "{} j={j}: {p}", k.name());
        }
    }
}

#[test]
fn free_terms_count_trees() {
    let limits = Limits::default();
    let zero = BigInt::zero();
    let mut checked = 0;
    for k in everything() {
        if !is_apc(&k) {
            continue;
        }
        for j in 1..=k.dim() {
            let t = tkr(&k, j, &limits).unwrap();
            assert_eq!(t.evaluate(&zero, &zero), tau(&k, j, &limits).unwrap(), "{} j={j}", k.name());
            let m = modified_tkr(&k, j, &limits).unwrap();
            assert_eq!(m.evaluate(&zero, &zero), weighted_tau(&k, j, &limits).unwrap(), "{} j={j}", k.name());
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn closed_forms_for_connected_manifolds() {
    let limits = Limits::default();
    for entry in catalog() {
        let Some(kind) = entry.manifold else { continue };
        let k = builtin(entry.name).unwrap();
        let top = k.dim();
        assert_eq!(
            manifold_closed_form(k.f(top), kind).unwrap(),
            tkr(&k, top, &limits).unwrap(),
            "{}",
            entry.name
        );
    }
}

#[test]
fn degree_zero_polynomial_counts_vertex_sets() {
    let limits = Limits::default();
    for k in test_family() {
        let t0 = tkr_reduced(&k, 0, &limits).unwrap();
        let one = BigInt::from(1);
        assert_eq!(t0.evaluate(&one, &one), BigInt::from(1u64 << k.f(0)), "{}", k.name());
        assert_eq!(reduced_betti(&k, -1), 0);
    }
}

#[test]
fn top_cell_refs_round_trip_through_ids() {
    for k in test_family() {
        for j in 0..=k.dim() {
            for c in k.cells(j) {
                assert_eq!(k.find(j, k.id(c)), Some(CellRef::new(j, c.index)));
            }
        }
    }
}
