//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails. `--seed N` changes the random family (default 20).

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use num_traits::Zero;

use tkr_cli::run;
use tkr_core::catalog::{builtin, catalog, test_family};
use tkr_core::duality::{check_alexander_identities, check_duality, DualPair};
use tkr_core::homology::homology_all;
use tkr_core::matroid::{check_matroid_correspondence, column_matroid};
use tkr_core::random::random_family;
use tkr_core::skein::{skein_evaluate, verify_skein, SkeinCase};
use tkr_core::subcomplex::spanning_subcomplexes;
use tkr_core::trees::{cst_verdict, default_gamma, is_apc, matrix_tree_weighted, tau, weighted_tau};
use tkr_core::{
    bott_direct, bott_via_tkr, homology, manifold_closed_form, modified_tkr, tkr, CellComplex, CellSet, Limits,
};

type Check = Result<(), String>;
type Criterion = (&'static str, fn(u64) -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn limits() -> Limits {
    Limits::default()
}

fn cli(args: &str) -> String {
    let r = run(std::iter::once("tkr").chain(args.split_whitespace()));
    r.stdout.trim_end().to_string()
}

fn random(seed: u64) -> Vec<CellComplex> {
    random_family(seed, 100)
}

fn worked_examples(_: u64) -> Check {
    for (args, want) in [
        ("tkr sphere-three-cells --dim 2", "X^2 + 3*X + Y + 3"),
        ("tkr s2vs2 --dim 2", "X*Y + X + Y + 1"),
        ("tkr rp2 --dim 2", "X + 1"),
        ("tkr sphere-three-cells-deleted --dim 2", "X + 1"),
    ] {
        let got = cli(args);
        ensure(got == want, || format!("`{args}` gave `{got}`"))?;
    }
    let k = builtin("sphere-three-cells").unwrap();
    let r = verify_skein(&k, k.lookup("sinf").unwrap(), &limits()).map_err(|e| e.to_string())?;
    ensure(r.deletion.to_string() == "X^2 + 2*X + 1", || format!("deletion {}", r.deletion))?;
    ensure(r.contraction.to_string() == "Y^2 + 2*Y + 1", || format!("contraction {}", r.contraction))
}

fn closed_form(_: u64) -> Check {
    let names = ["sphere-one-cell", "sphere-three-cells", "rp2", "disc", "torus", "klein-bottle"];
    for name in names {
        let entry = catalog().iter().find(|e| e.name == name).unwrap();
        let k = builtin(name).unwrap();
        let top = k.dim();
        let want = manifold_closed_form(k.f(top), entry.manifold.unwrap()).unwrap();
        let got = tkr(&k, top, &limits()).unwrap();
        ensure(want == got, || format!("{name}: closed form {want}, enumeration {got}"))?;
    }
    Ok(())
}

fn free_terms(_: u64) -> Check {
    let zero = BigInt::zero();
    let mut apc = 0;
    for k in test_family() {
        if !is_apc(&k) {
            continue;
        }
        apc += 1;
        for j in 1..=k.dim() {
            let t = tkr(&k, j, &limits()).unwrap().evaluate(&zero, &zero);
            let m = modified_tkr(&k, j, &limits()).unwrap().evaluate(&zero, &zero);
            let (a, b) = (tau(&k, j, &limits()).unwrap(), weighted_tau(&k, j, &limits()).unwrap());
            ensure(t == a && m == b, || format!("{} j={j}: {t}/{a}, {m}/{b}", k.name()))?;
        }
    }
    ensure(apc >= 10, || format!("only {apc} APC builtins"))
}

fn bott(seed: u64) -> Check {
    let mut all = test_family();
    all.extend(random(seed));
    for k in &all {
        ensure(k.f(k.dim()) <= 24, || format!("{} too large", k.name()))?;
        let a = bott_direct(k, &limits()).unwrap();
        let b = bott_via_tkr(k, &limits()).unwrap();
        ensure(a == b, || format!("{}: {a} vs {b}", k.name()))?;
    }
    for name in [
        "torus",
        "sphere-one-cell",
        "sphere-three-cells",
        "theta-sphere",
        "triangle-sphere",
        "tetrahedron-boundary",
        "cube-surface",
        "octahedron-surface",
    ] {
        let p = bott_direct(&builtin(name).unwrap(), &limits()).unwrap();
        ensure(p.to_string() == "L - 1", || format!("{name}: {p}"))?;
    }
    Ok(())
}

fn weighted_count(_: u64) -> Check {
    let rp2 = builtin("rp2").unwrap();
    let w = weighted_tau(&rp2, 2, &limits()).unwrap();
    ensure(w == BigInt::from(4), || format!("rp2: {w}"))?;
    let k = builtin("simplex-skeleton(5,2)").unwrap();
    let w = weighted_tau(&k, 2, &limits()).unwrap();
    ensure(w == BigInt::from(125), || format!("simplex-skeleton(5,2): {w}"))?;
    let mt = matrix_tree_weighted(&k, 2, &default_gamma(&k, 2).unwrap()).unwrap();
    ensure(mt.weighted == w, || format!("matrix-tree {}", mt.weighted))
}

fn skein(seed: u64) -> Check {
    let case = |name: &str, cell: &str| {
        let k = builtin(name).unwrap();
        verify_skein(&k, k.lookup(cell).unwrap(), &limits()).unwrap()
    };
    let expect = [
        ("s2vs2", "s'", SkeinCase::Bridge),
        ("s2vs2", "s", SkeinCase::Loop),
        ("sphere-three-cells", "s1", SkeinCase::Regular),
        ("sphere-three-cells", "s2", SkeinCase::Regular),
    ];
    for (name, cell, want) in expect {
        let r = case(name, cell);
        ensure(r.case == want && r.holds == Some(true), || format!("{name} {cell}: {:?} {:?}", r.case, r.holds))?;
    }
    let r = case("sphere-three-cells", "sinf");
    ensure(r.case == SkeinCase::NotApplicable && r.holds.is_none(), || format!("sinf: {:?}", r.case))?;
    ensure(&r.deletion + &r.contraction != r.polynomial, || "sinf sum should differ".into())?;
    let mut all = test_family();
    all.extend(random(seed));
    for k in all.iter().filter(|k| k.dim() >= 1) {
        let s = skein_evaluate(k, &limits()).unwrap().result;
        let t = tkr(k, k.dim(), &limits()).unwrap();
        ensure(s == t, || format!("{}: skein {s}, enumeration {t}", k.name()))?;
    }
    Ok(())
}

fn duality(_: u64) -> Check {
    for name in ["tetrahedron-self", "cube-octahedron"] {
        let p = DualPair::builtin(name).map_err(|e| e.to_string())?;
        for modified in [false, true] {
            let r = check_duality(&p, 1, modified, &limits()).unwrap();
            ensure(r.holds, || format!("{name} modified={modified}: {} vs {}", r.primal, r.dual_swapped))?;
        }
    }
    let p = DualPair::builtin("tetrahedron-self").unwrap();
    let a = check_alexander_identities(&p, 1, &limits()).unwrap();
    ensure(a.holds && a.subsets == 64, || format!("{} subsets, {} failures", a.subsets, a.failures.len()))
}

fn matroid(seed: u64) -> Check {
    for (name, j) in [("sphere-three-cells", 2), ("rp2", 2), ("s2vs2", 2), ("simplex-skeleton(4,1)", 1)] {
        let r = check_matroid_correspondence(&builtin(name).unwrap(), j, &limits()).unwrap();
        ensure(r.passed() && r.bases_are_trees.is_some(), || format!("{name}: {r:?}"))?;
    }
    let mut grounds = Vec::new();
    let mut all = test_family();
    all.extend(random_family(seed, 20));
    for k in &all {
        for j in (1..=k.dim()).filter(|&j| k.f(j) <= 12) {
            grounds.push((k.name().to_string(), column_matroid(k, j).unwrap()));
        }
    }
    for (name, m) in &grounds {
        let n = m.len();
        for bits in 0..(1u64 << n) {
            let a = CellSet(bits);
            let r = m.rank(a);
            ensure(r <= a.len(), || format!("{name}: rank exceeds size"))?;
            for e in (0..n).filter(|&e| !a.contains(e)) {
                let ae = m.rank(a.with(e));
                ensure(ae == r || ae == r + 1, || format!("{name}: rank jump"))?;
                for f in (e + 1..n).filter(|&f| !a.contains(f)) {
                    let ok = ae + m.rank(a.with(f)) >= m.rank(a.with(e).with(f)) + r;
                    ensure(ok, || format!("{name}: not submodular"))?;
                }
            }
        }
    }
    let k = builtin("sphere-three-cells").unwrap();
    let sinf = k.lookup("sinf").unwrap();
    let m = column_matroid(&k, 2).unwrap();
    let contracted = m.minor_rank(m.ground().without(sinf.index), CellSet::from_indices([sinf.index]));
    let quotient = k.contract_closure(sinf).unwrap().boundary(2).rank();
    ensure((contracted, quotient) == (1, 0), || format!("ranks {contracted} and {quotient}"))
}

fn properties(seed: u64) -> Check {
    let mut all = test_family();
    all.extend(random_family(seed, 40));
    let chain = |k: &CellComplex| (2..=k.dim()).all(|j| k.boundary(j - 1).mul(k.boundary(j)).is_zero());
    for k in &all {
        let top = k.dim();
        ensure(chain(k), || format!("{}: not a chain complex", k.name()))?;
        for j in 0..=top {
            ensure(chain(&k.skeleton(j).unwrap()), || format!("{} skeleton {j}", k.name()))?;
            for c in k.cells(j) {
                ensure(chain(&k.contract_closure(c).unwrap()), || format!("{} contract", k.name()))?;
                ensure(chain(&k.flip_orientation(c).unwrap()), || format!("{} flip", k.name()))?;
                if let Ok(d) = k.delete_cell(c) {
                    ensure(chain(&d), || format!("{} delete", k.name()))?;
                }
                for f in k.cells(j.saturating_sub(1)).filter(|_| j >= 1) {
                    if let Ok(col) = k.collapse(c, f) {
                        ensure(chain(&col), || format!("{} collapse", k.name()))?;
                        let same = homology_all(k, false)
                            .iter()
                            .zip(homology_all(&col, false))
                            .all(|(a, b)| a.betti == b.betti && a.torsion_factors == b.torsion_factors);
                        ensure(same, || format!("{}: collapse changed homology", k.name()))?;
                    }
                }
            }
        }
        ensure(chain(&k.disjoint_union(k, "twice")), || format!("{} union", k.name()))?;
        if top == 0 {
            continue;
        }
        let bk = homology(k, top, false).unwrap().betti as i64;
        let bk1 = homology(k, top - 1, false).unwrap().betti as i64;
        for s in spanning_subcomplexes(k, top, &limits()).unwrap() {
            let lhs = homology(s, top - 1, false).unwrap().betti as i64 - bk1;
            let rhs = k.f(top) as i64 - s.len() as i64 - bk + homology(s, top, false).unwrap().betti as i64;
            ensure(lhs == rhs, || format!("{}: top Betti identity fails on {s:?}", k.name()))?;
        }
        for j in 0..=top {
            if k.f(j) > 12 {
                continue;
            }
            for s in spanning_subcomplexes(k, j, &limits()).unwrap() {
                let v = cst_verdict(&s);
                ensure(v.two_of_three_holds(), || format!("{}: {s:?} {v:?}", k.name()))?;
            }
        }
    }
    for k in test_family() {
        for j in 1..=k.dim() {
            let p = tkr(&k, j, &limits()).unwrap().shift(-1, -1);
            ensure(p.is_nonnegative(), || format!("{} j={j}: {p}", k.name()))?;
        }
    }
    Ok(())
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed = args
        .iter()
        .position(|a| a == "--seed")
        .and_then(|i| args.get(i + 1))
        .and_then(|s| s.parse().ok())
        .unwrap_or(20);
    let criteria: [Criterion; 9] = [
        ("golden values of the worked examples", worked_examples),
        ("manifold closed form", closed_form),
        ("free terms count spanning trees", free_terms),
        ("Bott polynomial two ways", bott),
        ("weighted tree counts and matrix-tree", weighted_count),
        ("skein relations and evaluator", skein),
        ("duality and Alexander identities", duality),
        ("matroid correspondence and rank axioms", matroid),
        ("property suites", properties),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(|| check(seed)))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match outcome {
            Ok(()) => println!("PASS {} {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!("seed {seed}: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
