//! The Tutte–Krushkal–Renardy polynomial
//!
//! ```text
//! T^j_K(X, Y) = sum over spanning S of  X^(b_{j-1}(S) - b_{j-1}(K)) * Y^(b_j(S))
//! ```
//!
//! its torsion-weighted variant, the Bott polynomial and the closed form for
//! connected manifolds.
//!
//! For a spanning `S` given by columns `D[j][:, S]` the exponents are
//! `rank D[j] - rank D[j][:, S]` and `|S| - rank D[j][:, S]`, and the torsion of
//! `H_{j-1}(S)` comes from the invariant factors of the same column block, so
//! one Smith form per subset suffices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::homology::{homology, reduced_betti};
use crate::matrix::IntMatrix;
use crate::poly::{BiPoly, UniPoly};
use crate::snf::smith_normal_form;
use crate::subcomplex::{fold_subsets, CellSet, Limits, SpanningSubcomplex};

/// Manifold type relevant to the closed form of the top polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ManifoldKind {
    ClosedOrientable,
    /// Non-orientable, or with nonempty boundary.
    Other,
}

impl fmt::Display for ManifoldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ManifoldKind::ClosedOrientable => "closed-orientable",
            ManifoldKind::Other => "other",
        })
    }
}

impl FromStr for ManifoldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed-orientable" => Ok(ManifoldKind::ClosedOrientable),
            "other" => Ok(ManifoldKind::Other),
            _ => Err(Error::Range(format!("unknown manifold kind `{s}`"))),
        }
    }
}

fn check_degree(k: &CellComplex, j: usize) -> Result<()> {
    if j == 0 || j > k.dim() {
        return Err(Error::OutOfRange {
            what: "polynomial dimension",
            value: j as i64,
            min: 1,
            max: k.dim() as i64,
        });
    }
    Ok(())
}

fn selected(d: &IntMatrix, cells: CellSet) -> IntMatrix {
    d.select_columns(&cells.indices().collect::<Vec<_>>())
}

fn sum_over_subsets(k: &CellComplex, j: usize, limits: &Limits, weighted: bool) -> Result<BiPoly> {
    check_degree(k, j)?;
    let n = k.f(j);
    limits.check(j, n)?;
    let d = k.boundary(j);
    let full_rank = smith_normal_form(d).rank;
    Ok(fold_subsets(
        n,
        limits,
        BiPoly::zero,
        |mut acc, cells| {
            let snf = smith_normal_form(&selected(d, cells));
            let weight = if weighted {
                let t = snf.torsion_order();
                &t * &t
            } else {
                BigInt::one()
            };
            acc.add_term((full_rank - snf.rank) as u32, (cells.len() - snf.rank) as u32, weight);
            acc
        },
        |a, b| a + b,
    ))
}

/// `T^j_K(X, Y)` by enumeration of all `2^{f_j}` spanning subcomplexes; `1 <= j <= k`.
pub fn tkr(k: &CellComplex, j: usize, limits: &Limits) -> Result<BiPoly> {
    sum_over_subsets(k, j, limits, false)
}

/// The modified polynomial: each term weighted by `|tor H_{j-1}(S)|^2`.
pub fn modified_tkr(k: &CellComplex, j: usize, limits: &Limits) -> Result<BiPoly> {
    sum_over_subsets(k, j, limits, true)
}

/// The polynomial with reduced Betti numbers in both exponents. It agrees with
/// [`tkr`] for `j >= 1`; for `j = 0` the sum runs over sets of vertices with
/// `H~_{-1}` of the empty set equal to `Z`.
pub fn tkr_reduced(k: &CellComplex, j: usize, limits: &Limits) -> Result<BiPoly> {
    if j >= 1 {
        return tkr(k, j, limits);
    }
    let n = k.f(0);
    limits.check(0, n)?;
    let base = u32::from(n == 0);
    Ok(fold_subsets(
        n,
        limits,
        BiPoly::zero,
        |mut acc, cells| {
            let x = u32::from(cells.is_empty()) - base;
            let y = cells.len().saturating_sub(1) as u32;
            acc.add_term(x, y, BigInt::one());
            acc
        },
        |a, b| a + b,
    ))
}

/// `R_K(L) = sum over top spanning S of (-1)^{f_k(K) - f_k(S)} L^{b_k(S)}`,
/// with `b_k(S)` taken from the homology of each subcomplex.
pub fn bott_direct(k: &CellComplex, limits: &Limits) -> Result<UniPoly> {
    let top = k.dim();
    check_degree(k, top)?;
    let n = k.f(top);
    limits.check(top, n)?;
    Ok(fold_subsets(
        n,
        limits,
        UniPoly::zero,
        |mut acc, cells| {
            let s = SpanningSubcomplex::new(k, top, cells).expect("subset in range");
            let b = homology(s, top, false).expect("top degree").betti as u32;
            let c = if (n - cells.len()).is_multiple_of(2) { 1 } else { -1 };
            acc.add_term(b, BigInt::from(c));
            acc
        },
        |a, b| a + b,
    ))
}

/// `(-1)^{b_k(K)} T^k_K(-1, -L)`.
pub fn bott_via_tkr(k: &CellComplex, limits: &Limits) -> Result<UniPoly> {
    let top = k.dim();
    let t = tkr(k, top, limits)?;
    let b = homology(k, top, false)?.betti;
    Ok(t.to_bott_substitution(b as u64))
}

/// Top polynomial of a connected compact manifold with `f_k` top cells:
/// `Y + ((1 + X)^{f_k} - 1) / X` when closed and orientable, `(1 + X)^{f_k}` otherwise.
pub fn manifold_closed_form(f_k: usize, kind: ManifoldKind) -> Result<BiPoly> {
    if f_k == 0 {
        return Err(Error::OutOfRange {
            what: "top cell count",
            value: 0,
            min: 1,
            max: i64::MAX,
        });
    }
    let power = (BiPoly::x() + BiPoly::one()).pow(f_k as u32);
    Ok(match kind {
        ManifoldKind::Other => power,
        ManifoldKind::ClosedOrientable => {
            let quotient = (power - BiPoly::one())
                .div_exact_by_x()
                .expect("(1 + X)^n - 1 is divisible by X");
            BiPoly::y() + quotient
        }
    })
}

/// Reduced Betti number of `K` in degree `j - 1`, the normalizing exponent of `T^j_K`.
pub fn codimension_one_betti(k: &CellComplex, j: usize) -> usize {
    reduced_betti(k, j as i64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    fn t(name: &str, j: usize) -> String {
        tkr(&builtin(name).unwrap(), j, &Limits::default()).unwrap().to_string()
    }

    fn tm(name: &str, j: usize) -> String {
        modified_tkr(&builtin(name).unwrap(), j, &Limits::default())
            .unwrap()
            .to_string()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(t("sphere-three-cells", 2), "X^2 + 3*X + Y + 3");
        assert_eq!(t("s2vs2", 2), "X*Y + X + Y + 1");
        assert_eq!(t("rp2", 2), "X + 1");
        assert_eq!(t("sphere-three-cells-deleted", 2), "X + 1");
        assert_eq!(t("sphere-one-cell", 2), "Y + 1");
    }

    #[test]
    fn modified_examples() {
        assert_eq!(tm("rp2", 2), "X + 4");
        assert_eq!(tm("sphere-three-cells", 2), "X^2 + 3*X + Y + 3");
        for name in ["torus", "klein-bottle", "theta-sphere", "rp2"] {
            assert_eq!(tm(name, 1), t(name, 1), "{name}");
        }
    }

    #[test]
    fn closed_forms() {
        let co = ManifoldKind::ClosedOrientable;
        assert_eq!(manifold_closed_form(3, co).unwrap().to_string(), "X^2 + 3*X + Y + 3");
        assert_eq!(manifold_closed_form(1, ManifoldKind::Other).unwrap().to_string(), "X + 1");
        assert_eq!(manifold_closed_form(1, co).unwrap().to_string(), "Y + 1");
        assert!(manifold_closed_form(0, co).is_err());
    }

    #[test]
    fn bott_examples() {
        let l = Limits::default();
        for name in ["torus", "sphere-three-cells", "sphere-one-cell"] {
            let k = builtin(name).unwrap();
            assert_eq!(bott_direct(&k, &l).unwrap().to_string(), "L - 1", "{name}");
            assert_eq!(bott_via_tkr(&k, &l).unwrap().to_string(), "L - 1", "{name}");
        }
        for name in ["disc", "rp2"] {
            let k = builtin(name).unwrap();
            assert!(bott_direct(&k, &l).unwrap().is_zero(), "{name}");
            assert!(bott_via_tkr(&k, &l).unwrap().is_zero(), "{name}");
        }
        let kb = builtin("klein-bottle").unwrap();
        assert_eq!(bott_direct(&kb, &l).unwrap(), bott_via_tkr(&kb, &l).unwrap());
    }

    #[test]
    fn degree_zero_reduced_polynomial() {
        let k = builtin("tetrahedron-boundary").unwrap();
        let t0 = tkr_reduced(&k, 0, &Limits::default()).unwrap();
        assert_eq!(t0.to_string(), "Y^3 + 4*Y^2 + X + 6*Y + 4");
    }

    #[test]
    fn value_at_one_one_counts_subsets() {
        let k = builtin("cube-surface").unwrap();
        let p = tkr(&k, 1, &Limits::default()).unwrap();
        assert_eq!(p.evaluate(&BigInt::one(), &BigInt::one()), BigInt::from(1 << 12));
    }

    #[test]
    fn range_and_cap_errors() {
        let k = builtin("rp2").unwrap();
        assert_eq!(tkr(&k, 0, &Limits::default()).unwrap_err().code(), "OutOfRange");
        assert_eq!(tkr(&k, 3, &Limits::default()).unwrap_err().code(), "OutOfRange");
        let cube = builtin("cube-surface").unwrap();
        assert_eq!(tkr(&cube, 1, &Limits::with_cap(8)).unwrap_err().code(), "TooLarge");
    }
}
