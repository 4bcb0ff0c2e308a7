//! Cellular spanning trees.
//!
//! A spanning subcomplex `S` of dimension `j` is a `j`-tree when
//!
//! 1. `H~_j(S) = 0`,
//! 2. `b~_{j-1}(S) = 0`,
//! 3. `f_j(S) = f_j(K) - b~_j(K_(j)) + b~_{j-1}(K_(j))`.
//!
//! Any two of the conditions imply the third. Dimension 0 is allowed: a 0-tree
//! is a single vertex.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::homology::{homology, reduced_betti, torsion_weight};
use crate::matrix::IntMatrix;
use crate::subcomplex::{fold_subsets, CellSet, Limits, SpanningSubcomplex};

/// The three tree conditions, evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CstVerdict {
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub is_cst: bool,
}

impl CstVerdict {
    /// True when the verdict respects "any two conditions imply the third".
    pub fn two_of_three_holds(&self) -> bool {
        let n = [self.cond1, self.cond2, self.cond3].iter().filter(|&&c| c).count();
        n != 2
    }
}

/// `b~_i(K) = 0` for every `i < k`.
pub fn is_apc(k: &CellComplex) -> bool {
    (0..k.dim()).all(|i| reduced_betti(k, i as i64) == 0)
}

/// Size of every `j`-tree: `f_j - b~_j(K_(j)) + b~_{j-1}(K_(j))`.
pub fn tree_size(k: &CellComplex, j: usize) -> Result<i64> {
    let skel = SpanningSubcomplex::full(k, j)?;
    Ok(k.f(j) as i64 - reduced_betti(skel, j as i64) as i64
        + reduced_betti(skel, j as i64 - 1) as i64)
}

fn verdict_with_size(s: &SpanningSubcomplex<'_>, size: i64) -> CstVerdict {
    let j = s.dim();
    let cond1 = homology(s, j, true).expect("top degree").is_trivial();
    let cond2 = reduced_betti(s, j as i64 - 1) == 0;
    let cond3 = s.len() as i64 == size;
    CstVerdict {
        cond1,
        cond2,
        cond3,
        is_cst: cond1 && cond2 && cond3,
    }
}

pub fn cst_verdict(s: &SpanningSubcomplex<'_>) -> CstVerdict {
    let size = tree_size(s.complex(), s.dim()).expect("dimension in range");
    verdict_with_size(s, size)
}

fn warn_if_not_apc(k: &CellComplex) {
    if !is_apc(k) {
        log::warn!("{} is not acyclic in positive codimension; it may have no spanning trees", k.name());
    }
}

fn check_dim(k: &CellComplex, j: usize) -> Result<()> {
    if j > k.dim() {
        return Err(Error::OutOfRange {
            what: "tree dimension",
            value: j as i64,
            min: 0,
            max: k.dim() as i64,
        });
    }
    Ok(())
}

/// All `j`-trees, as cell sets in binary counting order.
pub fn enumerate_csts(k: &CellComplex, j: usize, limits: &Limits) -> Result<Vec<CellSet>> {
    check_dim(k, j)?;
    limits.check(j, k.f(j))?;
    warn_if_not_apc(k);
    let size = tree_size(k, j)?;
    let mut out = fold_subsets(
        k.f(j),
        limits,
        Vec::new,
        |mut acc, cells| {
            if cells.len() as i64 == size {
                let s = SpanningSubcomplex::new(k, j, cells).expect("subset in range");
                if verdict_with_size(&s, size).is_cst {
                    acc.push(cells);
                }
            }
            acc
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    out.sort();
    Ok(out)
}

/// Number of `j`-trees.
pub fn tau(k: &CellComplex, j: usize, limits: &Limits) -> Result<BigInt> {
    Ok(BigInt::from(enumerate_csts(k, j, limits)?.len()))
}

/// Sum of `|H~_{j-1}(S)|^2` over all `j`-trees `S`.
pub fn weighted_tau(k: &CellComplex, j: usize, limits: &Limits) -> Result<BigInt> {
    Ok(enumerate_csts(k, j, limits)?
        .into_iter()
        .map(|cells| {
            let s = SpanningSubcomplex::new(k, j, cells).expect("subset in range");
            torsion_weight(&s)
        })
        .sum())
}

/// Result of the weighted matrix-tree computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixTree {
    /// `det(L) * |H~_{j-2}(K)|^2 / |H~_{j-2}(G)|^2`, which equals the weighted tree count.
    #[serde(serialize_with = "crate::poly::serialize_bigint")]
    pub weighted: BigInt,
    /// Determinant of the reduced Laplacian `L`.
    #[serde(serialize_with = "crate::poly::serialize_bigint")]
    pub determinant: BigInt,
    /// `|H~_{j-2}(K)|`.
    #[serde(serialize_with = "crate::poly::serialize_bigint")]
    pub complex_torsion: BigInt,
    /// `|H~_{j-2}(G)|`.
    #[serde(serialize_with = "crate::poly::serialize_bigint")]
    pub gamma_torsion: BigInt,
    /// Ids of the `(j-1)`-cells of the tree `G`.
    pub gamma: Vec<String>,
}

/// Weighted tree count from a determinant: `L = D_U D_U^T` where `D_U` keeps the
/// rows of `D[j]` indexed by `(j-1)`-cells outside the `(j-1)`-tree `gamma`.
pub fn matrix_tree_weighted(k: &CellComplex, j: usize, gamma: &SpanningSubcomplex<'_>) -> Result<MatrixTree> {
    if j == 0 || j > k.dim() {
        return Err(Error::OutOfRange {
            what: "tree dimension",
            value: j as i64,
            min: 1,
            max: k.dim() as i64,
        });
    }
    if !is_apc(k) {
        return Err(Error::NotApc);
    }
    if gamma.dim() != j - 1 || gamma.complex() != k {
        return Err(Error::NotACst);
    }
    if !cst_verdict(gamma).is_cst {
        return Err(Error::NotACst);
    }
    let outside: Vec<usize> = (0..k.f(j - 1)).filter(|&i| !gamma.cells().contains(i)).collect();
    let d = k.boundary(j).select_rows(&outside);
    let laplacian = d.mul(&d.transpose());
    let determinant = laplacian.determinant();
    let (complex_torsion, gamma_torsion) = if j >= 2 {
        (
            homology(k, j - 2, true)?.torsion_order,
            homology(gamma, j - 2, true)?.torsion_order,
        )
    } else {
        (BigInt::one(), BigInt::one())
    };
    let numerator = &determinant * &complex_torsion * &complex_torsion;
    let denominator = &gamma_torsion * &gamma_torsion;
    let (weighted, rem) = numerator.div_rem(&denominator);
    if !rem.is_zero() {
        return Err(Error::Range(format!(
            "reduced Laplacian determinant {determinant} is not divisible by {denominator}"
        )));
    }
    Ok(MatrixTree {
        weighted,
        determinant,
        complex_torsion,
        gamma_torsion,
        gamma: gamma.ids().into_iter().map(str::to_string).collect(),
    })
}

/// A `(j-1)`-tree to pass to [`matrix_tree_weighted`]: the first vertex when
/// `j = 1`, otherwise the greedy basis of the columns of `D[j-1]` in cell order.
pub fn default_gamma(k: &CellComplex, j: usize) -> Result<SpanningSubcomplex<'_>> {
    if j == 0 || j > k.dim() {
        return Err(Error::OutOfRange {
            what: "tree dimension",
            value: j as i64,
            min: 1,
            max: k.dim() as i64,
        });
    }
    let cells = if j == 1 {
        if k.f(0) == 0 {
            return Err(Error::NotACst);
        }
        CellSet::from_indices([0])
    } else {
        greedy_basis(k.boundary(j - 1))
    };
    let gamma = SpanningSubcomplex::new(k, j - 1, cells)?;
    if !cst_verdict(&gamma).is_cst {
        return Err(Error::NotACst);
    }
    Ok(gamma)
}

/// Lexicographically first maximal set of linearly independent columns.
pub(crate) fn greedy_basis(d: &IntMatrix) -> CellSet {
    let mut chosen = Vec::new();
    let mut rank = 0;
    for c in 0..d.cols() {
        chosen.push(c);
        let r = d.select_columns(&chosen).rank();
        if r > rank {
            rank = r;
        } else {
            chosen.pop();
        }
    }
    CellSet::from_indices(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn apc_detection() {
        assert!(is_apc(&builtin("sphere-three-cells").unwrap()));
        assert!(is_apc(&builtin("rp2").unwrap()));
        assert!(!is_apc(&builtin("torus").unwrap()));
        let two_points = builtin("simplex-skeleton(2,0)").unwrap();
        let graph = two_points.disjoint_union(&builtin("simplex-skeleton(2,1)").unwrap(), "g");
        assert!(!is_apc(&graph));
    }

    #[test]
    fn projective_plane_verdicts() {
        let k = builtin("rp2").unwrap();
        let full = SpanningSubcomplex::new(&k, 2, CellSet(1)).unwrap();
        let v = cst_verdict(&full);
        assert!(v.cond1 && v.cond2 && v.cond3 && v.is_cst);
        let empty = SpanningSubcomplex::new(&k, 2, CellSet::EMPTY).unwrap();
        assert!(!cst_verdict(&empty).cond2);
    }

    #[test]
    fn spanning_tree_of_k4() {
        let k = builtin("simplex-skeleton(4,1)").unwrap();
        let path = SpanningSubcomplex::from_ids(&k, 1, &["v0v1", "v1v2", "v2v3"]).unwrap();
        assert!(cst_verdict(&path).is_cst);
        let cycle = SpanningSubcomplex::from_ids(&k, 1, &["v0v1", "v1v2", "v0v2"]).unwrap();
        assert!(!cst_verdict(&cycle).is_cst);
    }

    #[test]
    fn counts() {
        let three = builtin("sphere-three-cells").unwrap();
        assert_eq!(tau(&three, 2, &l()).unwrap(), BigInt::from(3));
        assert_eq!(tau(&builtin("s2vs2").unwrap(), 2, &l()).unwrap(), BigInt::one());
        assert_eq!(tau(&builtin("simplex-skeleton(4,1)").unwrap(), 1, &l()).unwrap(), BigInt::from(16));
        assert_eq!(weighted_tau(&builtin("rp2").unwrap(), 2, &l()).unwrap(), BigInt::from(4));
        let tet = builtin("tetrahedron-boundary").unwrap();
        assert_eq!(tau(&tet, 0, &l()).unwrap(), BigInt::from(4));
    }

    #[test]
    fn kalai_count_for_five_vertices() {
        let k = builtin("simplex-skeleton(5,2)").unwrap();
        assert_eq!(weighted_tau(&k, 2, &l()).unwrap(), BigInt::from(125));
        let gamma = default_gamma(&k, 2).unwrap();
        assert_eq!(matrix_tree_weighted(&k, 2, &gamma).unwrap().weighted, BigInt::from(125));
    }

    #[test]
    fn matrix_tree_small_cases() {
        let k4 = builtin("simplex-skeleton(4,1)").unwrap();
        let g = default_gamma(&k4, 1).unwrap();
        assert_eq!(g.ids(), vec!["v0"]);
        assert_eq!(matrix_tree_weighted(&k4, 1, &g).unwrap().weighted, BigInt::from(16));

        let rp2 = builtin("rp2").unwrap();
        let g = default_gamma(&rp2, 2).unwrap();
        assert!(g.is_empty());
        let mt = matrix_tree_weighted(&rp2, 2, &g).unwrap();
        assert_eq!((mt.weighted, mt.determinant), (BigInt::from(4), BigInt::from(4)));
    }

    #[test]
    fn matrix_tree_rejects_bad_gamma() {
        let k4 = builtin("simplex-skeleton(4,1)").unwrap();
        let two = SpanningSubcomplex::new(&k4, 0, CellSet(0b11)).unwrap();
        assert_eq!(matrix_tree_weighted(&k4, 1, &two).unwrap_err(), Error::NotACst);
        let torus = builtin("torus").unwrap();
        let g = SpanningSubcomplex::new(&torus, 1, CellSet::EMPTY).unwrap();
        assert_eq!(matrix_tree_weighted(&torus, 2, &g).unwrap_err(), Error::NotApc);
    }
}
