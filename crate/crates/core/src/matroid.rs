//! The column matroid of a boundary map `D[j]`: ground set the `j`-cells in
//! cell order, rank the rational rank of a column subset.
//!
//! Its Tutte polynomial satisfies `T^j_K(X, Y) = T_M(X + 1, Y + 1)`, and for an
//! APC complex its bases are exactly the `j`-trees.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use serde::Serialize;

use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::homology::torsion_weight;
use crate::matrix::IntMatrix;
use crate::poly::BiPoly;
use crate::subcomplex::{fold_subsets, CellSet, Limits, SpanningSubcomplex};
use crate::tkr::tkr;
use crate::trees::{enumerate_csts, is_apc};

/// Matroid represented by the columns of an integer matrix.
#[derive(Debug)]
pub struct ColumnMatroid {
    matrix: IntMatrix,
    ids: Vec<String>,
    full_rank: usize,
    rank_memo: Mutex<HashMap<CellSet, usize>>,
}

impl Clone for ColumnMatroid {
    fn clone(&self) -> Self {
        ColumnMatroid {
            matrix: self.matrix.clone(),
            ids: self.ids.clone(),
            full_rank: self.full_rank,
            rank_memo: Mutex::new(HashMap::new()),
        }
    }
}

/// Column matroid of `D[j]`; `1 <= j <= k`.
pub fn column_matroid(k: &CellComplex, j: usize) -> Result<ColumnMatroid> {
    if j == 0 || j > k.dim() {
        return Err(Error::OutOfRange {
            what: "matroid dimension",
            value: j as i64,
            min: 1,
            max: k.dim() as i64,
        });
    }
    Ok(ColumnMatroid::new(k.boundary(j).clone(), k.ids(j).to_vec()))
}

impl ColumnMatroid {
    pub fn new(matrix: IntMatrix, ids: Vec<String>) -> Self {
        assert_eq!(matrix.cols(), ids.len(), "one id per column");
        assert!(ids.len() <= crate::subcomplex::MAX_CELLS, "ground set too large");
        let full_rank = matrix.rank();
        ColumnMatroid {
            matrix,
            ids,
            full_rank,
            rank_memo: Mutex::new(HashMap::new()),
        }
    }

    /// Matroid of an unnamed matrix; elements are named `e0, e1, ...`.
    pub fn from_matrix(matrix: IntMatrix) -> Self {
        let ids = (0..matrix.cols()).map(|i| format!("e{i}")).collect();
        Self::new(matrix, ids)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn ground(&self) -> CellSet {
        CellSet::full(self.len())
    }

    pub fn full_rank(&self) -> usize {
        self.full_rank
    }

    /// Rational rank of the columns in `a`, by fraction-free elimination.
    pub fn rank(&self, a: CellSet) -> usize {
        if a.is_empty() {
            return 0;
        }
        if let Some(&r) = self.rank_memo.lock().expect("rank memo").get(&a) {
            return r;
        }
        let r = self
            .matrix
            .select_columns(&a.indices().collect::<Vec<_>>())
            .rank();
        self.rank_memo.lock().expect("rank memo").insert(a, r);
        r
    }

    /// Rank of `a` in the minor obtained by contracting `c`: `r(a + c) - r(c)`.
    pub fn minor_rank(&self, a: CellSet, c: CellSet) -> usize {
        self.rank(a.union(c)) - self.rank(c)
    }

    pub fn closure(&self, a: CellSet) -> CellSet {
        let r = self.rank(a);
        (0..self.len())
            .filter(|&e| a.contains(e) || self.rank(a.with(e)) == r)
            .fold(a, CellSet::with)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank(CellSet::EMPTY.with(e)) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.rank(self.ground().without(e)) + 1 == self.full_rank
    }

    pub fn is_basis(&self, b: CellSet) -> bool {
        b.is_subset(self.ground()) && b.len() == self.full_rank && self.rank(b) == self.full_rank
    }

    /// Every basis, in binary counting order.
    pub fn bases(&self, limits: &Limits) -> Result<Vec<CellSet>> {
        limits.check(0, self.len())?;
        let mut out = fold_subsets(
            self.len(),
            limits,
            Vec::new,
            |mut acc, b| {
                if b.len() == self.full_rank && self.rank(b) == self.full_rank {
                    acc.push(b);
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

    /// Tutte polynomial `T_M(x, y)` (as `X`, `Y`) by deletion and contraction of
    /// the lowest remaining element, memoized on the remaining set and the
    /// closure of the contracted set.
    pub fn tutte(&self, limits: &Limits) -> Result<BiPoly> {
        limits.check(0, self.len())?;
        let mut memo = HashMap::new();
        Ok(self.tutte_rec(self.ground(), CellSet::EMPTY, &mut memo))
    }

    fn tutte_rec(&self, rest: CellSet, contracted: CellSet, memo: &mut HashMap<(CellSet, CellSet), BiPoly>) -> BiPoly {
        let Some(e) = rest.indices().next() else {
            return BiPoly::one();
        };
        let key = (rest, self.closure(contracted));
        if let Some(hit) = memo.get(&key) {
            return hit.clone();
        }
        let without = rest.without(e);
        let single = CellSet::EMPTY.with(e);
        let out = if self.minor_rank(single, contracted) == 0 {
            &BiPoly::y() * &self.tutte_rec(without, contracted, memo)
        } else if self.minor_rank(rest, contracted) > self.minor_rank(without, contracted) {
            &BiPoly::x() * &self.tutte_rec(without, contracted, memo)
        } else {
            self.tutte_rec(without, contracted, memo) + self.tutte_rec(without, contracted.with(e), memo)
        };
        memo.insert(key, out.clone());
        out
    }

    /// `sum over A of (x - 1)^{r(E) - r(A)} (y - 1)^{|A| - r(A)}`.
    pub fn tutte_corank_nullity(&self, limits: &Limits) -> Result<BiPoly> {
        limits.check(0, self.len())?;
        let generating = fold_subsets(
            self.len(),
            limits,
            BiPoly::zero,
            |mut acc, a| {
                let r = self.rank(a);
                acc.add_term((self.full_rank - r) as u32, (a.len() - r) as u32, BigInt::from(1));
                acc
            },
            |a, b| a + b,
        );
        Ok(generating.shift(-1, -1))
    }

    /// Internal and external activity of the basis `b` with respect to the ground order.
    pub fn activities(&self, b: CellSet) -> Result<(usize, usize)> {
        if !self.is_basis(b) {
            return Err(Error::NotABasis);
        }
        let exchanges = |out: usize, inn: usize| self.is_basis(b.without(out).with(inn));
        let internal = b
            .indices()
            .filter(|&e| {
                // e is the least element of its fundamental cocircuit
                (0..e).all(|f| b.contains(f) || !exchanges(e, f))
            })
            .count();
        let external = b
            .complement(self.len())
            .indices()
            .filter(|&f| (0..f).all(|e| !b.contains(e) || !exchanges(e, f)))
            .count();
        Ok((internal, external))
    }

    /// `sum over bases B of X^{internal(B)} Y^{external(B)}`; equals [`Self::tutte`].
    pub fn activities_polynomial(&self, limits: &Limits) -> Result<BiPoly> {
        let mut p = BiPoly::zero();
        for b in self.bases(limits)? {
            let (i, e) = self.activities(b)?;
            p.add_term(i as u32, e as u32, BigInt::from(1));
        }
        Ok(p)
    }

    /// Names of the elements of `set`, in ground order.
    pub fn names(&self, set: CellSet) -> Vec<String> {
        set.indices().map(|i| self.ids[i].clone()).collect()
    }
}

/// Multiplicity `|tor H_{j-1}(S)|^2` of a set of `j`-cells.
pub fn multiplicity(k: &CellComplex, j: usize, cells: CellSet) -> Result<BigInt> {
    let s = SpanningSubcomplex::new(k, j, cells)?;
    Ok(torsion_weight(&s))
}

/// Outcome of [`check_matroid_correspondence`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatroidReport {
    pub dim: usize,
    pub tkr: BiPoly,
    pub tutte: BiPoly,
    /// Deletion-contraction agrees with the corank-nullity sum.
    pub tutte_consistent: bool,
    /// `T^j_K(X, Y) = T_M(X + 1, Y + 1)`.
    pub shift_matches: bool,
    /// Bases equal `j`-trees; `None` when the complex is not APC.
    pub bases_are_trees: Option<bool>,
    /// `T^j_K(X - 1, Y - 1)` equals the activities expansion.
    pub activities_match: bool,
    pub bases: Vec<Vec<String>>,
    pub trees: Vec<Vec<String>>,
}

impl MatroidReport {
    pub fn passed(&self) -> bool {
        self.tutte_consistent && self.shift_matches && self.bases_are_trees != Some(false) && self.activities_match
    }
}

/// Checks the three links between `T^j_K` and the column matroid of `D[j]`.
pub fn check_matroid_correspondence(k: &CellComplex, j: usize, limits: &Limits) -> Result<MatroidReport> {
    let m = column_matroid(k, j)?;
    let t = tkr(k, j, limits)?;
    let tutte = m.tutte(limits)?;
    let tutte_consistent = tutte == m.tutte_corank_nullity(limits)?;
    let shift_matches = t == tutte.shift(1, 1);
    let bases = m.bases(limits)?;
    let (bases_are_trees, trees) = if is_apc(k) {
        let trees = enumerate_csts(k, j, limits)?;
        (Some(trees == bases), trees)
    } else {
        (None, Vec::new())
    };
    let activities_match = m.activities_polynomial(limits)? == t.shift(-1, -1);
    Ok(MatroidReport {
        dim: j,
        tkr: t,
        tutte,
        tutte_consistent,
        shift_matches,
        bases_are_trees,
        activities_match,
        bases: bases.iter().map(|&b| m.names(b)).collect(),
        trees: trees.iter().map(|&b| m.names(b)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn three_cell_sphere_matroid() {
        let k = builtin("sphere-three-cells").unwrap();
        let m = column_matroid(&k, 2).unwrap();
        assert_eq!((m.len(), m.full_rank()), (3, 2));
        assert_eq!(m.bases(&l()).unwrap().len(), 3);
        assert_eq!(m.tutte(&l()).unwrap().to_string(), "X^2 + X + Y");
        assert_eq!(m.rank(m.ground()), 2);
        assert_eq!(m.rank(CellSet(0b011)), 2);
    }

    #[test]
    fn single_element_matroids() {
        let coloop = ColumnMatroid::from_matrix(IntMatrix::from_rows(&[[1]]));
        assert_eq!(coloop.tutte(&l()).unwrap(), BiPoly::x());
        assert_eq!(coloop.activities(CellSet(1)).unwrap(), (1, 0));
        let lp = ColumnMatroid::from_matrix(IntMatrix::from_rows(&[[0]]));
        assert_eq!(lp.tutte(&l()).unwrap(), BiPoly::y());
        assert_eq!(lp.activities(CellSet(1)).unwrap_err(), Error::NotABasis);
    }

    #[test]
    fn projective_plane_rank_ignores_torsion() {
        let m = column_matroid(&builtin("rp2").unwrap(), 2).unwrap();
        assert_eq!((m.len(), m.full_rank()), (1, 1));
        let k = builtin("rp2").unwrap();
        assert_eq!(multiplicity(&k, 2, CellSet(1)).unwrap(), BigInt::from(4));
    }

    #[test]
    fn k4_activities() {
        let m = column_matroid(&builtin("simplex-skeleton(4,1)").unwrap(), 1).unwrap();
        let bases = m.bases(&l()).unwrap();
        assert_eq!(bases.len(), 16);
        let act = m.activities_polynomial(&l()).unwrap();
        assert_eq!(act, m.tutte(&l()).unwrap());
        assert_eq!(act.to_string(), "X^3 + Y^3 + 3*X^2 + 4*X*Y + 3*Y^2 + 2*X + 2*Y");
    }

    #[test]
    fn tutte_is_independent_of_order() {
        let k = builtin("octahedron-surface").unwrap();
        let m = column_matroid(&k, 2).unwrap();
        let order: Vec<usize> = (0..m.len()).rev().collect();
        let flipped = ColumnMatroid::from_matrix(k.boundary(2).select_columns(&order));
        assert_eq!(m.tutte(&l()).unwrap(), flipped.tutte(&l()).unwrap());
        assert_eq!(m.activities_polynomial(&l()).unwrap(), flipped.activities_polynomial(&l()).unwrap());
    }

    #[test]
    fn correspondence_on_examples() {
        for (name, j) in [("sphere-three-cells", 2), ("rp2", 2), ("s2vs2", 2), ("simplex-skeleton(4,1)", 1)] {
            let r = check_matroid_correspondence(&builtin(name).unwrap(), j, &l()).unwrap();
            assert!(r.passed(), "{name}: {r:?}");
        }
        let r = check_matroid_correspondence(&builtin("s2vs2").unwrap(), 2, &l()).unwrap();
        assert_eq!(r.bases, vec![vec!["s'".to_string()]]);
    }

    #[test]
    fn loops_and_coloops_match_cell_classes() {
        let m = column_matroid(&builtin("s2vs2").unwrap(), 2).unwrap();
        assert!(m.is_loop(0) && !m.is_coloop(0));
        assert!(m.is_coloop(1) && !m.is_loop(1));
    }
}
