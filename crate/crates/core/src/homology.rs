//! Integral homology of complexes and spanning subcomplexes.
//!
//! Degree `j` homology has Betti number `f_j - rank D[j] - rank D[j+1]` and
//! torsion given by the invariant factors of `D[j+1]` that exceed one. Reduced
//! homology differs only in degree 0 (the augmentation has rank 1 on a
//! nonempty complex) and in degree -1, where `H~_{-1}(empty) = Z`.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::complex::{CellComplex, CellRef, Signature};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::snf::smith_normal_form;
use crate::subcomplex::SpanningSubcomplex;

/// One homology group `H_j` (or `H~_j`) in Betti/torsion form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub degree: usize,
    pub betti: usize,
    #[serde(serialize_with = "crate::poly::serialize_bigint")]
    pub torsion_order: BigInt,
    #[serde(serialize_with = "crate::poly::serialize_bigints")]
    pub torsion_factors: Vec<BigInt>,
    pub reduced: bool,
}

impl HomologySummary {
    /// True when the group is zero.
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion_factors.is_empty()
    }

    /// True when the group is infinite cyclic.
    pub fn is_z(&self) -> bool {
        self.betti == 1 && self.torsion_factors.is_empty()
    }
}

/// Anything whose cellular chain complex can be read off: a whole complex or a
/// spanning subcomplex.
#[derive(Debug, Clone, Copy)]
pub enum Chains<'a> {
    Complex(&'a CellComplex),
    Spanning(SpanningSubcomplex<'a>),
}

impl<'a> From<&'a CellComplex> for Chains<'a> {
    fn from(k: &'a CellComplex) -> Self {
        Chains::Complex(k)
    }
}

impl<'a> From<SpanningSubcomplex<'a>> for Chains<'a> {
    fn from(s: SpanningSubcomplex<'a>) -> Self {
        Chains::Spanning(s)
    }
}

impl<'a> From<&SpanningSubcomplex<'a>> for Chains<'a> {
    fn from(s: &SpanningSubcomplex<'a>) -> Self {
        Chains::Spanning(*s)
    }
}

impl Chains<'_> {
    pub fn dim(&self) -> usize {
        match self {
            Chains::Complex(k) => k.dim(),
            Chains::Spanning(s) => s.dim(),
        }
    }

    pub fn f(&self, j: usize) -> usize {
        match self {
            Chains::Complex(k) => k.f(j),
            Chains::Spanning(s) if j < s.dim() => s.complex().f(j),
            Chains::Spanning(s) if j == s.dim() => s.len(),
            Chains::Spanning(_) => 0,
        }
    }

    /// `D[j]` for `1 <= j <= dim`, `None` above.
    fn boundary(&self, j: usize) -> Option<std::borrow::Cow<'_, IntMatrix>> {
        use std::borrow::Cow;
        if j == 0 || j > self.dim() {
            return None;
        }
        match self {
            Chains::Complex(k) => Some(Cow::Borrowed(k.boundary(j))),
            Chains::Spanning(s) if j < s.dim() => Some(Cow::Borrowed(s.complex().boundary(j))),
            Chains::Spanning(s) => Some(Cow::Owned(s.top_boundary())),
        }
    }
}

type CacheKey = (Signature, usize, bool);

fn cache() -> &'static Mutex<HashMap<CacheKey, HomologySummary>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, HomologySummary>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `H_j` (or `H~_j` when `reduced`) for `0 <= j <= dim`.
///
/// Results for whole complexes are memoized by content signature.
pub fn homology<'a>(chains: impl Into<Chains<'a>>, j: usize, reduced: bool) -> Result<HomologySummary> {
    let chains = chains.into();
    if j > chains.dim() {
        return Err(Error::OutOfRange {
            what: "homology degree",
            value: j as i64,
            min: 0,
            max: chains.dim() as i64,
        });
    }
    if let Chains::Complex(k) = chains {
        let key = (k.signature(), j, reduced);
        if let Some(hit) = cache().lock().expect("homology cache").get(&key) {
            return Ok(hit.clone());
        }
        let out = compute(chains, j, reduced);
        cache().lock().expect("homology cache").insert(key, out.clone());
        return Ok(out);
    }
    Ok(compute(chains, j, reduced))
}

/// Every degree `0 ..= dim`.
pub fn homology_all<'a>(chains: impl Into<Chains<'a>>, reduced: bool) -> Vec<HomologySummary> {
    let chains = chains.into();
    (0..=chains.dim())
        .map(|j| homology(chains, j, reduced).expect("degree in range"))
        .collect()
}

fn compute(chains: Chains<'_>, j: usize, reduced: bool) -> HomologySummary {
    let fj = chains.f(j);
    let rank_in = if j == 0 {
        usize::from(reduced && fj > 0)
    } else {
        chains.boundary(j).map_or(0, |d| d.rank())
    };
    let (rank_out, torsion) = match chains.boundary(j + 1) {
        Some(d) => {
            let snf = smith_normal_form(&d);
            (snf.rank, snf.torsion_factors())
        }
        None => (0, Vec::new()),
    };
    summary(j, fj - rank_in - rank_out, torsion, reduced)
}

fn summary(degree: usize, betti: usize, torsion_factors: Vec<BigInt>, reduced: bool) -> HomologySummary {
    HomologySummary {
        degree,
        betti,
        torsion_order: torsion_factors.iter().product(),
        torsion_factors,
        reduced,
    }
}

/// Reduced Betti number in degree `j`, allowing `j = -1` (`1` exactly for the empty complex).
pub fn reduced_betti<'a>(chains: impl Into<Chains<'a>>, j: i64) -> usize {
    let chains = chains.into();
    if j < 0 {
        return usize::from(j == -1 && chains.f(0) == 0);
    }
    homology(chains, j as usize, true).map_or(0, |h| h.betti)
}

/// `|tor H_{j-1}(S)|^2` for a spanning subcomplex of dimension `j >= 1`: the
/// squared product of the invariant factors of the selected columns of `D[j]`.
/// For `j = 0` the weight is 1.
pub fn torsion_weight(s: &SpanningSubcomplex<'_>) -> BigInt {
    if s.dim() == 0 {
        return BigInt::one();
    }
    let order = smith_normal_form(&s.top_boundary()).torsion_order();
    &order * &order
}

/// Euler characteristic; the alternating sums of cell counts and of Betti
/// numbers are both computed and must agree.
pub fn euler_characteristic<'a>(chains: impl Into<Chains<'a>>) -> i64 {
    let chains = chains.into();
    let by_cells: i64 = (0..=chains.dim())
        .map(|j| sign(j) * chains.f(j) as i64)
        .sum();
    let by_betti: i64 = homology_all(chains, false)
        .iter()
        .map(|h| sign(h.degree) * h.betti as i64)
        .sum();
    assert_eq!(by_cells, by_betti, "Euler characteristic mismatch");
    by_cells
}

fn sign(j: usize) -> i64 {
    if j.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Relative homology `H_j(K, L)` where `sub` is the cell set of a subcomplex `L`,
/// computed from the quotient chain complex `C(K) / C(L)`.
pub fn relative_homology(k: &CellComplex, sub: &BTreeSet<CellRef>, j: usize) -> Result<HomologySummary> {
    if j > k.dim() {
        return Err(Error::OutOfRange {
            what: "homology degree",
            value: j as i64,
            min: 0,
            max: k.dim() as i64,
        });
    }
    let keep = |d: usize| -> Vec<usize> {
        (0..k.f(d))
            .filter(|&i| !sub.contains(&CellRef::new(d, i)))
            .collect()
    };
    let reduced_map = |d: usize| -> Option<IntMatrix> {
        (d >= 1 && d <= k.dim()).then(|| k.boundary(d).select_rows(&keep(d - 1)).select_columns(&keep(d)))
    };
    let fj = keep(j).len();
    let rank_in = reduced_map(j).map_or(0, |m| m.rank());
    let (rank_out, torsion) = match reduced_map(j + 1) {
        Some(m) => {
            let snf = smith_normal_form(&m);
            (snf.rank, snf.torsion_factors())
        }
        None => (0, Vec::new()),
    };
    Ok(summary(j, fj - rank_in - rank_out, torsion, false))
}
