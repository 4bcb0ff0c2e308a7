//! Spanning subcomplexes `K_(j-1) ⊆ S ⊆ K_(j)`, identified with sets of `j`-cells,
//! and their exhaustive enumeration.

use std::fmt;

use rayon::prelude::*;

use crate::complex::{CellComplex, CellRef};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Default bound on `f_j` for exhaustive enumeration.
pub const DEFAULT_CAP: usize = 24;

/// Hard bound imposed by the 64-bit cell set.
pub const MAX_CELLS: usize = 63;

/// A set of cell indices within one dimension.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellSet(pub u64);

impl CellSet {
    pub const EMPTY: CellSet = CellSet(0);

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_CELLS);
        CellSet((1u64 << n) - 1)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        CellSet(it.into_iter().fold(0, |m, i| m | (1u64 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        CellSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        CellSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self, n: usize) -> Self {
        CellSet(!self.0 & CellSet::full(n).0)
    }

    pub fn is_subset(self, other: CellSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: CellSet) -> Self {
        CellSet(self.0 | other.0)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }
}

impl fmt::Debug for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

/// Enumeration settings shared by every exhaustive computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `f_j` that may be enumerated.
    pub cap: usize,
    /// Worker threads for subset enumeration; `1` runs inline.
    pub threads: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cap: DEFAULT_CAP,
            threads: 1,
        }
    }
}

impl Limits {
    pub fn with_cap(cap: usize) -> Self {
        Limits {
            cap,
            ..Self::default()
        }
    }

    /// Fails with `TooLarge` when `count` cells in dimension `dim` cannot be enumerated.
    pub fn check(&self, dim: usize, count: usize) -> Result<()> {
        if count > self.cap.min(MAX_CELLS) {
            return Err(Error::TooLarge {
                dim,
                count,
                cap: self.cap.min(MAX_CELLS),
            });
        }
        Ok(())
    }
}

/// A spanning subcomplex of dimension `dim`: every cell below `dim` plus the
/// `dim`-cells in `cells`.
#[derive(Clone, Copy)]
pub struct SpanningSubcomplex<'a> {
    complex: &'a CellComplex,
    dim: usize,
    cells: CellSet,
}

impl fmt::Debug for SpanningSubcomplex<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}{:?}", self.complex.name(), self.dim, self.cells)
    }
}

impl PartialEq for SpanningSubcomplex<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.complex, other.complex) && self.dim == other.dim && self.cells == other.cells
    }
}

impl<'a> SpanningSubcomplex<'a> {
    pub fn new(complex: &'a CellComplex, dim: usize, cells: CellSet) -> Result<Self> {
        if dim > complex.dim() {
            return Err(Error::OutOfRange {
                what: "subcomplex dimension",
                value: dim as i64,
                min: 0,
                max: complex.dim() as i64,
            });
        }
        let n = complex.f(dim);
        if n > MAX_CELLS || !cells.is_subset(CellSet::full(n)) {
            return Err(Error::Range(format!(
                "cell set {cells:?} does not fit the {n} cells of dimension {dim}"
            )));
        }
        Ok(SpanningSubcomplex { complex, dim, cells })
    }

    /// Builds a subcomplex from cell ids of dimension `dim`.
    pub fn from_ids(complex: &'a CellComplex, dim: usize, ids: &[&str]) -> Result<Self> {
        let mut set = CellSet::EMPTY;
        for id in ids {
            let c = complex.find(dim, id).ok_or_else(|| Error::UnknownCell {
                id: id.to_string(),
            })?;
            set = set.with(c.index);
        }
        Self::new(complex, dim, set)
    }

    /// The whole `dim`-skeleton.
    pub fn full(complex: &'a CellComplex, dim: usize) -> Result<Self> {
        let n = complex.f(dim);
        if n > MAX_CELLS {
            return Err(Error::TooLarge {
                dim,
                count: n,
                cap: MAX_CELLS,
            });
        }
        Self::new(complex, dim, CellSet::full(n))
    }

    pub fn complex(&self) -> &'a CellComplex {
        self.complex
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> CellSet {
        self.cells
    }

    /// Number of top cells, `f_dim(S)`.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.cells.indices().collect()
    }

    pub fn cell_refs(&self) -> impl Iterator<Item = CellRef> + '_ {
        self.cells.indices().map(move |i| CellRef::new(self.dim, i))
    }

    pub fn ids(&self) -> Vec<&'a str> {
        let complex = self.complex;
        let dim = self.dim;
        self.cells
            .indices()
            .map(|i| complex.ids(dim)[i].as_str())
            .collect()
    }

    /// Boundary matrices `D[1] ..= D[dim]` of `S`: the parent's matrices below
    /// `dim`, and the selected columns of `D[dim]`.
    pub fn boundaries(&self) -> Vec<IntMatrix> {
        let mut out: Vec<IntMatrix> = (1..self.dim).map(|j| self.complex.boundary(j).clone()).collect();
        if self.dim >= 1 {
            out.push(self.top_boundary());
        }
        out
    }

    /// Cell counts `f_0 ..= f_dim` of `S`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f: Vec<usize> = (0..self.dim).map(|j| self.complex.f(j)).collect();
        f.push(self.len());
        f
    }

    /// The selected columns of `D[dim]`.
    pub fn top_boundary(&self) -> IntMatrix {
        self.complex.boundary(self.dim).select_columns(&self.indices())
    }
}

/// Iterator over every spanning subcomplex of one dimension, in binary
/// counting order of the cell set.
pub struct SpanningSubcomplexes<'a> {
    complex: &'a CellComplex,
    dim: usize,
    next: u64,
    end: u64,
}

impl<'a> Iterator for SpanningSubcomplexes<'a> {
    type Item = SpanningSubcomplex<'a>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.end {
            return None;
        }
        let s = SpanningSubcomplex {
            complex: self.complex,
            dim: self.dim,
            cells: CellSet(self.next),
        };
        self.next += 1;
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

/// All `2^{f_j}` spanning subcomplexes of dimension `j`.
pub fn spanning_subcomplexes<'a>(
    complex: &'a CellComplex,
    j: usize,
    limits: &Limits,
) -> Result<SpanningSubcomplexes<'a>> {
    if j > complex.dim() {
        return Err(Error::OutOfRange {
            what: "dimension",
            value: j as i64,
            min: 0,
            max: complex.dim() as i64,
        });
    }
    let n = complex.f(j);
    limits.check(j, n)?;
    Ok(SpanningSubcomplexes {
        complex,
        dim: j,
        next: 0,
        end: 1u64 << n,
    })
}

/// Folds `visit` over every subset of `n` cells, splitting the index range
/// across `limits.threads` workers when more than one is requested.
pub fn fold_subsets<T, Id, F, R>(n: usize, limits: &Limits, identity: Id, visit: F, reduce: R) -> T
where
    T: Send,
    Id: Fn() -> T + Sync + Send,
    F: Fn(T, CellSet) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    let end = 1u64 << n;
    if limits.threads <= 1 || end < 64 {
        return (0..end).fold(identity(), |acc, m| visit(acc, CellSet(m)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(limits.threads)
        .build()
        .expect("thread pool");
    pool.install(|| {
        (0..end)
            .into_par_iter()
            .fold(&identity, |acc, m| visit(acc, CellSet(m)))
            .reduce(&identity, &reduce)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use std::collections::HashSet;

    #[test]
    fn rp2_has_two_top_subcomplexes() {
        let k = builtin("rp2").unwrap();
        let subs: Vec<_> = spanning_subcomplexes(&k, 2, &Limits::default())
            .unwrap()
            .map(|s| s.ids())
            .collect();
        assert_eq!(subs, vec![Vec::<&str>::new(), vec!["s"]]);
    }

    #[test]
    fn three_cell_sphere_yields_eight_distinct() {
        let k = builtin("sphere-three-cells").unwrap();
        let subs: HashSet<CellSet> = spanning_subcomplexes(&k, 2, &Limits::default())
            .unwrap()
            .map(|s| s.cells())
            .collect();
        assert_eq!(subs.len(), 8);
    }

    #[test]
    fn no_top_cells_gives_the_empty_subcomplex() {
        let k = builtin("sphere-one-cell").unwrap();
        let subs: Vec<_> = spanning_subcomplexes(&k, 1, &Limits::default()).unwrap().collect();
        assert_eq!(subs.len(), 1);
        assert!(subs[0].is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let k = builtin("cube-surface").unwrap();
        let err = spanning_subcomplexes(&k, 1, &Limits::with_cap(10)).err().unwrap();
        assert_eq!(err.code(), "TooLarge");
        assert!(spanning_subcomplexes(&k, 1, &Limits::with_cap(12)).is_ok());
    }

    #[test]
    fn parallel_fold_matches_sequential() {
        let seq = fold_subsets(12, &Limits::default(), || 0u64, |a, s| a + s.len() as u64, |a, b| a + b);
        let par = fold_subsets(
            12,
            &Limits { cap: 24, threads: 4 },
            || 0u64,
            |a, s| a + s.len() as u64,
            |a, b| a + b,
        );
        assert_eq!(seq, par);
        assert_eq!(seq, 12 * (1 << 11));
    }

    #[test]
    fn cell_set_operations() {
        let s = CellSet::from_indices([0, 3, 5]);
        assert_eq!(s.indices().collect::<Vec<_>>(), vec![0, 3, 5]);
        assert_eq!(s.complement(6), CellSet::from_indices([1, 2, 4]));
        assert!(s.contains(3) && !s.contains(4));
        assert_eq!(s.without(3).with(1), CellSet::from_indices([0, 1, 5]));
    }
}
