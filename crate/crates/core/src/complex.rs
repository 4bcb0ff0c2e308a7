//! Finite CW complexes described by their integer boundary matrices.
//!
//! A [`CellComplex`] stores, for every dimension, an ordered list of cell ids
//! and the cellular boundary matrix `D[j]` of shape `f_{j-1} x f_j`. Incidence
//! numbers alone do not say which cells an attaching map touches (a 1-cell
//! whose ends meet at a vertex has a zero boundary column), so every cell also
//! records its *attaching support*: the lower-dimensional cells its attaching
//! map meets. The support always contains every face with a nonzero incidence
//! number; faces touched with incidence zero are listed as explicit `0*face`
//! terms in the text format. Closures are computed from this support.
//!
//! Cell order is fixed at construction. Matroid ground sets and the
//! activities of bases depend on it.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// A cell named by its dimension and its position within that dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CellRef {
    pub dim: usize,
    pub index: usize,
}

impl CellRef {
    pub fn new(dim: usize, index: usize) -> Self {
        CellRef { dim, index }
    }
}

/// Content digest of a complex, used as a cache key.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(pub [u8; 32]);

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0[..8] {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct CellComplex {
    name: String,
    ids: Vec<Vec<String>>,
    /// `boundary[j]` is `D[j]`; `boundary[0]` is the `0 x f_0` zero map.
    boundary: Vec<IntMatrix>,
    /// Sorted attaching support of every cell; empty for 0-cells.
    attach: Vec<Vec<Vec<CellRef>>>,
}

impl fmt::Debug for CellComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CellComplex")
            .field("name", &self.name)
            .field("f", &self.f_vector())
            .finish()
    }
}

impl CellComplex {
    /// Assembles and validates a complex.
    ///
    /// `boundary` holds `D[1] ..= D[k]`. When `attach` is `None`, or a cell's
    /// entry is empty, the support defaults to the faces with nonzero
    /// incidence; a positive-dimensional cell with an empty support is attached
    /// to the first 0-cell.
    pub fn new(
        name: impl Into<String>,
        ids: Vec<Vec<String>>,
        boundary: Vec<IntMatrix>,
        attach: Option<Vec<Vec<Vec<CellRef>>>>,
    ) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::Range("a complex needs at least dimension 0".into()));
        }
        let k = ids.len() - 1;
        if boundary.len() != k {
            return Err(Error::Range(format!(
                "expected {k} boundary matrices for dimension {k}, got {}",
                boundary.len()
            )));
        }
        let mut full = Vec::with_capacity(k + 1);
        full.push(IntMatrix::zeros(0, ids[0].len()));
        full.extend(boundary);
        let attach = match attach {
            Some(a) => a,
            None => ids.iter().map(|c| vec![Vec::new(); c.len()]).collect(),
        };
        let mut complex = CellComplex {
            name: name.into(),
            ids,
            boundary: full,
            attach,
        };
        complex.check_shapes()?;
        complex.normalize_attach()?;
        validate(&complex)?;
        Ok(complex)
    }

    fn check_shapes(&self) -> Result<()> {
        let k = self.dim();
        for (j, cells) in self.ids.iter().enumerate() {
            let mut seen = HashSet::new();
            for id in cells {
                if !seen.insert(id.as_str()) {
                    return Err(Error::DuplicateCell {
                        dim: j,
                        id: id.clone(),
                    });
                }
            }
        }
        for j in 1..=k {
            let m = &self.boundary[j];
            let (er, ec) = (self.ids[j - 1].len(), self.ids[j].len());
            if m.shape() != (er, ec) {
                return Err(Error::DimensionMismatch {
                    degree: j,
                    rows: m.rows(),
                    cols: m.cols(),
                    expected_rows: er,
                    expected_cols: ec,
                });
            }
        }
        if self.attach.len() != k + 1 || (0..=k).any(|j| self.attach[j].len() != self.ids[j].len())
        {
            return Err(Error::Range("attaching data does not match the cells".into()));
        }
        Ok(())
    }

    fn normalize_attach(&mut self) -> Result<()> {
        let k = self.dim();
        for j in 0..=k {
            for i in 0..self.ids[j].len() {
                let mut support: BTreeSet<CellRef> = self.attach[j][i].iter().copied().collect();
                for face in &support {
                    if face.dim >= j || face.index >= self.f(face.dim) {
                        return Err(Error::Range(format!(
                            "cell `{}` lists an invalid face in its attaching support",
                            self.ids[j][i]
                        )));
                    }
                }
                if j >= 1 {
                    for r in 0..self.f(j - 1) {
                        if !self.boundary[j].get(r, i).is_zero() {
                            support.insert(CellRef::new(j - 1, r));
                        }
                    }
                    if support.is_empty() {
                        if self.f(0) == 0 {
                            return Err(Error::DetachedCell { dim: j });
                        }
                        support.insert(CellRef::new(0, 0));
                    }
                }
                self.attach[j][i] = support.into_iter().collect();
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Dimension `k`: the highest dimension for which a (possibly empty) cell list exists.
    pub fn dim(&self) -> usize {
        self.ids.len() - 1
    }

    /// Number of `j`-cells; zero above the dimension.
    pub fn f(&self, j: usize) -> usize {
        self.ids.get(j).map_or(0, Vec::len)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.ids.iter().map(Vec::len).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.ids.iter().map(Vec::len).sum()
    }

    pub fn ids(&self, j: usize) -> &[String] {
        &self.ids[j]
    }

    pub fn id(&self, cell: CellRef) -> &str {
        &self.ids[cell.dim][cell.index]
    }

    pub fn cells(&self, j: usize) -> impl Iterator<Item = CellRef> + '_ {
        (0..self.f(j)).map(move |i| CellRef::new(j, i))
    }

    pub fn find(&self, dim: usize, id: &str) -> Option<CellRef> {
        self.ids
            .get(dim)?
            .iter()
            .position(|c| c == id)
            .map(|i| CellRef::new(dim, i))
    }

    /// Resolves `id` or `dim:id`. An unqualified id must be unique across dimensions.
    pub fn lookup(&self, spec: &str) -> Result<CellRef> {
        if let Some((d, id)) = spec.split_once(':') {
            if let Ok(dim) = d.parse::<usize>() {
                return self.find(dim, id).ok_or_else(|| Error::UnknownCell {
                    id: spec.to_string(),
                });
            }
        }
        let hits: Vec<CellRef> = (0..=self.dim()).filter_map(|j| self.find(j, spec)).collect();
        match hits.as_slice() {
            [one] => Ok(*one),
            [] => Err(Error::UnknownCell {
                id: spec.to_string(),
            }),
            _ => Err(Error::Range(format!(
                "cell id `{spec}` occurs in several dimensions; qualify it as <dim>:{spec}"
            ))),
        }
    }

    fn check_ref(&self, cell: CellRef) -> Result<()> {
        if cell.dim > self.dim() || cell.index >= self.f(cell.dim) {
            return Err(Error::UnknownCell {
                id: format!("{}:{}", cell.dim, cell.index),
            });
        }
        Ok(())
    }

    /// `D[j]` for `0 <= j <= k`; `D[0]` is the empty zero map.
    pub fn boundary(&self, j: usize) -> &IntMatrix {
        &self.boundary[j]
    }

    /// Incidence number of `face` in the boundary of `cell` (zero unless
    /// `face.dim + 1 == cell.dim`).
    pub fn coefficient(&self, cell: CellRef, face: CellRef) -> BigInt {
        if face.dim + 1 != cell.dim {
            return BigInt::zero();
        }
        self.boundary[cell.dim].get(face.index, cell.index).clone()
    }

    pub fn attach(&self, cell: CellRef) -> &[CellRef] {
        &self.attach[cell.dim][cell.index]
    }

    /// Smallest subcomplex containing `cell`.
    pub fn closure(&self, cell: CellRef) -> BTreeSet<CellRef> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![cell];
        while let Some(c) = stack.pop() {
            if seen.insert(c) {
                stack.extend(self.attach(c).iter().copied());
            }
        }
        seen
    }

    /// The subcomplex spanned by `keep`, which must be closed under taking faces.
    /// The dimension of the result stays `k`.
    pub fn subcomplex(&self, keep: &BTreeSet<CellRef>, name: impl Into<String>) -> CellComplex {
        let removed: BTreeSet<CellRef> = (0..=self.dim())
            .flat_map(|j| self.cells(j))
            .filter(|c| !keep.contains(c))
            .collect();
        self.remove_cells(&removed, name, &HashMap::new())
    }

    /// Removes `cells`; the surviving supports drop removed cells after
    /// substituting any replacement listed in `replace`.
    fn remove_cells(
        &self,
        cells: &BTreeSet<CellRef>,
        name: impl Into<String>,
        replace: &HashMap<CellRef, Vec<CellRef>>,
    ) -> CellComplex {
        let k = self.dim();
        let remap = self.index_map(cells, 0);
        let ids: Vec<Vec<String>> = (0..=k)
            .map(|j| {
                self.cells(j)
                    .filter(|c| !cells.contains(c))
                    .map(|c| self.id(c).to_string())
                    .collect()
            })
            .collect();
        let mut boundary = vec![IntMatrix::zeros(0, ids[0].len())];
        for j in 1..=k {
            let rows: Vec<usize> = keep_indices(self.f(j - 1), j - 1, cells);
            let cols: Vec<usize> = keep_indices(self.f(j), j, cells);
            boundary.push(self.boundary[j].select_rows(&rows).select_columns(&cols));
        }
        let attach = (0..=k)
            .map(|j| {
                self.cells(j)
                    .filter(|c| !cells.contains(c))
                    .map(|c| {
                        let mut out = BTreeSet::new();
                        let mut stack: Vec<CellRef> = self.attach(c).to_vec();
                        while let Some(f) = stack.pop() {
                            if let Some(new) = remap.get(&f) {
                                out.insert(*new);
                            } else if let Some(sub) = replace.get(&f) {
                                stack.extend(sub.iter().copied());
                            }
                        }
                        out.into_iter().collect()
                    })
                    .collect()
            })
            .collect();
        CellComplex {
            name: name.into(),
            ids,
            boundary,
            attach,
        }
    }

    /// Old-to-new index map for the cells that survive removal of `removed`,
    /// shifting the 0-cells by `zero_offset`.
    fn index_map(&self, removed: &BTreeSet<CellRef>, zero_offset: usize) -> HashMap<CellRef, CellRef> {
        let mut map = HashMap::new();
        for j in 0..=self.dim() {
            let mut next = if j == 0 { zero_offset } else { 0 };
            for c in self.cells(j) {
                if !removed.contains(&c) {
                    map.insert(c, CellRef::new(j, next));
                    next += 1;
                }
            }
        }
        map
    }

    /// The `j`-skeleton: all cells of dimension at most `j`, order preserved.
    pub fn skeleton(&self, j: usize) -> Result<CellComplex> {
        if j > self.dim() {
            return Err(Error::OutOfRange {
                what: "skeleton dimension",
                value: j as i64,
                min: 0,
                max: self.dim() as i64,
            });
        }
        if j == self.dim() {
            return Ok(self.clone());
        }
        Ok(CellComplex {
            name: format!("{}[{}]", self.name, j),
            ids: self.ids[..=j].to_vec(),
            boundary: self.boundary[..=j].to_vec(),
            attach: self.attach[..=j].to_vec(),
        })
    }

    /// Removes a cell that is not a face of any other cell.
    pub fn delete_cell(&self, cell: CellRef) -> Result<CellComplex> {
        self.check_ref(cell)?;
        for j in cell.dim + 1..=self.dim() {
            for c in self.cells(j) {
                if self.attach(c).contains(&cell) {
                    return Err(Error::NotDeletable {
                        id: self.id(cell).to_string(),
                        coface: self.id(c).to_string(),
                    });
                }
            }
        }
        let removed = BTreeSet::from([cell]);
        Ok(self.remove_cells(
            &removed,
            format!("{}\\{}", self.name, self.id(cell)),
            &HashMap::new(),
        ))
    }

    /// The quotient `K / closure(cell)`: the closure is replaced by a single new
    /// 0-cell placed first among the 0-cells.
    ///
    /// In degrees two and up, incidences on collapsed cells are dropped. A
    /// 1-cell's incidences on collapsed 0-cells are summed onto the new point,
    /// so every 1-cell column still sums to zero.
    pub fn contract_closure(&self, cell: CellRef) -> Result<CellComplex> {
        self.check_ref(cell)?;
        let closed = self.closure(cell);
        let k = self.dim();
        let remap = self.index_map(&closed, 1);
        let mut base = String::from("base");
        while self.find(0, &base).is_some() {
            base.push('\'');
        }
        let mut ids: Vec<Vec<String>> = vec![vec![base]];
        ids[0].extend(
            self.cells(0)
                .filter(|c| !closed.contains(c))
                .map(|c| self.id(c).to_string()),
        );
        for j in 1..=k {
            ids.push(
                self.cells(j)
                    .filter(|c| !closed.contains(c))
                    .map(|c| self.id(c).to_string())
                    .collect(),
            );
        }
        let mut boundary = vec![IntMatrix::zeros(0, ids[0].len())];
        for j in 1..=k {
            let mut m = IntMatrix::zeros(ids[j - 1].len(), ids[j].len());
            for c in self.cells(j).filter(|c| !closed.contains(c)) {
                let col = remap[&c].index;
                for face in self.cells(j - 1) {
                    let v = self.boundary[j].get(face.index, c.index);
                    if v.is_zero() {
                        continue;
                    }
                    if let Some(nf) = remap.get(&face) {
                        m.set(nf.index, col, v.clone());
                    } else if j == 1 {
                        let acc = m.get(0, col) + v;
                        m.set(0, col, acc);
                    }
                }
            }
            boundary.push(m);
        }
        let point = CellRef::new(0, 0);
        let mut attach: Vec<Vec<Vec<CellRef>>> = vec![vec![Vec::new(); ids[0].len()]];
        for j in 1..=k {
            let mut level = Vec::new();
            for c in self.cells(j).filter(|c| !closed.contains(c)) {
                let mut out = BTreeSet::new();
                for f in self.attach(c) {
                    match remap.get(f) {
                        Some(nf) => {
                            out.insert(*nf);
                        }
                        None => {
                            out.insert(point);
                        }
                    }
                }
                level.push(out.into_iter().collect());
            }
            attach.push(level);
        }
        Ok(CellComplex {
            name: format!("{}/{}", self.name, self.id(cell)),
            ids,
            boundary,
            attach,
        })
    }

    /// Elementary collapse of `cell` across its free face `face`.
    ///
    /// The pair is removed after one step of integer elimination that uses the
    /// unit incidence `[cell : face]` as pivot, which preserves every homology
    /// group.
    pub fn collapse(&self, cell: CellRef, face: CellRef) -> Result<CellComplex> {
        self.check_ref(cell)?;
        self.check_ref(face)?;
        let not_free = |reason: String| Error::NotFreeFace {
            cell: self.id(cell).to_string(),
            face: self.id(face).to_string(),
            reason,
        };
        if face.dim + 1 != cell.dim {
            return Err(not_free("dimensions are not consecutive".into()));
        }
        let d = cell.dim;
        let pivot = self.coefficient(cell, face);
        if pivot.abs() != BigInt::one() {
            return Err(not_free(format!("incidence is {pivot}, not a unit")));
        }
        for other in self.cells(d).filter(|&c| c != cell) {
            if !self.coefficient(other, face).is_zero() {
                return Err(not_free(format!("`{}` also has it as a face", self.id(other))));
            }
        }
        for j in face.dim + 1..=self.dim() {
            for other in self.cells(j).filter(|&c| c != cell) {
                if self.attach(other).contains(&face) {
                    return Err(not_free(format!("`{}` also touches it", self.id(other))));
                }
            }
        }
        // Eliminate the face's row against the pivot column. Under the checks
        // above the row has no other nonzero entry, so this is the identity;
        // it is kept so the reduction is explicit.
        let mut reduced = self.clone();
        let m = &mut reduced.boundary[d];
        for other in 0..m.cols() {
            if other == cell.index {
                continue;
            }
            let b = m.get(face.index, other).clone();
            if !b.is_zero() {
                let factor = -(&b * &pivot);
                m.add_col_multiple(other, cell.index, &factor);
            }
        }
        for other in 0..reduced.f(d) {
            for r in 0..reduced.f(d - 1) {
                let f = CellRef::new(d - 1, r);
                if !reduced.boundary[d].get(r, other).is_zero()
                    && !reduced.attach[d][other].contains(&f)
                {
                    reduced.attach[d][other].push(f);
                    reduced.attach[d][other].sort();
                }
            }
        }
        let removed = BTreeSet::from([cell, face]);
        let rest: Vec<CellRef> = self
            .attach(cell)
            .iter()
            .copied()
            .filter(|&f| f != face)
            .collect();
        let replace = HashMap::from([(cell, rest), (face, self.attach(face).to_vec())]);
        Ok(reduced.remove_cells(
            &removed,
            format!("{}~{}", self.name, self.id(cell)),
            &replace,
        ))
    }

    /// Disjoint union; cell ids of `other` are suffixed when they clash.
    pub fn disjoint_union(&self, other: &CellComplex, name: impl Into<String>) -> CellComplex {
        let k = self.dim().max(other.dim());
        let mut ids = Vec::with_capacity(k + 1);
        for j in 0..=k {
            let mut level: Vec<String> = self.ids.get(j).cloned().unwrap_or_default();
            let taken: HashSet<String> = level.iter().cloned().collect();
            for id in other.ids.get(j).into_iter().flatten() {
                let mut fresh = id.clone();
                while taken.contains(&fresh) {
                    fresh.push('\'');
                }
                level.push(fresh);
            }
            ids.push(level);
        }
        let mut boundary = vec![IntMatrix::zeros(0, ids[0].len())];
        for j in 1..=k {
            let mut m = IntMatrix::zeros(ids[j - 1].len(), ids[j].len());
            let (r0, c0) = (self.f(j - 1), self.f(j));
            if j <= self.dim() {
                for r in 0..r0 {
                    for c in 0..c0 {
                        m.set(r, c, self.boundary[j].get(r, c).clone());
                    }
                }
            }
            if j <= other.dim() {
                for r in 0..other.f(j - 1) {
                    for c in 0..other.f(j) {
                        m.set(r0 + r, c0 + c, other.boundary[j].get(r, c).clone());
                    }
                }
            }
            boundary.push(m);
        }
        let attach = (0..=k)
            .map(|j| {
                let mut level: Vec<Vec<CellRef>> =
                    self.attach.get(j).cloned().unwrap_or_default();
                for a in other.attach.get(j).into_iter().flatten() {
                    level.push(
                        a.iter()
                            .map(|f| CellRef::new(f.dim, f.index + self.f(f.dim)))
                            .collect(),
                    );
                }
                level
            })
            .collect();
        CellComplex {
            name: name.into(),
            ids,
            boundary,
            attach,
        }
    }

    /// Reverses the orientation of one cell: negates its column in `D[dim]` and
    /// its row in `D[dim + 1]`.
    pub fn flip_orientation(&self, cell: CellRef) -> Result<CellComplex> {
        self.check_ref(cell)?;
        let mut out = self.clone();
        if cell.dim >= 1 {
            out.boundary[cell.dim].negate_column(cell.index);
        }
        if cell.dim < self.dim() {
            out.boundary[cell.dim + 1].negate_row(cell.index);
        }
        Ok(out)
    }

    /// Digest of the boundary matrices and attaching supports (names and ids excluded).
    pub fn signature(&self) -> Signature {
        let mut h = Sha256::new();
        h.update((self.dim() as u64).to_le_bytes());
        for j in 0..=self.dim() {
            h.update((self.f(j) as u64).to_le_bytes());
        }
        for j in 1..=self.dim() {
            hash_matrix(&mut h, &self.boundary[j]);
        }
        for level in &self.attach {
            for support in level {
                h.update((support.len() as u64).to_le_bytes());
                for f in support {
                    h.update((f.dim as u64).to_le_bytes());
                    h.update((f.index as u64).to_le_bytes());
                }
            }
        }
        Signature(h.finalize().into())
    }
}

pub(crate) fn hash_matrix(h: &mut Sha256, m: &IntMatrix) {
    h.update((m.rows() as u64).to_le_bytes());
    h.update((m.cols() as u64).to_le_bytes());
    for v in m.entries() {
        let bytes = v.to_signed_bytes_le();
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(&bytes);
    }
}

fn keep_indices(n: usize, dim: usize, removed: &BTreeSet<CellRef>) -> Vec<usize> {
    (0..n)
        .filter(|&i| !removed.contains(&CellRef::new(dim, i)))
        .collect()
}

/// Checks every structural invariant: matrix shapes, unique ids, `D[j-1] D[j] = 0`
/// for `j >= 2`, and that every 1-cell column sums to zero.
pub fn validate(complex: &CellComplex) -> Result<()> {
    complex.check_shapes()?;
    let k = complex.dim();
    if k >= 1 {
        let d1 = &complex.boundary[1];
        for c in 0..d1.cols() {
            let total: BigInt = (0..d1.rows()).map(|r| d1.get(r, c)).sum();
            if !total.is_zero() {
                return Err(Error::BoundarySquareNonzero {
                    degree: 1,
                    row: 0,
                    col: c,
                });
            }
        }
    }
    for j in 2..=k {
        let prod = complex.boundary[j - 1].mul(&complex.boundary[j]);
        if let Some((row, col)) = prod.first_nonzero() {
            return Err(Error::BoundarySquareNonzero { degree: j, row, col });
        }
    }
    for j in 1..=k {
        for (i, support) in complex.attach[j].iter().enumerate() {
            for r in 0..complex.f(j - 1) {
                if !complex.boundary[j].get(r, i).is_zero()
                    && !support.contains(&CellRef::new(j - 1, r))
                {
                    return Err(Error::Range(format!(
                        "attaching support of `{}` misses a face with nonzero incidence",
                        complex.ids[j][i]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Incremental construction by cell id, mirroring the text format.
#[derive(Debug, Clone)]
pub struct ComplexBuilder {
    name: String,
    ids: Vec<Vec<String>>,
    terms: Vec<BTreeMap<String, Vec<(i64, String)>>>,
}

impl ComplexBuilder {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        ComplexBuilder {
            name: name.into(),
            ids: vec![Vec::new(); dim + 1],
            terms: vec![BTreeMap::new(); dim + 1],
        }
    }

    pub fn cells<I, S>(&mut self, dim: usize, ids: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.ids[dim].extend(ids.into_iter().map(Into::into));
        self
    }

    /// Boundary of the `dim`-cell `id` as `(coefficient, face id)` terms. Faces
    /// of dimension `dim - 1` are looked up first; a zero coefficient may also
    /// name a lower-dimensional cell touched by the attaching map.
    pub fn boundary(&mut self, dim: usize, id: &str, terms: &[(i64, &str)]) -> &mut Self {
        self.terms[dim]
            .entry(id.to_string())
            .or_default()
            .extend(terms.iter().map(|&(c, f)| (c, f.to_string())));
        self
    }

    pub fn build(&self) -> Result<CellComplex> {
        let k = self.ids.len() - 1;
        let index: Vec<HashMap<&str, usize>> = self
            .ids
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect())
            .collect();
        let mut boundary = Vec::with_capacity(k);
        let mut attach: Vec<Vec<Vec<CellRef>>> =
            self.ids.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for j in 1..=k {
            let mut m = IntMatrix::zeros(self.ids[j - 1].len(), self.ids[j].len());
            for (id, terms) in &self.terms[j] {
                let &col = index[j].get(id.as_str()).ok_or_else(|| Error::UnknownCell {
                    id: id.clone(),
                })?;
                for (coef, face) in terms {
                    let r = resolve_face(&index, j, face, *coef).ok_or_else(|| {
                        Error::UnknownCell { id: face.clone() }
                    })?;
                    if r.dim == j - 1 {
                        let v = m.get(r.index, col) + BigInt::from(*coef);
                        m.set(r.index, col, v);
                    }
                    attach[j][col].push(r);
                }
            }
            boundary.push(m);
        }
        for (j, terms) in self.terms.iter().enumerate() {
            if j == 0 && !terms.is_empty() {
                return Err(Error::Range("0-cells have no boundary".into()));
            }
        }
        CellComplex::new(self.name.clone(), self.ids.clone(), boundary, Some(attach))
    }
}

/// Finds the face named `id` of a `dim`-cell: first among the `(dim-1)`-cells,
/// then, for zero coefficients only, among lower dimensions in descending order.
pub(crate) fn resolve_face(
    index: &[HashMap<&str, usize>],
    dim: usize,
    id: &str,
    coef: i64,
) -> Option<CellRef> {
    if let Some(&i) = index[dim - 1].get(id) {
        return Some(CellRef::new(dim - 1, i));
    }
    if coef != 0 {
        return None;
    }
    (0..dim - 1)
        .rev()
        .find_map(|d| index[d].get(id).map(|&i| CellRef::new(d, i)))
}
