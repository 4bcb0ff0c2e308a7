//! Paired dual cell decompositions of a sphere and the duality identities
//! `T^j_K(X, Y) = T^{k-j}_{K*}(Y, X)`.
//!
//! The pairing is input data: a text file
//!
//! ```text
//! dual <K-name> <K*-name>
//! <j-cell of K> ~ <(k-j)-cell of K*>
//! ```
//!
//! with one line per cell of `K`. Complex names are resolved by a caller-supplied
//! function (builtins by default).

use std::collections::HashSet;

use serde::Serialize;

use crate::catalog::{builtin, builtin_pair_text};
use crate::complex::{CellComplex, CellRef};
use crate::error::{Error, Result};
use crate::homology::{homology, homology_all, reduced_betti};
use crate::poly::BiPoly;
use crate::subcomplex::{fold_subsets, CellSet, Limits, SpanningSubcomplex};
use crate::tkr::{modified_tkr, tkr_reduced};

/// Two cell structures on `S^k` with a dimension-complementing bijection of cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPair {
    primal: CellComplex,
    dual: CellComplex,
    /// `corr[j][i]` is the index of the `(k-j)`-cell dual to the `j`-cell `i`.
    corr: Vec<Vec<usize>>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidDual(msg.into())
}

fn is_homology_sphere(k: &CellComplex) -> bool {
    homology_all(k, true)
        .iter()
        .all(|h| if h.degree == k.dim() { h.is_z() } else { h.is_trivial() })
}

impl DualPair {
    /// Checks the pairing: equal dimensions, `f_j(K) = f_{k-j}(K*)`, a bijection in
    /// every dimension, and both complexes homology spheres.
    pub fn new(primal: CellComplex, dual: CellComplex, corr: Vec<Vec<usize>>) -> Result<Self> {
        let k = primal.dim();
        if dual.dim() != k {
            return Err(invalid(format!("dimensions {} and {} differ", k, dual.dim())));
        }
        if corr.len() != k + 1 {
            return Err(invalid("correspondence must cover every dimension"));
        }
        for (j, map) in corr.iter().enumerate() {
            if primal.f(j) != dual.f(k - j) {
                return Err(invalid(format!(
                    "{} has {} cells of dimension {j} but {} has {} of dimension {}",
                    primal.name(),
                    primal.f(j),
                    dual.name(),
                    dual.f(k - j),
                    k - j
                )));
            }
            let image: HashSet<usize> = map.iter().copied().collect();
            if map.len() != primal.f(j) || image.len() != map.len() || map.iter().any(|&i| i >= dual.f(k - j)) {
                return Err(invalid(format!("dimension {j} is not a bijection")));
            }
        }
        for c in [&primal, &dual] {
            if !is_homology_sphere(c) {
                return Err(invalid(format!("{} does not have the homology of a sphere", c.name())));
            }
        }
        Ok(DualPair { primal, dual, corr })
    }

    /// Parses the correspondence format, resolving complex names with `resolve`.
    pub fn parse(text: &str, resolve: impl Fn(&str) -> Result<CellComplex>) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
            .filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "missing `dual <K> <K*>` header"))?;
        let (primal, dual) = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["dual", a, b] => (resolve(a)?, resolve(b)?),
            _ => return Err(Error::parse(hl, 1, "expected `dual <K> <K*>`")),
        };
        let k = primal.dim();
        if dual.dim() != k {
            return Err(invalid(format!("dimensions {} and {} differ", k, dual.dim())));
        }
        let mut corr: Vec<Vec<Option<usize>>> = (0..=k).map(|j| vec![None; primal.f(j)]).collect();
        for (ln, line) in lines {
            let (a, b) = line
                .split_once('~')
                .ok_or_else(|| Error::parse(ln, 1, "expected `<cell> ~ <dual cell>`"))?;
            let (a, b) = (a.trim(), b.trim());
            let col = |s: &str| line.find(s).map_or(1, |p| p + 1);
            let cell = primal
                .lookup(a)
                .map_err(|e| Error::parse(ln, col(a), e.to_string()))?;
            let target = match b.split_once(':') {
                Some((d, _)) if d.parse::<usize>().is_ok() => dual.lookup(b).ok().filter(|c| c.dim == k - cell.dim),
                _ => dual.find(k - cell.dim, b),
            }
            .ok_or_else(|| {
                Error::parse(ln, col(b), format!("`{b}` is not a {}-cell of {}", k - cell.dim, dual.name()))
            })?;
            if corr[cell.dim][cell.index].replace(target.index).is_some() {
                return Err(Error::parse(ln, col(a), format!("`{a}` is paired twice")));
            }
        }
        let mut full = Vec::with_capacity(k + 1);
        for (j, map) in corr.into_iter().enumerate() {
            let mut level = Vec::with_capacity(map.len());
            for (i, t) in map.into_iter().enumerate() {
                level.push(t.ok_or_else(|| {
                    invalid(format!("`{}` has no dual cell", primal.id(CellRef::new(j, i))))
                })?);
            }
            full.push(level);
        }
        Self::new(primal, dual, full)
    }

    /// A shipped pair: `tetrahedron-self`, `cube-octahedron` or `theta-triangle`.
    pub fn builtin(name: &str) -> Result<Self> {
        Self::parse(&builtin_pair_text(name)?, builtin)
    }

    pub fn primal(&self) -> &CellComplex {
        &self.primal
    }

    pub fn dual(&self) -> &CellComplex {
        &self.dual
    }

    pub fn dim(&self) -> usize {
        self.primal.dim()
    }

    /// The `(k-j)`-cell of `K*` dual to `cell`.
    pub fn dual_cell(&self, cell: CellRef) -> CellRef {
        CellRef::new(self.dim() - cell.dim, self.corr[cell.dim][cell.index])
    }

    /// The pair with the roles of `K` and `K*` exchanged.
    pub fn reversed(&self) -> DualPair {
        let k = self.dim();
        let corr = (0..=k)
            .map(|j| {
                let forward = &self.corr[k - j];
                let mut back = vec![0; forward.len()];
                for (i, &t) in forward.iter().enumerate() {
                    back[t] = i;
                }
                back
            })
            .collect();
        DualPair {
            primal: self.dual.clone(),
            dual: self.primal.clone(),
            corr,
        }
    }

    /// Duals of the `j`-cells not in `cells`: the top cells of `S*`.
    pub fn dual_cells(&self, j: usize, cells: CellSet) -> CellSet {
        CellSet::from_indices(cells.complement(self.primal.f(j)).indices().map(|i| self.corr[j][i]))
    }

    /// The spanning `(k-j)`-subcomplex of `K*` formed by the cells missing `S`.
    pub fn dual_subcomplex<'a>(&'a self, s: &SpanningSubcomplex<'_>) -> Result<SpanningSubcomplex<'a>> {
        if *s.complex() != self.primal {
            return Err(invalid("subcomplex does not belong to the primal complex"));
        }
        SpanningSubcomplex::new(&self.dual, self.dim() - s.dim(), self.dual_cells(s.dim(), s.cells()))
    }
}

/// Both sides of a duality identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub dim: usize,
    pub dual_dim: usize,
    pub modified: bool,
    /// The polynomial of `K` in dimension `j`.
    pub primal: BiPoly,
    /// The polynomial of `K*` in dimension `k - j`, with `X` and `Y` exchanged.
    pub dual_swapped: BiPoly,
    pub holds: bool,
}

/// Compares `T^j_K(X, Y)` with `T^{k-j}_{K*}(Y, X)`. The plain identity is
/// checked for `1 <= j <= k` (dimension 0 uses reduced Betti numbers); the
/// torsion-weighted one for `1 <= j <= k - 1`.
pub fn check_duality(pair: &DualPair, j: usize, modified: bool, limits: &Limits) -> Result<DualityReport> {
    let k = pair.dim();
    let top = if modified { k.saturating_sub(1) } else { k };
    if j == 0 || j > top {
        return Err(Error::Range(format!(
            "{} duality needs 1 <= j <= {top}, got {j}",
            if modified { "modified" } else { "plain" }
        )));
    }
    let dual_dim = k - j;
    let (primal, dual) = if modified {
        (modified_tkr(&pair.primal, j, limits)?, modified_tkr(&pair.dual, dual_dim, limits)?)
    } else {
        (tkr_reduced(&pair.primal, j, limits)?, tkr_reduced(&pair.dual, dual_dim, limits)?)
    };
    let dual_swapped = dual.swap();
    Ok(DualityReport {
        dim: j,
        dual_dim,
        modified,
        holds: primal == dual_swapped,
        primal,
        dual_swapped,
    })
}

/// A spanning subcomplex on which an Alexander identity fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlexanderFailure {
    pub cells: Vec<String>,
    pub dual_cells: Vec<String>,
    pub identity: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlexanderReport {
    pub dim: usize,
    pub subsets: u64,
    /// Subsets whose torsion groups also agree factor by factor.
    pub factors_match: u64,
    pub failures: Vec<AlexanderFailure>,
    pub holds: bool,
}

/// For every spanning `j`-subcomplex `S` and its dual `S*`:
/// `b_j(S) = b~_{k-j-1}(S*)`, `b~_{j-1}(S) = b_{k-j}(S*)` and
/// `|tor H~_{j-1}(S)| = |tor H~_{k-j-1}(S*)|`; `1 <= j <= k - 1`.
pub fn check_alexander_identities(pair: &DualPair, j: usize, limits: &Limits) -> Result<AlexanderReport> {
    let k = pair.dim();
    if j == 0 || j + 1 > k {
        return Err(Error::Range(format!("Alexander identities need 1 <= j <= {}, got {j}", k.saturating_sub(1))));
    }
    let n = pair.primal.f(j);
    limits.check(j, n)?;
    let (matched, failures) = fold_subsets(
        n,
        limits,
        || (0u64, Vec::new()),
        |(mut matched, mut failures), cells| {
            let s = SpanningSubcomplex::new(&pair.primal, j, cells).expect("subset in range");
            let d = SpanningSubcomplex::new(&pair.dual, k - j, pair.dual_cells(j, cells)).expect("subset in range");
            let ts = homology(s, j - 1, true).expect("degree in range");
            let td = homology(d, k - j - 1, true).expect("degree in range");
            let checks = [
                ("betti-top", reduced_betti(s, j as i64) == reduced_betti(d, (k - j) as i64 - 1)),
                ("betti-below", reduced_betti(s, j as i64 - 1) == reduced_betti(d, (k - j) as i64)),
                ("torsion-order", ts.torsion_order == td.torsion_order),
            ];
            for (identity, ok) in checks {
                if !ok {
                    failures.push(AlexanderFailure {
                        cells: s.ids().iter().map(|x| x.to_string()).collect(),
                        dual_cells: d.ids().iter().map(|x| x.to_string()).collect(),
                        identity,
                    });
                }
            }
            if ts.torsion_factors == td.torsion_factors {
                matched += 1;
            }
            (matched, failures)
        },
        |(a, mut fa), (b, fb)| {
            fa.extend(fb);
            (a + b, fa)
        },
    );
    Ok(AlexanderReport {
        dim: j,
        subsets: 1u64 << n,
        factors_match: matched,
        holds: failures.is_empty(),
        failures,
    })
}
