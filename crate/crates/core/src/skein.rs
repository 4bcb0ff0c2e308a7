//! Loops, bridges, boundary regularity, and the deletion–contraction relations
//! for the top polynomial `T^k_K`:
//!
//! * a boundary-regular cell that is neither a loop nor a bridge:
//!   `T_K = T_{K/cl(s)} + T_{K\s}`;
//! * a loop: `T_K = (Y + 1) T_{K\s}`;
//! * a boundary-regular bridge: `T_K = (X + 1) T_{K/cl(s)}`;
//! * a cell with a free face (always a bridge): `T_K = (X + 1) T_{collapse}`.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::complex::{hash_matrix, CellComplex, CellRef};
use crate::error::{Error, Result};
use crate::homology::homology;
use crate::matrix::IntMatrix;
use crate::poly::BiPoly;
use crate::subcomplex::Limits;
use crate::tkr::tkr;

/// Classification of a top-dimensional cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellClass {
    /// The boundary column is zero.
    pub is_loop: bool,
    /// Removing the column lowers the rank of `D[k]` by one.
    pub is_bridge: bool,
    /// The reduced `(k-1)`-homology of the cell's boundary is `Z`.
    pub boundary_regular: bool,
    /// Faces across which the cell can be collapsed.
    pub free_faces: Vec<CellRef>,
}

fn check_top(k: &CellComplex, cell: CellRef) -> Result<()> {
    if cell.dim > k.dim() || cell.index >= k.f(cell.dim) {
        return Err(Error::UnknownCell {
            id: format!("{}:{}", cell.dim, cell.index),
        });
    }
    if cell.dim != k.dim() || cell.dim == 0 {
        return Err(Error::NotTopCell {
            id: k.id(cell).to_string(),
        });
    }
    Ok(())
}

pub fn classify_cell(k: &CellComplex, cell: CellRef) -> Result<CellClass> {
    check_top(k, cell)?;
    let top = k.dim();
    let d = k.boundary(top);
    let is_loop = d.column_is_zero(cell.index);
    let others: Vec<usize> = (0..k.f(top)).filter(|&c| c != cell.index).collect();
    let is_bridge = d.select_columns(&others).rank() + 1 == d.rank();
    let mut rim = k.closure(cell);
    rim.remove(&cell);
    let rim = k.subcomplex(&rim, format!("d{}", k.id(cell)));
    let boundary_regular = homology(&rim, top - 1, true)?.is_z();
    let free_faces = k
        .cells(top - 1)
        .filter(|&f| !k.coefficient(cell, f).is_zero() && k.collapse(cell, f).is_ok())
        .collect();
    Ok(CellClass {
        is_loop,
        is_bridge,
        boundary_regular,
        free_faces,
    })
}

/// Which relation applies to a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkeinCase {
    /// Boundary regular, neither loop nor bridge: sum of contraction and deletion.
    Regular,
    /// Loop: `(Y + 1)` times the deletion.
    Loop,
    /// Boundary-regular bridge: `(X + 1)` times the contraction.
    Bridge,
    /// None of the above.
    NotApplicable,
}

impl fmt::Display for SkeinCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SkeinCase::Regular => "regular",
            SkeinCase::Loop => "loop",
            SkeinCase::Bridge => "bridge",
            SkeinCase::NotApplicable => "not-applicable",
        })
    }
}

/// `(X + 1) T_{collapse}` for a cell with a free face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapseCheck {
    pub face: String,
    pub polynomial: BiPoly,
    pub holds: bool,
}

/// Both sides of the applicable relation for one cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkeinReport {
    pub cell: String,
    pub class: CellClass,
    pub case: SkeinCase,
    /// `T^k_K`.
    pub polynomial: BiPoly,
    /// `T^k_{K\s}`.
    pub deletion: BiPoly,
    /// `T^k_{K/cl(s)}`.
    pub contraction: BiPoly,
    /// Right-hand side of the applicable relation.
    pub rhs: Option<BiPoly>,
    pub holds: Option<bool>,
    pub collapse: Option<CollapseCheck>,
}

fn x1() -> BiPoly {
    BiPoly::x() + BiPoly::one()
}

fn y1() -> BiPoly {
    BiPoly::y() + BiPoly::one()
}

/// Selects the relation for `cell` and evaluates both sides by enumeration.
pub fn verify_skein(k: &CellComplex, cell: CellRef, limits: &Limits) -> Result<SkeinReport> {
    let class = classify_cell(k, cell)?;
    let top = k.dim();
    let polynomial = tkr(k, top, limits)?;
    let deletion = tkr(&k.delete_cell(cell)?, top, limits)?;
    let contraction = tkr(&k.contract_closure(cell)?, top, limits)?;
    let (case, rhs) = if class.is_loop {
        (SkeinCase::Loop, Some(&y1() * &deletion))
    } else if class.boundary_regular && class.is_bridge {
        (SkeinCase::Bridge, Some(&x1() * &contraction))
    } else if class.boundary_regular {
        (SkeinCase::Regular, Some(&contraction + &deletion))
    } else {
        (SkeinCase::NotApplicable, None)
    };
    let collapse = match class.free_faces.first() {
        Some(&face) => {
            let c = tkr(&k.collapse(cell, face)?, top, limits)?;
            let p = &x1() * &c;
            Some(CollapseCheck {
                face: k.id(face).to_string(),
                holds: p == polynomial,
                polynomial: p,
            })
        }
        None => None,
    };
    Ok(SkeinReport {
        cell: k.id(cell).to_string(),
        holds: rhs.as_ref().map(|r| *r == polynomial),
        class,
        case,
        polynomial,
        deletion,
        contraction,
        rhs,
        collapse,
    })
}

/// Rewrite applied at one node of the evaluation tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "rule")]
pub enum SkeinRule {
    /// No top cells: the polynomial is 1.
    Empty,
    /// Same top boundary map seen before.
    Cached,
    Loop { cell: String },
    Collapse { cell: String, face: String },
    Contract { cell: String },
    DeleteContract { cell: String },
    Enumerate,
}

/// One node of the rewrite tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkeinStep {
    pub complex: String,
    #[serde(flatten)]
    pub rule: SkeinRule,
    pub result: BiPoly,
    pub children: Vec<SkeinStep>,
}

impl SkeinStep {
    fn write(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        let what = match &self.rule {
            SkeinRule::Empty => "no top cells".to_string(),
            SkeinRule::Cached => "cached".to_string(),
            SkeinRule::Loop { cell } => format!("loop {cell}: (Y + 1) * deletion"),
            SkeinRule::Collapse { cell, face } => format!("collapse {cell} across {face}: (X + 1) * collapse"),
            SkeinRule::Contract { cell } => format!("bridge {cell}: (X + 1) * contraction"),
            SkeinRule::DeleteContract { cell } => format!("regular {cell}: contraction + deletion"),
            SkeinRule::Enumerate => "enumerate".to_string(),
        };
        writeln!(f, "{pad}{} [{what}] = {}", self.complex, self.result)?;
        self.children.iter().try_for_each(|c| c.write(f, depth + 1))
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(SkeinStep::size).sum::<usize>()
    }
}

impl fmt::Display for SkeinStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

/// Order in which top cells are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CellOrder {
    #[default]
    Ascending,
    Descending,
}

/// `T^k_K` computed by repeatedly applying the relations, trying top cells in
/// index order and enumerating only when no cell qualifies.
pub fn skein_evaluate(k: &CellComplex, limits: &Limits) -> Result<SkeinStep> {
    skein_evaluate_ordered(k, limits, CellOrder::Ascending)
}

pub fn skein_evaluate_ordered(k: &CellComplex, limits: &Limits, order: CellOrder) -> Result<SkeinStep> {
    if k.dim() == 0 {
        return Err(Error::Range("the complex has no positive-dimensional cells".into()));
    }
    let mut cache = HashMap::new();
    evaluate(k, limits, order, &mut cache)
}

/// The top polynomial depends only on `D[k]` up to column order.
fn cache_key(k: &CellComplex) -> [u8; 32] {
    let d = k.boundary(k.dim());
    let mut cols: Vec<Vec<num_bigint::BigInt>> = (0..d.cols()).map(|c| d.column(c)).collect();
    cols.sort();
    let mut h = Sha256::new();
    hash_matrix(&mut h, &IntMatrix::from_columns(d.rows(), &cols));
    h.finalize().into()
}

fn evaluate(
    k: &CellComplex,
    limits: &Limits,
    order: CellOrder,
    cache: &mut HashMap<[u8; 32], BiPoly>,
) -> Result<SkeinStep> {
    let top = k.dim();
    let step = |rule, result, children| SkeinStep {
        complex: k.name().to_string(),
        rule,
        result,
        children,
    };
    if k.f(top) == 0 {
        return Ok(step(SkeinRule::Empty, BiPoly::one(), Vec::new()));
    }
    let key = cache_key(k);
    if let Some(hit) = cache.get(&key) {
        return Ok(step(SkeinRule::Cached, hit.clone(), Vec::new()));
    }
    let mut cells: Vec<CellRef> = k.cells(top).collect();
    if order == CellOrder::Descending {
        cells.reverse();
    }
    let mut out = None;
    for cell in cells {
        let class = classify_cell(k, cell)?;
        let id = k.id(cell).to_string();
        if class.is_loop {
            let child = evaluate(&k.delete_cell(cell)?, limits, order, cache)?;
            let r = &y1() * &child.result;
            out = Some(step(SkeinRule::Loop { cell: id }, r, vec![child]));
        } else if let Some(&face) = class.free_faces.first() {
            let child = evaluate(&k.collapse(cell, face)?, limits, order, cache)?;
            let r = &x1() * &child.result;
            let rule = SkeinRule::Collapse {
                cell: id,
                face: k.id(face).to_string(),
            };
            out = Some(step(rule, r, vec![child]));
        } else if class.boundary_regular && class.is_bridge {
            let child = evaluate(&k.contract_closure(cell)?, limits, order, cache)?;
            let r = &x1() * &child.result;
            out = Some(step(SkeinRule::Contract { cell: id }, r, vec![child]));
        } else if class.boundary_regular {
            let a = evaluate(&k.contract_closure(cell)?, limits, order, cache)?;
            let b = evaluate(&k.delete_cell(cell)?, limits, order, cache)?;
            let r = &a.result + &b.result;
            out = Some(step(SkeinRule::DeleteContract { cell: id }, r, vec![a, b]));
        } else {
            continue;
        }
        break;
    }
    let node = match out {
        Some(node) => node,
        None => step(SkeinRule::Enumerate, tkr(k, top, limits)?, Vec::new()),
    };
    cache.insert(key, node.result.clone());
    Ok(node)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin, test_family};

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn classes_of_worked_examples() {
        let k = builtin("s2vs1").unwrap();
        let c = classify_cell(&k, k.lookup("s").unwrap()).unwrap();
        assert!(c.is_loop && c.boundary_regular && !c.is_bridge);

        let k = builtin("sphere-three-cells").unwrap();
        let c = classify_cell(&k, k.lookup("sinf").unwrap()).unwrap();
        assert!(!c.is_loop && !c.is_bridge && !c.boundary_regular);

        let k = builtin("rp2").unwrap();
        let c = classify_cell(&k, k.lookup("s").unwrap()).unwrap();
        assert!(c.is_bridge && c.boundary_regular && !c.is_loop);
        assert!(c.free_faces.is_empty());

        let k = builtin("sphere-three-cells-deleted").unwrap();
        let c = classify_cell(&k, k.lookup("sinf").unwrap()).unwrap();
        assert!(c.is_bridge && !c.boundary_regular);
        assert_eq!(c.free_faces.len(), 2);
    }

    #[test]
    fn lower_cells_are_rejected() {
        let k = builtin("rp2").unwrap();
        assert_eq!(classify_cell(&k, k.lookup("e").unwrap()).unwrap_err().code(), "NotTopCell");
    }

    #[test]
    fn relations_on_worked_examples() {
        let k = builtin("s2vs2").unwrap();
        let r = verify_skein(&k, k.lookup("s'").unwrap(), &l()).unwrap();
        assert_eq!((r.case, r.holds), (SkeinCase::Bridge, Some(true)));
        assert_eq!(r.contraction.to_string(), "Y + 1");
        let r = verify_skein(&k, k.lookup("s").unwrap(), &l()).unwrap();
        assert_eq!((r.case, r.holds), (SkeinCase::Loop, Some(true)));

        let k = builtin("sphere-three-cells").unwrap();
        for id in ["s1", "s2"] {
            let r = verify_skein(&k, k.lookup(id).unwrap(), &l()).unwrap();
            assert_eq!((r.case, r.holds), (SkeinCase::Regular, Some(true)), "{id}");
        }
        let r = verify_skein(&k, k.lookup("sinf").unwrap(), &l()).unwrap();
        assert_eq!(r.case, SkeinCase::NotApplicable);
        assert_eq!(r.deletion.to_string(), "X^2 + 2*X + 1");
        assert_eq!(r.contraction.to_string(), "Y^2 + 2*Y + 1");
        assert_ne!(&r.deletion + &r.contraction, r.polynomial);
    }

    #[test]
    fn collapse_rescues_the_annulus() {
        let k = builtin("sphere-three-cells-deleted").unwrap();
        let r = verify_skein(&k, k.lookup("sinf").unwrap(), &l()).unwrap();
        assert_eq!(r.case, SkeinCase::NotApplicable);
        assert!(r.collapse.unwrap().holds);
        let t = skein_evaluate(&k, &l()).unwrap();
        assert_eq!(t.result.to_string(), "X + 1");
        assert!(matches!(t.rule, SkeinRule::Collapse { .. }));
    }

    #[test]
    fn evaluator_matches_enumeration() {
        for k in test_family() {
            if k.dim() == 0 {
                continue;
            }
            let expected = tkr(&k, k.dim(), &l()).unwrap();
            for order in [CellOrder::Ascending, CellOrder::Descending] {
                let got = skein_evaluate_ordered(&k, &l(), order).unwrap();
                assert_eq!(got.result, expected, "{} {order:?}\n{got}", k.name());
            }
        }
    }

    #[test]
    fn three_cell_sphere_starts_with_regular_rule() {
        let k = builtin("sphere-three-cells").unwrap();
        let t = skein_evaluate(&k, &l()).unwrap();
        assert_eq!(t.rule, SkeinRule::DeleteContract { cell: "s1".into() });
        assert_eq!(t.result.to_string(), "X^2 + 3*X + Y + 3");
    }
}
