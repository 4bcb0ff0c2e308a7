//! Builtin complexes and dual pairs.
//!
//! Cell structures (incidence numbers follow the listed orientation of each cell):
//!
//! * `s2vs1`: sphere with two points identified. `p`; loop `e`; `s` attached
//!   along `e e^-1`, so `D[2] = [0]`.
//! * `s2vs2`: `s2vs1` plus `s'` glued once along `e`; `D[2] = [0 1]`.
//! * `sphere-one-cell`: `p` and one 2-cell attached to it.
//! * `sphere-three-cells`: vertices `p, q`; loops `a` at `p` and `c` at `q`,
//!   segment `b = q - p`; `s1 = a`, `s2 = c`, `sinf = -a - c` (touching `b`
//!   twice with opposite signs).
//! * `sphere-three-cells-deleted`: the previous complex without `s1, s2`.
//! * `rp2`: `p`; loop `e`; `s = 2e`.
//! * `torus`, `klein-bottle`: square with a diagonal `d`, loops `a, b, d`;
//!   torus `s1 = a + b - d, s2 = -a - b + d`; Klein bottle `s1 = a + b - d,
//!   s2 = a - b + d`.
//! * `disc`: `p`; loop `e`; `s = e`.
//! * `theta`: two vertices joined by three edges. `theta-sphere` adds the three
//!   faces `a - b, b - c, c - a`; `triangle-sphere` is its planar dual.
//! * `tetrahedron-boundary`, `cube-surface`, `octahedron-surface`, and
//!   `simplex-skeleton(n,k)` with simplicial or polygonal orientations.

use std::fmt::Write as _;

use crate::complex::{CellComplex, ComplexBuilder};
use crate::error::{Error, Result};
use crate::tkr::ManifoldKind;

/// One catalog entry.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    /// Set when the complex is a connected compact manifold of top dimension.
    pub manifold: Option<ManifoldKind>,
}

const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "s2vs1",
        description: "2-sphere with two points identified",
        manifold: None,
    },
    CatalogEntry {
        name: "s2vs2",
        description: "s2vs1 with a second 2-cell glued along the loop",
        manifold: None,
    },
    CatalogEntry {
        name: "sphere-one-cell",
        description: "2-sphere as one 0-cell and one 2-cell",
        manifold: Some(ManifoldKind::ClosedOrientable),
    },
    CatalogEntry {
        name: "sphere-three-cells",
        description: "2-sphere with three 2-cells, three 1-cells, two 0-cells",
        manifold: Some(ManifoldKind::ClosedOrientable),
    },
    CatalogEntry {
        name: "sphere-three-cells-deleted",
        description: "sphere-three-cells without s1 and s2 (an annulus)",
        manifold: Some(ManifoldKind::Other),
    },
    CatalogEntry {
        name: "rp2",
        description: "real projective plane, one cell per dimension",
        manifold: Some(ManifoldKind::Other),
    },
    CatalogEntry {
        name: "torus",
        description: "torus as a square split by a diagonal",
        manifold: Some(ManifoldKind::ClosedOrientable),
    },
    CatalogEntry {
        name: "klein-bottle",
        description: "Klein bottle as a square split by a diagonal",
        manifold: Some(ManifoldKind::Other),
    },
    CatalogEntry {
        name: "disc",
        description: "disc: one 0-cell, one 1-cell, one 2-cell",
        manifold: Some(ManifoldKind::Other),
    },
    CatalogEntry {
        name: "theta",
        description: "theta graph: two vertices, three parallel edges",
        manifold: None,
    },
    CatalogEntry {
        name: "theta-sphere",
        description: "theta graph embedded in the 2-sphere with its three faces",
        manifold: Some(ManifoldKind::ClosedOrientable),
    },
    CatalogEntry {
        name: "triangle-sphere",
        description: "triangle embedded in the 2-sphere with its two faces",
        manifold: Some(ManifoldKind::ClosedOrientable),
    },
    CatalogEntry {
        name: "tetrahedron-boundary",
        description: "boundary of the 3-simplex",
        manifold: Some(ManifoldKind::ClosedOrientable),
    },
    CatalogEntry {
        name: "cube-surface",
        description: "surface of the 3-cube",
        manifold: Some(ManifoldKind::ClosedOrientable),
    },
    CatalogEntry {
        name: "octahedron-surface",
        description: "surface of the octahedron",
        manifold: Some(ManifoldKind::ClosedOrientable),
    },
];

/// Fixed catalog entries; `simplex-skeleton(n,k)` is parameterized and listed separately.
pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG
}

/// Manifold flag of a builtin, if it has one.
pub fn manifold_kind(name: &str) -> Option<ManifoldKind> {
    CATALOG.iter().find(|e| e.name == name).and_then(|e| e.manifold)
}

/// Names of the shipped dual pairs.
pub const DUAL_PAIRS: &[&str] = &["tetrahedron-self", "cube-octahedron", "theta-triangle"];

pub fn is_builtin(name: &str) -> bool {
    CATALOG.iter().any(|e| e.name == name) || parse_simplex_skeleton(name).is_some()
}

pub fn builtin(name: &str) -> Result<CellComplex> {
    if let Some((n, k)) = parse_simplex_skeleton(name) {
        return simplex_skeleton(n, k);
    }
    let built = match name {
        "s2vs1" => {
            let mut b = ComplexBuilder::new(name, 2);
            b.cells(0, ["p"]).cells(1, ["e"]).cells(2, ["s"]);
            b.boundary(1, "e", &[(0, "p")]);
            b.boundary(2, "s", &[(0, "e")]);
            b.build()
        }
        "s2vs2" => {
            let mut b = ComplexBuilder::new(name, 2);
            b.cells(0, ["p"]).cells(1, ["e"]).cells(2, ["s", "s'"]);
            b.boundary(1, "e", &[(0, "p")]);
            b.boundary(2, "s", &[(0, "e")]);
            b.boundary(2, "s'", &[(1, "e")]);
            b.build()
        }
        "sphere-one-cell" => {
            let mut b = ComplexBuilder::new(name, 2);
            b.cells(0, ["p"]).cells(1, Vec::<String>::new()).cells(2, ["s"]);
            b.boundary(2, "s", &[(0, "p")]);
            b.build()
        }
        "sphere-three-cells" => three_cell_sphere(name, true),
        "sphere-three-cells-deleted" => three_cell_sphere(name, false),
        "rp2" => {
            let mut b = ComplexBuilder::new(name, 2);
            b.cells(0, ["p"]).cells(1, ["e"]).cells(2, ["s"]);
            b.boundary(1, "e", &[(0, "p")]);
            b.boundary(2, "s", &[(2, "e")]);
            b.build()
        }
        "torus" | "klein-bottle" => {
            let mut b = ComplexBuilder::new(name, 2);
            b.cells(0, ["p"]).cells(1, ["a", "b", "d"]).cells(2, ["s1", "s2"]);
            for e in ["a", "b", "d"] {
                b.boundary(1, e, &[(0, "p")]);
            }
            b.boundary(2, "s1", &[(1, "a"), (1, "b"), (-1, "d")]);
            if name == "torus" {
                b.boundary(2, "s2", &[(-1, "a"), (-1, "b"), (1, "d")]);
            } else {
                b.boundary(2, "s2", &[(1, "a"), (-1, "b"), (1, "d")]);
            }
            b.build()
        }
        "disc" => {
            let mut b = ComplexBuilder::new(name, 2);
            b.cells(0, ["p"]).cells(1, ["e"]).cells(2, ["s"]);
            b.boundary(1, "e", &[(0, "p")]);
            b.boundary(2, "s", &[(1, "e")]);
            b.build()
        }
        "theta" | "theta-sphere" => {
            let dim = if name == "theta" { 1 } else { 2 };
            let mut b = ComplexBuilder::new(name, dim);
            b.cells(0, ["p", "q"]).cells(1, ["a", "b", "c"]);
            for e in ["a", "b", "c"] {
                b.boundary(1, e, &[(-1, "p"), (1, "q")]);
            }
            if dim == 2 {
                b.cells(2, ["f1", "f2", "f3"]);
                b.boundary(2, "f1", &[(1, "a"), (-1, "b")]);
                b.boundary(2, "f2", &[(1, "b"), (-1, "c")]);
                b.boundary(2, "f3", &[(1, "c"), (-1, "a")]);
            }
            b.build()
        }
        "triangle-sphere" => {
            let mut b = ComplexBuilder::new(name, 2);
            b.cells(0, ["v1", "v2", "v3"])
                .cells(1, ["v1v2", "v1v3", "v2v3"])
                .cells(2, ["in", "out"]);
            b.boundary(1, "v1v2", &[(-1, "v1"), (1, "v2")]);
            b.boundary(1, "v1v3", &[(-1, "v1"), (1, "v3")]);
            b.boundary(1, "v2v3", &[(-1, "v2"), (1, "v3")]);
            b.boundary(2, "in", &[(1, "v1v2"), (1, "v2v3"), (-1, "v1v3")]);
            b.boundary(2, "out", &[(-1, "v1v2"), (-1, "v2v3"), (1, "v1v3")]);
            b.build()
        }
        "tetrahedron-boundary" => Ok(simplex_skeleton(4, 2)?.with_name(name)),
        "cube-surface" => cube_surface(),
        "octahedron-surface" => octahedron_surface(),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    built
}

fn three_cell_sphere(name: &str, with_discs: bool) -> Result<CellComplex> {
    let mut b = ComplexBuilder::new(name, 2);
    b.cells(0, ["p", "q"]).cells(1, ["a", "b", "c"]);
    b.boundary(1, "a", &[(0, "p")]);
    b.boundary(1, "b", &[(-1, "p"), (1, "q")]);
    b.boundary(1, "c", &[(0, "q")]);
    if with_discs {
        b.cells(2, ["s1", "s2", "sinf"]);
        b.boundary(2, "s1", &[(1, "a")]);
        b.boundary(2, "s2", &[(1, "c")]);
    } else {
        b.cells(2, ["sinf"]);
    }
    b.boundary(2, "sinf", &[(-1, "a"), (0, "b"), (-1, "c")]);
    b.build()
}

/// `simplex-skeleton(n,k)` → `Some((n, k))`.
pub fn parse_simplex_skeleton(name: &str) -> Option<(usize, usize)> {
    let inner = name.strip_prefix("simplex-skeleton(")?.strip_suffix(')')?;
    let (n, k) = inner.split_once(',')?;
    Some((n.trim().parse().ok()?, k.trim().parse().ok()?))
}

fn vertex_list_id(vs: &[usize]) -> String {
    vs.iter().fold(String::new(), |mut s, v| {
        let _ = write!(s, "v{v}");
        s
    })
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// The `k`-skeleton of the simplex on `n` vertices with the usual alternating
/// face signs. Simplices are listed in lexicographic order of their vertices.
pub fn simplex_skeleton(n: usize, k: usize) -> Result<CellComplex> {
    if n == 0 || k >= n {
        return Err(Error::OutOfRange {
            what: "simplex-skeleton dimension",
            value: k as i64,
            min: 0,
            max: n as i64 - 1,
        });
    }
    let mut b = ComplexBuilder::new(format!("simplex-skeleton({n},{k})"), k);
    for d in 0..=k {
        let simplices = combinations(n, d + 1);
        b.cells(d, simplices.iter().map(|s| vertex_list_id(s)));
        if d == 0 {
            continue;
        }
        for s in &simplices {
            let terms: Vec<(i64, String)> = (0..=d)
                .map(|i| {
                    let mut face = s.clone();
                    face.remove(i);
                    (if i % 2 == 0 { 1 } else { -1 }, vertex_list_id(&face))
                })
                .collect();
            let refs: Vec<(i64, &str)> = terms.iter().map(|(c, f)| (*c, f.as_str())).collect();
            b.boundary(d, &vertex_list_id(s), &refs);
        }
    }
    b.build()
}

fn cube_vertex(v: usize) -> String {
    format!("v{}{}{}", v & 1, (v >> 1) & 1, (v >> 2) & 1)
}

fn cube_edges() -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = (0..8)
        .flat_map(|u| (0..3).filter(move |i| u & (1 << i) == 0).map(move |i| (u, u | (1 << i))))
        .collect();
    edges.sort_unstable();
    edges
}

const AXES: [char; 3] = ['x', 'y', 'z'];

/// Vertices of the cube face `axis = value`, in cyclic order.
fn cube_face_cycle(axis: usize, value: usize) -> Vec<usize> {
    let others: Vec<usize> = (0..3).filter(|&i| i != axis).collect();
    let base = value << axis;
    [(0, 0), (1, 0), (1, 1), (0, 1)]
        .iter()
        .map(|&(a, b)| base | (a << others[0]) | (b << others[1]))
        .collect()
}

fn polygon_terms(cycle: &[usize], edge_id: impl Fn(usize, usize) -> String) -> Vec<(i64, String)> {
    (0..cycle.len())
        .map(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            if a < b {
                (1, edge_id(a, b))
            } else {
                (-1, edge_id(b, a))
            }
        })
        .collect()
}

fn cube_surface() -> Result<CellComplex> {
    let mut b = ComplexBuilder::new("cube-surface", 2);
    b.cells(0, (0..8).map(cube_vertex));
    let edges = cube_edges();
    let eid = |u: usize, v: usize| format!("{}{}", cube_vertex(u), cube_vertex(v));
    b.cells(1, edges.iter().map(|&(u, v)| eid(u, v)));
    for &(u, v) in &edges {
        b.boundary(1, &eid(u, v), &[(-1, &cube_vertex(u)), (1, &cube_vertex(v))]);
    }
    let mut faces = Vec::new();
    for (axis, name) in AXES.iter().enumerate() {
        for value in 0..2 {
            let id = format!("{name}{value}");
            let terms = polygon_terms(&cube_face_cycle(axis, value), eid);
            faces.push((id, terms));
        }
    }
    b.cells(2, faces.iter().map(|(id, _)| id.clone()));
    for (id, terms) in &faces {
        let refs: Vec<(i64, &str)> = terms.iter().map(|(c, f)| (*c, f.as_str())).collect();
        b.boundary(2, id, &refs);
    }
    b.build()
}

fn octa_vertex(v: usize) -> String {
    format!("{}{}", if v.is_multiple_of(2) { 'p' } else { 'n' }, AXES[v / 2])
}

fn octa_edges() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..6 {
        for v in u + 1..6 {
            if u / 2 != v / 2 {
                out.push((u, v));
            }
        }
    }
    out
}

/// Octahedron face id for the sign pattern; bit `i` set means the positive vertex on axis `i`.
fn octa_face(bits: usize) -> String {
    let mut s = String::from("t");
    for i in 0..3 {
        s.push(if bits & (1 << i) != 0 { 'p' } else { 'n' });
    }
    s
}

fn octahedron_surface() -> Result<CellComplex> {
    let mut b = ComplexBuilder::new("octahedron-surface", 2);
    b.cells(0, (0..6).map(octa_vertex));
    let eid = |u: usize, v: usize| format!("{}{}", octa_vertex(u), octa_vertex(v));
    let edges = octa_edges();
    b.cells(1, edges.iter().map(|&(u, v)| eid(u, v)));
    for &(u, v) in &edges {
        b.boundary(1, &eid(u, v), &[(-1, &octa_vertex(u)), (1, &octa_vertex(v))]);
    }
    b.cells(2, (0..8).map(octa_face));
    for bits in 0..8 {
        let vs: Vec<usize> = (0..3)
            .map(|i| 2 * i + usize::from(bits & (1 << i) == 0))
            .collect();
        let (x, y, z) = (vs[0], vs[1], vs[2]);
        b.boundary(
            2,
            &octa_face(bits),
            &[(1, &eid(y, z)), (-1, &eid(x, z)), (1, &eid(x, y))],
        );
    }
    b.build()
}

/// Correspondence text of a shipped dual pair.
pub fn builtin_pair_text(name: &str) -> Result<String> {
    let mut s = String::new();
    match name {
        "tetrahedron-self" => {
            s.push_str("dual tetrahedron-boundary tetrahedron-boundary\n");
            let all = [0usize, 1, 2, 3];
            for d in 0..=2 {
                for simplex in combinations(4, d + 1) {
                    let rest: Vec<usize> =
                        all.iter().copied().filter(|v| !simplex.contains(v)).collect();
                    let _ = writeln!(s, "{} ~ {}", vertex_list_id(&simplex), vertex_list_id(&rest));
                }
            }
        }
        "cube-octahedron" => {
            s.push_str("dual cube-surface octahedron-surface\n");
            for v in 0..8 {
                let _ = writeln!(s, "{} ~ {}", cube_vertex(v), octa_face(v));
            }
            for (u, v) in cube_edges() {
                let axis = (u ^ v).trailing_zeros() as usize;
                let ends: Vec<usize> = (0..3)
                    .filter(|&i| i != axis)
                    .map(|i| 2 * i + usize::from(u & (1 << i) == 0))
                    .collect();
                let _ = writeln!(
                    s,
                    "{}{} ~ {}{}",
                    cube_vertex(u),
                    cube_vertex(v),
                    octa_vertex(ends[0]),
                    octa_vertex(ends[1])
                );
            }
            for (axis, name) in AXES.iter().enumerate() {
                for value in 0..2 {
                    let octa = 2 * axis + usize::from(value == 0);
                    let _ = writeln!(s, "{name}{value} ~ {}", octa_vertex(octa));
                }
            }
        }
        "theta-triangle" => {
            s.push_str("dual theta-sphere triangle-sphere\n");
            for line in [
                "p ~ in", "q ~ out", "a ~ v1v3", "b ~ v1v2", "c ~ v2v3", "f1 ~ v1", "f2 ~ v2",
                "f3 ~ v3",
            ] {
                s.push_str(line);
                s.push('\n');
            }
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    }
    Ok(s)
}

/// Every fixed builtin plus a few small simplex skeleta, for exhaustive tests.
pub fn test_family() -> Vec<CellComplex> {
    let mut out: Vec<CellComplex> = CATALOG.iter().map(|e| builtin(e.name).unwrap()).collect();
    for (n, k) in [(3, 1), (4, 1), (4, 2), (5, 1), (5, 2)] {
        out.push(simplex_skeleton(n, k).unwrap());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate;
    use crate::matrix::IntMatrix;

    #[test]
    fn every_builtin_validates() {
        for k in test_family() {
            validate(&k).unwrap_or_else(|e| panic!("{}: {e}", k.name()));
        }
    }

    #[test]
    fn f_vectors() {
        let cases = [
            ("rp2", vec![1, 1, 1]),
            ("sphere-three-cells", vec![2, 3, 3]),
            ("sphere-three-cells-deleted", vec![2, 3, 1]),
            ("s2vs2", vec![1, 1, 2]),
            ("tetrahedron-boundary", vec![4, 6, 4]),
            ("cube-surface", vec![8, 12, 6]),
            ("octahedron-surface", vec![6, 12, 8]),
            ("simplex-skeleton(4,1)", vec![4, 6]),
            ("simplex-skeleton(5,2)", vec![5, 10, 10]),
        ];
        for (name, f) in cases {
            assert_eq!(builtin(name).unwrap().f_vector(), f, "{name}");
        }
    }

    #[test]
    fn rp2_boundary_maps() {
        let k = builtin("rp2").unwrap();
        assert_eq!(k.boundary(1), &IntMatrix::from_rows(&[[0]]));
        assert_eq!(k.boundary(2), &IntMatrix::from_rows(&[[2]]));
    }

    #[test]
    fn unknown_names() {
        assert_eq!(builtin("nope").unwrap_err().code(), "UnknownName");
        assert!(builtin("simplex-skeleton(3,3)").is_err());
        assert_eq!(parse_simplex_skeleton("simplex-skeleton(5, 2)"), Some((5, 2)));
        assert!(builtin_pair_text("nope").is_err());
    }
}
