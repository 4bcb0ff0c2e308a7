//! Exact invariants of finite CW complexes given by integer boundary matrices:
//! the Tutte–Krushkal–Renardy polynomial and its torsion-weighted variant, the
//! Bott polynomial, cellular spanning trees, skein relations, the column
//! matroid of a boundary map, and duality on spheres.
//!
//! All arithmetic is over arbitrary-precision integers.

pub mod catalog;
pub mod complex;
pub mod duality;
pub mod error;
pub mod format;
pub mod homology;
pub mod matrix;
pub mod matroid;
pub mod poly;
pub mod random;
pub mod skein;
pub mod snf;
pub mod subcomplex;
pub mod tkr;
pub mod trees;

pub use complex::{validate, CellComplex, CellRef, ComplexBuilder};
pub use error::{Error, Result};
pub use homology::{homology, HomologySummary};
pub use matrix::IntMatrix;
pub use poly::{BiPoly, UniPoly};
pub use snf::{smith_normal_form, SmithForm};
pub use subcomplex::{CellSet, Limits, SpanningSubcomplex};
pub use tkr::{bott_direct, bott_via_tkr, manifold_closed_form, modified_tkr, tkr, ManifoldKind};
