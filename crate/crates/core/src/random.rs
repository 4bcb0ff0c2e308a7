//! Seeded random complexes for property tests.
//!
//! Edges join two random vertices (a loop when they coincide). A higher cell's
//! boundary is a random integer combination of a kernel basis of the previous
//! boundary map, so `D D = 0` holds by construction. A cell with zero boundary
//! is attached to a random cell one dimension down.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{CellComplex, CellRef};
use crate::matrix::IntMatrix;

/// Shape bounds for [`random_complex`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomShape {
    pub dim: usize,
    pub max_vertices: usize,
    /// Bound on the cell count of each intermediate dimension.
    pub max_middle: usize,
    pub max_top: usize,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape {
            dim: 2,
            max_vertices: 4,
            max_middle: 5,
            max_top: 8,
        }
    }
}

/// A random valid complex with the given shape bounds.
pub fn random_complex<R: Rng>(rng: &mut R, shape: RandomShape, name: impl Into<String>) -> CellComplex {
    assert!(shape.dim >= 1 && shape.max_vertices >= 1 && shape.max_middle >= 1 && shape.max_top >= 1);
    let k = shape.dim;
    let mut counts = vec![rng.gen_range(1..=shape.max_vertices)];
    for j in 1..=k {
        let max = if j == k { shape.max_top } else { shape.max_middle };
        counts.push(rng.gen_range(1..=max));
    }
    let letters = ['v', 'e', 'f', 'c', 'h'];
    let ids: Vec<Vec<String>> = counts
        .iter()
        .enumerate()
        .map(|(j, &n)| (0..n).map(|i| format!("{}{i}", letters[j.min(4)])).collect())
        .collect();

    let mut boundary: Vec<IntMatrix> = Vec::with_capacity(k);
    let mut attach: Vec<Vec<Vec<CellRef>>> = counts.iter().map(|&n| vec![Vec::new(); n]).collect();
    for j in 1..=k {
        let rows = counts[j - 1];
        let kernel = match j {
            1 => Vec::new(),
            _ => boundary[j - 2].integer_kernel_basis(),
        };
        let mut cols = Vec::with_capacity(counts[j]);
        for support in attach[j].iter_mut() {
            let mut col = vec![BigInt::zero(); rows];
            if j == 1 {
                let (a, b) = (rng.gen_range(0..rows), rng.gen_range(0..rows));
                if a != b {
                    col[a] -= 1;
                    col[b] += 1;
                }
            } else {
                for v in &kernel {
                    let c: i64 = rng.gen_range(-2..=2);
                    for (x, y) in col.iter_mut().zip(v) {
                        *x += y * c;
                    }
                }
            }
            if col.iter().all(Zero::is_zero) {
                support.push(CellRef::new(j - 1, rng.gen_range(0..rows)));
            }
            cols.push(col);
        }
        boundary.push(IntMatrix::from_columns(rows, &cols));
    }
    CellComplex::new(name, ids, boundary, Some(attach)).expect("random complexes are valid by construction")
}

/// One complex determined by `seed`.
pub fn seeded_complex(seed: u64, shape: RandomShape) -> CellComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_complex(&mut rng, shape, format!("random-{seed}"))
}

/// `count` complexes from one seed, cycling through dimensions 1 to 3.
pub fn random_family(seed: u64, count: usize) -> Vec<CellComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let shape = RandomShape {
                dim: 1 + i % 3,
                ..RandomShape::default()
            };
            random_complex(&mut rng, shape, format!("random-{seed}-{i}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_bounded() {
        let a = random_family(7, 30);
        let b = random_family(7, 30);
        assert_eq!(a, b);
        for k in &a {
            assert!(k.f(k.dim()) <= 8 && k.f(0) <= 4);
        }
        assert_ne!(a, random_family(8, 30));
    }

    #[test]
    fn families_contain_loops_and_torsion() {
        let fam = random_family(1, 100);
        let loops = fam
            .iter()
            .any(|k| (0..k.f(k.dim())).any(|c| k.boundary(k.dim()).column_is_zero(c)));
        let torsion = fam.iter().any(|k| {
            crate::homology::homology_all(k, false)
                .iter()
                .any(|h| !h.torsion_factors.is_empty())
        });
        assert!(loops && torsion);
    }
}
