//! Smith normal form of integer matrices (rank and invariant factors only).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::matrix::IntMatrix;

/// Rank and invariant factors `d_1 | d_2 | ... | d_rank` of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    pub rank: usize,
    #[serde(serialize_with = "crate::poly::serialize_bigints")]
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    /// Invariant factors greater than one; these are the cyclic orders of the
    /// torsion in the cokernel.
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    /// Product of the invariant factors greater than one.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }
}

/// Smith normal form by unimodular row and column operations, always pivoting
/// on the nonzero entry of least absolute value.
pub fn smith_normal_form(matrix: &IntMatrix) -> SmithForm {
    let mut a = matrix.clone();
    let (rows, cols) = a.shape();
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = min_abs_entry(&a, t..rows, t..cols) else {
            break;
        };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);
        loop {
            let mut clean = true;
            for r in t + 1..rows {
                if a.get(r, t).is_zero() {
                    continue;
                }
                let q = a.get(r, t).div_floor(a.get(t, t));
                a.add_row_multiple(r, t, &-q);
                clean &= a.get(r, t).is_zero();
            }
            for c in t + 1..cols {
                if a.get(t, c).is_zero() {
                    continue;
                }
                let q = a.get(t, c).div_floor(a.get(t, t));
                a.add_col_multiple(c, t, &-q);
                clean &= a.get(t, c).is_zero();
            }
            if !clean {
                // A remainder smaller than the pivot survived; move it into place.
                let col_min = min_abs_entry(&a, t..rows, t..t + 1);
                let row_min = min_abs_entry(&a, t..t + 1, t..cols);
                let (r, c) = match (col_min, row_min) {
                    (Some(x), Some(y)) => {
                        if a.get(x.0, x.1).abs() <= a.get(y.0, y.1).abs() {
                            x
                        } else {
                            y
                        }
                    }
                    (Some(x), None) | (None, Some(x)) => x,
                    (None, None) => unreachable!("pivot row and column cannot both vanish"),
                };
                a.swap_rows(t, r);
                a.swap_cols(t, c);
                continue;
            }
            let pivot = a.get(t, t).clone();
            let offender = (t + 1..rows).find(|&r| {
                (t + 1..cols).any(|c| !a.get(r, c).is_multiple_of(&pivot))
            });
            match offender {
                Some(r) => a.add_row_multiple(t, r, &BigInt::one()),
                None => break,
            }
        }
        factors.push(a.get(t, t).abs());
        t += 1;
    }
    SmithForm {
        rank: factors.len(),
        invariant_factors: factors,
    }
}

fn min_abs_entry(
    a: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for r in rows {
        for c in cols.clone() {
            let v = a.get(r, c);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(_, b)| abs < *b) {
                let one = abs.is_one();
                best = Some(((r, c), abs));
                if one {
                    return best.map(|(p, _)| p);
                }
            }
        }
    }
    best.map(|(p, _)| p)
}
