//! Textbook Gauss-Jordan elimination over any field. Used as-is for the
//! modular and dual scalars, and as the reference for the fraction-free path.

use super::{kernel_from_echelon, Matrix};
use crate::scalar::Field;

/// Row echelon form as `(pivot column, row)` pairs, pivot entries nonzero.
pub fn echelon<K: Field>(m: &Matrix<K>) -> Vec<(usize, Vec<K>)> {
    let cols = m.ncols();
    let mut rows = m.nonzero_rows();
    let mut out = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        if top == rows.len() {
            break;
        }
        let Some(p) = (top..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(top, p);
        let inv = rows[top][c].try_inv().expect("nonzero pivot is a unit in a field");
        let pivot_row: Vec<K> = rows[top].iter().map(|x| x.clone() * inv.clone()).collect();
        for r in rows.iter_mut().skip(top + 1) {
            let f = r[c].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    let v = std::mem::replace(&mut r[j], K::zero());
                    r[j] = v - f.clone() * pivot_row[j].clone();
                }
            }
        }
        out.push((c, pivot_row));
        top += 1;
    }
    out
}

pub fn rank<K: Field>(m: &Matrix<K>) -> usize {
    echelon(m).len()
}

pub fn kernel<K: Field>(m: &Matrix<K>) -> Vec<Vec<K>> {
    kernel_from_echelon(m.ncols(), &echelon(m))
}
