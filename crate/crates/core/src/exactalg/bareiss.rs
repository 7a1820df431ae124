//! Fraction-free (Bareiss) elimination for rational matrices.
//!
//! Each row is first scaled to a primitive integer vector, then the one-step
//! Bareiss recurrence keeps every intermediate entry equal to a minor of the
//! input, so division by the previous pivot is always exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{kernel_from_echelon, Matrix};
use crate::scalar::{common_denominator, Fp, Rational};

/// Rank of the reduction mod p when that reduction has full rank. Reduction
/// can only lower the rank, so a full modular rank is the rational rank.
pub fn modular_full_rank(m: &Matrix<Rational>) -> Option<usize> {
    let mut data = Vec::with_capacity(m.nrows());
    for row in m.rows_iter() {
        let r: Option<Vec<Fp>> = row.iter().map(Fp::checked_from_rational).collect();
        data.push(r?);
    }
    let reduced = Matrix::from_rows(m.ncols(), data);
    let r = super::gauss::rank(&reduced);
    (r == m.nrows().min(m.ncols())).then_some(r)
}

fn integer_rows(m: &Matrix<Rational>) -> Vec<Vec<BigInt>> {
    m.nonzero_rows()
        .into_iter()
        .map(|r| {
            let den = common_denominator(&r);
            let ints: Vec<BigInt> = r
                .iter()
                .map(|x| x.numer() * (&den / x.denom()))
                .collect();
            let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
            ints.into_iter().map(|v| v / &g).collect()
        })
        .collect()
}

/// Position of the first entry of maximal absolute value, scanning rows
/// `top..` and, within each row, the given columns in order.
fn max_abs_pivot(
    rows: &[Vec<BigInt>],
    top: usize,
    cols: impl Iterator<Item = usize> + Clone,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in rows.iter().enumerate().skip(top) {
        for j in cols.clone() {
            let v = &row[j];
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if rows[bi][bj].abs() >= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn eliminate_below(rows: &mut [Vec<BigInt>], top: usize, c: usize, prev: &BigInt) {
    let (head, tail) = rows.split_at_mut(top + 1);
    let pivot_row = &head[top];
    let p = &pivot_row[c];
    let width = pivot_row.len();
    for r in tail.iter_mut() {
        let f = std::mem::take(&mut r[c]);
        for j in (c + 1)..width {
            let mut v = p * &r[j];
            if !f.is_zero() && !pivot_row[j].is_zero() {
                v -= &f * &pivot_row[j];
            }
            if !prev.is_one() && !v.is_zero() {
                v /= prev;
            }
            r[j] = v;
        }
    }
}

/// Rank by Bareiss elimination with full pivoting.
pub fn rank(m: &Matrix<Rational>) -> usize {
    let mut rows = integer_rows(m);
    let cols = m.ncols();
    let mut prev = BigInt::one();
    let mut top = 0;
    while top < rows.len() && top < cols {
        let Some((pi, pj)) = max_abs_pivot(&rows, top, top..cols) else {
            break;
        };
        rows.swap(top, pi);
        if pj != top {
            for r in rows.iter_mut() {
                r.swap(top, pj);
            }
        }
        eliminate_below(&mut rows, top, top, &prev);
        prev = rows[top][top].clone();
        top += 1;
        compact(&mut rows, top);
    }
    top
}

/// Drops rows below `top` that became zero.
fn compact(rows: &mut Vec<Vec<BigInt>>, top: usize) {
    let mut k = top;
    for i in top..rows.len() {
        if rows[i].iter().any(|x| !x.is_zero()) {
            rows.swap(k, i);
            k += 1;
        }
    }
    rows.truncate(k);
}

/// Integer row echelon form with pivots taken column by column.
fn echelon(m: &Matrix<Rational>) -> Vec<(usize, Vec<BigInt>)> {
    let mut rows = integer_rows(m);
    let cols = m.ncols();
    let mut prev = BigInt::one();
    let mut top = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if top == rows.len() {
            break;
        }
        let Some((pi, _)) = max_abs_pivot(&rows, top, c..c + 1) else {
            continue;
        };
        rows.swap(top, pi);
        eliminate_below(&mut rows, top, c, &prev);
        prev = rows[top][c].clone();
        pivots.push(c);
        top += 1;
        compact(&mut rows, top);
    }
    rows.truncate(top);
    pivots.into_iter().zip(rows).collect()
}

pub fn kernel(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let ech: Vec<(usize, Vec<Rational>)> = echelon(m)
        .into_iter()
        .map(|(p, r)| {
            let g = r.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
            (p, r.into_iter().map(|v| Rational::from_integer(v / &g)).collect())
        })
        .collect();
    kernel_from_echelon(m.ncols(), &ech)
}
