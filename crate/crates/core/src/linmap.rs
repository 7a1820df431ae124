//! Matrices of linear maps given by their action on a basis.

use rayon::prelude::*;

use crate::exactalg::Matrix;
use crate::scalar::Scalar;

/// The matrix whose `j`-th column is `image(&inputs[j])`. Columns are
/// evaluated in parallel; every image must have length `rows`.
pub fn assemble<T, K, F>(rows: usize, inputs: &[T], image: F) -> Matrix<K>
where
    T: Sync,
    K: Scalar,
    F: Fn(&T) -> Vec<K> + Sync,
{
    let cols: Vec<Vec<K>> = inputs.par_iter().map(&image).collect();
    Matrix::from_columns(rows, &cols)
}

/// Stacks several blocks that act on the same domain.
pub fn stack<K: Scalar>(blocks: &[Matrix<K>]) -> Matrix<K> {
    let mut it = blocks.iter();
    let first = it.next().expect("at least one block").clone();
    it.fold(first, |acc, b| acc.vstack(b))
}
