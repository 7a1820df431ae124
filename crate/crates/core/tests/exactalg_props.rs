use foliage::exactalg::{bareiss, gauss, Matrix};
use foliage::scalar::{q, Fp};
use foliage::Rational;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 100,
        rng_seed: RngSeed::Fixed(42),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Entries are sparse small fractions, so rank deficiency is common.
fn entry() -> impl Strategy<Value = Rational> {
    prop_oneof![
        3 => Just(Rational::zero()),
        4 => (-9i64..=9, 1i64..=4).prop_map(|(n, d)| q(n, d)),
    ]
}

fn matrix() -> impl Strategy<Value = Matrix<Rational>> {
    (1usize..=7, 1usize..=7).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(entry(), c), r).prop_map(move |rows| Matrix::from_rows(c, rows))
    })
}

/// A product of an `r x k` and a `k x c` matrix has rank at most `k`.
fn low_rank() -> impl Strategy<Value = (Matrix<Rational>, usize)> {
    (2usize..=7, 2usize..=7, 1usize..=3).prop_flat_map(|(r, c, k)| {
        let a = prop::collection::vec(prop::collection::vec(entry(), k), r);
        let b = prop::collection::vec(prop::collection::vec(entry(), c), k);
        (a, b).prop_map(move |(a, b)| (Matrix::from_rows(k, a).mul(&Matrix::from_rows(c, b)), k))
    })
}

/// A matrix with a row permutation, a column permutation and nonzero row scalings.
fn permuted() -> impl Strategy<Value = (Matrix<Rational>, Vec<usize>, Vec<usize>, Vec<Rational>)> {
    matrix().prop_flat_map(|m| {
        let (r, c) = (m.nrows(), m.ncols());
        let scale = prop::collection::vec((1i64..=7, 1i64..=5, any::<bool>()), r)
            .prop_map(|v| v.into_iter().map(|(n, d, neg)| q(if neg { -n } else { n }, d)).collect());
        (
            Just(m),
            Just((0..r).collect::<Vec<_>>()).prop_shuffle(),
            Just((0..c).collect::<Vec<_>>()).prop_shuffle(),
            scale,
        )
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn rank_and_kernel_are_consistent(m in matrix()) {
        let rank = m.rank();
        let kernel = m.kernel_basis();
        prop_assert_eq!(rank + kernel.len(), m.ncols());
        prop_assert!(rank <= m.nrows().min(m.ncols()));
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        if !kernel.is_empty() {
            prop_assert_eq!(Matrix::from_rows(m.ncols(), kernel.clone()).rank(), kernel.len());
        }
        prop_assert_eq!(m.transpose().rank(), rank);
    }

    #[test]
    fn elimination_strategies_agree(m in matrix()) {
        let rank = gauss::rank(&m);
        prop_assert_eq!(bareiss::rank(&m), rank);
        prop_assert_eq!(bareiss::kernel(&m), gauss::kernel(&m));
        if let Some(r) = bareiss::modular_full_rank(&m) {
            prop_assert_eq!(r, rank);
        }
        let reduced: Option<Vec<Fp>> = m.rows_iter().flatten().map(Fp::checked_from_rational).collect();
        if let Some(entries) = reduced {
            let mp = Matrix::from_rows(m.ncols(), entries.chunks(m.ncols()).map(<[Fp]>::to_vec).collect());
            prop_assert!(mp.rank() <= rank);
        }
    }

    #[test]
    fn factored_matrices_have_bounded_rank((m, k) in low_rank()) {
        prop_assert!(m.rank() <= k);
    }

    #[test]
    fn solve_returns_a_solution(m in matrix(), x in prop::collection::vec(entry(), 7)) {
        let x = &x[..m.ncols()];
        let b = m.mul_vec(x);
        let y = m.solve(&b);
        prop_assert!(y.is_some());
        prop_assert_eq!(m.mul_vec(&y.unwrap()), b);
    }

    #[test]
    fn rank_is_invariant_under_permutation_and_scaling((m, row_perm, col_perm, scale) in permuted()) {
        let rows: Vec<Vec<Rational>> = row_perm
            .iter()
            .zip(&scale)
            .map(|(&i, factor)| col_perm.iter().map(|&j| &m.row(i)[j] * factor).collect())
            .collect();
        prop_assert_eq!(Matrix::from_rows(m.ncols(), rows).rank(), m.rank());
    }
}
