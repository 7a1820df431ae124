use foliage::mpoly::{gcd, MPoly, Monomial};
use foliage::scalar::qi;
use foliage::Rational;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

const NV: usize = 3;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 100,
        rng_seed: RngSeed::Fixed(42),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn poly() -> impl Strategy<Value = MPoly<Rational>> {
    prop::collection::vec((prop::collection::vec(0u32..=3, NV), -6i64..=6), 0..5).prop_map(|terms| {
        MPoly::from_terms(NV, terms.into_iter().map(|(e, c)| (Monomial::new(&e), qi(c))))
    })
}

/// Sum of terms of one weighted degree.
fn quasi_homogeneous(weights: [i64; NV], deg: i64) -> impl Strategy<Value = MPoly<Rational>> {
    let monos: Vec<Monomial> = Monomial::all_of_weighted_degree(&weights, deg);
    prop::collection::vec(-4i64..=4, monos.len())
        .prop_map(move |cs| MPoly::from_terms(NV, monos.iter().copied().zip(cs.into_iter().map(qi))))
}

type WeightedPair = ([i64; NV], i64, i64, MPoly<Rational>, MPoly<Rational>);

fn weighted_pair() -> impl Strategy<Value = WeightedPair> {
    (prop::array::uniform3(1i64..=4), 0i64..=8, 0i64..=8).prop_flat_map(|(w, d1, d2)| {
        (Just(w), Just(d1), Just(d2), quasi_homogeneous(w, d1), quasi_homogeneous(w, d2))
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn gcd_divides_both(a in poly(), b in poly(), c in poly()) {
        let (p, q) = (&a * &c, &b * &c);
        let g = gcd(&p, &q);
        if !p.is_zero() || !q.is_zero() {
            prop_assert!(p.is_divisible_by(&g));
            prop_assert!(q.is_divisible_by(&g));
            if !c.is_zero() {
                prop_assert!(g.is_divisible_by(&c));
            }
        }
    }

    #[test]
    fn weighted_degree_is_additive((w, d1, d2, a, b) in weighted_pair()) {
        let ab = &a * &b;
        if !ab.is_zero() {
            prop_assert_eq!(a.weighted_degree(&w), Some(d1));
            prop_assert_eq!(b.weighted_degree(&w), Some(d2));
            prop_assert_eq!(ab.weighted_degree(&w), Some(d1 + d2));
        }
    }
}
