use foliage::extcalc::{subsets, PolyForm, PolyVField};
use foliage::mpoly::{MPoly, Monomial};
use foliage::scalar::{qi, Dual};
use foliage::Rational;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

const NV: usize = 4;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 100,
        rng_seed: RngSeed::Fixed(42),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn poly(max_exp: u32) -> impl Strategy<Value = MPoly<Rational>> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, NV), -6i64..=6), 0..5).prop_map(|terms| {
        MPoly::from_terms(NV, terms.into_iter().map(|(e, c)| (Monomial::new(&e), qi(c))))
    })
}

fn form(k: usize) -> impl Strategy<Value = PolyForm<Rational>> {
    let sets = subsets(NV, k);
    prop::collection::vec(poly(2), sets.len()).prop_map(move |ps| {
        let mut f = PolyForm::zero(NV, k);
        for (s, p) in sets.iter().zip(ps) {
            f.set(*s, p);
        }
        f
    })
}

fn field() -> impl Strategy<Value = PolyVField<Rational>> {
    prop::collection::vec(poly(1), NV).prop_map(PolyVField::new)
}

/// A form of degree 0 to 2.
fn any_form() -> impl Strategy<Value = PolyForm<Rational>> {
    (0usize..=2).prop_flat_map(form)
}

fn sign(k: usize) -> Rational {
    qi(if k % 2 == 0 { 1 } else { -1 })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn d_squared_vanishes(w in any_form()) {
        prop_assert!(w.d().d().is_zero());
    }

    #[test]
    fn graded_leibniz(a in any_form(), b in (0usize..=1).prop_flat_map(form)) {
        let lhs = a.wedge(&b).d();
        let rhs = &a.d().wedge(&b) + &a.wedge(&b.d()).scale(&sign(a.degree()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_product_is_a_graded_derivation(a in form(1), b in form(2), v in field()) {
        prop_assert!(b.contract(&v).unwrap().contract(&v).unwrap().is_zero());
        let lhs = a.wedge(&b).contract(&v).unwrap();
        let rhs = &a.contract(&v).unwrap().wedge(&b) + &a.wedge(&b.contract(&v).unwrap()).scale(&sign(1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_on_functions_and_one_forms(f in poly(3), w in form(1), v in field()) {
        prop_assert_eq!(PolyForm::function(f.clone()).lie(&v), PolyForm::function(v.apply(&f)));
        // (L_v w)_i = v(w_i) + sum_j w_j d_i v_j
        let lie = w.lie(&v);
        for i in 0..NV {
            let mut expected = v.apply(&w.coeff(i));
            for j in 0..NV {
                expected += &(w.coeff(j) * v.component(j).derivative(i));
            }
            prop_assert_eq!(lie.coeff(i), expected);
        }
    }

    #[test]
    fn cartan_identities(a in form(1), b in form(2), v in field(), u in field()) {
        prop_assert_eq!(b.d().lie(&v), b.lie(&v).d());
        let lhs = a.wedge(&b).lie(&v);
        let rhs = &a.lie(&v).wedge(&b) + &a.wedge(&b.lie(&v));
        prop_assert_eq!(lhs, rhs);
        // [L_v, i_u] = i_[v,u]
        let commutator = &b.contract(&u).unwrap().lie(&v) - &b.lie(&v).contract(&u).unwrap();
        prop_assert_eq!(commutator, b.contract(&v.bracket(&u)).unwrap());
    }

    #[test]
    fn wedge_is_associative(a in form(1), b in form(1), c in any_form()) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn lie_derivative_is_the_first_order_flow(w in any_form(), v in field()) {
        // Pull back along x + eps v(x) over dual numbers; the eps part is L_v w.
        let images: Vec<MPoly<Dual<Rational>>> = (0..NV)
            .map(|i| {
                let mut x = MPoly::var(NV, i);
                x += &v.component(i).map_coeffs(|c| Dual::new(qi(0), c.clone()));
                x
            })
            .collect();
        let moved = w.map_coeffs(|c| Dual::constant(c.clone())).pullback(&images).unwrap();
        prop_assert_eq!(moved.map_coeffs(|x| x.re.clone()), w.clone());
        prop_assert_eq!(moved.map_coeffs(|x| x.eps.clone()), w.lie(&v));
    }
}
