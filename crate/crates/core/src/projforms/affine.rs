//! Passage between affine 1-forms on `K^n` (chart `x_n = 1`) and twisted
//! forms on `P^n`.

use super::TwistedOneForm;
use crate::error::{precondition, Error, Result};
use crate::extcalc::PolyForm;
use crate::mpoly::MPoly;
use crate::scalar::Field;

/// Lifts `p` to `n+1` variables and homogenizes to degree `deg` with `x_n`.
fn homogenize_poly<K: Field>(p: &MPoly<K>, deg: u32) -> Result<MPoly<K>> {
    let n = p.nvars();
    let mut out = MPoly::zero(n + 1);
    for (m, c) in p.terms() {
        let e = m.degree();
        if e > deg {
            return precondition(format!("term of degree {e} exceeds {deg}"));
        }
        out.add_term(m.with_exp(n, deg - e), c.clone());
    }
    Ok(out)
}

/// The twisted degree-`d` form whose restriction to `x_n = 1` is `affine`.
pub fn homogenize<K: Field>(affine: &PolyForm<K>, d: u32) -> Result<TwistedOneForm<K>> {
    if affine.degree() != 1 {
        return precondition("homogenize expects a 1-form");
    }
    let n = affine.nvars();
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut radial = MPoly::zero(n + 1);
    for i in 0..n {
        let a = homogenize_poly(&affine.coeff(i), d + 1)?;
        radial += &(&MPoly::var(n + 1, i) * &a);
        coeffs.push(a);
    }
    let last = (-radial)
        .exact_div(&MPoly::var(n + 1, n))
        .ok_or_else(|| Error::NotDivisible("radial correction is not divisible by the chart variable".into()))?;
    coeffs.push(last);
    TwistedOneForm::new(n, d, PolyForm::one_form(coeffs))
}

/// Restriction to the chart `x_n = 1`.
pub fn dehomogenize<K: Field>(w: &TwistedOneForm<K>) -> PolyForm<K> {
    let n = w.n();
    let mut images: Vec<MPoly<K>> = (0..n).map(|i| MPoly::var(n, i)).collect();
    images.push(MPoly::one(n));
    w.form().pullback(&images).expect("images share a ring")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse_poly;
    use crate::scalar::Rational;

    #[test]
    fn round_trip_through_the_chart() {
        let affine = PolyForm::one_form(
            ["5*x^2*z - 3*y^3", "2*x*y^2 - 5*y*z", "3*y^2 - 2*x^3"]
                .map(|s| parse_poly(s, 3).unwrap())
                .to_vec(),
        );
        let w: TwistedOneForm<Rational> = homogenize(&affine, 3).unwrap();
        assert!(w.is_integrable());
        assert_eq!(dehomogenize(&w), affine);
        let again = homogenize(&dehomogenize(&w), 3).unwrap();
        assert_eq!(again, w);
    }

    #[test]
    fn degree_overflow_is_rejected() {
        let affine = PolyForm::one_form(vec![
            parse_poly("x^5", 3).unwrap(),
            MPoly::zero(3),
            MPoly::zero(3),
        ]);
        assert!(homogenize::<Rational>(&affine, 3).is_err());
    }
}
