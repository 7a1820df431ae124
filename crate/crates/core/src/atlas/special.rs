//! Logarithmic forms whose zero divisor has codimension one: the pull-backs
//! of a degree-three foliation on `P^4` given by a quartic and a cubic, and
//! the quadric-quintic family divisible by a double plane.

use super::{linear_images, OrbitFamily, Parameterization};
use crate::error::{precondition, Error, Result};
use crate::exactalg::Matrix;
use crate::extcalc::PolyForm;
use crate::linmap::assemble;
use crate::mpoly::{parse_poly, MPoly, Monomial};
use crate::projforms::{gl_basis, log_ratio_form, trace_row, TwistedOneForm};
use crate::scalar::{qi, Rational, Scalar};

/// The quartic `A` on `P^4`.
pub fn ce_quartic() -> MPoly<Rational> {
    parse_poly("x0*x4^3 - (2*x1*x3 + x2^2)*x4^2 + 2*x2*x3^2*x4 - 1/2*x3^4", 5).expect("valid literal")
}

/// The cubic `B` on `P^4`.
pub fn ce_cubic() -> MPoly<Rational> {
    parse_poly("x1*x4^2 - x2*x3*x4 + 1/3*x3^3", 5).expect("valid literal")
}

/// Divides every coefficient of `form` by `p`.
fn divide_form(form: &PolyForm<Rational>, p: &MPoly<Rational>) -> Result<PolyForm<Rational>> {
    let coeffs = form
        .coeffs()
        .iter()
        .map(|c| {
            c.exact_div(p)
                .ok_or_else(|| Error::NotDivisible(format!("coefficient {c} by {p}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyForm::one_form(coeffs))
}

/// `(3 B dA - 4 A dB) / x4^2`, a degree-three foliation on `P^4` with first
/// integral `A^3 / B^4`.
pub fn ce_form() -> TwistedOneForm<Rational> {
    let x4sq = MPoly::var(5, 4).pow(2);
    let cleared = log_ratio_form(&ce_quartic(), &ce_cubic(), 4, 3);
    let form = divide_form(&cleared, &x4sq).expect("double hyperplane in the zero divisor");
    TwistedOneForm::new(4, 3, form).expect("twisted form")
}

fn check_injective(phi: &Matrix<Rational>) -> Result<()> {
    if phi.nrows() != 5 || phi.ncols() != 4 {
        return precondition("expected a 5x4 matrix");
    }
    if phi.rank() != 4 {
        return precondition("linear map P^3 -> P^4 must have rank 4");
    }
    Ok(())
}

/// Pull-back of [`ce_form`] under the linear map with matrix `phi`.
pub fn slog34_member(phi: &Matrix<Rational>) -> Result<TwistedOneForm<Rational>> {
    check_injective(phi)?;
    let entries: Vec<Rational> = phi.rows_iter().flatten().cloned().collect();
    let form = ce_form().form().pullback(&linear_images(5, 4, &entries))?;
    TwistedOneForm::new(3, 3, form)
}

/// `A o phi` and `B o phi`, the pulled-back first integral factors.
pub fn slog34_factors(phi: &Matrix<Rational>) -> Result<(MPoly<Rational>, MPoly<Rational>)> {
    check_injective(phi)?;
    let entries: Vec<Rational> = phi.rows_iter().flatten().cloned().collect();
    let images = linear_images(5, 4, &entries);
    Ok((ce_quartic().substitute(&images)?, ce_cubic().substitute(&images)?))
}

/// Linear pull-backs of [`ce_form`], parameterized by the 20 matrix entries.
pub struct Slog34Family {
    form: PolyForm<Rational>,
}

impl Default for Slog34Family {
    fn default() -> Self {
        Slog34Family {
            form: ce_form().into_form(),
        }
    }
}

impl Parameterization for Slog34Family {
    fn n(&self) -> usize {
        3
    }

    fn d(&self) -> u32 {
        3
    }

    fn num_params(&self) -> usize {
        20
    }

    fn eval<K: Scalar>(&self, params: &[K]) -> PolyForm<K> {
        self.form
            .map_coeffs(K::from_rational)
            .pullback(&linear_images(5, 4, params))
            .expect("five images in four variables")
    }
}

/// The quadric `g = x0^2 - 2 x1 x3`.
pub fn slog25_quadric() -> MPoly<Rational> {
    parse_poly("x0^2 - 2*x1*x3", 4).expect("valid literal")
}

/// The eleven quintics `f` for which `x3^2` divides `5 f dg - 2 g df`.
pub fn slog25_quintics() -> Vec<MPoly<Rational>> {
    [
        "-5*x0^3*x1*x3 + x0^5 + 15/2*x0*x1^2*x3^2",
        "x0*x3^4",
        "x0*x2*x3^3",
        "x0*x1*x3^3",
        "x0^2*x3^3",
        "x3^5",
        "x2*x3^4",
        "x2^2*x3^3",
        "x1*x3^4",
        "x1*x2*x3^3",
        "x1^2*x3^3",
    ]
    .iter()
    .map(|s| parse_poly(s, 4).expect("valid literal"))
    .collect()
}

fn slog25_cleared(f: &MPoly<Rational>) -> PolyForm<Rational> {
    log_ratio_form(&slog25_quadric(), f, 2, 5)
}

/// `(5 f dg - 2 g df) / x3^2` for `f = sum c_k f_k` over [`slog25_quintics`].
pub fn slog25_member(c: &[Rational]) -> Result<TwistedOneForm<Rational>> {
    let family = slog25_quintics();
    if c.len() != family.len() {
        return precondition(format!("expected {} constants", family.len()));
    }
    let mut f = MPoly::zero(4);
    for (fk, ck) in family.iter().zip(c) {
        f += &fk.scale(ck);
    }
    quintic_member(&f)
}

/// `(5 f dg - 2 g df) / x3^2` for an arbitrary quintic; errors when the
/// division leaves a remainder.
pub fn quintic_member(f: &MPoly<Rational>) -> Result<TwistedOneForm<Rational>> {
    if f.homogeneous_degree() != Some(5) {
        return precondition("f must be a quintic");
    }
    let x3sq = MPoly::var(4, 3).pow(2);
    TwistedOneForm::new(3, 3, divide_form(&slog25_cleared(f), &x3sq)?)
}

/// All quintics `f` with `x3^2 | 5 f dg - 2 g df`, solved directly over the
/// 56 quintic monomials.
pub fn divisible_quintics() -> Vec<MPoly<Rational>> {
    let monos = Monomial::all_of_degree(4, 5);
    // Coefficients of the cleared form on monomials with x3-exponent below 2.
    let low: Vec<Monomial> = Monomial::all_of_degree(4, 6)
        .into_iter()
        .filter(|m| m.exp(3) < 2)
        .collect();
    let m = assemble(4 * low.len(), &monos, |mono| {
        let form = slog25_cleared(&MPoly::term(4, *mono, qi(1)));
        (0..4)
            .flat_map(|i| {
                let c = form.coeff(i);
                low.iter().map(move |m| c.coeff(m)).collect::<Vec<_>>()
            })
            .collect()
    });
    m.kernel_basis()
        .into_iter()
        .map(|v| MPoly::from_terms(4, monos.iter().copied().zip(v)))
        .collect()
}

/// Dimension of the projective linear fields preserving `{h = 0}`, i.e.
/// with `v(h)` a multiple of `h`.
pub fn hypersurface_stabilizer_dim(h: &MPoly<Rational>) -> Result<usize> {
    let nv = h.nvars();
    let Some(deg) = h.homogeneous_degree() else {
        return precondition("stabilizer of a non-homogeneous polynomial");
    };
    let monos = Monomial::all_of_degree(nv, deg);
    let coords = |p: &MPoly<Rational>| monos.iter().map(|m| p.coeff(m)).collect::<Vec<_>>();
    let mut cols: Vec<Vec<Rational>> = gl_basis::<Rational>(nv).iter().map(|v| coords(&v.apply(h))).collect();
    cols.push(coords(&-h));
    let mut m = Matrix::from_columns(monos.len(), &cols);
    let mut tr = trace_row::<Rational>(nv);
    tr.push(qi(0));
    m.push_row(tr);
    Ok(m.nullity())
}

/// `GL(4)`-orbit of the quadric-quintic family: 11 constants then 16 entries.
pub fn slog25_family() -> OrbitFamily {
    let members: Vec<TwistedOneForm<Rational>> = (0..11)
        .map(|k| {
            let mut c = vec![qi(0); 11];
            c[k] = qi(1);
            slog25_member(&c).expect("family member")
        })
        .collect();
    OrbitFamily::new(&members).expect("nonempty family")
}
