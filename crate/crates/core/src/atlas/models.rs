//! Explicit affine models of weighted-homogeneous foliations and exact
//! checks of their invariant curves and first integrals.

use num_traits::Zero;
use serde::Serialize;

use super::{ce_form, slog34_member};
use crate::error::{precondition, Result};
use crate::exactalg::Matrix;
use crate::extcalc::PolyForm;
use crate::mpoly::{parse_poly, MPoly};
use crate::projforms::{
    check_transversely_affine_relation, fix_algebra, homogenize, integrating_factor_dim, is_invariant,
    verify_first_integral, TwistedOneForm,
};
use crate::scalar::{qi, Rational};
use crate::torus::{is_eigenform, WeightData};

fn p3(s: &str) -> MPoly<Rational> {
    parse_poly(s, 3).expect("valid literal")
}

fn affine(coeffs: [&str; 3]) -> PolyForm<Rational> {
    PolyForm::one_form(coeffs.iter().map(|s| p3(s)).collect())
}

/// The scalar `c` with `a = c b`, if any.
pub fn proportionality(a: &PolyForm<Rational>, b: &PolyForm<Rational>) -> Option<Rational> {
    let (m, cb) = b.components().find_map(|(s, p)| p.leading_term().map(|(m, c)| ((*s, *m), c.clone())))?;
    let c = a.component(m.0).coeff(&m.1) / cb;
    (b.scale(&c) == *a).then_some(c)
}

/// Degree of the general leaf of a foliation with first integral
/// `f^q / g^p`: the common degree of `f^q` and `g^p`.
pub fn leaf_degree(f: &MPoly<Rational>, g: &MPoly<Rational>, p: u32, q: u32) -> Result<u32> {
    let (Some(df), Some(dg)) = (f.homogeneous_degree(), g.homogeneous_degree()) else {
        return precondition("leaf degree of non-homogeneous factors");
    };
    if q * df != p * dg {
        return precondition(format!("f^{q} and g^{p} have different degrees"));
    }
    Ok(q * df)
}

fn homog(p: &MPoly<Rational>) -> MPoly<Rational> {
    let deg = p.total_degree().unwrap_or(0);
    let mut out = MPoly::zero(4);
    for (m, c) in p.terms() {
        out.add_term(m.with_exp(3, deg - m.degree()), c.clone());
    }
    out
}

/// One exact verification on an explicit model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelCheck {
    pub model: String,
    pub statement: String,
    pub holds: bool,
}

impl ModelCheck {
    fn new(model: &WeightData, statement: impl Into<String>, holds: bool) -> Self {
        ModelCheck {
            model: format!("TM3{model}"),
            statement: statement.into(),
            holds,
        }
    }
}

fn wd(a: i64, b: i64, c: i64, n: i64) -> WeightData {
    WeightData::new(a, b, c, n).expect("valid weights")
}

/// An explicit affine model in the chart `x3 = 1`.
#[derive(Clone, Debug)]
pub struct AffineModel {
    pub weights: WeightData,
    pub form: PolyForm<Rational>,
}

impl AffineModel {
    pub fn twisted(&self) -> Result<TwistedOneForm<Rational>> {
        homogenize(&self.form, 3)
    }

    /// Integrable, and in `V_3(a,b,c;n)` after homogenizing.
    fn base_checks(&self) -> Result<Vec<ModelCheck>> {
        let w = self.twisted()?;
        Ok(vec![
            ModelCheck::new(&self.weights, "integrable", w.is_integrable()),
            ModelCheck::new(&self.weights, format!("eigenform for {}", self.weights), is_eigenform(w.form(), &self.weights)),
        ])
    }
}

pub fn model_2_3_5_11() -> AffineModel {
    AffineModel {
        weights: wd(2, 3, 5, 11),
        form: affine(["5*x^2*z - 3*y^3", "2*x*y^2 - 5*y*z", "3*y^2 - 2*x^3"]),
    }
}

pub fn model_1_2_5_7() -> AffineModel {
    AffineModel {
        weights: wd(1, 2, 5, 7),
        form: affine(["5*x*z + 2*y^3", "5*z - x*y^2", "-2*y - x^2"]),
    }
}

pub fn model_2_4_5_14() -> AffineModel {
    AffineModel {
        weights: wd(2, 4, 5, 14),
        form: affine(["5*x*z^2 + 2*y^3", "5*z^2 - x*y^2", "-4*y*z - 2*x^2*z"]),
    }
}

pub fn model_1_3_4_7() -> AffineModel {
    AffineModel {
        weights: wd(1, 3, 4, 7),
        form: affine(["3*y^2 + 4*x^2*z", "4*z - x*y", "-3*y - x^3"]),
    }
}

pub fn model_1_3_5_8() -> AffineModel {
    AffineModel {
        weights: wd(1, 3, 5, 8),
        form: affine(["3*x*y^2 + 5*x^2*z", "5*z - x^2*y", "-3*y - x^3"]),
    }
}

/// The quintic paired with `g = x^2 + 2y`; `z_power` is 1 or 2.
fn quintic_1_2_5(z_power: u32) -> MPoly<Rational> {
    p3(&format!("x^5 + 5*x^3*y + 15/2*x*y^2 - 15/2*z^{z_power}"))
}

/// Factors of the first integral `f^5/g^3` of the (1,3,5;8) model.
pub fn first_integral_1_3_5_8() -> (MPoly<Rational>, MPoly<Rational>) {
    (p3("x^3 + 3*y"), p3("x^5 + 5*x^2*y - 10*z"))
}

pub fn leaf_degree_1_3_5_8() -> Result<u32> {
    let (f, g) = first_integral_1_3_5_8();
    leaf_degree(&homog(&f), &homog(&g), 3, 5)
}

/// Invariant curve of the additive model and its affine relation constant.
pub const CUSP_RELATION: (i64, i64) = (11, 6);

/// Every recorded verification on the explicit models.
pub fn explicit_model_checks() -> Result<Vec<ModelCheck>> {
    let mut out = Vec::new();

    let m = model_2_3_5_11();
    out.extend(m.base_checks()?);
    let cusp = p3("2*x^3 - 3*y^2");
    out.push(ModelCheck::new(&m.weights, "2x^3 - 3y^2 is invariant", is_invariant(&m.form, &cusp)?));
    let s = Rational::new(CUSP_RELATION.0.into(), CUSP_RELATION.1.into());
    out.push(ModelCheck::new(
        &m.weights,
        format!("P dw = {s} dP ^ w for P = 2x^3 - 3y^2"),
        check_transversely_affine_relation(&m.form, &cusp, &s)?,
    ));
    out.push(ModelCheck::new(
        &m.weights,
        "no polynomial integrating factor",
        integrating_factor_dim(&m.twisted()?) == 0,
    ));

    let g = p3("x^2 + 2*y");
    let m = model_1_2_5_7();
    out.extend(m.base_checks()?);
    out.push(ModelCheck::new(
        &m.weights,
        "f^2/g^5 is a first integral",
        verify_first_integral(&m.form, &quintic_1_2_5(1), &g, 5, 2)?,
    ));

    let m2 = model_2_4_5_14();
    out.extend(m2.base_checks()?);
    out.push(ModelCheck::new(
        &m2.weights,
        "f^2/g^5 is a first integral",
        verify_first_integral(&m2.form, &quintic_1_2_5(2), &g, 5, 2)?,
    ));
    let square_z = m.form.pullback(&[p3("x"), p3("y"), p3("z^2")])?;
    out.push(ModelCheck::new(&m2.weights, "pull-back of the (1,2,5;7) model under z -> z^2", square_z == m2.form));

    let m = model_1_3_4_7();
    out.extend(m.base_checks()?);
    let (f, g) = (p3("x^3 + 3*y"), p3("x^4 + 4*x*y - 4*z"));
    let lr = crate::projforms::log_ratio_form(&g, &f, 4, 3);
    out.push(ModelCheck::new(&m.weights, "multiple of 3f dg - 4g df", proportionality(&m.form, &lr).is_some()));
    let ce = ce_form().form().pullback(&[p3("2*z"), p3("y"), MPoly::zero(3), p3("x"), MPoly::one(3)])?;
    out.push(ModelCheck::new(
        &m.weights,
        "substitution (2z, y, 0, x, 1) in the P^4 form gives a multiple",
        proportionality(&ce, &m.form).is_some_and(|c| !c.is_zero()),
    ));
    let phi = Matrix::from_rows(
        4,
        [[0, 0, 2, 0], [0, 1, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| qi(x)).collect())
            .collect(),
    );
    out.push(ModelCheck::new(
        &m.weights,
        "linear pull-back of the P^4 form is a multiple of the model",
        proportionality(slog34_member(&phi)?.form(), m.twisted()?.form()).is_some_and(|c| !c.is_zero()),
    ));

    let m = model_1_3_5_8();
    out.extend(m.base_checks()?);
    let (f, g) = first_integral_1_3_5_8();
    out.push(ModelCheck::new(&m.weights, "f^5/g^3 is a first integral", verify_first_integral(&m.form, &f, &g, 3, 5)?));
    out.push(ModelCheck::new(&m.weights, "general leaf of degree 15", leaf_degree_1_3_5_8()? == 15));
    let w = m.twisted()?;
    out.push(ModelCheck::new(&m.weights, "fix algebra of dimension 1", fix_algebra(&w).len() == 1));
    out.push(ModelCheck::new(&m.weights, "no polynomial integrating factor", integrating_factor_dim(&w) == 0));
    Ok(out)
}
