use std::io::Write;
use std::path::Path;

use foliage::extcalc::{form_from_json, PolyForm};
use foliage::mpoly::is_unit_gcd;
use foliage::projforms::{
    aut_algebra, codim_one_zero_divisor, dehomogenize, fix_algebra, integrating_factor_dim, zariski_tangent_dim,
    TwistedOneForm,
};
use foliage::torus::{char_monomials, chi_collinear, chi_interior, chi_plane};
use foliage::Rational;
use serde::Serialize;

use crate::{write_json, CliConfig, CliError, CliResult, OutputFormat, EXIT_OK};

/// Characteristic monomials in the chart `x3 = 1` and their geometry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiSummary {
    pub points: Vec<[i64; 3]>,
    pub collinear: bool,
    pub interior: bool,
    /// `[a, b, c, n]` of the plane `a i + b j + c k = n` through the points.
    pub plane: Option<[i64; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub n: usize,
    pub d: u32,
    pub integrable: bool,
    /// Gcd of the coefficients.
    pub gcd: String,
    pub codim_two: bool,
    /// Absent for non-integrable forms.
    pub zdim: Option<usize>,
    pub fix_dim: usize,
    pub aut_dim: usize,
    pub integrating_factor_dim: usize,
    pub chi: Option<ChiSummary>,
}

/// Reads a twisted 1-form from the JSON interchange format.
pub fn read_form(path: &Path) -> CliResult<TwistedOneForm<Rational>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    twisted_from(form_from_json(&value)?)
}

fn twisted_from(form: PolyForm<Rational>) -> CliResult<TwistedOneForm<Rational>> {
    if form.degree() != 1 {
        return Err(CliError::Input(format!("expected a 1-form, got a {}-form", form.degree())));
    }
    if form.nvars() < 2 {
        return Err(CliError::Input("a projective form needs at least two variables".into()));
    }
    let coeff_degree = form
        .coeffs()
        .iter()
        .find(|c| !c.is_zero())
        .and_then(|c| c.homogeneous_degree())
        .ok_or_else(|| CliError::Input("form is zero or has a non-homogeneous coefficient".into()))?;
    if coeff_degree == 0 {
        return Err(CliError::Input("coefficients of a twisted form have positive degree".into()));
    }
    Ok(TwistedOneForm::new(form.nvars() - 1, coeff_degree - 1, form)?)
}

pub fn analyze(w: &TwistedOneForm<Rational>) -> CliResult<Analysis> {
    let integrable = w.is_integrable();
    let g = codim_one_zero_divisor(w)?;
    let zdim = if integrable && w.n() >= 3 {
        Some(zariski_tangent_dim(w)?)
    } else {
        None
    };
    let chi = if w.n() == 3 {
        let s = char_monomials(&dehomogenize(w))?;
        Some(ChiSummary {
            points: s.points().copied().collect(),
            collinear: chi_collinear(&s),
            interior: chi_interior(w.d(), &s),
            plane: chi_plane(&s),
        })
    } else {
        None
    };
    Ok(Analysis {
        n: w.n(),
        d: w.d(),
        integrable,
        codim_two: is_unit_gcd(&g),
        gcd: g.to_string(),
        zdim,
        fix_dim: fix_algebra(w).len(),
        aut_dim: aut_algebra(w).len(),
        integrating_factor_dim: integrating_factor_dim(w),
        chi,
    })
}

fn write_text(a: &Analysis, out: &mut dyn Write) -> CliResult<()> {
    writeln!(out, "form of degree {} on P^{}", a.d, a.n)?;
    writeln!(out, "integrable: {}", a.integrable)?;
    writeln!(out, "gcd of coefficients: {}", a.gcd)?;
    writeln!(out, "Zariski tangent dimension: {}", a.zdim.map_or("-".into(), |z| z.to_string()))?;
    writeln!(out, "fix algebra: {}", a.fix_dim)?;
    writeln!(out, "aut algebra: {}", a.aut_dim)?;
    writeln!(out, "integrating factors: {}", a.integrating_factor_dim)?;
    if let Some(chi) = &a.chi {
        let pts: Vec<String> = chi.points.iter().map(|p| format!("({},{},{})", p[0], p[1], p[2])).collect();
        writeln!(out, "chi: {}", pts.join(" "))?;
        writeln!(out, "chi collinear: {}", chi.collinear)?;
        writeln!(out, "chi meets the interior: {}", chi.interior)?;
        match chi.plane {
            Some([x, y, z, n]) => writeln!(out, "chi plane: {x}i + {y}j + {z}k = {n}")?,
            None => writeln!(out, "chi plane: -")?,
        }
    }
    Ok(())
}

fn write_csv(a: &Analysis, out: &mut dyn Write) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["key", "value"])?;
    let show = |v: Option<String>| v.unwrap_or_default();
    let mut rows = vec![
        ("n", a.n.to_string()),
        ("d", a.d.to_string()),
        ("integrable", a.integrable.to_string()),
        ("gcd", a.gcd.clone()),
        ("codim_two", a.codim_two.to_string()),
        ("zdim", show(a.zdim.map(|z| z.to_string()))),
        ("fix_dim", a.fix_dim.to_string()),
        ("aut_dim", a.aut_dim.to_string()),
        ("integrating_factor_dim", a.integrating_factor_dim.to_string()),
    ];
    if let Some(chi) = &a.chi {
        rows.push(("chi_collinear", chi.collinear.to_string()));
        rows.push(("chi_interior", chi.interior.to_string()));
        rows.push(("chi_plane", show(chi.plane.map(|p| format!("{p:?}")))));
    }
    for (k, v) in rows {
        w.write_record([k, v.as_str()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_analyze(config: &CliConfig, path: &Path, out: &mut dyn Write) -> CliResult<i32> {
    let a = analyze(&read_form(path)?)?;
    match config.output {
        OutputFormat::Json => write_json(out, &a)?,
        OutputFormat::Csv => write_csv(&a, out)?,
        OutputFormat::Text => write_text(&a, out)?,
    }
    Ok(EXIT_OK)
}
