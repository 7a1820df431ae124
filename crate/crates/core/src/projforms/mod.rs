//! Twisted 1-forms on projective space: homogeneous 1-forms on `K^(n+1)`
//! with coefficients of degree `d+1` killed by the radial field, and the
//! per-form analyses (integrability, tangent space, integrating factors,
//! symmetry algebras, invariant hypersurfaces).

mod affine;

use rand::Rng;
use rayon::prelude::*;

pub use affine::{dehomogenize, homogenize};

use crate::error::{precondition, Error, Result};
use crate::exactalg::Matrix;
use crate::extcalc::{PolyForm, PolyVField};
use crate::linmap::assemble;
use crate::mpoly::{binomial, gcd_all, MPoly, Monomial};
use crate::rng;
use crate::scalar::{Field, Rational, Scalar};

#[derive(Clone, PartialEq)]
pub struct TwistedOneForm<K> {
    n: usize,
    d: u32,
    form: PolyForm<K>,
}

impl<K: Scalar> TwistedOneForm<K> {
    /// Validates degree, homogeneity and radial annihilation.
    pub fn new(n: usize, d: u32, form: PolyForm<K>) -> Result<Self> {
        if form.nvars() != n + 1 || form.degree() != 1 {
            return precondition(format!(
                "expected a 1-form in {} variables, got a {}-form in {}",
                n + 1,
                form.degree(),
                form.nvars()
            ));
        }
        if let Some(bad) = form
            .coefficients()
            .find(|c| c.homogeneous_degree() != Some(d + 1))
        {
            return precondition(format!(
                "coefficient {bad} is not homogeneous of degree {}",
                d + 1
            ));
        }
        let w = TwistedOneForm { n, d, form };
        if !w.radial_contraction().is_zero() {
            return precondition("form is not annihilated by the radial field");
        }
        Ok(w)
    }

    pub(crate) fn new_unchecked(n: usize, d: u32, form: PolyForm<K>) -> Self {
        TwistedOneForm { n, d, form }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn form(&self) -> &PolyForm<K> {
        &self.form
    }

    pub fn into_form(self) -> PolyForm<K> {
        self.form
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    pub fn radial_contraction(&self) -> MPoly<K> {
        self.form
            .contract(&PolyVField::radial(self.nvars()))
            .expect("1-form")
            .component(0)
    }

    pub fn scale(&self, c: &K) -> Self {
        TwistedOneForm::new_unchecked(self.n, self.d, self.form.scale(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.d), (other.n, other.d), "form space mismatch");
        TwistedOneForm::new_unchecked(self.n, self.d, &self.form + &other.form)
    }

    /// Coordinates of the coefficient tuple in the monomial basis.
    pub fn coeff_coords(&self) -> Vec<K> {
        self.form.coords(self.d + 1)
    }

    /// Whether `omega ^ d omega = 0`.
    pub fn is_integrable(&self) -> bool {
        if self.nvars() < 3 {
            return true;
        }
        self.form.wedge(&self.form.d()).is_zero()
    }
}

impl<K: Scalar> std::fmt::Debug for TwistedOneForm<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TwistedOneForm[n={}, d={}]({})", self.n, self.d, self.form)
    }
}

/// Basis of the space of twisted 1-forms of degree `d` on `P^n`.
#[derive(Clone)]
pub struct FormSpaceBasis<K> {
    n: usize,
    d: u32,
    basis: Vec<TwistedOneForm<K>>,
    /// For basis vector `k`, a coefficient coordinate where it has entry 1
    /// and every other basis vector has entry 0.
    unit_coords: Vec<usize>,
}

/// Expected size of the basis, from the Euler sequence.
pub fn space_dim(n: usize, d: u32) -> usize {
    let n64 = n as u64;
    let d64 = d as u64;
    ((n64 + 1) * binomial(n64 + d64 + 1, n64) - binomial(n64 + d64 + 2, n64)) as usize
}

impl<K: Field> FormSpaceBasis<K> {
    /// Kernel of the radial contraction on `(n+1)`-tuples of degree-`(d+1)` polynomials.
    pub fn new(n: usize, d: u32) -> Self {
        let nv = n + 1;
        let monos = Monomial::all_of_degree(nv, d + 1);
        let targets = Monomial::all_of_degree(nv, d + 2);
        let target_pos: std::collections::HashMap<Monomial, usize> =
            targets.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut m = Matrix::<K>::zeros(targets.len(), nv * monos.len());
        for i in 0..nv {
            for (j, mono) in monos.iter().enumerate() {
                let row = target_pos[&mono.mul(&Monomial::var(i))];
                m[(row, i * monos.len() + j)] = K::one();
            }
        }
        let kernel = m.kernel_basis();
        let unit_coords = unit_columns(&kernel);
        let basis = kernel
            .iter()
            .map(|v| TwistedOneForm::new_unchecked(n, d, PolyForm::from_coords(nv, 1, d + 1, v)))
            .collect();
        FormSpaceBasis {
            n,
            d,
            basis,
            unit_coords,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn forms(&self) -> &[TwistedOneForm<K>] {
        &self.basis
    }

    /// Coordinates of a twisted form in this basis.
    pub fn to_coords(&self, w: &TwistedOneForm<K>) -> Vec<K> {
        let c = w.coeff_coords();
        self.unit_coords.iter().map(|&j| c[j].clone()).collect()
    }

    pub fn from_coords(&self, c: &[K]) -> TwistedOneForm<K> {
        combine(self.n, self.d, &self.basis, c)
    }
}

/// Linear combination of forms sharing `(n, d)`.
pub fn combine<K: Scalar>(n: usize, d: u32, forms: &[TwistedOneForm<K>], c: &[K]) -> TwistedOneForm<K> {
    assert_eq!(forms.len(), c.len(), "coefficient count");
    let mut acc = PolyForm::zero(n + 1, 1);
    for (f, x) in forms.iter().zip(c) {
        if !x.is_zero() {
            acc = &acc + &f.form.scale(x);
        }
    }
    TwistedOneForm::new_unchecked(n, d, acc)
}

/// Random integer combination of `forms` with nonzero coefficients in `[-99, 99]`.
pub fn random_combination<K: Scalar>(
    n: usize,
    d: u32,
    forms: &[TwistedOneForm<K>],
    rng: &mut impl Rng,
) -> TwistedOneForm<K> {
    let c: Vec<K> = forms.iter().map(|_| K::from_i64(rng::nonzero_coeff(rng))).collect();
    combine(n, d, forms, &c)
}

pub(crate) fn unit_columns<K: Scalar>(vectors: &[Vec<K>]) -> Vec<usize> {
    let len = vectors.first().map_or(0, |v| v.len());
    vectors
        .iter()
        .enumerate()
        .map(|(k, v)| {
            (0..len)
                .find(|&j| {
                    v[j] == K::one()
                        && vectors
                            .iter()
                            .enumerate()
                            .all(|(l, u)| l == k || u[j].is_zero())
                })
                .expect("normal-form kernel basis has unit columns")
        })
        .collect()
}

pub fn space_basis(n: usize, d: u32) -> FormSpaceBasis<Rational> {
    FormSpaceBasis::new(n, d)
}

/// Gcd of the coefficients: the unit polynomial exactly when the singular
/// set has codimension at least two.
pub fn codim_one_zero_divisor(w: &TwistedOneForm<Rational>) -> Result<MPoly<Rational>> {
    if w.is_zero() {
        return precondition("zero form has no zero divisor");
    }
    Ok(gcd_all(w.nvars(), w.form.coefficients()))
}

/// The linearized integrability map `w1 -> w ^ d w1 + w1 ^ d w` on basis coordinates.
pub fn tangent_matrix<K: Field>(w: &TwistedOneForm<K>, basis: &FormSpaceBasis<K>) -> Matrix<K> {
    let nv = w.nvars();
    let dw = w.form.d();
    let deg = 2 * w.d + 1;
    let rows = crate::extcalc::subsets(nv, 3).len() * Monomial::all_of_degree(nv, deg).len();
    assemble(rows, basis.forms(), |b| {
        let img = &w.form.wedge(&b.form.d()) + &b.form.wedge(&dw);
        img.coords(deg)
    })
}

/// Dimension of the Zariski tangent space of the foliation scheme at `[w]`.
pub fn zariski_tangent_dim<K: Field>(w: &TwistedOneForm<K>) -> Result<usize> {
    if w.nvars() < 4 {
        return precondition("tangent space computation needs n >= 3");
    }
    if !w.is_integrable() {
        return Err(Error::Precondition("form is not integrable".into()));
    }
    let basis = FormSpaceBasis::new(w.n, w.d);
    Ok(tangent_matrix(w, &basis).nullity() - 1)
}

/// Minimum of [`zariski_tangent_dim`] over `trials` random members of `span`,
/// the generic value by semicontinuity.
pub fn sampled_zariski_dim(
    span: &[TwistedOneForm<Rational>],
    seed: u64,
    label: &str,
    trials: usize,
) -> Result<usize> {
    let Some(first) = span.first() else {
        return precondition("empty family");
    };
    let (n, d) = (first.n, first.d);
    let dims: Vec<usize> = (0..trials.max(1))
        .into_par_iter()
        .map(|t| {
            let w = random_combination(n, d, span, &mut rng::stream(seed, &format!("{label}/{t}")));
            zariski_tangent_dim(&w)
        })
        .collect::<Result<_>>()?;
    Ok(dims.into_iter().min().expect("at least one trial"))
}

/// Matrix of `P -> dP ^ w - P dw` on degree-`(d+2)` polynomials.
pub fn integrating_factor_matrix<K: Field>(w: &TwistedOneForm<K>) -> (Vec<Monomial>, Matrix<K>) {
    let nv = w.nvars();
    let monos = Monomial::all_of_degree(nv, w.d + 2);
    let dw = w.form.d();
    let deg = 2 * w.d + 2;
    let rows = crate::extcalc::subsets(nv, 2).len() * Monomial::all_of_degree(nv, deg).len();
    let m = assemble(rows, &monos, |mono| {
        let p = MPoly::term(nv, *mono, K::one());
        let img = &PolyForm::function(p.clone()).d().wedge(&w.form) - &dw.mul_poly(&p);
        img.coords(deg)
    });
    (monos, m)
}

/// Basis of the polynomial integrating factors of degree `d+2`.
pub fn integrating_factor_kernel<K: Field>(w: &TwistedOneForm<K>) -> Vec<MPoly<K>> {
    let nv = w.nvars();
    let (monos, m) = integrating_factor_matrix(w);
    m.kernel_basis()
        .into_iter()
        .map(|v| MPoly::from_terms(nv, monos.iter().copied().zip(v)))
        .collect()
}

pub fn integrating_factor_dim<K: Field>(w: &TwistedOneForm<K>) -> usize {
    integrating_factor_matrix(w).1.nullity()
}

/// Elementary linear fields `x_j d/dx_i`, indexed `i * nvars + j`.
pub fn gl_basis<K: Scalar>(nvars: usize) -> Vec<PolyVField<K>> {
    let mut out = Vec::with_capacity(nvars * nvars);
    for i in 0..nvars {
        for j in 0..nvars {
            let mut comps = vec![MPoly::zero(nvars); nvars];
            comps[i] = MPoly::var(nvars, j);
            out.push(PolyVField::new(comps));
        }
    }
    out
}

/// The row `trace(v) = 0`, a complement to the radial direction.
pub fn trace_row<K: Scalar>(nvars: usize) -> Vec<K> {
    let mut row = vec![K::zero(); nvars * nvars];
    for i in 0..nvars {
        row[i * nvars + i] = K::one();
    }
    row
}

/// Linear field from coordinates in [`gl_basis`].
pub fn gl_field<K: Scalar>(nvars: usize, c: &[K]) -> PolyVField<K> {
    let m: Vec<Vec<K>> = (0..nvars)
        .map(|i| c[i * nvars..(i + 1) * nvars].to_vec())
        .collect();
    PolyVField::linear(&m)
}

fn projective_fields<K: Field>(nvars: usize, mut m: Matrix<K>) -> Vec<PolyVField<K>> {
    m.push_row(trace_row(nvars));
    m.kernel_basis()
        .iter()
        .map(|c| gl_field(nvars, c))
        .collect()
}

/// Projective vector fields `v` (linear fields modulo the radial one) with `i_v w = 0`.
pub fn fix_algebra<K: Field>(w: &TwistedOneForm<K>) -> Vec<PolyVField<K>> {
    let nv = w.nvars();
    let deg = w.d + 2;
    let rows = Monomial::all_of_degree(nv, deg).len();
    let m = assemble(rows, &gl_basis::<K>(nv), |v| {
        w.form.contract(v).expect("1-form").coords(deg)
    });
    projective_fields(nv, m)
}

/// Projective vector fields `v` with `L_v w ^ w = 0`.
pub fn aut_algebra<K: Field>(w: &TwistedOneForm<K>) -> Vec<PolyVField<K>> {
    let nv = w.nvars();
    let deg = 2 * w.d + 2;
    let rows = crate::extcalc::subsets(nv, 2).len() * Monomial::all_of_degree(nv, deg).len();
    let m = assemble(rows, &gl_basis::<K>(nv), |v| {
        w.form.lie(v).wedge(&w.form).coords(deg)
    });
    projective_fields(nv, m)
}

/// Dimension of `{ v : [v, v0] ^ v0 = 0 }` among projective vector fields,
/// for a linear field `v0` on `K^4` read as a field on `P^3`.
pub fn projective_normalizer_dim<K: Field>(v0: &PolyVField<K>) -> usize {
    let nv = v0.nvars();
    let as_form = |v: &PolyVField<K>| PolyForm::one_form(v.components().to_vec());
    let fixed = as_form(v0).wedge(&as_form(&PolyVField::radial(nv)));
    let rows = crate::extcalc::subsets(nv, 3).len() * Monomial::all_of_degree(nv, 3).len();
    let m = assemble(rows, &gl_basis::<K>(nv), |v| as_form(&v.bracket(v0)).wedge(&fixed).coords(3));
    projective_fields(nv, m).len()
}

/// Whether `{P = 0}` is invariant: every coefficient of `dP ^ w` is divisible by `P`.
pub fn is_invariant<K: Field>(w: &PolyForm<K>, p: &MPoly<K>) -> Result<bool> {
    if p.is_zero() {
        return precondition("invariance of the zero polynomial");
    }
    let dp_w = PolyForm::function(p.clone()).d().wedge(w);
    let invariant = dp_w.coefficients().all(|c| c.is_divisible_by(p));
    Ok(invariant)
}

/// Whether `f^q / g^p` is a first integral, i.e. `w ^ (q g df - p f dg) = 0`.
pub fn verify_first_integral<K: Field>(
    w: &PolyForm<K>,
    f: &MPoly<K>,
    g: &MPoly<K>,
    p: i64,
    q: i64,
) -> Result<bool> {
    if f.is_zero() || g.is_zero() {
        return precondition("first integral with a zero factor");
    }
    Ok(w.wedge(&log_ratio_form(f, g, p, q)).is_zero())
}

/// The polynomial 1-form `q g df - p f dg`.
pub fn log_ratio_form<K: Scalar>(f: &MPoly<K>, g: &MPoly<K>, p: i64, q: i64) -> PolyForm<K> {
    let df = PolyForm::function(f.clone()).d();
    let dg = PolyForm::function(g.clone()).d();
    &df.mul_poly(&g.scale(&K::from_i64(q))) - &dg.mul_poly(&f.scale(&K::from_i64(p)))
}

/// Whether `P dw = s dP ^ w`.
pub fn check_transversely_affine_relation<K: Field>(
    w: &PolyForm<K>,
    p: &MPoly<K>,
    s: &K,
) -> Result<bool> {
    if p.is_zero() {
        return precondition("relation with P = 0");
    }
    let lhs = w.d().mul_poly(p);
    let rhs = PolyForm::function(p.clone()).d().wedge(w).scale(s);
    Ok(lhs == rhs)
}
