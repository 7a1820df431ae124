//! The component catalog of degree-three foliations on `P^3`: members of the
//! logarithmic, special logarithmic and linear pull-back families, their
//! dimensions by generic rank and the table report.

mod models;
mod report;
mod special;

use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use models::*;
pub use report::*;
pub use special::*;

use crate::error::{precondition, Error, Result};
use crate::exactalg::Matrix;
use crate::extcalc::PolyForm;
use crate::mpoly::{MPoly, Monomial};
use crate::projforms::{zariski_tangent_dim, FormSpaceBasis, TwistedOneForm};
use crate::rng;
use crate::scalar::{qi, Dual, Rational, Scalar};

/// Degrees `d_1 <= ... <= d_k` of the factors of a logarithmic form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LogPartition {
    parts: Vec<u32>,
}

impl LogPartition {
    pub fn new(parts: &[u32]) -> Result<Self> {
        if parts.len() < 2 || parts.contains(&0) {
            return precondition(format!("{parts:?} is not a partition into at least two positive parts"));
        }
        let mut parts = parts.to_vec();
        parts.sort_unstable();
        Ok(LogPartition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Foliation degree `sum d_i - 2`.
    pub fn degree(&self) -> Result<u32> {
        let s: u32 = self.parts.iter().sum();
        s.checked_sub(2).ok_or_else(|| Error::Precondition(format!("partition {self} has sum below 2")))
    }
}

impl fmt::Display for LogPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `sum_i lambda_i (prod_{j != i} f_j) df_i`, without checks.
fn log_form<K: Scalar>(lambda: &[K], f: &[MPoly<K>]) -> PolyForm<K> {
    let nv = f[0].nvars();
    let mut acc = PolyForm::zero(nv, 1);
    for (i, (l, fi)) in lambda.iter().zip(f).enumerate() {
        if l.is_zero() {
            continue;
        }
        let mut cofactor = MPoly::constant(nv, l.clone());
        for (j, fj) in f.iter().enumerate() {
            if j != i {
                cofactor = &cofactor * fj;
            }
        }
        acc = &acc + &PolyForm::function(fi.clone()).d().mul_poly(&cofactor);
    }
    acc
}

/// The logarithmic member `(prod f_i)(sum lambda_i df_i / f_i)` on `P^n`.
pub fn log_member<K: Scalar>(
    partition: &LogPartition,
    lambda: &[K],
    f: &[MPoly<K>],
) -> Result<TwistedOneForm<K>> {
    let k = partition.len();
    if lambda.len() != k || f.len() != k {
        return precondition(format!("partition {partition} needs {k} residues and {k} factors"));
    }
    let residue = lambda
        .iter()
        .zip(partition.parts())
        .fold(K::zero(), |acc, (l, &d)| acc + l.clone() * K::from_i64(d as i64));
    if !residue.is_zero() {
        return precondition("residues violate sum lambda_i d_i = 0");
    }
    for (fi, &d) in f.iter().zip(partition.parts()) {
        if fi.homogeneous_degree() != Some(d) {
            return precondition(format!("factor {fi} is not homogeneous of degree {d}"));
        }
    }
    let nv = f[0].nvars();
    let w = TwistedOneForm::new(nv - 1, partition.degree()?, log_form(lambda, f))?;
    if !w.is_integrable() {
        return precondition("logarithmic form is not integrable");
    }
    Ok(w)
}

/// A polynomial map from a parameter space to twisted 1-forms.
pub trait Parameterization: Sync {
    /// Target is `P^n`.
    fn n(&self) -> usize;
    /// Foliation degree of the image forms.
    fn d(&self) -> u32;
    fn num_params(&self) -> usize;
    /// The form at `params`; polynomial in the parameters.
    fn eval<K: Scalar>(&self, params: &[K]) -> PolyForm<K>;

    fn member(&self, params: &[Rational]) -> Result<TwistedOneForm<Rational>> {
        TwistedOneForm::new(self.n(), self.d(), self.eval(params))
    }

    fn random_point(&self, rng: &mut impl Rng) -> Vec<Rational> {
        (0..self.num_params()).map(|_| rng::coeff_q(rng)).collect()
    }
}

/// Partial derivatives of a parameterization at `point`, one per parameter,
/// as coefficient vectors. Forward-mode dual numbers make them exact.
pub fn tangent_generators<P: Parameterization>(p: &P, point: &[Rational]) -> Vec<Vec<Rational>> {
    assert_eq!(point.len(), p.num_params(), "parameter count");
    let deg = p.d() + 1;
    let idx: Vec<usize> = (0..point.len()).collect();
    idx.par_iter()
        .map(|&i| {
            let params: Vec<Dual<Rational>> = point
                .iter()
                .enumerate()
                .map(|(j, x)| {
                    Dual::new(x.clone(), qi(i64::from(i == j)))
                })
                .collect();
            p.eval(&params).map_coeffs(|x| x.eps.clone()).coords(deg)
        })
        .collect()
}

/// Projective dimension of the image: rank of the tangent generators minus one.
pub fn component_dim_generic_rank(generators: &[Vec<Rational>]) -> usize {
    let Some(first) = generators.first() else {
        return 0;
    };
    Matrix::from_columns(first.len(), generators).rank().saturating_sub(1)
}

/// [`component_dim_generic_rank`] at a seeded random point.
pub fn parameterization_dim<P: Parameterization>(p: &P, seed: u64, label: &str) -> usize {
    let point = p.random_point(&mut rng::stream(seed, label));
    component_dim_generic_rank(&tangent_generators(p, &point))
}

/// Minimum Zariski tangent dimension over `trials` random members.
pub fn sampled_member_zdim<P: Parameterization>(p: &P, seed: u64, label: &str, trials: usize) -> Result<usize> {
    let dims: Vec<usize> = (0..trials.max(1))
        .into_par_iter()
        .map(|t| {
            let point = p.random_point(&mut rng::stream(seed, &format!("{label}/{t}")));
            zariski_tangent_dim(&p.member(&point)?)
        })
        .collect::<Result<_>>()?;
    Ok(dims.into_iter().min().expect("at least one trial"))
}

/// Generic polynomial of degree `deg` from consecutive parameters.
fn poly_from_params<K: Scalar>(nvars: usize, monos: &[Monomial], params: &[K]) -> MPoly<K> {
    MPoly::from_terms(nvars, monos.iter().copied().zip(params.iter().cloned()))
}

/// Images of the coordinates under the linear map with rows `m`
/// (`rows x cols` entries, row-major).
fn linear_images<K: Scalar>(rows: usize, cols: usize, m: &[K]) -> Vec<MPoly<K>> {
    (0..rows)
        .map(|i| {
            let terms = (0..cols).map(|j| (Monomial::var(j), m[i * cols + j].clone()));
            MPoly::from_terms(cols, terms)
        })
        .collect()
}

/// `Log(d_1, ..., d_k)` on `P^3`: the factors' coefficients, then residues
/// in a basis of the hyperplane `sum lambda_i d_i = 0`.
pub struct LogFamily {
    partition: LogPartition,
    monos: Vec<Vec<Monomial>>,
}

impl LogFamily {
    pub fn new(partition: LogPartition) -> Self {
        let monos = partition
            .parts()
            .iter()
            .map(|&d| Monomial::all_of_degree(4, d))
            .collect();
        LogFamily { partition, monos }
    }

    pub fn partition(&self) -> &LogPartition {
        &self.partition
    }

    fn residues<K: Scalar>(&self, t: &[K]) -> Vec<K> {
        // Basis d_last e_j - d_j e_last of the residue hyperplane.
        let parts = self.partition.parts();
        let k = parts.len();
        let last = K::from_i64(parts[k - 1] as i64);
        let mut lambda: Vec<K> = t.iter().map(|x| x.clone() * last.clone()).collect();
        let tail = t
            .iter()
            .zip(parts)
            .fold(K::zero(), |acc, (x, &d)| acc - x.clone() * K::from_i64(d as i64));
        lambda.push(tail);
        lambda
    }

    fn factors<K: Scalar>(&self, params: &[K]) -> Vec<MPoly<K>> {
        let mut off = 0;
        self.monos
            .iter()
            .map(|m| {
                let f = poly_from_params(4, m, &params[off..off + m.len()]);
                off += m.len();
                f
            })
            .collect()
    }
}

impl Parameterization for LogFamily {
    fn n(&self) -> usize {
        3
    }

    fn d(&self) -> u32 {
        self.partition.degree().expect("validated partition")
    }

    fn num_params(&self) -> usize {
        self.monos.iter().map(Vec::len).sum::<usize>() + self.partition.len() - 1
    }

    fn eval<K: Scalar>(&self, params: &[K]) -> PolyForm<K> {
        let nf: usize = self.monos.iter().map(Vec::len).sum();
        log_form(&self.residues(&params[nf..]), &self.factors(params))
    }
}

/// Linear pull-backs of degree-`d` foliations on `P^2` under projections
/// `P^3 --> P^2`: a form on the plane, then the `3 x 4` matrix.
pub struct LinearPullbackFamily {
    d: u32,
    plane: FormSpaceBasis<Rational>,
}

impl LinearPullbackFamily {
    pub fn new(d: u32) -> Self {
        LinearPullbackFamily {
            d,
            plane: FormSpaceBasis::new(2, d),
        }
    }
}

impl Parameterization for LinearPullbackFamily {
    fn n(&self) -> usize {
        3
    }

    fn d(&self) -> u32 {
        self.d
    }

    fn num_params(&self) -> usize {
        self.plane.len() + 12
    }

    fn eval<K: Scalar>(&self, params: &[K]) -> PolyForm<K> {
        let k = self.plane.len();
        let mut acc = PolyForm::zero(3, 1);
        for (b, c) in self.plane.forms().iter().zip(&params[..k]) {
            acc = &acc + &b.form().map_coeffs(K::from_rational).scale(c);
        }
        acc.pullback(&linear_images(3, 4, &params[k..]))
            .expect("three images in four variables")
    }
}

/// Orbit of a linear family of forms under `GL(4)`: coefficients of the
/// family, then the `4 x 4` matrix acting by pull-back.
pub struct OrbitFamily {
    d: u32,
    span: Vec<PolyForm<Rational>>,
}

impl OrbitFamily {
    pub fn new(span: &[TwistedOneForm<Rational>]) -> Result<Self> {
        let Some(first) = span.first() else {
            return precondition("orbit of an empty family");
        };
        if first.n() != 3 {
            return precondition("orbit families live on P^3");
        }
        Ok(OrbitFamily {
            d: first.d(),
            span: span.iter().map(|w| w.form().clone()).collect(),
        })
    }
}

impl Parameterization for OrbitFamily {
    fn n(&self) -> usize {
        3
    }

    fn d(&self) -> u32 {
        self.d
    }

    fn num_params(&self) -> usize {
        self.span.len() + 16
    }

    fn eval<K: Scalar>(&self, params: &[K]) -> PolyForm<K> {
        let k = self.span.len();
        let mut acc = PolyForm::zero(4, 1);
        for (b, c) in self.span.iter().zip(&params[..k]) {
            acc = &acc + &b.map_coeffs(K::from_rational).scale(c);
        }
        acc.pullback(&linear_images(4, 4, &params[k..]))
            .expect("four images in four variables")
    }
}
