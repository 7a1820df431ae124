//! Local obstructions to rational first integrals: eigenvalue ratios of the
//! plane foliation at singular points of the weighted projective plane.
//!
//! The diagonal torus of `P^3` preserves every eigenspace and acts on
//! `P(a,b,c)` with orbits the vertices, the open edges and the open
//! interior. A singular point in one of these orbits can thus be moved to a
//! fixed representative `p`; the members singular at `p` are sampled, and a
//! rank check confirms that their torus orbits fill the eigenspace, so the
//! sampled ratios are those of general members.

use num_traits::Zero;
use serde::Serialize;

use super::{eigenspace_in, involution, WeightData};
use crate::error::{precondition, Result};
use crate::exactalg::Matrix;
use crate::extcalc::{PolyForm, PolyVField};
use crate::mpoly::MPoly;
use crate::projforms::{combine, dehomogenize, random_combination, FormSpaceBasis, TwistedOneForm};
use crate::rng;
use crate::scalar::{is_rational_square, qi, Rational};

fn trace_det(j: &Matrix<Rational>) -> Result<(Rational, Rational)> {
    if j.nrows() != 2 || j.ncols() != 2 {
        return precondition("eigenvalue ratio needs a 2x2 matrix");
    }
    let t = &j[(0, 0)] + &j[(1, 1)];
    let q = &j[(0, 0)] * &j[(1, 1)] - &j[(0, 1)] * &j[(1, 0)];
    if q.is_zero() {
        return precondition("eigenvalue ratio of a singular matrix");
    }
    Ok((t, q))
}

/// `(t^2 - 2q)/q`, equal to `r + 1/r` for the eigenvalue ratio `r`.
pub fn ratio_invariant(j: &Matrix<Rational>) -> Result<Rational> {
    let (t, q) = trace_det(j)?;
    Ok((&t * &t - &q * qi(2)) / q)
}

/// Whether the quotient of the two eigenvalues is rational.
pub fn eigen_ratio_rational(j: &Matrix<Rational>) -> Result<bool> {
    let (t, q) = trace_det(j)?;
    let disc = &t * &t * (&t * &t - &q * qi(4)) / (&q * &q);
    Ok(is_rational_square(&disc))
}

/// A point of the coordinate triangle of `P(a,b,c)`, in the chart `x3 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrianglePoint {
    /// The coordinate vertex `x_h = 1`, others zero.
    Vertex(usize),
    /// The point with `x_i = x_j = 1` and the third coordinate zero.
    Edge(usize, usize),
    /// The point `(1,1,1)`.
    Interior,
}

impl TrianglePoint {
    pub const ALL: [TrianglePoint; 7] = [
        TrianglePoint::Vertex(0),
        TrianglePoint::Vertex(1),
        TrianglePoint::Vertex(2),
        TrianglePoint::Edge(0, 1),
        TrianglePoint::Edge(0, 2),
        TrianglePoint::Edge(1, 2),
        TrianglePoint::Interior,
    ];

    pub fn coords(&self) -> [i64; 3] {
        let mut p = [0; 3];
        match *self {
            TrianglePoint::Vertex(h) => p[h] = 1,
            TrianglePoint::Edge(i, j) => {
                p[i] = 1;
                p[j] = 1;
            }
            TrianglePoint::Interior => p = [1, 1, 1],
        }
        p
    }

    /// Coordinate fixed to 1 by the transversal slice: one with positive weight.
    fn slice_var(&self, w: &WeightData) -> Option<usize> {
        let ws = w.weights();
        match *self {
            TrianglePoint::Vertex(h) => (ws[h] > 0).then_some(h),
            TrianglePoint::Edge(i, j) => [i, j].into_iter().find(|&h| ws[h] > 0),
            TrianglePoint::Interior => (0..3).find(|&h| ws[h] > 0),
        }
    }
}

/// Linear part at `p` of the plane foliation cut by the slice `x_h = 1`,
/// when `p` is a singular point with invertible linear part.
pub fn jacobian_at(affine: &PolyForm<Rational>, p: &[i64; 3], h: usize) -> Option<Matrix<Rational>> {
    let others: Vec<usize> = (0..3).filter(|&i| i != h).collect();
    let slice: Vec<MPoly<Rational>> = (0..3)
        .map(|i| match others.iter().position(|&o| o == i) {
            Some(k) => &MPoly::var(2, k) + &MPoly::constant(2, qi(p[i])),
            None => MPoly::constant(2, qi(p[i])),
        })
        .collect();
    let a = affine.coeff(others[0]).substitute(&slice).expect("three images");
    let b = affine.coeff(others[1]).substitute(&slice).expect("three images");
    let origin = [qi(0), qi(0)];
    if !a.eval(&origin).is_zero() || !b.eval(&origin).is_zero() {
        return None;
    }
    let at0 = |f: &MPoly<Rational>, i: usize| f.derivative(i).eval(&origin);
    let j = Matrix::from_rows(
        2,
        vec![vec![-at0(&b, 0), -at0(&b, 1)], vec![at0(&a, 0), at0(&a, 1)]],
    );
    trace_det(&j).is_ok().then_some(j)
}

/// Whether the torus orbit of `form` together with `family` spans the
/// eigenspace of dimension `dim`.
fn orbit_fills(form: &TwistedOneForm<Rational>, family: &[TwistedOneForm<Rational>], dim: usize) -> bool {
    let mut cols: Vec<Vec<Rational>> = family.iter().map(|f| f.coeff_coords()).collect();
    for i in 0..3 {
        let mut diag = vec![qi(0); 4];
        diag[i] = qi(1);
        cols.push(form.form().lie(&PolyVField::diagonal(&diag)).coords(form.d() + 1));
    }
    let rows = cols[0].len();
    Matrix::from_columns(rows, &cols).rank() == dim
}

/// Members of `v` whose affine form vanishes at `p`.
fn singular_at(v: &[TwistedOneForm<Rational>], p: &[i64; 3]) -> Vec<TwistedOneForm<Rational>> {
    let point = [qi(p[0]), qi(p[1]), qi(p[2])];
    let columns: Vec<Vec<Rational>> = v
        .iter()
        .map(|f| {
            let a = dehomogenize(f);
            (0..3).map(|i| a.coeff(i).eval(&point)).collect()
        })
        .collect();
    let m = Matrix::from_columns(3, &columns);
    let (n, d) = v.first().map_or((3, 0), |f| (f.n(), f.d()));
    m.kernel_basis().iter().map(|c| combine(n, d, v, c)).collect()
}

/// Eigenvalue-ratio evidence at one point across random members.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioVerdict {
    pub weights: WeightData,
    pub point: TrianglePoint,
    /// `r + 1/r` per sample, printed exactly.
    pub invariants: Vec<String>,
    /// Rational for every sample and independent of the sample.
    pub rational: bool,
}

fn sample_point(
    v: &[TwistedOneForm<Rational>],
    side: &WeightData,
    pt: TrianglePoint,
    seed: u64,
    trials: usize,
) -> Result<Option<RatioVerdict>> {
    let Some(h) = pt.slice_var(side) else {
        return Ok(None);
    };
    let p = pt.coords();
    let d = v[0].d();
    let label = |t: usize| format!("ratio/{d}/{side}/{pt:?}/{t}");
    let family = singular_at(v, &p);
    if family.is_empty() {
        return Ok(None);
    }
    let mut samples = Vec::new();
    for t in 0..trials {
        let form = random_combination(3, d, &family, &mut rng::stream(seed, &label(t)));
        if !orbit_fills(&form, &family, v.len()) {
            return Ok(None);
        }
        match jacobian_at(&dehomogenize(&form), &p, h) {
            Some(j) => samples.push((ratio_invariant(&j)?, eigen_ratio_rational(&j)?)),
            None => return Ok(None),
        }
    }
    if samples.is_empty() {
        return Ok(None);
    }
    let constant = samples.iter().all(|(s, _)| *s == samples[0].0);
    Ok(Some(RatioVerdict {
        weights: *side,
        point: pt,
        invariants: samples.iter().map(|(s, _)| s.to_string()).collect(),
        rational: constant && samples.iter().all(|(_, r)| *r),
    }))
}

/// Ratio verdicts at the orbit representatives for the
/// members of `V_d(w)` and of `V_d(iota_d(w))`. Only points that are
/// nondegenerate singularities of every sample are reported; the list is
/// evidence at those points, not a survey of all singularities.
pub fn triangle_ratio_verdicts(
    basis: &FormSpaceBasis<Rational>,
    w: &WeightData,
    seed: u64,
    trials: usize,
) -> Result<Vec<RatioVerdict>> {
    let d = basis.d();
    let mut sides = vec![*w];
    let iw = involution(d, w)?;
    if iw != *w {
        sides.push(iw);
    }
    let mut out = Vec::new();
    for side in sides {
        if side.a() < 1 {
            continue;
        }
        let v = eigenspace_in(basis, &side);
        if v.is_empty() {
            continue;
        }
        for pt in TrianglePoint::ALL {
            if let Some(r) = sample_point(&v, &side, pt, seed, trials)? {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// Whether some sampled point carries a non-rational eigenvalue ratio.
pub fn has_nonrational_ratio(
    basis: &FormSpaceBasis<Rational>,
    w: &WeightData,
    seed: u64,
    trials: usize,
) -> Result<bool> {
    Ok(triangle_ratio_verdicts(basis, w, seed, trials)?
        .iter()
        .any(|r| !r.rational))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Matrix<Rational> {
        Matrix::from_rows(2, vec![vec![qi(a), qi(b)], vec![qi(c), qi(d)]])
    }

    #[test]
    fn ratio_rationality() {
        assert!(eigen_ratio_rational(&m(1, 0, 0, 2)).unwrap());
        assert!(eigen_ratio_rational(&m(1, 1, 0, 1)).unwrap());
        assert!(eigen_ratio_rational(&m(0, 1, -1, 0)).unwrap());
        assert!(!eigen_ratio_rational(&m(1, 1, 1, 0)).unwrap());
        assert!(eigen_ratio_rational(&m(1, 2, 2, 4)).is_err());
        assert_eq!(ratio_invariant(&m(1, 0, 0, 2)).unwrap(), Rational::new(5.into(), 2.into()));
    }
}
