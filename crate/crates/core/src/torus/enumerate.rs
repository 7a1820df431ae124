//! Planes through lattice points of `Delta_d` and the screening of their
//! eigenspaces.

use std::collections::BTreeSet;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use super::{cross, eigenspace_in, WeightData};
use crate::projforms::{
    codim_one_zero_divisor, integrating_factor_dim, random_combination, FormSpaceBasis,
};
use crate::mpoly::is_unit_gcd;
use crate::rng;

/// Lattice points of `{ i, j, k >= 0, i + j + k <= d + 2 }`.
pub fn delta_points(d: u32) -> Vec<[i64; 3]> {
    let top = d as i64 + 2;
    let mut out = Vec::new();
    for i in 0..=top {
        for j in 0..=top - i {
            for k in 0..=top - i - j {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// Primitive normal of the plane through three points, signed and checked
/// for `0 <= a <= b <= c != 0`.
fn ordered_normal(p: &[i64; 3], q: &[i64; 3], r: &[i64; 3]) -> Option<[i64; 3]> {
    let u = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
    let v = [r[0] - p[0], r[1] - p[1], r[2] - p[2]];
    let mut nrm = cross(&u, &v);
    let g = nrm[0].gcd(&nrm[1]).gcd(&nrm[2]);
    if g == 0 {
        return None;
    }
    if nrm.iter().any(|&x| x < 0) {
        nrm = nrm.map(|x| -x);
    }
    let nrm = nrm.map(|x| x / g);
    (0 <= nrm[0] && nrm[0] <= nrm[1] && nrm[1] <= nrm[2] && nrm[2] != 0).then_some(nrm)
}

/// Weight quadruples whose plane meets `Delta_d` in three non-collinear
/// lattice points, sorted and without repetition.
pub fn enumerate_candidates(d: u32) -> Vec<WeightData> {
    let pts = delta_points(d);
    let found: BTreeSet<WeightData> = (0..pts.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let pts = &pts;
            (i + 1..pts.len()).flat_map(move |j| {
                (j + 1..pts.len()).filter_map(move |k| {
                    let nrm = ordered_normal(&pts[i], &pts[j], &pts[k])?;
                    let n = nrm[0] * pts[i][0] + nrm[1] * pts[i][1] + nrm[2] * pts[i][2];
                    WeightData::new(nrm[0], nrm[1], nrm[2], n).ok()
                })
            })
        })
        .collect();
    found.into_iter().collect()
}

/// Lattice points of `Delta_d` on the plane of `w`.
pub fn plane_support(d: u32, w: &WeightData) -> Vec<[i64; 3]> {
    let [a, b, c] = w.weights();
    delta_points(d)
        .into_iter()
        .filter(|p| a * p[0] + b * p[1] + c * p[2] == w.n())
        .collect()
}

/// Certificates gathered for one quadruple by the screening step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Screening {
    pub weights: WeightData,
    pub eigenspace_dim: usize,
    /// Some sampled member has coprime coefficients.
    pub codim_two: bool,
    /// Minimum integrating-factor dimension over the samples.
    pub integrating_factor_dim: Option<usize>,
}

impl Screening {
    pub fn survives(&self) -> bool {
        !self.weights.is_excluded()
            && self.eigenspace_dim > 0
            && self.codim_two
            && self.integrating_factor_dim == Some(0)
    }
}

/// Samples `trials` random members of the eigenspace of `w`.
pub fn screen(basis: &FormSpaceBasis<crate::scalar::Rational>, w: &WeightData, seed: u64, trials: usize) -> Screening {
    let d = basis.d();
    let v = eigenspace_in(basis, w);
    let mut out = Screening {
        weights: *w,
        eigenspace_dim: v.len(),
        codim_two: false,
        integrating_factor_dim: None,
    };
    if v.is_empty() || w.is_excluded() {
        return out;
    }
    for t in 0..trials {
        let mut r = rng::stream(seed, &format!("screen/{d}/{w}/{t}"));
        let form = random_combination(3, d, &v, &mut r);
        if form.is_zero() {
            continue;
        }
        let g = codim_one_zero_divisor(&form).expect("nonzero form");
        out.codim_two |= is_unit_gcd(&g);
        let k = integrating_factor_dim(&form);
        out.integrating_factor_dim = Some(out.integrating_factor_dim.map_or(k, |m| m.min(k)));
    }
    out
}

/// Screens every candidate in parallel and keeps the survivors, in input order.
pub fn longlist_filter(d: u32, candidates: &[WeightData], seed: u64, trials: usize) -> Vec<Screening> {
    let basis = FormSpaceBasis::new(3, d);
    let screened: Vec<Screening> = candidates
        .par_iter()
        .map(|w| screen(&basis, w, seed, trials))
        .collect();
    screened.into_iter().filter(Screening::survives).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_has_56_points_at_degree_three() {
        assert_eq!(delta_points(3).len(), 56);
    }

    #[test]
    fn every_candidate_plane_has_three_independent_points() {
        for w in enumerate_candidates(3) {
            let s = plane_support(3, &w);
            let ok = s.iter().enumerate().any(|(i, p)| {
                s[i + 1..].iter().enumerate().any(|(j, q)| {
                    s[i + j + 2..].iter().any(|r| {
                        let u = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
                        let v = [r[0] - p[0], r[1] - p[1], r[2] - p[2]];
                        cross(&u, &v) != [0, 0, 0]
                    })
                })
            });
            assert!(ok, "{w}");
        }
    }
}
