//! Foliations tangent to the multiplicative action generated by
//! `v = a x0 d/dx0 + b x1 d/dx1 + c x2 d/dx2` on `P^3`.
//!
//! The eigenspace `V_d(a,b,c;n)` collects the twisted forms with `i_v w = 0`
//! and `L_v w = n w`. In the affine chart `x3 = 1` such forms are exactly
//! those whose characteristic monomials lie on the plane `a i + b j + c k = n`.

mod enumerate;
mod kupka;
mod rigidity;

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::extcalc::{PolyForm, PolyVField};
use crate::linmap::assemble;
use crate::mpoly::Monomial;
use crate::projforms::{projective_normalizer_dim, FormSpaceBasis, TwistedOneForm};
use crate::scalar::{qi, Rational};

pub use enumerate::{
    delta_points, enumerate_candidates, longlist_filter, plane_support, screen, Screening,
};
pub use kupka::{
    kupka_arithmetic, kupka_verdict, non_kupka_ideal, quasi_homog_zero_dim_probe, KupkaVerdict,
    ProbeReport, ProbeVerdict, EXTRA_KUPKA,
};
pub use rigidity::{
    eigen_ratio_rational, has_nonrational_ratio, jacobian_at, ratio_invariant,
    triangle_ratio_verdicts, RatioVerdict, TrianglePoint,
};

/// Weights `(a,b,c)` of the action together with the eigenvalue `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawWeights")]
pub struct WeightData {
    a: i64,
    b: i64,
    c: i64,
    n: i64,
}

#[derive(Deserialize)]
struct RawWeights {
    a: i64,
    b: i64,
    c: i64,
    n: i64,
}

impl TryFrom<RawWeights> for WeightData {
    type Error = crate::error::Error;

    fn try_from(r: RawWeights) -> Result<Self> {
        WeightData::new(r.a, r.b, r.c, r.n)
    }
}

impl WeightData {
    /// Checks `0 <= a <= b <= c`, `c != 0` and `gcd(a,b,c) = 1`.
    pub fn new(a: i64, b: i64, c: i64, n: i64) -> Result<Self> {
        if !(0 <= a && a <= b && b <= c && c != 0) {
            return precondition(format!("weights ({a},{b},{c}) are not ordered 0 <= a <= b <= c != 0"));
        }
        if a.gcd(&b).gcd(&c) != 1 {
            return precondition(format!("weights ({a},{b},{c}) are not coprime"));
        }
        Ok(WeightData { a, b, c, n })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn weights(&self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }

    /// Weights whose field vanishes along a surface; tangent foliations are
    /// linear pull-backs from the plane.
    pub fn is_excluded(&self) -> bool {
        matches!(self.weights(), [0, 0, 1] | [1, 1, 1])
    }

    pub fn is_strict(&self) -> bool {
        1 <= self.a && self.a < self.b && self.b < self.c
    }
}

impl fmt::Display for WeightData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{};{})", self.a, self.b, self.c, self.n)
    }
}

impl std::str::FromStr for WeightData {
    type Err = crate::error::Error;

    /// Reads `a,b,c;n`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || crate::error::Error::Parse {
            offset: 0,
            message: format!("expected a,b,c;n, got '{s}'"),
        };
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (abc, n) = t.split_once(';').ok_or_else(bad)?;
        let abc: Vec<i64> = abc
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        match abc[..] {
            [a, b, c] => WeightData::new(a, b, c, n),
            _ => Err(bad()),
        }
    }
}

/// `a x0 d/dx0 + b x1 d/dx1 + c x2 d/dx2` on `K^4`.
pub fn weight_field(w: &WeightData) -> PolyVField<Rational> {
    PolyVField::diagonal(&[qi(w.a), qi(w.b), qi(w.c), qi(0)])
}

/// The involution `(a,b,c;n) -> (c-b, c-a, c; c(d+2) - n)`.
pub fn involution(d: u32, w: &WeightData) -> Result<WeightData> {
    WeightData::new(w.c - w.b, w.c - w.a, w.c, w.c * (d as i64 + 2) - w.n)
}

/// Basis of `V_d(a,b,c;n)`.
pub fn eigenspace(d: u32, w: &WeightData) -> Vec<TwistedOneForm<Rational>> {
    eigenspace_in(&FormSpaceBasis::new(3, d), w)
}

/// Basis of `V_d(a,b,c;n)` expressed through a precomputed space basis.
pub fn eigenspace_in(basis: &FormSpaceBasis<Rational>, w: &WeightData) -> Vec<TwistedOneForm<Rational>> {
    let d = basis.d();
    let v = weight_field(w);
    let n = qi(w.n);
    let contraction_rows = Monomial::all_of_degree(4, d + 2).len();
    let lie_rows = 4 * Monomial::all_of_degree(4, d + 1).len();
    let m = assemble(contraction_rows + lie_rows, basis.forms(), |b| {
        let mut col = b.form().contract(&v).expect("1-form").coords(d + 2);
        col.extend((&b.form().lie(&v) - &b.form().scale(&n)).coords(d + 1));
        col
    });
    m.kernel_basis().iter().map(|c| basis.from_coords(c)).collect()
}

/// Whether `i_v w = 0` and `L_v w = n w`.
pub fn is_eigenform(form: &PolyForm<Rational>, w: &WeightData) -> bool {
    let v = weight_field(w);
    form.contract(&v).is_ok_and(|c| c.is_zero()) && form.lie(&v) == form.scale(&qi(w.n))
}

/// Dimension of `{ v : [v, v0] ^ v0 = 0 }` among projective vector fields.
pub fn normalizer_dim(w: &WeightData) -> Result<usize> {
    if w.is_excluded() {
        return precondition(format!("the field of {w} has codimension-one zeros"));
    }
    Ok(projective_normalizer_dim(&weight_field(w)))
}

/// `15 + (dim V - 1) - dim normalizer`.
pub fn tm_dim_from(eigenspace_dim: usize, w: &WeightData) -> Result<usize> {
    if eigenspace_dim == 0 {
        return precondition(format!("empty eigenspace for {w}"));
    }
    Ok(15 + eigenspace_dim - 1 - normalizer_dim(w)?)
}

pub fn tm_dim(d: u32, w: &WeightData) -> Result<usize> {
    tm_dim_from(eigenspace(d, w).len(), w)
}

/// Finite set of exponent triples.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CharMonomialSet {
    points: BTreeSet<[i64; 3]>,
}

impl CharMonomialSet {
    pub fn from_points(points: impl IntoIterator<Item = [i64; 3]>) -> Self {
        CharMonomialSet {
            points: points.into_iter().collect(),
        }
    }

    pub fn points(&self) -> impl Iterator<Item = &[i64; 3]> {
        self.points.iter()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64; 3]) -> bool {
        self.points.contains(p)
    }

    /// Whether every point satisfies `a i + b j + c k = n`.
    pub fn on_plane(&self, w: &WeightData) -> bool {
        let [a, b, c] = w.weights();
        self.points.iter().all(|p| a * p[0] + b * p[1] + c * p[2] == w.n)
    }
}

/// Characteristic monomials of an affine 1-form in three variables: a term
/// `x^i y^j z^k dx` contributes `(i+1, j, k)`, and likewise for `dy`, `dz`.
pub fn char_monomials(form: &PolyForm<Rational>) -> Result<CharMonomialSet> {
    if form.nvars() != 3 || form.degree() != 1 {
        return precondition("characteristic monomials need an affine 1-form in 3 variables");
    }
    let mut points = BTreeSet::new();
    for h in 0..3 {
        for (m, _) in form.coeff(h).terms() {
            let mut p = [m.exp(0) as i64, m.exp(1) as i64, m.exp(2) as i64];
            p[h] += 1;
            points.insert(p);
        }
    }
    Ok(CharMonomialSet { points })
}

fn sub(p: &[i64; 3], q: &[i64; 3]) -> [i64; 3] {
    [p[0] - q[0], p[1] - q[1], p[2] - q[2]]
}

pub(crate) fn cross(u: &[i64; 3], v: &[i64; 3]) -> [i64; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

/// Whether all points lie on one line.
pub fn chi_collinear(s: &CharMonomialSet) -> bool {
    let mut it = s.points.iter();
    let Some(p0) = it.next() else { return true };
    let Some(p1) = it.next() else { return true };
    let dir = sub(p1, p0);
    it.all(|p| cross(&dir, &sub(p, p0)) == [0, 0, 0])
}

/// The unique plane `a i + b j + c k = n` through all points, as a
/// primitive `[a, b, c, n]` with positive leading entry; `None` when the
/// points are collinear or span space.
pub fn chi_plane(s: &CharMonomialSet) -> Option<[i64; 4]> {
    let pts: Vec<&[i64; 3]> = s.points.iter().collect();
    let p0 = pts.first()?;
    let mut normal = None;
    for (i, p) in pts.iter().enumerate().skip(1) {
        for q in &pts[i + 1..] {
            let nv = cross(&sub(p, p0), &sub(q, p0));
            if nv != [0, 0, 0] {
                normal = Some(nv);
                break;
            }
        }
        if normal.is_some() {
            break;
        }
    }
    let nv = normal?;
    let dot = |p: &[i64; 3]| nv[0] * p[0] + nv[1] * p[1] + nv[2] * p[2];
    let n = dot(p0);
    if pts.iter().any(|p| dot(p) != n) {
        return None;
    }
    let mut out = [nv[0], nv[1], nv[2], n];
    let g = out.iter().fold(0i64, |g, &x| g.gcd(&x));
    let lead = out.iter().copied().find(|&x| x != 0).unwrap_or(1);
    let g = if lead < 0 { -g } else { g };
    out.iter_mut().for_each(|x| *x /= g);
    Some(out)
}

/// Whether some point lies in the interior of `Delta_d`: every coordinate
/// positive and total below `d+2`.
pub fn chi_interior(d: u32, s: &CharMonomialSet) -> bool {
    s.points
        .iter()
        .any(|p| p.iter().all(|&x| x >= 1) && p.iter().sum::<i64>() < d as i64 + 2)
}

/// Whether `k` is a non-negative integer combination of `gens`.
pub fn in_semigroup(k: i64, gens: &[i64]) -> bool {
    if k < 0 {
        return false;
    }
    let k = k as usize;
    let mut reach = vec![false; k + 1];
    reach[0] = true;
    for t in 1..=k {
        reach[t] = gens
            .iter()
            .any(|&g| g > 0 && g as usize <= t && reach[t - g as usize]);
    }
    reach[k]
}

/// Which item of the weighted-plane trichotomy applies to `(a,b,c;n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneCase {
    /// `n < a+b+c`: rational first integral with rational leaves.
    RationalLeaves,
    /// `n = a+b+c`: defined by a closed rational 1-form.
    ClosedForm,
    /// `n - (a+b+c)` positive and outside the semigroup of `(a,b,c)`.
    Darboux,
    /// None of the numeric criteria applies.
    Undecided,
}

/// Numeric classifier of the plane foliation; needs `a >= 1`.
pub fn plane_case(w: &WeightData) -> Result<PlaneCase> {
    if w.a < 1 {
        return precondition(format!("{w} does not define a weighted projective plane"));
    }
    let s = w.a + w.b + w.c;
    Ok(if w.n < s {
        PlaneCase::RationalLeaves
    } else if w.n == s {
        PlaneCase::ClosedForm
    } else if !in_semigroup(w.n - s, &w.weights()) {
        PlaneCase::Darboux
    } else {
        PlaneCase::Undecided
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse_poly;
    use crate::projforms::dehomogenize;

    fn wd(a: i64, b: i64, c: i64, n: i64) -> WeightData {
        WeightData::new(a, b, c, n).unwrap()
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(WeightData::new(2, 1, 3, 5).is_err());
        assert!(WeightData::new(2, 4, 6, 5).is_err());
        assert!(WeightData::new(0, 0, 0, 0).is_err());
        assert_eq!("(1,2,3;7)".parse::<WeightData>().unwrap(), wd(1, 2, 3, 7));
        let json = serde_json::to_string(&wd(1, 2, 3, 7)).unwrap();
        assert_eq!(json, r#"{"a":1,"b":2,"c":3,"n":7}"#);
        assert!(serde_json::from_str::<WeightData>(r#"{"a":3,"b":2,"c":1,"n":7}"#).is_err());
    }

    #[test]
    fn involution_pairs() {
        assert_eq!(involution(3, &wd(1, 2, 3, 7)).unwrap(), wd(1, 2, 3, 8));
        assert_eq!(involution(3, &wd(1, 2, 4, 7)).unwrap(), wd(2, 3, 4, 13));
        assert_eq!(involution(3, &wd(0, 1, 2, 3)).unwrap(), wd(1, 2, 2, 7));
    }

    #[test]
    fn normalizer_dimensions() {
        assert_eq!(normalizer_dim(&wd(1, 2, 3, 0)).unwrap(), 3);
        assert_eq!(normalizer_dim(&wd(0, 1, 2, 0)).unwrap(), 5);
        assert_eq!(normalizer_dim(&wd(1, 1, 2, 0)).unwrap(), 5);
        assert_eq!(normalizer_dim(&wd(1, 2, 2, 0)).unwrap(), 5);
        assert_eq!(normalizer_dim(&wd(0, 1, 1, 0)).unwrap(), 7);
        assert!(normalizer_dim(&wd(1, 1, 1, 0)).is_err());
        assert!(normalizer_dim(&wd(0, 0, 1, 0)).is_err());
    }

    #[test]
    fn eigenspace_dimensions_and_membership() {
        let basis = FormSpaceBasis::new(3, 3);
        for (w, dim) in [(wd(2, 3, 5, 11), 3), (wd(1, 2, 3, 7), 5), (wd(1, 1, 2, 5), 12)] {
            let v = eigenspace_in(&basis, &w);
            assert_eq!(v.len(), dim, "{w}");
            for f in &v {
                assert!(is_eigenform(f.form(), &w));
                let chi = char_monomials(&dehomogenize(f)).unwrap();
                assert!(chi.on_plane(&w));
            }
        }
        assert_eq!(tm_dim(3, &wd(1, 2, 5, 11)).unwrap(), 14);
        assert_eq!(tm_dim(3, &wd(1, 1, 2, 5)).unwrap(), 21);
        assert_eq!(tm_dim(3, &wd(0, 1, 1, 2)).unwrap(), 17);
    }

    #[test]
    fn characteristic_monomials() {
        let p = |s: &str| parse_poly(s, 3).unwrap();
        let w = PolyForm::one_form(vec![p("x^2*y"), p("0"), p("0")]);
        let chi = char_monomials(&w).unwrap();
        assert_eq!(chi, CharMonomialSet::from_points([[3, 1, 0]]));
        assert!(chi_collinear(&chi));
        let log = PolyForm::one_form(vec![p("2*y*z"), p("-3*x*z"), p("x*y")]);
        let chi = char_monomials(&log).unwrap();
        assert_eq!(chi, CharMonomialSet::from_points([[1, 1, 1]]));
        assert!(chi_interior(3, &chi));
        let line = CharMonomialSet::from_points([[0, 0, 1], [1, 1, 1], [2, 2, 1]]);
        assert!(chi_collinear(&line));
        let plane = CharMonomialSet::from_points([[0, 0, 1], [1, 1, 1], [2, 1, 1]]);
        assert!(!chi_collinear(&plane));
        assert_eq!(chi_plane(&plane), Some([0, 0, 1, 1]));
        assert_eq!(chi_plane(&line), None);
        let tilted = CharMonomialSet::from_points([[4, 1, 0], [1, 3, 0], [0, 2, 1], [3, 0, 1]]);
        assert_eq!(chi_plane(&tilted), Some([2, 3, 5, 11]));
        assert!(!chi_interior(3, &CharMonomialSet::from_points([[0, 2, 1], [1, 1, 3]])));
    }

    #[test]
    fn plane_cases() {
        assert_eq!(plane_case(&wd(1, 3, 7, 10)).unwrap(), PlaneCase::RationalLeaves);
        assert_eq!(plane_case(&wd(1, 2, 4, 7)).unwrap(), PlaneCase::ClosedForm);
        assert_eq!(plane_case(&wd(2, 3, 5, 11)).unwrap(), PlaneCase::Darboux);
        assert_eq!(plane_case(&wd(1, 2, 3, 7)).unwrap(), PlaneCase::Undecided);
        assert!(plane_case(&wd(0, 1, 2, 3)).is_err());
        assert!(in_semigroup(7, &[2, 5]));
        assert!(!in_semigroup(3, &[2, 5]));
    }
}
