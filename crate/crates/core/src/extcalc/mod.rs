//! Polynomial differential forms and vector fields.
//!
//! A k-form is stored as a map from index sets to coefficients, the index set
//! `{i1 < ... < ik}` standing for `dx_i1 ^ ... ^ dx_ik` and encoded as a bit
//! mask. All sign bookkeeping goes through [`merge_sign`] and [`position`].

mod json;
mod vfield;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

pub use json::{form_from_json, form_to_json};
pub use vfield::PolyVField;

use crate::error::{precondition, Result};
use crate::mpoly::{MPoly, Monomial};
use crate::scalar::Scalar;

/// Index set of a basis form, bit `i` standing for `dx_i`.
pub type IndexSet = u16;

/// `(-1)^(number of pairs i in a, j in b with i > j)`: the sign that sorts
/// `dx_a ^ dx_b` into increasing order. Callers ensure `a` and `b` are disjoint.
pub fn merge_sign(a: IndexSet, b: IndexSet) -> i64 {
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Number of members of `set` below `i`.
pub fn position(set: IndexSet, i: usize) -> usize {
    (set & ((1u16 << i) - 1)).count_ones() as usize
}

pub fn indices(set: IndexSet) -> Vec<usize> {
    (0..16).filter(|&i| set & (1 << i) != 0).collect()
}

pub fn index_set(ids: &[usize]) -> IndexSet {
    ids.iter().fold(0, |s, &i| s | (1 << i))
}

/// All k-element index sets in `nvars` variables, ordered lexicographically
/// as increasing tuples.
pub fn subsets(nvars: usize, k: usize) -> Vec<IndexSet> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: IndexSet, out: &mut Vec<IndexSet>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..n {
            rec(i + 1, n, k - 1, cur | (1 << i), out);
        }
    }
    rec(0, nvars, k, 0, &mut out);
    out
}

#[derive(Clone, PartialEq)]
pub struct PolyForm<K> {
    nvars: usize,
    degree: usize,
    comps: BTreeMap<IndexSet, MPoly<K>>,
}

impl<K: Scalar> PolyForm<K> {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        assert!(degree <= nvars, "form degree exceeds variable count");
        PolyForm {
            nvars,
            degree,
            comps: BTreeMap::new(),
        }
    }

    /// The 0-form `f`.
    pub fn function(f: MPoly<K>) -> Self {
        let mut out = Self::zero(f.nvars(), 0);
        out.set(0, f);
        out
    }

    /// The 1-form `sum coeffs[i] dx_i`.
    pub fn one_form(coeffs: Vec<MPoly<K>>) -> Self {
        let n = coeffs.len();
        let mut out = Self::zero(n, 1);
        for (i, c) in coeffs.into_iter().enumerate() {
            assert_eq!(c.nvars(), n, "coefficient ring mismatch");
            out.set(1 << i, c);
        }
        out
    }

    /// The basis form `dx_i1 ^ ... ^ dx_ik` for increasing indices.
    pub fn basis(nvars: usize, ids: &[usize]) -> Self {
        assert!(ids.windows(2).all(|w| w[0] < w[1]), "indices must increase");
        let mut out = Self::zero(nvars, ids.len());
        out.set(index_set(ids), MPoly::one(nvars));
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn component(&self, set: IndexSet) -> MPoly<K> {
        self.comps
            .get(&set)
            .cloned()
            .unwrap_or_else(|| MPoly::zero(self.nvars))
    }

    /// Coefficient of `dx_i` in a 1-form.
    pub fn coeff(&self, i: usize) -> MPoly<K> {
        assert_eq!(self.degree, 1, "not a 1-form");
        self.component(1 << i)
    }

    /// Coefficients of a 1-form as a vector.
    pub fn coeffs(&self) -> Vec<MPoly<K>> {
        (0..self.nvars).map(|i| self.coeff(i)).collect()
    }

    pub fn components(&self) -> impl Iterator<Item = (&IndexSet, &MPoly<K>)> {
        self.comps.iter()
    }

    pub fn set(&mut self, set: IndexSet, f: MPoly<K>) {
        assert_eq!(set.count_ones() as usize, self.degree, "index set size");
        assert!((set as usize) < (1usize << self.nvars), "index out of range");
        if f.is_zero() {
            self.comps.remove(&set);
        } else {
            self.comps.insert(set, f);
        }
    }

    fn accumulate(&mut self, set: IndexSet, f: &MPoly<K>, sign: i64) {
        if f.is_zero() {
            return;
        }
        let entry = self
            .comps
            .entry(set)
            .or_insert_with(|| MPoly::zero(self.nvars));
        if sign > 0 {
            *entry += f;
        } else {
            *entry -= f;
        }
        if entry.is_zero() {
            self.comps.remove(&set);
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::zero(self.nvars, self.degree);
        for (s, f) in &self.comps {
            out.set(*s, f.scale(c));
        }
        out
    }

    /// Product with a function.
    pub fn mul_poly(&self, p: &MPoly<K>) -> Self {
        let mut out = Self::zero(self.nvars, self.degree);
        for (s, f) in &self.comps {
            out.set(*s, f * p);
        }
        out
    }

    pub fn map_coeffs<L: Scalar>(&self, f: impl Fn(&K) -> L) -> PolyForm<L> {
        let mut out = PolyForm::zero(self.nvars, self.degree);
        for (s, c) in &self.comps {
            out.set(*s, c.map_coeffs(&f));
        }
        out
    }

    /// Graded exterior product.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "form variable count mismatch");
        assert!(
            self.degree + other.degree <= self.nvars,
            "wedge degree exceeds variable count"
        );
        let mut out = Self::zero(self.nvars, self.degree + other.degree);
        for (a, f) in &self.comps {
            for (b, g) in &other.comps {
                if a & b != 0 {
                    continue;
                }
                out.accumulate(a | b, &(f * g), merge_sign(*a, *b));
            }
        }
        out
    }

    /// Exterior derivative. The derivative of a top-degree form is zero.
    pub fn d(&self) -> Self {
        if self.degree == self.nvars {
            return Self::zero(self.nvars, self.degree);
        }
        let mut out = Self::zero(self.nvars, self.degree + 1);
        for (s, f) in &self.comps {
            for i in 0..self.nvars {
                if s & (1 << i) != 0 {
                    continue;
                }
                let sign = if position(*s, i) % 2 == 0 { 1 } else { -1 };
                out.accumulate(s | (1 << i), &f.derivative(i), sign);
            }
        }
        out
    }

    /// Interior product with a vector field.
    pub fn contract(&self, v: &PolyVField<K>) -> Result<Self> {
        assert_eq!(self.nvars, v.nvars(), "field/form variable count mismatch");
        if self.degree == 0 {
            return precondition("cannot contract a 0-form");
        }
        let mut out = Self::zero(self.nvars, self.degree - 1);
        for (s, f) in &self.comps {
            for i in indices(*s) {
                let vi = v.component(i);
                if vi.is_zero() {
                    continue;
                }
                let sign = if position(*s, i) % 2 == 0 { 1 } else { -1 };
                out.accumulate(s & !(1 << i), &(f * vi), sign);
            }
        }
        Ok(out)
    }

    /// Lie derivative by Cartan's formula.
    pub fn lie(&self, v: &PolyVField<K>) -> Self {
        let from_d = if self.degree == self.nvars {
            Self::zero(self.nvars, self.degree)
        } else {
            self.d().contract(v).expect("d raises the degree")
        };
        if self.degree == 0 {
            return from_d;
        }
        let inner = self.contract(v).expect("positive degree");
        &from_d + &inner.d()
    }

    /// Pull-back along the polynomial map whose `i`-th component is `images[i]`.
    pub fn pullback(&self, images: &[MPoly<K>]) -> Result<Self> {
        assert_eq!(images.len(), self.nvars, "one image per source variable");
        let target = images.first().map_or(0, |p| p.nvars());
        let diffs: Vec<PolyForm<K>> = images
            .iter()
            .map(|p| PolyForm::function(p.clone()).d())
            .collect();
        let mut out = PolyForm::zero(target, self.degree);
        for (s, f) in &self.comps {
            let mut piece = PolyForm::function(f.substitute(images)?);
            for i in indices(*s) {
                piece = piece.wedge(&diffs[i]);
            }
            out = &out + &piece;
        }
        Ok(out)
    }

    /// The vector field `w` in three variables with `i_w(dx0 ^ dx1 ^ dx2) = self`.
    pub fn curl3(&self) -> Result<PolyVField<K>> {
        if self.nvars != 3 || self.degree != 2 {
            return precondition("curl3 needs a 2-form in three variables");
        }
        Ok(PolyVField::new(vec![
            self.component(0b110),
            -self.component(0b101),
            self.component(0b011),
        ]))
    }

    /// Nonzero coefficients.
    pub fn coefficients(&self) -> impl Iterator<Item = &MPoly<K>> {
        self.comps.values()
    }

    /// Common degree of every coefficient, if any.
    pub fn coefficient_degree(&self) -> Option<u32> {
        let mut it = self.comps.values().map(|f| f.homogeneous_degree());
        let first = it.next()??;
        it.all(|d| d == Some(first)).then_some(first)
    }

    /// Coordinates in the basis `(index set, monomial)` with index sets in
    /// [`subsets`] order and monomials of degree `deg` in decreasing order.
    /// Panics if a coefficient has a term of another degree.
    pub fn coords(&self, deg: u32) -> Vec<K> {
        let monos = Monomial::all_of_degree(self.nvars, deg);
        let pos: std::collections::HashMap<Monomial, usize> =
            monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let sets = subsets(self.nvars, self.degree);
        let mut out = vec![K::zero(); sets.len() * monos.len()];
        for (si, s) in sets.iter().enumerate() {
            if let Some(f) = self.comps.get(s) {
                for (m, c) in f.terms() {
                    let j = *pos.get(m).expect("coefficient of unexpected degree");
                    out[si * monos.len() + j] = c.clone();
                }
            }
        }
        out
    }

    /// Inverse of [`PolyForm::coords`].
    pub fn from_coords(nvars: usize, degree: usize, deg: u32, v: &[K]) -> Self {
        let monos = Monomial::all_of_degree(nvars, deg);
        let sets = subsets(nvars, degree);
        assert_eq!(v.len(), sets.len() * monos.len(), "coordinate length");
        let mut out = Self::zero(nvars, degree);
        for (si, s) in sets.iter().enumerate() {
            let f = MPoly::from_terms(
                nvars,
                monos
                    .iter()
                    .enumerate()
                    .map(|(j, m)| (*m, v[si * monos.len() + j].clone())),
            );
            out.set(*s, f);
        }
        out
    }
}

impl<K: Scalar> Add<&PolyForm<K>> for &PolyForm<K> {
    type Output = PolyForm<K>;
    fn add(self, o: &PolyForm<K>) -> PolyForm<K> {
        assert_eq!(
            (self.nvars, self.degree),
            (o.nvars, o.degree),
            "form shape mismatch"
        );
        let mut out = self.clone();
        for (s, f) in &o.comps {
            out.accumulate(*s, f, 1);
        }
        out
    }
}

impl<K: Scalar> Sub<&PolyForm<K>> for &PolyForm<K> {
    type Output = PolyForm<K>;
    fn sub(self, o: &PolyForm<K>) -> PolyForm<K> {
        assert_eq!(
            (self.nvars, self.degree),
            (o.nvars, o.degree),
            "form shape mismatch"
        );
        let mut out = self.clone();
        for (s, f) in &o.comps {
            out.accumulate(*s, f, -1);
        }
        out
    }
}

impl<K: Scalar> Neg for &PolyForm<K> {
    type Output = PolyForm<K>;
    fn neg(self) -> PolyForm<K> {
        let mut out = self.clone();
        for f in out.comps.values_mut() {
            *f = -&*f;
        }
        out
    }
}

impl<K: Scalar> fmt::Display for PolyForm<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(s, c)| {
                let basis: Vec<String> = indices(*s).iter().map(|i| format!("dx{i}")).collect();
                if basis.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}) {}", basis.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<K: Scalar> fmt::Debug for PolyForm<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyForm[{} vars, deg {}]({})", self.nvars, self.degree, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse_poly;
    use crate::scalar::Rational;

    fn p(s: &str) -> MPoly<Rational> {
        parse_poly(s, 3).unwrap()
    }

    fn form1(a: &str, b: &str, c: &str) -> PolyForm<Rational> {
        PolyForm::one_form(vec![p(a), p(b), p(c)])
    }

    #[test]
    fn signs() {
        assert_eq!(merge_sign(0b01, 0b10), 1);
        assert_eq!(merge_sign(0b10, 0b01), -1);
        assert_eq!(merge_sign(0b100, 0b011), 1);
        assert_eq!(merge_sign(0b010, 0b101), -1);
    }

    #[test]
    fn wedge_of_differentials() {
        let dx = PolyForm::<Rational>::basis(3, &[0]);
        let dy = PolyForm::<Rational>::basis(3, &[1]);
        assert_eq!(dx.wedge(&dy), PolyForm::basis(3, &[0, 1]));
        assert_eq!(dy.wedge(&dx), -&PolyForm::basis(3, &[0, 1]));
        let w = form1("x*y", "z^2", "x - y");
        assert!(w.wedge(&w).is_zero());
    }

    #[test]
    fn exterior_derivative() {
        let f = PolyForm::function(p("x^2*y"));
        assert_eq!(f.d(), form1("2*x*y", "x^2", "0"));
        assert!(f.d().d().is_zero());
    }

    #[test]
    fn rigid_model_is_integrable_and_annihilated() {
        let w = form1("5*x^2*z - 3*y^3", "2*x*y^2 - 5*y*z", "3*y^2 - 2*x^3");
        assert!(w.wedge(&w.d()).is_zero());
        let v = PolyVField::new(vec![p("2*x"), p("3*y"), p("5*z")]);
        assert!(w.contract(&v).unwrap().is_zero());
        assert_eq!(w.lie(&v), w.scale(&Rational::from_i64(11)));
        let curl = w.d().scale(&crate::scalar::q(1, 11)).curl3().unwrap();
        let vol = PolyForm::basis(3, &[0, 1, 2]);
        let back = vol.contract(&curl).unwrap().contract(&v).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn radial_contraction() {
        let r = PolyVField::<Rational>::radial(4);
        for i in 0..4 {
            let c = PolyForm::basis(4, &[i]).contract(&r).unwrap();
            assert_eq!(c, PolyForm::function(MPoly::var(4, i)));
        }
        assert!(PolyForm::function(p("x")).contract(&PolyVField::radial(3)).is_err());
    }

    #[test]
    fn curl_of_area_form() {
        let w = PolyForm::<Rational>::basis(3, &[0, 1]).curl3().unwrap();
        assert_eq!(w, PolyVField::new(vec![p("0"), p("0"), p("1")]));
    }

    #[test]
    fn coordinates_round_trip() {
        let w = form1("x*y", "z^2", "x^2 - y*z");
        let c = w.coords(2);
        assert_eq!(c.len(), 18);
        assert_eq!(PolyForm::from_coords(3, 1, 2, &c), w);
    }
}
