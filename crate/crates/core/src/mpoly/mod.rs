//! Sparse multivariate polynomials.

mod gcd;
mod monomial;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

pub use gcd::{content_gcd, gcd, gcd_all, is_unit_gcd, normalize};
pub use monomial::{binomial, Monomial, MAX_VARS};
pub use parse::{parse_poly, parse_rational};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq)]
pub struct MPoly<K> {
    nvars: usize,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Scalar> MPoly<K> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: K) -> Self {
        Self::term(nvars, Monomial::ONE, c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, K::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::term(nvars, Monomial::var(i), K::one())
    }

    pub fn term(nvars: usize, m: Monomial, c: K) -> Self {
        let mut p = Self::zero(nvars);
        debug_assert!(m.support_len() <= nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &K)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.support_len() <= self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = std::mem::replace(e.get_mut(), K::zero()) + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (*m, v.clone() * c.clone()))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        MPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &K) -> Self {
        let mut out = Self::zero(self.nvars);
        for (k, v) in &self.terms {
            out.add_term(k.mul(m), v.clone() * c.clone());
        }
        out
    }

    pub fn map_coeffs<L: Scalar>(&self, f: impl Fn(&K) -> L) -> MPoly<L> {
        MPoly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Same polynomial viewed in a ring with `nvars` variables.
    pub fn with_nvars(&self, nvars: usize) -> Self {
        assert!(
            self.terms.keys().all(|m| m.support_len() <= nvars),
            "polynomial uses variables beyond the target ring"
        );
        MPoly {
            nvars,
            terms: self.terms.clone(),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Common degree of all terms, `None` for the zero polynomial or a
    /// non-homogeneous one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Common weighted degree of all terms, or `None` when the terms disagree.
    /// The zero polynomial has no degree.
    pub fn weighted_degree(&self, w: &[i64]) -> Option<i64> {
        assert_eq!(w.len(), self.nvars, "weight count must equal variable count");
        let mut it = self.terms.keys().map(|m| m.weighted_degree(w));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn derivative(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                out.add_term(m.with_exp(i, e - 1), c.clone() * K::from_i64(e as i64));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Composition `p(images[0], ..., images[n-1])`.
    pub fn substitute(&self, images: &[MPoly<K>]) -> Result<MPoly<K>> {
        if images.len() != self.nvars {
            return Err(Error::VarMismatch(images.len(), self.nvars));
        }
        let target = images.first().map_or(0, |p| p.nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::VarMismatch(bad.nvars, target));
        }
        let mut powers: Vec<Vec<MPoly<K>>> = images
            .iter()
            .map(|p| vec![MPoly::one(target), p.clone()])
            .collect();
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                while pw.len() <= e {
                    let next = pw.last().unwrap() * &images[i];
                    pw.push(next);
                }
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            out += &t;
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[K]) -> K {
        assert_eq!(point.len(), self.nvars, "point dimension");
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Whether variable `i` occurs.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exp(i) > 0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    /// Coefficients with respect to variable `i`: entry `k` multiplies `x_i^k`.
    pub fn coefficients_in(&self, i: usize) -> Vec<MPoly<K>> {
        let mut out = vec![MPoly::zero(self.nvars); self.degree_in(i) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exp(i) as usize;
            out[e].add_term(m.with_exp(i, 0), c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    /// Homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, deg: u32) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == deg)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomial variable count mismatch"
        );
    }
}

impl<K: Field> MPoly<K> {
    /// Division by a single divisor in the global term order.
    pub fn div_rem(&self, divisor: &MPoly<K>) -> (MPoly<K>, MPoly<K>) {
        self.check_vars(divisor);
        let (lm, lc) = divisor.leading_term().expect("division by zero polynomial");
        let (lm, lc_inv) = (*lm, lc.try_inv().expect("field"));
        let mut rem = self.clone();
        let mut q = MPoly::zero(self.nvars);
        let mut r = MPoly::zero(self.nvars);
        while let Some((m, c)) = rem.terms.pop_last() {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = c * lc_inv.clone();
                for (dm, dc) in divisor.terms.iter().rev().skip(1) {
                    rem.add_term(dm.mul(&qm), -(dc.clone() * qc.clone()));
                }
                q.add_term(qm, qc);
            } else {
                r.terms.insert(m, c);
            }
        }
        (q, r)
    }

    /// Exact quotient, or `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &MPoly<K>) -> Option<MPoly<K>> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn is_divisible_by(&self, divisor: &MPoly<K>) -> bool {
        self.div_rem(divisor).1.is_zero()
    }

    /// Scaled so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.try_inv().expect("field")),
        }
    }
}

impl<K: Scalar> Neg for MPoly<K> {
    type Output = MPoly<K>;
    fn neg(mut self) -> MPoly<K> {
        for v in self.terms.values_mut() {
            *v = -std::mem::replace(v, K::zero());
        }
        self
    }
}

impl<K: Scalar> Neg for &MPoly<K> {
    type Output = MPoly<K>;
    fn neg(self) -> MPoly<K> {
        -self.clone()
    }
}

impl<K: Scalar> AddAssign<&MPoly<K>> for MPoly<K> {
    fn add_assign(&mut self, o: &MPoly<K>) {
        self.check_vars(o);
        for (m, c) in &o.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<K: Scalar> SubAssign<&MPoly<K>> for MPoly<K> {
    fn sub_assign(&mut self, o: &MPoly<K>) {
        self.check_vars(o);
        for (m, c) in &o.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<K: Scalar> Add<&MPoly<K>> for &MPoly<K> {
    type Output = MPoly<K>;
    fn add(self, o: &MPoly<K>) -> MPoly<K> {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl<K: Scalar> Sub<&MPoly<K>> for &MPoly<K> {
    type Output = MPoly<K>;
    fn sub(self, o: &MPoly<K>) -> MPoly<K> {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl<K: Scalar> Mul<&MPoly<K>> for &MPoly<K> {
    type Output = MPoly<K>;
    fn mul(self, o: &MPoly<K>) -> MPoly<K> {
        self.check_vars(o);
        let mut out = MPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<K: Scalar> $tr<MPoly<K>> for MPoly<K> {
            type Output = MPoly<K>;
            fn $f(self, o: MPoly<K>) -> MPoly<K> {
                (&self).$f(&o)
            }
        }
        impl<K: Scalar> $tr<&MPoly<K>> for MPoly<K> {
            type Output = MPoly<K>;
            fn $f(self, o: &MPoly<K>) -> MPoly<K> {
                (&self).$f(o)
            }
        }
        impl<K: Scalar> $tr<MPoly<K>> for &MPoly<K> {
            type Output = MPoly<K>;
            fn $f(self, o: MPoly<K>) -> MPoly<K> {
                self.$f(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Name of variable `i` in printed output.
pub fn var_name(i: usize) -> String {
    format!("x{i}")
}

impl<K: Scalar> fmt::Display for MPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut cs = c.to_string();
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_one = m.degree() == 0;
            if cs != "1" || is_one {
                factors.push(cs);
            }
            for i in 0..self.nvars {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(var_name(i)),
                    e => factors.push(format!("{}^{e}", var_name(i))),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<K: Scalar> fmt::Debug for MPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Rational};

    fn p(s: &str, n: usize) -> MPoly<Rational> {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn ring_operations() {
        let x = p("x", 2);
        let y = p("y", 2);
        assert_eq!(&(&x + &y) * &(&x - &y), p("x^2 - y^2", 2));
        assert_eq!(p("x^3*y", 2).derivative(0), p("3*x^2*y", 2));
        assert_eq!(&x + &MPoly::zero(2), x);
    }

    #[test]
    fn weighted_degrees() {
        assert_eq!(p("x^2*z", 3).weighted_degree(&[2, 3, 5]), Some(9));
        assert_eq!(p("x^3 + 3*y", 2).weighted_degree(&[1, 3]), Some(3));
        assert_eq!(p("x + y^2", 2).weighted_degree(&[1, 1]), None);
    }

    #[test]
    fn substitution() {
        let f = p("x^2 + 3*x*y^3", 2);
        let swapped = f.substitute(&[p("y", 2), p("x", 2)]).unwrap();
        assert_eq!(swapped, p("y^2 + 3*y*x^3", 2));
        let g = p("x0*x4^3", 5);
        let img = ["2*z", "y", "0", "x", "1"].map(|s| p(s, 3));
        assert_eq!(g.substitute(&img).unwrap(), p("2*z", 3));
    }

    #[test]
    fn division() {
        let a = p("x^3 - y^3", 2);
        let b = p("x - y", 2);
        assert_eq!(a.exact_div(&b), Some(p("x^2 + x*y + y^2", 2)));
        assert_eq!(p("x^2 + 1", 2).exact_div(&b), None);
    }

    #[test]
    fn display_round_trip() {
        let f = p("5*x0^2*x2 - 3*x1^3 + 15/2*x0 - 1", 3);
        assert_eq!(f.to_string(), "5*x0^2*x2 - 3*x1^3 + 15/2*x0 - 1");
        assert_eq!(p(&f.to_string(), 3), f);
        assert_eq!(MPoly::<Rational>::zero(2).to_string(), "0");
        assert_eq!(p("-x", 1).to_string(), "-x0");
        assert_eq!(MPoly::constant(1, qi(4)).to_string(), "4");
    }
}
