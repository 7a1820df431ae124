//! Multivariate gcd over the rationals: recursive content with a
//! subresultant remainder sequence in the lowest-index variable.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MPoly, Monomial};
use crate::scalar::{common_denominator, Rational};

/// Scales to integer coefficients with content 1 and a positive coefficient on
/// the lexicographically largest monomial.
pub fn normalize(p: &MPoly<Rational>) -> MPoly<Rational> {
    let Some(lead) = p.terms().map(|(m, _)| *m).max_by(Monomial::cmp_lex) else {
        return p.clone();
    };
    let den = common_denominator(p.terms().map(|(_, c)| c));
    let num_gcd = p
        .terms()
        .fold(BigInt::zero(), |g, (_, c)| g.gcd(&(c.numer() * (&den / c.denom()))));
    let mut s = Rational::new(den, num_gcd);
    if (p.coeff(&lead).clone() * s.clone()).is_negative() {
        s = -s;
    }
    p.scale(&s)
}

fn first_var(p: &MPoly<Rational>) -> Option<usize> {
    (0..p.nvars()).find(|&i| p.involves(i))
}

fn is_constant(p: &MPoly<Rational>) -> bool {
    p.terms().all(|(m, _)| m.degree() == 0)
}

/// Gcd of a list, normalized; the gcd of an empty list (or of zeros) is zero.
pub fn gcd_all<'a>(nvars: usize, ps: impl IntoIterator<Item = &'a MPoly<Rational>>) -> MPoly<Rational> {
    let mut acc = MPoly::zero(nvars);
    for p in ps {
        acc = gcd(&acc, p);
        if !acc.is_zero() && is_constant(&acc) {
            return acc;
        }
    }
    acc
}

/// Gcd of the coefficients of `p` as a polynomial in `x_v`.
pub fn content_gcd(p: &MPoly<Rational>, v: usize) -> MPoly<Rational> {
    let coeffs = p.coefficients_in(v);
    gcd_all(p.nvars(), coeffs.iter().filter(|c| !c.is_zero()))
}

pub fn gcd(p: &MPoly<Rational>, q: &MPoly<Rational>) -> MPoly<Rational> {
    assert_eq!(p.nvars(), q.nvars(), "polynomial variable count mismatch");
    if p.is_zero() {
        return normalize(q);
    }
    if q.is_zero() {
        return normalize(p);
    }
    let v = match (first_var(p), first_var(q)) {
        (None, _) | (_, None) => return MPoly::one(p.nvars()),
        (Some(a), Some(b)) => a.min(b),
    };
    if !p.involves(v) {
        return gcd(p, &content_gcd(q, v));
    }
    if !q.involves(v) {
        return gcd(&content_gcd(p, v), q);
    }
    let cp = content_gcd(p, v);
    let cq = content_gcd(q, v);
    let pp = p.exact_div(&cp).expect("content divides");
    let qq = q.exact_div(&cq).expect("content divides");
    let c = gcd(&cp, &cq);
    let g = primitive_gcd(&pp, &qq, v);
    normalize(&(&c * &g))
}

type Univariate = Vec<MPoly<Rational>>;

fn trim(mut a: Univariate) -> Univariate {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &Univariate, b: &Univariate) -> Univariate {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.clone();
    let mut k = r.len() - 1;
    loop {
        let coef = r[k].clone();
        for c in r.iter_mut() {
            *c = &*c * lc;
        }
        if !coef.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k - db + j] -= &(&coef * bj);
            }
        }
        if k == db {
            break;
        }
        k -= 1;
    }
    r.truncate(db);
    trim(r)
}

fn from_univariate(a: &Univariate, v: usize, nvars: usize) -> MPoly<Rational> {
    let x = MPoly::var(nvars, v);
    let mut out = MPoly::zero(nvars);
    let mut pw = MPoly::one(nvars);
    for c in a {
        out += &(c * &pw);
        pw = &pw * &x;
    }
    out
}

/// Gcd of two polynomials that are primitive with respect to `x_v`.
fn primitive_gcd(p: &MPoly<Rational>, q: &MPoly<Rational>, v: usize) -> MPoly<Rational> {
    let nvars = p.nvars();
    let mut a = trim(p.coefficients_in(v));
    let mut b = trim(q.coefficients_in(v));
    if a.len() < 2 || b.len() < 2 {
        return MPoly::one(nvars);
    }
    if a.len().cmp(&b.len()) == Ordering::Less {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = MPoly::one(nvars);
    let mut h = MPoly::one(nvars);
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return MPoly::one(nvars);
        }
        let divisor = &g * &h.pow(delta);
        let next: Univariate = r
            .iter()
            .map(|c| c.exact_div(&divisor).expect("subresultant division is exact"))
            .collect();
        a = std::mem::replace(&mut b, next);
        g = a.last().expect("nonempty").clone();
        if delta > 0 {
            h = g
                .pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant division is exact");
        }
    }
    let bpoly = from_univariate(&b, v, nvars);
    let cont = content_gcd(&bpoly, v);
    bpoly.exact_div(&cont).expect("content divides")
}

/// Whether the normalized gcd is the unit polynomial.
pub fn is_unit_gcd(g: &MPoly<Rational>) -> bool {
    g.len() == 1 && g.coeff(&Monomial::ONE).is_one()
}
