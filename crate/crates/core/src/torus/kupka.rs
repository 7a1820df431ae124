//! Finiteness of the non-Kupka locus: the arithmetic families for strictly
//! increasing weights, the recorded degenerate cases, and a graded probe of
//! the non-Kupka ideal.

use num_integer::Integer;
use serde::Serialize;

use super::{involution, WeightData};
use crate::error::{precondition, Result};
use crate::exactalg::Matrix;
use crate::linmap::assemble;
use crate::mpoly::{MPoly, Monomial};
use crate::projforms::{dehomogenize, TwistedOneForm};
use num_traits::One;

use crate::scalar::{Rational, Scalar};

/// Degenerate weights whose general member has finitely many non-Kupka
/// points in degree three, as classified case by case.
pub const EXTRA_KUPKA: [(i64, i64, i64, i64); 3] = [(0, 1, 2, 3), (1, 1, 2, 5), (1, 2, 2, 7)];

/// Index (1 to 4) of the arithmetic family containing `t`, with the family
/// parameter `e = d - 1`.
fn family_of(e: i64, t: [i64; 4]) -> Option<u8> {
    let [al, be, ga, de] = t;
    let bound = al.max(be).max(ga) + 1;
    let divides = |g: i64, k: i64| g > 0 && k % g == 0;
    if (0..e - 1).any(|r| t == [r, r + 1, e, e * (r + 1) + 2 * r + 1]) {
        return Some(1);
    }
    let two = (1..=e + 1).filter(|k| (e + 1) % k == 0).any(|k| {
        (0..=bound).any(|m| m.gcd(&k) == 1 && t == [m * e, m * e + k, k * e, m * e * e + 2 * m * e + k * e + k])
    });
    if two {
        return Some(2);
    }
    let coprime_m = |m: i64| m.gcd(&ga) == 1;
    if (divides(ga, e * e) || divides(ga, e * e + e + 1))
        && (1..=bound).any(|m| coprime_m(m) && [al, be, de] == [m * e, m * (e + 1), m * (e + 1) * (e + 1) + ga])
    {
        return Some(3);
    }
    if (divides(ga, e * e) || divides(ga, e * e - 1) || divides(ga, e * e - e))
        && (1..=bound).any(|m| coprime_m(m) && [al, be, de] == [m * (e - 1), m * e, m * (e * e + e - 1) + ga])
    {
        return Some(4);
    }
    None
}

/// Whether `w` or its image under the involution lies in one of the four
/// arithmetic families. Requires `1 <= a < b < c`.
pub fn kupka_arithmetic(d: u32, w: &WeightData) -> Result<bool> {
    Ok(kupka_family(d, w)?.is_some())
}

fn kupka_family(d: u32, w: &WeightData) -> Result<Option<(u8, bool)>> {
    if !w.is_strict() {
        return precondition(format!("arithmetic criterion needs 1 <= a < b < c, got {w}"));
    }
    if d < 2 {
        return precondition("arithmetic criterion needs d >= 2");
    }
    let e = d as i64 - 1;
    let t = |x: &WeightData| [x.a(), x.b(), x.c(), x.n()];
    if let Some(f) = family_of(e, t(w)) {
        return Ok(Some((f, false)));
    }
    let iw = involution(d, w)?;
    Ok(family_of(e, t(&iw)).map(|f| (f, true)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum KupkaVerdict {
    /// Matched arithmetic family, possibly after the involution.
    Family { family: u8, via_involution: bool },
    /// One of [`EXTRA_KUPKA`].
    RecordedExtra,
    NotKupka,
}

impl KupkaVerdict {
    pub fn is_kupka(&self) -> bool {
        !matches!(self, KupkaVerdict::NotKupka)
    }
}

/// Arithmetic families for strict weights; the recorded list otherwise
/// (available in degree three only).
pub fn kupka_verdict(d: u32, w: &WeightData) -> Result<KupkaVerdict> {
    if w.is_strict() {
        return Ok(match kupka_family(d, w)? {
            Some((family, via_involution)) => KupkaVerdict::Family { family, via_involution },
            None => KupkaVerdict::NotKupka,
        });
    }
    if d != 3 {
        return precondition("degenerate weights are classified in degree three only");
    }
    let key = (w.a(), w.b(), w.c(), w.n());
    Ok(if EXTRA_KUPKA.contains(&key) {
        KupkaVerdict::RecordedExtra
    } else {
        KupkaVerdict::NotKupka
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeVerdict {
    Finite,
    Infinite,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub verdict: ProbeVerdict,
    /// Dimension of the quotient in each weighted degree `0..=bound`.
    pub piece_dims: Vec<usize>,
}

/// Dimensions of the graded pieces of `K[x]/I` up to `bound`, from the ranks
/// of the Macaulay matrices, and the resulting verdict on the trailing window.
pub fn quasi_homog_zero_dim_probe(
    gens: &[MPoly<Rational>],
    weights: &[i64],
    bound: i64,
) -> Result<ProbeReport> {
    if weights.iter().any(|&w| w <= 0) {
        return precondition("probe weights must be positive");
    }
    let mut graded = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        if g.nvars() != weights.len() {
            return precondition("generator variable count differs from the weight count");
        }
        match g.weighted_degree(weights) {
            Some(deg) => graded.push((deg, g)),
            None => return precondition(format!("generator {g} is not quasi-homogeneous")),
        }
    }
    let width = graded.iter().map(|(deg, _)| *deg).max().unwrap_or(1).max(1);
    if bound < width {
        return precondition(format!("probe bound {bound} is below the window width {width}"));
    }
    let mut piece_dims = Vec::new();
    for t in 0..=bound {
        let monos = Monomial::all_of_weighted_degree(weights, t);
        let pos: std::collections::HashMap<Monomial, usize> =
            monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut products = Vec::new();
        for (deg, g) in &graded {
            if *deg <= t {
                for m in Monomial::all_of_weighted_degree(weights, t - deg) {
                    products.push(g.mul_monomial(&m, &Rational::one()));
                }
            }
        }
        let m: Matrix<Rational> = assemble(monos.len(), &products, |p| {
            let mut col = vec![Rational::from_i64(0); monos.len()];
            for (mono, c) in p.terms() {
                col[pos[mono]] = c.clone();
            }
            col
        });
        let rank = if products.is_empty() { 0 } else { m.rank() };
        piece_dims.push(monos.len() - rank);
    }
    let window = &piece_dims[(bound - width + 1) as usize..];
    let verdict = if window.iter().all(|&x| x == 0) {
        ProbeVerdict::Finite
    } else if window.windows(2).all(|p| p[0] <= p[1]) && *window.last().expect("nonempty") > 0 {
        ProbeVerdict::Infinite
    } else {
        ProbeVerdict::Inconclusive
    };
    Ok(ProbeReport { verdict, piece_dims })
}

/// Generators of the non-Kupka locus in the chart `x3 = 1`: the four
/// coefficients of the form and the three coefficients of its differential.
pub fn non_kupka_ideal(form: &TwistedOneForm<Rational>) -> Result<Vec<MPoly<Rational>>> {
    if form.n() != 3 {
        return precondition("non-Kupka ideal is built on P^3");
    }
    let chart = [
        MPoly::var(3, 0),
        MPoly::var(3, 1),
        MPoly::var(3, 2),
        MPoly::one(3),
    ];
    let mut gens = Vec::new();
    for c in form.form().coeffs() {
        gens.push(c.substitute(&chart)?);
    }
    let affine = dehomogenize(form);
    gens.extend(affine.d().coefficients().cloned());
    Ok(gens)
}
