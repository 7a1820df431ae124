//! Foliations tangent to algebraic actions of `(C,+)`, generated by the
//! nilpotent fields `v_(a,b) = x1 d/dx0 + a x2 d/dx1 + b x3 d/dx2`.

use std::fmt;

use serde::Serialize;

use crate::error::{precondition, Result};
use crate::exactalg::Matrix;
use crate::extcalc::{PolyForm, PolyVField};
use crate::linmap::assemble;
use crate::mpoly::{parse_poly, MPoly, Monomial};
use crate::projforms::{projective_normalizer_dim, FormSpaceBasis, TwistedOneForm};
use crate::scalar::{qi, Rational};

/// The pair `(a,b)` with `a, b` in `{0,1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NilpotentData {
    a: u8,
    b: u8,
}

impl NilpotentData {
    pub fn new(a: u8, b: u8) -> Result<Self> {
        if a > 1 || b > 1 {
            return precondition(format!("nilpotent data ({a},{b}) outside {{0,1}}"));
        }
        Ok(NilpotentData { a, b })
    }

    pub fn a(&self) -> u8 {
        self.a
    }

    pub fn b(&self) -> u8 {
        self.b
    }

    /// `v_(0,0)` vanishes along a hyperplane; its foliations are linear pull-backs.
    pub fn is_linear_pullback(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl fmt::Display for NilpotentData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1,{},{})", self.a, self.b)
    }
}

fn field_matrix(rows: [[i64; 4]; 4]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
}

fn nilpotent_rows(p: &NilpotentData) -> Vec<Vec<Rational>> {
    let (a, b) = (p.a as i64, p.b as i64);
    field_matrix([[0, 1, 0, 0], [0, 0, a, 0], [0, 0, 0, b], [0, 0, 0, 0]])
}

pub fn nilpotent_field(p: &NilpotentData) -> PolyVField<Rational> {
    PolyVField::linear(&nilpotent_rows(p))
}

fn kernel_in(basis: &FormSpaceBasis<Rational>, v: &PolyVField<Rational>, eigen: &Rational) -> Vec<TwistedOneForm<Rational>> {
    let d = basis.d();
    let nv = basis.n() + 1;
    let rows = Monomial::all_of_degree(nv, d + 2).len() + nv * Monomial::all_of_degree(nv, d + 1).len();
    let m = assemble(rows, basis.forms(), |b| {
        let mut col = b.form().contract(v).expect("1-form").coords(d + 2);
        col.extend((&b.form().lie(v) - &b.form().scale(eigen)).coords(d + 1));
        col
    });
    m.kernel_basis().iter().map(|c| basis.from_coords(c)).collect()
}

/// Basis of `A_d(1,a,b) = { w : i_v w = 0, L_v w = 0 }`.
pub fn additive_space(d: u32, p: &NilpotentData) -> Vec<TwistedOneForm<Rational>> {
    additive_space_in(&FormSpaceBasis::new(3, d), p)
}

pub fn additive_space_in(basis: &FormSpaceBasis<Rational>, p: &NilpotentData) -> Vec<TwistedOneForm<Rational>> {
    kernel_in(basis, &nilpotent_field(p), &qi(0))
}

/// `15 + (dim A - 1) - dim normalizer`.
pub fn ta_dim_from(additive_dim: usize, p: &NilpotentData) -> Result<usize> {
    if p.is_linear_pullback() {
        return precondition("v_(0,0) has codimension-one zeros");
    }
    if additive_dim == 0 {
        return precondition(format!("empty additive space for {p}"));
    }
    Ok(15 + additive_dim - 1 - projective_normalizer_dim(&nilpotent_field(p)))
}

pub fn ta_dim(d: u32, p: &NilpotentData) -> Result<usize> {
    ta_dim_from(additive_space(d, p).len(), p)
}

/// `v_(1,1) + eps v_(1,2,3)`.
pub fn beta_field(eps: &Rational) -> PolyVField<Rational> {
    let nil = nilpotent_field(&NilpotentData { a: 1, b: 1 });
    let diag = PolyVField::diagonal(&[qi(1), qi(2), qi(3), qi(0)]);
    nil.add(&diag.scale(eps))
}

/// Kernel of `w -> (i_v w, L_v w - (2d+1) eps w)` for `v = beta_field(eps)`.
pub fn beta_kernel(d: u32, eps: &Rational) -> Vec<TwistedOneForm<Rational>> {
    beta_kernel_in(&FormSpaceBasis::new(3, d), eps)
}

pub fn beta_kernel_in(basis: &FormSpaceBasis<Rational>, eps: &Rational) -> Vec<TwistedOneForm<Rational>> {
    let n = qi(2 * basis.d() as i64 + 1) * eps;
    kernel_in(basis, &beta_field(eps), &n)
}

/// A quotient map `(L1 : L2 : Q)` to `P(1,1,2)` whose fibres are the orbits
/// of `v_(a,b)`, with a perturbation `Q + eps q` and the linear fields
/// `x -> M(eps) x` tangent to the perturbed fibres.
struct Deformation {
    l1: MPoly<Rational>,
    l2: MPoly<Rational>,
    q0: MPoly<Rational>,
    q1: MPoly<Rational>,
    m0: [[i64; 4]; 4],
    m1: [[i64; 4]; 4],
}

fn deformation(p: &NilpotentData) -> Result<Deformation> {
    let poly = |s: &str| parse_poly(s, 4).expect("fixed polynomial");
    match (p.a, p.b) {
        (1, 0) => Ok(Deformation {
            l1: poly("x2"),
            l2: poly("x3"),
            q0: poly("x1^2 - 2*x0*x2"),
            q1: poly("-x0^2"),
            m0: [[0, 1, 0, 0], [0, 0, 1, 0], [0; 4], [0; 4]],
            m1: [[0; 4], [1, 0, 0, 0], [0; 4], [0; 4]],
        }),
        (0, 1) => Ok(Deformation {
            l1: poly("x1"),
            l2: poly("x3"),
            q0: poly("x1*x2 - x0*x3"),
            q1: poly("x0*x2"),
            m0: [[0, 1, 0, 0], [0; 4], [0, 0, 0, 1], [0; 4]],
            m1: [[1, 0, 0, 0], [0; 4], [0, 0, -1, 0], [0; 4]],
        }),
        _ => precondition(format!("no quotient to P(1,1,2) recorded for {p}")),
    }
}

impl Deformation {
    fn q(&self, eps: &Rational) -> MPoly<Rational> {
        &self.q0 + &self.q1.scale(eps)
    }

    fn matrix(&self, eps: &Rational) -> Matrix<Rational> {
        let rows = (0..4)
            .map(|i| (0..4).map(|j| qi(self.m0[i][j]) + qi(self.m1[i][j]) * eps).collect())
            .collect();
        Matrix::from_rows(4, rows)
    }

    /// Pull-back of the weighted form `A dL1 + B dL2 + C dQ` (coefficients
    /// in the variables `L1, L2, Q`) along `(L1, L2, Q + eps q)`.
    fn pull(&self, abc: &[MPoly<Rational>; 3], eps: &Rational) -> PolyForm<Rational> {
        let q = self.q(eps);
        let images = [self.l1.clone(), self.l2.clone(), q.clone()];
        let mut out = PolyForm::zero(4, 1);
        for (coef, g) in abc.iter().zip([&self.l1, &self.l2, &q]) {
            let c = coef.substitute(&images).expect("three images");
            out = &out + &PolyForm::function(g.clone()).d().mul_poly(&c);
        }
        out
    }

    /// Writes `w = A dL1 + B dL2 + C dQ` with `A, B, C` polynomial in `L1, L2, Q`.
    fn decompose(&self, w: &TwistedOneForm<Rational>) -> Option<[MPoly<Rational>; 3]> {
        let d = w.d() as i64;
        let weights = [1, 1, 2];
        let slots: Vec<(usize, Monomial)> = [(0, d + 1), (1, d + 1), (2, d)]
            .into_iter()
            .flat_map(|(k, deg)| Monomial::all_of_weighted_degree(&weights, deg).into_iter().map(move |m| (k, m)))
            .collect();
        let zero = qi(0);
        let deg = w.d() + 1;
        let rows = 4 * Monomial::all_of_degree(4, deg).len();
        let columns = assemble(rows, &slots, |(k, m)| {
            let mut abc = [MPoly::zero(3), MPoly::zero(3), MPoly::zero(3)];
            abc[*k] = MPoly::term(3, *m, qi(1));
            self.pull(&abc, &zero).coords(deg)
        });
        let sol = columns.solve(&w.form().coords(deg))?;
        let mut abc = [MPoly::zero(3), MPoly::zero(3), MPoly::zero(3)];
        for ((k, m), c) in slots.iter().zip(sol) {
            abc[*k].add_term(*m, c);
        }
        Some(abc)
    }
}

/// Whether `tr M = 0`, `M^3 = c M` with `c = tr(M^2)/2 != 0` and `rank M = 2`: then `M`
/// is diagonalizable with eigenvalues `+-sqrt(c), 0, 0`, hence conjugate over
/// the algebraic closure to a multiple of `x2 d/dx2 - x3 d/dx3`, which equals
/// `v_(1,1,2)` minus the radial field.
fn conjugate_to_weight_field(m: &Matrix<Rational>) -> bool {
    let trace = |a: &Matrix<Rational>| (0..4).map(|i| a[(i, i)].clone()).fold(qi(0), |acc, x| acc + x);
    let m2 = m.mul(m);
    let c = trace(&m2) / qi(2);
    trace(m) == qi(0) && c != qi(0) && m.rank() == 2 && m2.mul(m) == m.map(|x| x * &c)
}

/// Evidence that `TA_d(1,a,b)` lies in the closure of `TM_d(1,1,2;d+2)`:
/// every basis member of `A_d(1,a,b)` factors through the quotient map, and
/// the perturbed pull-backs are tangent to fields conjugate to `v_(1,1,2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentWitness {
    pub nilpotent: NilpotentData,
    pub members: usize,
    /// Members written as `A dL1 + B dL2 + C dQ`.
    pub decomposed: usize,
    /// Perturbation parameters checked.
    pub samples: Vec<String>,
    /// The perturbed fields are semi-simple of the required type at every sample.
    pub semisimple: bool,
    /// `i_v w = 0` and `L_v w = 0` for every perturbed member and sample.
    pub tangent: bool,
}

impl ContainmentWitness {
    pub fn holds(&self) -> bool {
        self.members > 0 && self.decomposed == self.members && self.semisimple && self.tangent
    }
}

pub fn containment_witness(d: u32, p: &NilpotentData, samples: &[Rational]) -> Result<ContainmentWitness> {
    let def = deformation(p)?;
    if def.matrix(&qi(0)) != Matrix::from_rows(4, nilpotent_rows(p)) {
        return precondition("recorded deformation does not start at v_(a,b)");
    }
    let space = additive_space(d, p);
    let parts: Vec<_> = space.iter().filter_map(|w| def.decompose(w)).collect();
    let mut semisimple = true;
    let mut tangent = true;
    for eps in samples.iter().filter(|e| **e != qi(0)) {
        let m = def.matrix(eps);
        semisimple &= conjugate_to_weight_field(&m);
        let rows: Vec<Vec<Rational>> = m.rows_iter().map(|r| r.to_vec()).collect();
        let v = PolyVField::linear(&rows);
        for abc in &parts {
            let w = def.pull(abc, eps);
            tangent &= !w.is_zero()
                && w.contract(&v).is_ok_and(|c| c.is_zero())
                && w.lie(&v).is_zero()
                && w.contract(&PolyVField::radial(4)).is_ok_and(|c| c.is_zero());
        }
    }
    Ok(ContainmentWitness {
        nilpotent: *p,
        members: space.len(),
        decomposed: parts.len(),
        samples: samples.iter().map(|e| e.to_string()).collect(),
        semisimple,
        tangent,
    })
}
