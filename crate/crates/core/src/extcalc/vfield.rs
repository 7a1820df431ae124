use std::fmt;

use crate::mpoly::MPoly;
use crate::scalar::Scalar;

/// Polynomial vector field `sum v_i d/dx_i`.
#[derive(Clone, PartialEq)]
pub struct PolyVField<K> {
    comps: Vec<MPoly<K>>,
}

impl<K: Scalar> PolyVField<K> {
    pub fn new(comps: Vec<MPoly<K>>) -> Self {
        let n = comps.len();
        assert!(comps.iter().all(|c| c.nvars() == n), "component ring mismatch");
        PolyVField { comps }
    }

    pub fn zero(nvars: usize) -> Self {
        PolyVField::new(vec![MPoly::zero(nvars); nvars])
    }

    /// The radial field `sum x_i d/dx_i`.
    pub fn radial(nvars: usize) -> Self {
        PolyVField::new((0..nvars).map(|i| MPoly::var(nvars, i)).collect())
    }

    /// Diagonal linear field `sum w_i x_i d/dx_i`.
    pub fn diagonal(weights: &[K]) -> Self {
        let n = weights.len();
        PolyVField::new(
            weights
                .iter()
                .enumerate()
                .map(|(i, w)| MPoly::var(n, i).scale(w))
                .collect(),
        )
    }

    /// Linear field `x -> M x`, i.e. component `i` is `sum_j M[i][j] x_j`.
    pub fn linear(m: &[Vec<K>]) -> Self {
        let n = m.len();
        PolyVField::new(
            m.iter()
                .map(|row| {
                    let mut c = MPoly::zero(n);
                    for (j, a) in row.iter().enumerate() {
                        c += &MPoly::var(n, j).scale(a);
                    }
                    c
                })
                .collect(),
        )
    }

    pub fn nvars(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, i: usize) -> &MPoly<K> {
        &self.comps[i]
    }

    pub fn components(&self) -> &[MPoly<K>] {
        &self.comps
    }

    /// Derivation `v(f) = sum v_i df/dx_i`.
    pub fn apply(&self, f: &MPoly<K>) -> MPoly<K> {
        let mut out = MPoly::zero(self.nvars());
        for (i, vi) in self.comps.iter().enumerate() {
            if !vi.is_zero() {
                out += &(vi * &f.derivative(i));
            }
        }
        out
    }

    /// Lie bracket `[self, other]`.
    pub fn bracket(&self, other: &Self) -> Self {
        PolyVField::new(
            (0..self.nvars())
                .map(|i| &self.apply(&other.comps[i]) - &other.apply(&self.comps[i]))
                .collect(),
        )
    }

    pub fn scale(&self, c: &K) -> Self {
        PolyVField::new(self.comps.iter().map(|f| f.scale(c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        PolyVField::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }
}

impl<K: Scalar> fmt::Display for PolyVField<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c}) d/dx{i}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<K: Scalar> fmt::Debug for PolyVField<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyVField({self})")
    }
}
