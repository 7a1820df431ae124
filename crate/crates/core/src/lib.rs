//! Exact computations on the space of degree-`d` codimension-one
//! foliations of `P^n`: polynomial arithmetic, differential forms, torus and
//! additive eigenspaces, and the degree-three component atlas on `P^3`.
//!
//! Everything is generic over the scalar type; the aliases below fix it to
//! the rationals, which is what the analyses use.

pub mod additive;
pub mod atlas;
pub mod error;
pub mod exactalg;
pub mod extcalc;
pub mod linmap;
pub mod mpoly;
pub mod projforms;
pub mod rng;
pub mod scalar;
pub mod torus;

pub use error::{Error, Result};
pub use scalar::Rational;

pub type Poly = mpoly::MPoly<Rational>;
pub type Form = extcalc::PolyForm<Rational>;
pub type VField = extcalc::PolyVField<Rational>;
pub type Twisted = projforms::TwistedOneForm<Rational>;
pub type QMatrix = exactalg::Matrix<Rational>;
