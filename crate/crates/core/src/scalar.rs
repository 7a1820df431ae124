//! Coefficient rings.
//!
//! Everything above this module is written against [`Scalar`] (a commutative
//! ring with enough structure to print and to test for units) or [`Field`].
//! Three instances ship with the crate:
//!
//! * [`Rational`], arbitrary precision, the ground field of every reported
//!   number;
//! * [`Fp`], the prime field of order 2^61 - 1, used as a fast modular
//!   shadow of rational matrices;
//! * [`Dual`], `K[eps]/(eps^2)`, used to take exact first derivatives of
//!   polynomial parameterizations.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactalg::Matrix;

pub type Rational = num_rational::BigRational;

/// A commutative ring with identity.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn from_i64(v: i64) -> Self;

    /// Image of a rational number. Panics if the denominator is not a unit.
    fn from_rational(r: &Rational) -> Self;

    /// Multiplicative inverse when `self` is a unit.
    fn try_inv(&self) -> Option<Self>;

    fn is_unit(&self) -> bool {
        self.try_inv().is_some()
    }
}

/// A field. Linear algebra dispatches through the two hooks so that the
/// rational instance can use fraction-free elimination.
pub trait Field: Scalar + Div<Output = Self> {
    fn matrix_rank(m: &Matrix<Self>) -> usize {
        crate::exactalg::gauss::rank(m)
    }

    fn matrix_kernel(m: &Matrix<Self>) -> Vec<Vec<Self>> {
        crate::exactalg::gauss::kernel(m)
    }
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Field for Rational {
    fn matrix_rank(m: &Matrix<Self>) -> usize {
        use crate::exactalg::bareiss;
        bareiss::modular_full_rank(m).unwrap_or_else(|| bareiss::rank(m))
    }

    fn matrix_kernel(m: &Matrix<Self>) -> Vec<Vec<Self>> {
        use crate::exactalg::bareiss;
        if bareiss::modular_full_rank(m) == Some(m.ncols()) {
            return Vec::new();
        }
        bareiss::kernel(m)
    }
}

/// `a/b` as a rational.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer `v` as a rational.
pub fn qi(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Whether `r` is the square of a rational number.
pub fn is_rational_square(r: &Rational) -> bool {
    if r.is_negative() {
        return false;
    }
    let is_sq = |n: &BigInt| {
        let s = n.sqrt();
        &s * &s == *n
    };
    is_sq(r.numer()) && is_sq(r.denom())
}

/// The Mersenne prime 2^61 - 1.
pub const FP_MODULUS: u64 = (1 << 61) - 1;

/// Element of the prime field of order [`FP_MODULUS`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % FP_MODULUS)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn reduce128(x: u128) -> u64 {
        let p = FP_MODULUS as u128;
        let lo = x & p;
        let hi = x >> 61;
        let mut s = lo + hi;
        while s >= p {
            s -= p;
        }
        s as u64
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Reduction of a big integer.
    pub fn from_bigint(n: &BigInt) -> Self {
        let m = BigInt::from(FP_MODULUS);
        let r = n.mod_floor(&m);
        Fp(r.to_u64().expect("residue fits"))
    }

    /// Reduction of a rational number; `None` when the denominator vanishes mod p.
    pub fn checked_from_rational(r: &Rational) -> Option<Self> {
        let den = Fp::from_bigint(r.denom());
        den.try_inv().map(|inv| Fp::from_bigint(r.numer()) * inv)
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp(1)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        let s = self.0 + o.0;
        Fp(if s >= FP_MODULUS { s - FP_MODULUS } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        if self.0 >= o.0 {
            Fp(self.0 - o.0)
        } else {
            Fp(self.0 + FP_MODULUS - o.0)
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(FP_MODULUS - self.0)
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        Fp(Fp::reduce128(self.0 as u128 * o.0 as u128))
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Fp) -> Fp {
        self * o.try_inv().expect("division by zero in Fp")
    }
}

impl Scalar for Fp {
    fn from_i64(v: i64) -> Self {
        if v >= 0 {
            Fp::new(v as u64)
        } else {
            -Fp::new(v.unsigned_abs())
        }
    }

    fn from_rational(r: &Rational) -> Self {
        Fp::checked_from_rational(r).expect("denominator divisible by the modulus")
    }

    fn try_inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(FP_MODULUS - 2))
        }
    }
}

impl Field for Fp {}

/// Dual number `re + eps * eps_part` with `eps^2 = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct Dual<K> {
    pub re: K,
    pub eps: K,
}

impl<K: Scalar> Dual<K> {
    pub fn new(re: K, eps: K) -> Self {
        Dual { re, eps }
    }

    pub fn constant(re: K) -> Self {
        Dual { re, eps: K::zero() }
    }

    /// The infinitesimal `eps` itself.
    pub fn epsilon() -> Self {
        Dual {
            re: K::zero(),
            eps: K::one(),
        }
    }
}

impl<K: Scalar> Display for Dual<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}e)", self.re, self.eps)
    }
}

impl<K: Scalar> Zero for Dual<K> {
    fn zero() -> Self {
        Dual::constant(K::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl<K: Scalar> One for Dual<K> {
    fn one() -> Self {
        Dual::constant(K::one())
    }
}

impl<K: Scalar> Add for Dual<K> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual::new(self.re + o.re, self.eps + o.eps)
    }
}

impl<K: Scalar> Sub for Dual<K> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual::new(self.re - o.re, self.eps - o.eps)
    }
}

impl<K: Scalar> Neg for Dual<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<K: Scalar> Mul for Dual<K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let eps = self.re.clone() * o.eps + self.eps * o.re.clone();
        Dual::new(self.re * o.re, eps)
    }
}

impl<K: Scalar> Scalar for Dual<K> {
    fn from_i64(v: i64) -> Self {
        Dual::constant(K::from_i64(v))
    }

    fn from_rational(r: &Rational) -> Self {
        Dual::constant(K::from_rational(r))
    }

    fn try_inv(&self) -> Option<Self> {
        let inv = self.re.try_inv()?;
        // (a + b e)^-1 = a^-1 - b a^-2 e
        let eps = -(self.eps.clone() * inv.clone() * inv.clone());
        Some(Dual::new(inv, eps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_round_trip() {
        for v in [1i64, 2, 3, 12345, -7, 1 << 40] {
            let x = Fp::from_i64(v);
            assert_eq!(x * x.try_inv().unwrap(), Fp::one());
        }
        assert!(Fp::zero().try_inv().is_none());
    }

    #[test]
    fn fp_reduces_rationals() {
        let r = q(3, 7);
        let x = Fp::from_rational(&r);
        assert_eq!(x * Fp::from_i64(7), Fp::from_i64(3));
    }

    #[test]
    fn dual_numbers_differentiate() {
        // (2 + e)^3 = 8 + 12 e
        let x = Dual::new(qi(2), qi(1));
        let cube = x.clone() * x.clone() * x;
        assert_eq!(cube, Dual::new(qi(8), qi(12)));
        let inv = Dual::new(qi(2), qi(1)).try_inv().unwrap();
        assert_eq!(inv, Dual::new(q(1, 2), q(-1, 4)));
        assert!(Dual::<Rational>::epsilon().try_inv().is_none());
    }

    #[test]
    fn rational_squares() {
        assert!(is_rational_square(&q(9, 4)));
        assert!(is_rational_square(&qi(0)));
        assert!(!is_rational_square(&qi(2)));
        assert!(!is_rational_square(&qi(-4)));
    }
}
