//! Scalar types for function values and weight values.
//!
//! Everything numeric in this crate runs over one of two parallel paths:
//! a fast `f64`/`Complex<f64>` path for sampling sweeps, and an exact
//! `BigRational`/`Complex<BigRational>` path for identities that must hold
//! with no rounding at all (convolution bilinearity, involution identities,
//! block reconstruction, certified condition-(2) witnesses). The two traits
//! here abstract what the algebra needs from either path.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Ordered field of values that weights and root-free norm powers live in.
///
/// Implemented by `f64` (inexact) and `BigRational` (exact).
pub trait RealScalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// True when arithmetic in this type is exact.
    const EXACT: bool;

    fn from_u64(v: u64) -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: u64) -> Self;
    fn as_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn powi(&self, e: i32) -> Self;

    /// `self^e` when representable in this type: always for `f64`,
    /// only for integral `e` on the exact path.
    fn try_powf(&self, e: f64) -> Option<Self>;

    /// Round-trippable textual form (shortest float form / `num/den`).
    fn to_repr(&self) -> String;
    fn from_repr(s: &str) -> Result<Self, String>;
}

impl RealScalar for f64 {
    const EXACT: bool = false;

    fn from_u64(v: u64) -> Self {
        v as f64
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: u64) -> Self {
        num as f64 / den as f64
    }
    fn as_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn powi(&self, e: i32) -> Self {
        f64::powi(*self, e)
    }
    fn try_powf(&self, e: f64) -> Option<Self> {
        Some(self.powf(e))
    }
    fn to_repr(&self) -> String {
        format!("{self}")
    }
    fn from_repr(s: &str) -> Result<Self, String> {
        let v: f64 = s.parse().map_err(|e| format!("bad float {s:?}: {e}"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("non-finite value {s:?}"))
        }
    }
}

impl RealScalar for BigRational {
    const EXACT: bool = true;

    fn from_u64(v: u64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: i64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn powi(&self, e: i32) -> Self {
        Pow::pow(self, e)
    }
    fn try_powf(&self, e: f64) -> Option<Self> {
        if e.fract() == 0.0 && e.abs() <= i32::MAX as f64 {
            Some(Pow::pow(self, e as i32))
        } else {
            None
        }
    }
    fn to_repr(&self) -> String {
        format!("{self}")
    }
    fn from_repr(s: &str) -> Result<Self, String> {
        s.parse().map_err(|e| format!("bad rational {s:?}: {e}"))
    }
}

/// Ring-with-involution of function values.
///
/// Implemented by the two real types themselves (real-valued functions,
/// which is what the Theorem 1.1 machinery runs on) and by `Complex` over
/// either of them.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
{
    type Real: RealScalar;

    /// Complex conjugate (identity on real scalars).
    fn conj(&self) -> Self;
    /// Squared modulus `|z|^2`, exact on the rational path.
    fn abs_sq(&self) -> Self::Real;
    fn from_real(r: Self::Real) -> Self;
    /// Multiply by a real scalar (weight values enter through here).
    fn scale(&self, r: &Self::Real) -> Self;
    /// `Some(x)` iff the value is a nonnegative real `x`.
    fn try_nonneg_real(&self) -> Option<Self::Real>;
    /// `(re, im)` textual parts for files and witnesses.
    fn value_parts(&self) -> (String, String);
    fn from_parts(re: &str, im: &str) -> Result<Self, String>;
}

impl Scalar for f64 {
    type Real = f64;

    fn conj(&self) -> Self {
        *self
    }
    fn abs_sq(&self) -> f64 {
        self * self
    }
    fn from_real(r: f64) -> Self {
        r
    }
    fn scale(&self, r: &f64) -> Self {
        self * r
    }
    fn try_nonneg_real(&self) -> Option<f64> {
        (*self >= 0.0).then_some(*self)
    }
    fn value_parts(&self) -> (String, String) {
        (RealScalar::to_repr(self), "0".to_string())
    }
    fn from_parts(re: &str, im: &str) -> Result<Self, String> {
        let im: f64 = RealScalar::from_repr(im)?;
        if im != 0.0 {
            return Err("imaginary part in a real-valued function".to_string());
        }
        RealScalar::from_repr(re)
    }
}

impl Scalar for BigRational {
    type Real = BigRational;

    fn conj(&self) -> Self {
        self.clone()
    }
    fn abs_sq(&self) -> BigRational {
        self * self
    }
    fn from_real(r: BigRational) -> Self {
        r
    }
    fn scale(&self, r: &BigRational) -> Self {
        self * r
    }
    fn try_nonneg_real(&self) -> Option<BigRational> {
        (!self.is_negative()).then(|| self.clone())
    }
    fn value_parts(&self) -> (String, String) {
        (RealScalar::to_repr(self), "0".to_string())
    }
    fn from_parts(re: &str, im: &str) -> Result<Self, String> {
        let im: BigRational = RealScalar::from_repr(im)?;
        if !im.is_zero() {
            return Err("imaginary part in a real-valued function".to_string());
        }
        RealScalar::from_repr(re)
    }
}

impl<R> Scalar for Complex<R>
where
    R: RealScalar + num_traits::Num,
{
    type Real = R;

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn abs_sq(&self) -> R {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
    fn from_real(r: R) -> Self {
        Complex::new(r, R::zero())
    }
    fn scale(&self, r: &R) -> Self {
        Complex::new(self.re.clone() * r.clone(), self.im.clone() * r.clone())
    }
    fn try_nonneg_real(&self) -> Option<R> {
        (self.im.is_zero() && self.re >= R::zero()).then(|| self.re.clone())
    }
    fn value_parts(&self) -> (String, String) {
        (self.re.to_repr(), self.im.to_repr())
    }
    fn from_parts(re: &str, im: &str) -> Result<Self, String> {
        Ok(Complex::new(R::from_repr(re)?, R::from_repr(im)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_repr_round_trips() {
        for v in [0.0, -1.5, 0.1, 1.0 / 3.0, 2e-300] {
            assert_eq!(f64::from_repr(&RealScalar::to_repr(&v)).unwrap(), v);
        }
        assert!(f64::from_repr("inf").is_err());
        assert!(f64::from_repr("NaN").is_err());
    }

    #[test]
    fn rational_repr_round_trips() {
        let v = BigRational::from_ratio(-22, 7);
        assert_eq!(BigRational::from_repr(&v.to_repr()).unwrap(), v);
        assert_eq!(BigRational::from_repr("5").unwrap(), BigRational::from_u64(5));
    }

    #[test]
    fn rational_powf_only_integral() {
        let half = BigRational::from_ratio(1, 2);
        assert_eq!(half.try_powf(2.0), Some(BigRational::from_ratio(1, 4)));
        assert_eq!(half.try_powf(-2.0), Some(BigRational::from_u64(4)));
        assert_eq!(half.try_powf(0.5), None);
    }

    #[test]
    fn complex_conj_and_abs_sq() {
        let z = Complex::new(3.0, -4.0);
        assert_eq!(Scalar::conj(&z), Complex::new(3.0, 4.0));
        assert_eq!(z.abs_sq(), 25.0);
        assert_eq!(z.try_nonneg_real(), None);
        assert_eq!(Complex::new(2.0, 0.0).try_nonneg_real(), Some(2.0));
    }
}
