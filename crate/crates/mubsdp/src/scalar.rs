//! Scalar abstraction shared by linear forms and elimination.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

/// A field element usable by [`crate::reducer::LinearForm`] and [`crate::linalg`].
///
/// Exact types report `is_negligible` only for true zero; floats use a
/// magnitude threshold so pivoting stays stable.
pub trait Scalar: Num + Clone + Debug + Display + Neg<Output = Self> + PartialOrd + Send + Sync {
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn to_f64(&self) -> f64;
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
    fn is_negligible(&self) -> bool;
    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn from_rational(q: &BigRational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_negligible(&self) -> bool {
        self.abs() <= 1e-12
    }
}

impl Scalar for f32 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f32 / den as f32
    }
    fn from_rational(q: &BigRational) -> Self {
        ToPrimitive::to_f32(q).unwrap_or(f32::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn is_negligible(&self) -> bool {
        self.abs() <= 1e-5
    }
}

/// `n` as a scalar.
pub fn int<S: Scalar>(n: i64) -> S {
    S::from_ratio(n, 1)
}

/// Converts an exact rational into any scalar.
pub fn from_rational<S: Scalar>(q: &BigRational) -> S {
    S::from_rational(q)
}

/// Exact rational `1`.
pub fn rat_one() -> BigRational {
    BigRational::one()
}

/// Exact rational `num/den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::from_ratio(num, den)
}

/// Renders an exact rational with `digits` significant decimal digits.
pub fn rational_to_decimal(q: &BigRational, digits: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let neg = q.numer() < &BigInt::zero();
    let mut num = q.numer().clone();
    if neg {
        num = -num;
    }
    let den = q.denom().clone();
    let ten = BigInt::from(10);

    // Find the decimal exponent e with 10^e <= |q| < 10^(e+1).
    let mut e: i64 = 0;
    {
        let mut n = num.clone();
        let mut dd = den.clone();
        while n >= &dd * &ten {
            dd *= &ten;
            e += 1;
        }
        while n < dd {
            n *= &ten;
            e -= 1;
        }
    }
    let shift = digits as i64 - 1 - e;
    let (scaled_n, scaled_d) = if shift >= 0 {
        (num * ten.pow(shift as u32), den)
    } else {
        (num, den * ten.pow((-shift) as u32))
    };
    // Round half away from zero.
    let two = BigInt::from(2);
    let mut mantissa = (&scaled_n * &two + &scaled_d) / (&scaled_d * &two);
    let mut exp = e;
    if mantissa.to_string().len() > digits {
        mantissa /= &ten;
        exp += 1;
    }
    let mut s = mantissa.to_string();
    while s.len() > 1 && s.ends_with('0') {
        s.pop();
    }
    let body = if s.len() == 1 {
        s.clone()
    } else {
        format!("{}.{}", &s[..1], &s[1..])
    };
    let sign = if neg { "-" } else { "" };
    if exp == 0 {
        format!("{sign}{body}")
    } else {
        format!("{sign}{body}e{exp}")
    }
}
