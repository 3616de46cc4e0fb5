//! Scalar fields for truncated series: exact big rationals and `f64`.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, the default (exact) backend.
pub type Rational = BigRational;

/// Coefficient field of a [`TruncSeries`](crate::series::TruncSeries).
///
/// The exact backend (`Rational`) is closed under the four field operations
/// without rounding. The float backend is only meant for places where a
/// transcendental value has to be evaluated.
pub trait Scalar:
    Clone + PartialEq + PartialOrd + fmt::Debug + fmt::Display + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i64(n: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn is_positive(&self) -> bool;

    /// Returns the value as an integer when it is one (and fits).
    fn as_integer(&self) -> Option<i64>;

    /// `self^t`, or `None` when the result does not live in this field.
    fn pow_scalar(&self, t: &Self) -> Option<Self>;

    fn powi(&self, n: i64) -> Self {
        if n < 0 {
            return Self::one() / self.powi(-n);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Scalar for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }

    fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn pow_scalar(&self, t: &Self) -> Option<Self> {
        let p = t.numer().to_i64()?;
        let q = t.denom().to_u32()?;
        if q == 1 {
            return Some(self.powi(p));
        }
        if Signed::is_negative(self) {
            return None;
        }
        let num = exact_root(self.numer(), q)?;
        let den = exact_root(self.denom(), q)?;
        Some(Rational::new(num, den).powi(p))
    }
}

fn exact_root(x: &BigInt, q: u32) -> Option<BigInt> {
    let r = x.nth_root(q);
    if num_traits::pow(r.clone(), q as usize) == *x {
        Some(r)
    } else {
        None
    }
}

/// Converts a big rational to the nearest-ish `f64` without overflowing on
/// huge numerators and denominators.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    // Shift both parts down to a comparable size first.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let n = (r.numer() >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n - shift_d) as i32)
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_positive(&self) -> bool {
        *self > 0.0
    }

    fn as_integer(&self) -> Option<i64> {
        if self.fract() == 0.0 && self.abs() < 9.0e15 {
            Some(*self as i64)
        } else {
            None
        }
    }

    fn pow_scalar(&self, t: &Self) -> Option<Self> {
        let v = self.powf(*t);
        v.is_finite().then_some(v)
    }
}

/// Shorthand for building an exact rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact factorial as a rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

/// Renders an exact rational as `p/q` (or `p` when the denominator is 1).
pub fn render_rational(r: &Rational) -> String {
    if r.is_zero() {
        "0".to_string()
    } else {
        r.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_powers() {
        assert_eq!(rat(4, 9).pow_scalar(&rat(1, 2)), Some(rat(2, 3)));
        assert_eq!(rat(8, 1).pow_scalar(&rat(-2, 3)), Some(rat(1, 4)));
        assert_eq!(rat(2, 1).pow_scalar(&rat(1, 2)), None);
        assert_eq!(rat(3, 2).powi(3), rat(27, 8));
        assert_eq!(rat(3, 2).powi(-2), rat(4, 9));
    }

    #[test]
    fn huge_rationals_convert() {
        let big = rat(3, 1).powi(2000) / rat(3, 1).powi(1999);
        assert_eq!(rational_to_f64(&big), 3.0);
        let tiny = rat(1, 7).powi(500);
        assert!(rational_to_f64(&tiny) >= 0.0 && rational_to_f64(&tiny) < 1e-300);
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), rat(1, 1));
        assert_eq!(factorial(5), rat(120, 1));
    }
}
