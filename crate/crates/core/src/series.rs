//! Truncated formal power series in one variable.
//!
//! A series of order `p` stores the coefficients of `z^0 ..= z^p`; everything
//! beyond is unknown. Binary operations produce a result whose order is the
//! minimum of the operand orders.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq)]
pub struct TruncSeries<T: Scalar = Rational> {
    coeffs: Vec<T>,
}

impl<T: Scalar> fmt::Debug for TruncSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; O(z^{})]", self.order() + 1)
    }
}

impl<T: Scalar> TruncSeries<T> {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    /// Builds a series of the given order, padding missing coefficients with zero.
    pub fn from_slice(coeffs: &[T], order: usize) -> Self {
        let mut v: Vec<T> = coeffs.iter().take(order + 1).cloned().collect();
        v.resize(order + 1, T::zero());
        Self { coeffs: v }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> T) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(T::zero(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// The series `z`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `z^k`; zero past the stored order is *not* implied, so
    /// this returns `None` there.
    pub fn coeff(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise the order of a truncated series");
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// `f(c z)`.
    pub fn dilate_arg(&self, c: &T) -> Self {
        let mut pow = T::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| {
                let v = x.clone() * pow.clone();
                pow = pow.clone() * c.clone();
                v
            })
            .collect();
        Self { coeffs }
    }

    /// `z f(z)`; the order grows by one since the product is exact.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// `f(z) / z`; requires a zero constant term and an order of at least 1.
    pub fn div_z(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        if self.order() == 0 {
            return Err(Error::InsufficientOrder {
                needed: 1,
                available: 0,
            });
        }
        Ok(Self {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_i64(k as i64))
                .collect(),
        }
    }

    /// Antiderivative with zero constant term; order grows by one.
    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / T::from_i64(k as i64 + 1));
        }
        Self { coeffs }
    }

    /// Multiplicative inverse, defined when the constant term is nonzero.
    pub fn recip(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = T::one() / a0.clone();
        let n = self.coeffs.len();
        let mut b: Vec<T> = Vec::with_capacity(n);
        b.push(inv0.clone());
        for k in 1..n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * b[k - j].clone();
            }
            b.push(-(acc * inv0.clone()));
        }
        Ok(Self { coeffs: b })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    /// `self ∘ inner`, requiring `inner(0) = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order().min(inner.order());
        Ok(Self {
            coeffs: compose_raw(&self.coeffs, &inner.coeffs, order),
        })
    }

    /// Compositional inverse `g` with `f(g(z)) = g(f(z)) = z` up to the order.
    ///
    /// Newton iteration on `f(g) - z = 0`, doubling the number of correct
    /// coefficients per step.
    pub fn revert(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let p = self.order();
        if p == 0 {
            return Err(Error::InsufficientOrder {
                needed: 1,
                available: 0,
            });
        }
        if self.coeffs[1].is_zero() {
            return Err(Error::ZeroLinearTerm);
        }
        let mut deriv = self.derivative().coeffs;
        deriv.push(T::zero());

        let mut g = vec![T::zero(), T::one() / self.coeffs[1].clone()];
        let mut known = 1;
        while known < p {
            let prec = (2 * known + 1).min(p);
            g.resize(prec + 1, T::zero());
            let mut resid = compose_raw(&self.coeffs, &g, prec);
            resid[1] = resid[1].clone() - T::one();
            let slope = compose_raw(&deriv, &g, prec);
            let step = mul_raw(&resid, &recip_raw(&slope), prec);
            for (gk, sk) in g.iter_mut().zip(step) {
                *gk = gk.clone() - sk;
            }
            known = prec;
        }
        Ok(Self { coeffs: g })
    }

    /// `exp(f)` for `f(0) = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.coeffs.len();
        let mut e: Vec<T> = Vec::with_capacity(n);
        e.push(T::one());
        // n e_n = sum_{k=1}^n k f_k e_{n-k}
        for m in 1..n {
            let mut acc = T::zero();
            for k in 1..=m {
                acc = acc + T::from_i64(k as i64) * self.coeffs[k].clone() * e[m - k].clone();
            }
            e.push(acc / T::from_i64(m as i64));
        }
        Ok(Self { coeffs: e })
    }

    /// `log(f)` for `f(0) = 1`.
    pub fn ln(&self) -> Result<Self> {
        if self.coeffs[0] != T::one() {
            return Err(Error::LogConstantTerm(self.coeffs[0].to_string()));
        }
        let n = self.coeffs.len();
        let mut l: Vec<T> = Vec::with_capacity(n);
        l.push(T::zero());
        // m l_m = m f_m - sum_{k=1}^{m-1} k l_k f_{m-k}
        for m in 1..n {
            let mut acc = T::from_i64(m as i64) * self.coeffs[m].clone();
            for k in 1..m {
                acc = acc - T::from_i64(k as i64) * l[k].clone() * self.coeffs[m - k].clone();
            }
            l.push(acc / T::from_i64(m as i64));
        }
        Ok(Self { coeffs: l })
    }

    /// `f^t` for `f(0) > 0`, as `f0^t · exp(t · log(f / f0))`.
    ///
    /// Integer exponents use repeated squaring instead.
    pub fn pow(&self, t: &T) -> Result<Self> {
        let f0 = self.coeffs[0].clone();
        if !f0.is_positive() {
            return Err(Error::NonPositiveConstantTerm);
        }
        if let Some(n) = t.as_integer() {
            return self.powi(n);
        }
        let lead = f0.pow_scalar(t).ok_or_else(|| Error::NotRepresentable {
            base: f0.to_string(),
            exponent: t.to_string(),
        })?;
        let normalized = self.scale(&(T::one() / f0));
        Ok(normalized.ln()?.scale(t).exp()?.scale(&lead))
    }

    pub fn powi(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn to_f64(&self) -> TruncSeries<f64> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(Scalar::to_f64).collect(),
        }
    }
}

pub(crate) fn mul_raw<T: Scalar>(a: &[T], b: &[T], order: usize) -> Vec<T> {
    let mut out = vec![T::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] = out[i + j].clone() + ai.clone() * bj.clone();
        }
    }
    out
}

fn recip_raw<T: Scalar>(a: &[T]) -> Vec<T> {
    TruncSeries { coeffs: a.to_vec() }
        .recip()
        .expect("Newton slope has a nonzero constant term")
        .coeffs
}

/// Horner evaluation of `f ∘ g` truncated at `order`; `g[0]` must be zero.
fn compose_raw<T: Scalar>(f: &[T], g: &[T], order: usize) -> Vec<T> {
    let top = f.len().min(order + 1);
    let mut acc = vec![T::zero(); order + 1];
    for j in (0..top).rev() {
        acc = mul_raw(&acc, g, order);
        acc[0] = acc[0].clone() + f[j].clone();
    }
    acc
}

fn zip_orders<T: Scalar>(a: &TruncSeries<T>, b: &TruncSeries<T>) -> usize {
    a.order().min(b.order())
}

impl<T: Scalar> Add for &TruncSeries<T> {
    type Output = TruncSeries<T>;
    fn add(self, rhs: Self) -> TruncSeries<T> {
        let order = zip_orders(self, rhs);
        TruncSeries::from_fn(order, |k| self.coeffs[k].clone() + rhs.coeffs[k].clone())
    }
}

impl<T: Scalar> Sub for &TruncSeries<T> {
    type Output = TruncSeries<T>;
    fn sub(self, rhs: Self) -> TruncSeries<T> {
        let order = zip_orders(self, rhs);
        TruncSeries::from_fn(order, |k| self.coeffs[k].clone() - rhs.coeffs[k].clone())
    }
}

impl<T: Scalar> Mul for &TruncSeries<T> {
    type Output = TruncSeries<T>;
    fn mul(self, rhs: Self) -> TruncSeries<T> {
        let order = zip_orders(self, rhs);
        TruncSeries {
            coeffs: mul_raw(&self.coeffs, &rhs.coeffs, order),
        }
    }
}

impl<T: Scalar> Neg for &TruncSeries<T> {
    type Output = TruncSeries<T>;
    fn neg(self) -> TruncSeries<T> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for TruncSeries<T> {
            type Output = TruncSeries<T>;
            fn $m(self, rhs: Self) -> TruncSeries<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
