//! Moment sequences and the transforms built from them.
//!
//! All transforms are handled as truncated series around the origin:
//!
//! * `Ψ(z) = Σ_{k≥1} m_k z^k` and `M(z) = 1 + Ψ(z)`,
//! * `S(z) = (1 + z) Ψ⁻¹(z) / z` and `Σ(z) = S(z / (1 - z))`,
//! * `𝓡(z) = Σ κ_n z^{n-1}` with `R(z) = z 𝓡(z)`, obtained by reverting
//!   `z M(z)` (the Cauchy transform read at `1/z`),
//! * `η(z) = Ψ / (1 + Ψ) = Σ β_n z^n`.
//!
//! A moment sequence of order `p` determines `Ψ`, `Ψ⁻¹` and `η` to order `p`,
//! and `S`, `Σ` and `𝓡` to order `p - 1`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::series::TruncSeries;
use crate::MAX_ORDER;

/// Infinite-divisibility flags a law may carry.
///
/// They gate fractional convolution powers below 1, which otherwise may not
/// correspond to a probability measure.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Divisibility {
    pub free_additive: bool,
    pub free_multiplicative: bool,
}

/// Normalized moments `m_0 = 1, m_1, …, m_p` of a law on `[0, ∞)`.
///
/// Equality compares the moments only; divisibility flags are metadata.
#[derive(Debug, Clone)]
pub struct MomentSeq<T: Scalar = Rational> {
    m: Vec<T>,
    divisibility: Divisibility,
}

impl<T: Scalar> PartialEq for MomentSeq<T> {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}

impl<T: Scalar> MomentSeq<T> {
    /// Takes `m_0 ..= m_p`; `m_0` must be 1 and `1 <= p <= MAX_ORDER`.
    pub fn new(m: Vec<T>) -> Result<Self> {
        if m.first() != Some(&T::one()) {
            return Err(Error::InvalidNormalization);
        }
        if m.len() < 2 {
            return Err(Error::InsufficientOrder {
                needed: 1,
                available: 0,
            });
        }
        if m.len() - 1 > MAX_ORDER {
            return Err(Error::OrderCap(m.len() - 1));
        }
        Ok(Self {
            m,
            divisibility: Divisibility::default(),
        })
    }

    /// Takes `m_1 ..= m_p`.
    pub fn from_tail(tail: &[T]) -> Result<Self> {
        let mut m = Vec::with_capacity(tail.len() + 1);
        m.push(T::one());
        m.extend_from_slice(tail);
        Self::new(m)
    }

    /// `δ_c`: moments `c^k`.
    pub fn dirac(c: T, order: usize) -> Result<Self> {
        Self::new((0..=order).map(|k| c.powi(k as i64)).collect())
    }

    pub fn with_divisibility(mut self, d: Divisibility) -> Self {
        self.divisibility = d;
        self
    }

    pub fn divisibility(&self) -> Divisibility {
        self.divisibility
    }

    pub fn order(&self) -> usize {
        self.m.len() - 1
    }

    pub fn moments(&self) -> &[T] {
        &self.m
    }

    pub fn m(&self, k: usize) -> &T {
        &self.m[k]
    }

    pub fn first(&self) -> &T {
        &self.m[1]
    }

    /// `m_2 - m_1^2`; needs order 2.
    pub fn variance(&self) -> Result<T> {
        self.require_order(2)?;
        Ok(self.m[2].clone() - self.m[1].clone() * self.m[1].clone())
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        self.require_order(order)?;
        Ok(Self {
            m: self.m[..=order].to_vec(),
            divisibility: self.divisibility,
        })
    }

    pub(crate) fn require_order(&self, needed: usize) -> Result<()> {
        if self.order() < needed {
            Err(Error::InsufficientOrder {
                needed,
                available: self.order(),
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_positive_mean(&self) -> Result<()> {
        if self.m[1].is_positive() {
            Ok(())
        } else {
            Err(Error::ZeroFirstMoment)
        }
    }

    /// Smallest eigenvalue over the Hankel matrices `[m_{i+j}]` of every
    /// size the order allows. A clearly negative value means the sequence
    /// cannot be the moment sequence of a measure.
    pub fn hankel_min_eigenvalue(&self) -> f64 {
        hankel_min_eigenvalue(&self.hankel_f64())
    }

    /// Positive semidefiniteness up to rounding, relative to the largest
    /// eigenvalue (finitely supported laws give singular matrices).
    pub fn is_hankel_psd(&self) -> bool {
        let c = self.hankel_f64();
        let size = c.len().div_ceil(2);
        let h = DMatrix::from_fn(size, size, |i, j| c[i + j]);
        let eig = h.symmetric_eigenvalues();
        eig.min() >= -1e-9 * eig.max().max(1.0)
    }

    fn hankel_f64(&self) -> Vec<f64> {
        self.m.iter().map(Scalar::to_f64).collect()
    }
}

/// Minimum eigenvalue of the largest Hankel matrix `[c_{i+j}]` fitting in `c`.
///
/// By interlacing this bounds the minimum eigenvalue of every smaller one.
pub fn hankel_min_eigenvalue(c: &[f64]) -> f64 {
    let size = c.len().div_ceil(2);
    if size == 0 {
        return 0.0;
    }
    let h = DMatrix::from_fn(size, size, |i, j| c[i + j]);
    h.symmetric_eigenvalues().min()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CumulantKind {
    Free,
    Boolean,
}

/// Cumulants `c_1 ..= c_p` of a given kind.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulantSeq<T: Scalar = Rational> {
    pub kind: CumulantKind,
    values: Vec<T>,
}

impl<T: Scalar> CumulantSeq<T> {
    pub fn new(kind: CumulantKind, values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientOrder {
                needed: 1,
                available: 0,
            });
        }
        Ok(Self { kind, values })
    }

    pub fn free(values: Vec<T>) -> Result<Self> {
        Self::new(CumulantKind::Free, values)
    }

    pub fn boolean(values: Vec<T>) -> Result<Self> {
        Self::new(CumulantKind::Boolean, values)
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// Cumulants indexed from 1: `values()[n - 1]` is the `n`-th cumulant.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, n: usize) -> &T {
        &self.values[n - 1]
    }
}

/// `Ψ(z) = Σ_{k=1}^p m_k z^k`.
pub fn psi_from_moments<T: Scalar>(m: &MomentSeq<T>) -> TruncSeries<T> {
    TruncSeries::from_fn(m.order(), |k| if k == 0 { T::zero() } else { m.m[k].clone() })
}

/// Moments read off a `Ψ` series.
pub fn moments_from_psi<T: Scalar>(psi: &TruncSeries<T>) -> Result<MomentSeq<T>> {
    if !psi.coeffs()[0].is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let mut m = psi.coeffs().to_vec();
    m[0] = T::one();
    MomentSeq::new(m)
}

/// `Ψ⁻¹`, with `b_1 = 1/m_1` and `b_2 = -m_2/m_1^3`.
pub fn psi_inverse<T: Scalar>(m: &MomentSeq<T>) -> Result<TruncSeries<T>> {
    m.require_positive_mean()?;
    psi_from_moments(m).revert()
}

/// `S(z) = (1 + z) Ψ⁻¹(z) / z`, of order `p - 1`.
pub fn s_from_moments<T: Scalar>(m: &MomentSeq<T>) -> Result<TruncSeries<T>> {
    let inv_over_z = psi_inverse(m)?.div_z()?;
    let one_plus_z = TruncSeries::from_slice(&[T::one(), T::one()], inv_over_z.order());
    Ok(&one_plus_z * &inv_over_z)
}

/// The series `z / (1 - z)`.
fn z_over_one_minus_z<T: Scalar>(order: usize) -> TruncSeries<T> {
    TruncSeries::from_fn(order, |k| if k == 0 { T::zero() } else { T::one() })
}

/// The series `w / (1 + w)`.
fn w_over_one_plus_w<T: Scalar>(order: usize) -> TruncSeries<T> {
    TruncSeries::from_fn(order, |k| match k {
        0 => T::zero(),
        k if k % 2 == 1 => T::one(),
        _ => -T::one(),
    })
}

/// `Σ(z) = S(z / (1 - z))`, of order `p - 1`.
pub fn sigma_from_moments<T: Scalar>(m: &MomentSeq<T>) -> Result<TruncSeries<T>> {
    let s = s_from_moments(m)?;
    let order = s.order();
    s.compose(&z_over_one_minus_z(order))
}

/// Recovers `S` from `Σ` through `S(w) = Σ(w / (1 + w))`.
pub fn s_from_sigma<T: Scalar>(sigma: &TruncSeries<T>) -> Result<TruncSeries<T>> {
    sigma.compose(&w_over_one_plus_w(sigma.order()))
}

/// Moments `m_0 ..= m_p` of the law whose `S` transform is `s`.
///
/// `s` needs order at least `p - 1` and a positive constant term.
pub fn moments_from_s<T: Scalar>(s: &TruncSeries<T>, p: usize) -> Result<MomentSeq<T>> {
    if p == 0 {
        return Err(Error::InsufficientOrder {
            needed: 1,
            available: 0,
        });
    }
    if s.order() + 1 < p {
        return Err(Error::InsufficientOrder {
            needed: p - 1,
            available: s.order(),
        });
    }
    if !s.coeffs()[0].is_positive() {
        return Err(Error::NonPositiveConstantTerm);
    }
    let s = s.truncate(p - 1);
    let one_plus_z = TruncSeries::from_slice(&[T::one(), T::one()], p - 1);
    let psi_inv = (&s * &one_plus_z.recip()?).mul_z();
    moments_from_psi(&psi_inv.revert()?)
}

/// Moments of the law whose `Σ` transform is `sigma`.
pub fn moments_from_sigma<T: Scalar>(sigma: &TruncSeries<T>, p: usize) -> Result<MomentSeq<T>> {
    moments_from_s(&s_from_sigma(sigma)?, p)
}

/// `𝓡` series of order `p - 1`: its `z^{n-1}` coefficient is `κ_n`.
///
/// With `P(z) = z M(z)` and `C(w) = 1 + w 𝓡(w)` one has `C(P(z)) = M(z)`,
/// hence `C(w) = w / P⁻¹(w)`.
pub fn r_from_moments<T: Scalar>(m: &MomentSeq<T>) -> TruncSeries<T> {
    let p = m.order();
    let zm = TruncSeries::new(m.m.clone()).mul_z();
    let inv = zm.revert().expect("z M(z) has unit linear term");
    let c = inv
        .div_z()
        .and_then(|q| q.recip())
        .expect("P^{-1}(w)/w has unit constant term");
    let mut coeffs = c.into_coeffs();
    coeffs.remove(0);
    debug_assert_eq!(coeffs.len(), p);
    TruncSeries::new(coeffs)
}

/// `R(z) = z 𝓡(z)`, of order `p`.
pub fn big_r_from_moments<T: Scalar>(m: &MomentSeq<T>) -> TruncSeries<T> {
    r_from_moments(m).mul_z()
}

/// Moments from an `𝓡` series of order `q`; the result has order `q + 1`.
pub fn moments_from_r<T: Scalar>(r: &TruncSeries<T>) -> Result<MomentSeq<T>> {
    let c = r.mul_z();
    let c = &c + &TruncSeries::one(c.order());
    let q = c.recip()?.mul_z();
    let zm = q.revert()?;
    MomentSeq::new(zm.div_z()?.into_coeffs())
}

pub fn free_cumulants<T: Scalar>(m: &MomentSeq<T>) -> CumulantSeq<T> {
    CumulantSeq {
        kind: CumulantKind::Free,
        values: r_from_moments(m).into_coeffs(),
    }
}

/// `η = Ψ / (1 + Ψ)`, of order `p`.
pub fn boolean_eta<T: Scalar>(m: &MomentSeq<T>) -> TruncSeries<T> {
    let psi = psi_from_moments(m);
    let denom = &TruncSeries::one(psi.order()) + &psi;
    psi.div(&denom).expect("1 + Ψ has unit constant term")
}

/// `Ψ = η / (1 - η)`, read back as moments.
pub fn moments_from_eta<T: Scalar>(eta: &TruncSeries<T>) -> Result<MomentSeq<T>> {
    if !eta.coeffs()[0].is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let denom = &TruncSeries::one(eta.order()) - eta;
    moments_from_psi(&eta.div(&denom)?)
}

pub fn boolean_cumulants<T: Scalar>(m: &MomentSeq<T>) -> CumulantSeq<T> {
    let mut values = boolean_eta(m).into_coeffs();
    values.remove(0);
    CumulantSeq {
        kind: CumulantKind::Boolean,
        values,
    }
}

/// Inverse of [`free_cumulants`] or [`boolean_cumulants`], by kind.
pub fn moments_from_cumulants<T: Scalar>(c: &CumulantSeq<T>) -> Result<MomentSeq<T>> {
    match c.kind {
        CumulantKind::Free => moments_from_r(&TruncSeries::new(c.values.clone())),
        CumulantKind::Boolean => {
            let mut coeffs = Vec::with_capacity(c.values.len() + 1);
            coeffs.push(T::zero());
            coeffs.extend(c.values.iter().cloned());
            moments_from_eta(&TruncSeries::new(coeffs))
        }
    }
}

pub fn moments_from_free_cumulants<T: Scalar>(kappa: &[T]) -> Result<MomentSeq<T>> {
    moments_from_cumulants(&CumulantSeq::free(kappa.to_vec())?)
}

pub fn moments_from_boolean_cumulants<T: Scalar>(beta: &[T]) -> Result<MomentSeq<T>> {
    moments_from_cumulants(&CumulantSeq::boolean(beta.to_vec())?)
}

/// Checks `R(z S(z)) = z` as a truncated series identity of order `p`.
pub fn s_r_functional_check<T: Scalar>(m: &MomentSeq<T>) -> Result<bool> {
    let s = s_from_moments(m)?;
    let r = big_r_from_moments(m);
    let lhs = r.compose(&s.mul_z())?;
    Ok(lhs == TruncSeries::identity(lhs.order()))
}
