//! Free additive (⊞), free multiplicative (⊠) and boolean (⊎) convolutions,
//! their powers, and dilation, on truncated moment sequences.
//!
//! Each operation goes through its linearizing transform: free cumulants for
//! ⊞, the `S` transform for ⊠, boolean cumulants for ⊎. The `*_via_s` and
//! `*_via_sigma` variants compute the same powers through the rescaling
//! identities `S_{ρ^{⊞t}}(z) = S(z/t)/t` and `Σ_{ρ^{⊎t}}(z) = Σ(z/t)/t`.

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::transforms::{
    boolean_cumulants, free_cumulants, moments_from_boolean_cumulants, moments_from_free_cumulants,
    moments_from_s, moments_from_sigma, s_from_moments, sigma_from_moments, Divisibility, MomentSeq,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvKind {
    BoxPlus,
    BoxTimes,
    UPlus,
}

impl ConvKind {
    pub fn apply<T: Scalar>(self, a: &MomentSeq<T>, b: &MomentSeq<T>) -> Result<MomentSeq<T>> {
        match self {
            ConvKind::BoxPlus => box_plus(a, b),
            ConvKind::BoxTimes => box_times(a, b),
            ConvKind::UPlus => uplus(a, b),
        }
    }
}

fn same_order<T: Scalar>(a: &MomentSeq<T>, b: &MomentSeq<T>) -> Result<()> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    Ok(())
}

pub fn box_plus<T: Scalar>(a: &MomentSeq<T>, b: &MomentSeq<T>) -> Result<MomentSeq<T>> {
    same_order(a, b)?;
    let ka = free_cumulants(a);
    let kb = free_cumulants(b);
    let sum: Vec<T> = ka
        .values()
        .iter()
        .zip(kb.values())
        .map(|(x, y)| x.clone() + y.clone())
        .collect();
    moments_from_free_cumulants(&sum)
}

pub fn box_times<T: Scalar>(a: &MomentSeq<T>, b: &MomentSeq<T>) -> Result<MomentSeq<T>> {
    same_order(a, b)?;
    let s = &s_from_moments(a)? * &s_from_moments(b)?;
    moments_from_s(&s, a.order())
}

pub fn uplus<T: Scalar>(a: &MomentSeq<T>, b: &MomentSeq<T>) -> Result<MomentSeq<T>> {
    same_order(a, b)?;
    let ba = boolean_cumulants(a);
    let bb = boolean_cumulants(b);
    let sum: Vec<T> = ba
        .values()
        .iter()
        .zip(bb.values())
        .map(|(x, y)| x.clone() + y.clone())
        .collect();
    moments_from_boolean_cumulants(&sum)
}

fn out_of_range<T: Scalar>(op: &'static str, t: &T, range: &'static str) -> Error {
    Error::PowerOutOfRange {
        op,
        t: t.to_string(),
        range,
    }
}

fn check_boxplus_power<T: Scalar>(a: &MomentSeq<T>, t: &T) -> Result<()> {
    let ok = if a.divisibility().free_additive {
        t.is_positive()
    } else {
        *t >= T::one()
    };
    if ok {
        Ok(())
    } else {
        Err(out_of_range("boxplus_power", t, "t >= 1, or t > 0 for ⊞-infinitely divisible laws"))
    }
}

/// `a^{⊞t}`: free cumulants scale by `t`.
pub fn boxplus_power<T: Scalar>(a: &MomentSeq<T>, t: &T) -> Result<MomentSeq<T>> {
    check_boxplus_power(a, t)?;
    let scaled: Vec<T> = free_cumulants(a)
        .values()
        .iter()
        .map(|k| k.clone() * t.clone())
        .collect();
    Ok(moments_from_free_cumulants(&scaled)?.with_divisibility(Divisibility {
        free_additive: a.divisibility().free_additive,
        free_multiplicative: false,
    }))
}

/// `a^{⊞t}` through `S_{a^{⊞t}}(z) = S_a(z/t) / t`.
pub fn boxplus_power_via_s<T: Scalar>(a: &MomentSeq<T>, t: &T) -> Result<MomentSeq<T>> {
    check_boxplus_power(a, t)?;
    let inv = T::one() / t.clone();
    let s = s_from_moments(a)?.dilate_arg(&inv).scale(&inv);
    moments_from_s(&s, a.order())
}

fn check_uplus_power<T: Scalar>(t: &T) -> Result<()> {
    if *t < T::zero() {
        Err(out_of_range("uplus_power", t, "t >= 0"))
    } else {
        Ok(())
    }
}

/// `a^{⊎t}`: boolean cumulants scale by `t`. `t = 0` gives `δ_0`.
pub fn uplus_power<T: Scalar>(a: &MomentSeq<T>, t: &T) -> Result<MomentSeq<T>> {
    check_uplus_power(t)?;
    let scaled: Vec<T> = boolean_cumulants(a)
        .values()
        .iter()
        .map(|b| b.clone() * t.clone())
        .collect();
    moments_from_boolean_cumulants(&scaled)
}

/// `a^{⊎t}` through `Σ_{a^{⊎t}}(z) = Σ_a(z/t) / t`; needs `t > 0`.
pub fn uplus_power_via_sigma<T: Scalar>(a: &MomentSeq<T>, t: &T) -> Result<MomentSeq<T>> {
    check_uplus_power(t)?;
    if t.is_zero() {
        return Err(out_of_range("uplus_power_via_sigma", t, "t > 0"));
    }
    let inv = T::one() / t.clone();
    let sigma = sigma_from_moments(a)?.dilate_arg(&inv).scale(&inv);
    moments_from_sigma(&sigma, a.order())
}

/// `a^{⊠t}` with `S_{a^{⊠t}} = S_a^t`.
///
/// `t >= 1` is accepted for every law; `0 < t < 1` needs the law to be
/// flagged ⊠-infinitely divisible.
pub fn boxtimes_power<T: Scalar>(a: &MomentSeq<T>, t: &T) -> Result<MomentSeq<T>> {
    let ok = if a.divisibility().free_multiplicative {
        t.is_positive()
    } else {
        *t >= T::one()
    };
    if !ok {
        return Err(out_of_range(
            "boxtimes_power",
            t,
            "t >= 1, or t > 0 for ⊠-infinitely divisible laws",
        ));
    }
    let s = s_from_moments(a)?.pow(t)?;
    Ok(moments_from_s(&s, a.order())?.with_divisibility(Divisibility {
        free_additive: false,
        free_multiplicative: a.divisibility().free_multiplicative,
    }))
}

/// `D_c(a)`: `m_k ↦ c^k m_k`.
pub fn dilate<T: Scalar>(a: &MomentSeq<T>, c: &T) -> Result<MomentSeq<T>> {
    if !c.is_positive() {
        return Err(Error::Parameter {
            name: "c",
            constraint: "c > 0",
            value: c.to_string(),
        });
    }
    let mut pow = T::one();
    let m = a
        .moments()
        .iter()
        .map(|mk| {
            let v = mk.clone() * pow.clone();
            pow = pow.clone() * c.clone();
            v
        })
        .collect();
    Ok(MomentSeq::new(m)?.with_divisibility(a.divisibility()))
}

/// Checks both power identities of the free limit law at order `p`:
/// `y^{⊞t} = D_t(y^{⊠1/t})` and `y^{⊠t} = D_t(y^{⊞1/t})`.
pub fn power_identity_check(alpha: &Rational, t: &Rational, p: usize) -> Result<bool> {
    if !Scalar::is_positive(t) {
        return Err(Error::Parameter {
            name: "t",
            constraint: "t > 0",
            value: t.to_string(),
        });
    }
    let y = crate::limits::y_moments(alpha, p)?;
    let inv = Rational::from_integer(1.into()) / t.clone();
    let first = boxplus_power(&y, t)? == dilate(&boxtimes_power(&y, &inv)?, t)?;
    let second = boxtimes_power(&y, t)? == dilate(&boxplus_power(&y, &inv)?, t)?;
    Ok(first && second)
}

/// The identity element shared by ⊞ and ⊎ on truncated sequences: `δ_0`.
pub fn additive_identity<T: Scalar>(order: usize) -> Result<MomentSeq<T>> {
    MomentSeq::dirac(T::zero(), order)
}
