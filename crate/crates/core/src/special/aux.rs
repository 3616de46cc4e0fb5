//! The auxiliary functions `f(u) = u csc u · exp(-u cot u)` and
//! `g(u) = (1 - u cot u)² + u²` on `(0, π)`.

use std::f64::consts::{E, PI};

use super::roots::increasing_root;
use crate::error::{Error, Result};

fn check_u(u: f64) -> Result<()> {
    if (0.0..PI).contains(&u) {
        Ok(())
    } else {
        Err(Error::Domain(format!("u = {u} is outside [0, pi)")))
    }
}

/// `1 - u cot u`, accurate near 0.
pub(crate) fn one_minus_u_cot_u(u: f64) -> f64 {
    if u.abs() < 0.1 {
        let u2 = u * u;
        u2 * (1.0 / 3.0 + u2 * (1.0 / 45.0 + u2 * (2.0 / 945.0 + u2 * (1.0 / 4725.0 + u2 * 2.0 / 93555.0))))
    } else {
        1.0 - u / u.tan()
    }
}

/// `ln f(u)`; `+∞` as `u → π`.
pub fn ln_f(u: f64) -> Result<f64> {
    check_u(u)?;
    let ratio = if u == 0.0 { 1.0 } else { u / u.sin() };
    Ok(ratio.ln() - 1.0 + one_minus_u_cot_u(u))
}

pub fn f_aux(u: f64) -> Result<f64> {
    ln_f(u).map(f64::exp)
}

/// `(ln f)'(u) = 1/u - 2 cot u + u csc² u`.
pub fn dlog_f(u: f64) -> Result<f64> {
    check_u(u)?;
    if u < 0.05 {
        let u2 = u * u;
        return Ok(u * (1.0 + u2 * (1.0 / 9.0 + u2 * (2.0 / 135.0 + u2 * (1.0 / 525.0 + u2 * 2.0 / 8505.0)))));
    }
    let s = u.sin();
    Ok(1.0 / u - 2.0 * u.cos() / s + u / (s * s))
}

pub fn f_prime(u: f64) -> Result<f64> {
    Ok(f_aux(u)? * dlog_f(u)?)
}

pub fn g_aux(u: f64) -> Result<f64> {
    check_u(u)?;
    let h = one_minus_u_cot_u(u);
    Ok(h * h + u * u)
}

/// Inverse of the increasing bijection `f : [0, π) → [1/e, ∞)`.
pub fn f_inverse(y: f64) -> Result<f64> {
    if y.is_nan() || y < 1.0 / E {
        return Err(Error::Domain(format!("f^-1 needs y >= 1/e, got {y}")));
    }
    if y.is_infinite() {
        return Ok(PI);
    }
    let target = y.ln();
    if target <= -1.0 {
        return Ok(0.0);
    }
    increasing_root(
        |u| if u >= PI { f64::INFINITY } else { ln_f(u).map_or(f64::INFINITY, |v| v - target) },
        |u| dlog_f(u).unwrap_or(f64::INFINITY),
        0.0,
        PI,
        1e-14,
    )
}
