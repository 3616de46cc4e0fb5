//! Densities: the Lévy measure of the free limit law, the free Poisson law,
//! and the absolutely continuous boolean limit law on `(0, e)`.

use std::f64::consts::{E, PI};

use num_complex::Complex64;

use super::aux::{dlog_f, f_inverse, g_aux, ln_f, one_minus_u_cot_u};
use super::lambert::lambert_w0_complex;
use super::quadrature::{integrate, QuadConfig};
use crate::error::{Error, Result};

fn tight() -> QuadConfig {
    QuadConfig {
        abs_tol: 1e-12,
        rel_tol: 1e-12,
        max_intervals: 4000,
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "alpha",
            constraint: "alpha > 0",
            value: alpha.to_string(),
        })
    }
}

/// Lévy–Khintchine data of the free limit law with parameter `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevyTriple {
    pub alpha: f64,
    /// Drift, `(1/π) ∫₀^π g(u)/f(u) du`.
    pub b: f64,
}

impl LevyTriple {
    pub fn new(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self {
            alpha,
            b: levy_drift(alpha)?,
        })
    }

    /// Right end of the support of the Lévy measure.
    pub fn support_end(&self) -> f64 {
        self.alpha * E
    }

    pub fn density(&self, s: f64) -> Result<f64> {
        levy_density_y(self.alpha, s)
    }

    pub fn moment(&self, k: u32) -> Result<f64> {
        levy_moment(self.alpha, k)
    }

    /// Total mass of the Lévy measure.
    pub fn mass(&self) -> Result<f64> {
        levy_moment(self.alpha, 0)
    }
}

/// `s·f⁻¹(α/s)/(απ)` on `(0, αe]`.
pub fn levy_density_y(alpha: f64, s: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(s > 0.0 && s <= alpha * E) {
        return Err(Error::Domain(format!("s = {s} is outside (0, alpha*e]")));
    }
    // rounding can push α/s a hair below 1/e at the right end
    let y = (alpha / s).max(1.0 / E);
    Ok(s * f_inverse(y)? / (alpha * PI))
}

/// `∫ s^k ν(ds)`, computed in the variable `u = f⁻¹(α/s)`:
/// `(α^{k+1}/π) ∫₀^π u f'(u) f(u)^{-(k+3)} du`.
pub fn levy_moment(alpha: f64, k: u32) -> Result<f64> {
    check_alpha(alpha)?;
    let r = integrate(
        |u| {
            let lf = ln_f(u).unwrap_or(f64::INFINITY);
            u * dlog_f(u).unwrap_or(0.0) * (-(k as f64 + 2.0) * lf).exp()
        },
        0.0,
        PI,
        tight(),
    )?;
    Ok(alpha.powi(k as i32 + 1) * r.value / PI)
}

/// Drift term `(1/π) ∫₀^π g(u)/f(u) du`; `alpha` only enters through the
/// domain check.
pub fn levy_drift(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let r = integrate(
        |u| g_aux(u).unwrap_or(0.0) * (-ln_f(u).unwrap_or(f64::INFINITY)).exp(),
        0.0,
        PI,
        tight(),
    )?;
    Ok(r.value / PI)
}

fn check_t(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "t",
            constraint: "t > 0",
            value: t.to_string(),
        })
    }
}

/// Support `[(1-√t)², (1+√t)²]` of the free Poisson law.
pub fn free_poisson_support(t: f64) -> Result<(f64, f64)> {
    check_t(t)?;
    let r = t.sqrt();
    Ok(((1.0 - r).powi(2), (1.0 + r).powi(2)))
}

/// Absolutely continuous part `√(4t - (x-1-t)²) / (2πx)`.
pub fn free_poisson_density(t: f64, x: f64) -> Result<f64> {
    check_t(t)?;
    let d = 4.0 * t - (x - 1.0 - t).powi(2);
    if x <= 0.0 || d <= 0.0 {
        return Ok(0.0);
    }
    Ok(d.sqrt() / (2.0 * PI * x))
}

/// Mass of the atom at the origin, `max(0, 1-t)`.
pub fn free_poisson_atom(t: f64) -> Result<f64> {
    check_t(t)?;
    Ok((1.0 - t).max(0.0))
}

/// `∫ x^k` against the absolutely continuous part, in the variable
/// `x = a + (b-a)(1 - cos θ)/2`, which removes the square-root endpoints.
pub fn free_poisson_moment(t: f64, k: u32) -> Result<f64> {
    let (a, b) = free_poisson_support(t)?;
    let r = integrate(
        |theta| {
            let x = a + 0.5 * (b - a) * (1.0 - theta.cos());
            let dx = 0.5 * (b - a) * theta.sin();
            x.powi(k as i32) * free_poisson_density(t, x).unwrap_or(0.0) * dx
        },
        0.0,
        PI,
        tight(),
    )?;
    Ok(r.value)
}

/// One sample of the boolean limit density in its natural parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParametricPoint {
    pub v: f64,
    /// `x(v) = 1/f(v)`.
    pub x: f64,
    pub density: f64,
    pub ln_density: f64,
}

fn check_v(v: f64) -> Result<()> {
    if v > 0.0 && v < PI {
        Ok(())
    } else {
        Err(Error::Domain(format!("v = {v} is outside (0, pi)")))
    }
}

/// `ln φ` from `φ = (1/π) v² exp(-v cot v) / (sin v · g(v))`.
fn ln_density_parametric(v: f64) -> Result<f64> {
    let h = one_minus_u_cot_u(v);
    Ok(-PI.ln() + 2.0 * v.ln() + (h - 1.0) - v.sin().ln() - g_aux(v)?.ln())
}

/// `(x(v), φ(x(v)))`; `φ` is formed in log space since it overflows as
/// `v → π`.
pub fn s_density(v: f64) -> Result<ParametricPoint> {
    check_v(v)?;
    let ln_density = ln_density_parametric(v)?;
    Ok(ParametricPoint {
        v,
        x: (-ln_f(v)?).exp(),
        density: ln_density.exp(),
        ln_density,
    })
}

/// The same density through `φ(1/f(v)) = (1/π) f(v)² / f'(v)`.
pub fn s_density_f_form(v: f64) -> Result<f64> {
    check_v(v)?;
    Ok((ln_f(v)? - dlog_f(v)?.ln() - PI.ln()).exp())
}

/// `φ(t)` for `t ∈ (0, e)`, by solving `x(v) = t`.
pub fn s_density_at(t: f64) -> Result<f64> {
    if !(t > 0.0 && t < E) {
        return Err(Error::Domain(format!("t = {t} is outside (0, e)")));
    }
    let v = f_inverse(1.0 / t)?;
    if v <= 0.0 {
        return Err(Error::Domain(format!("t = {t} is too close to e")));
    }
    s_density(v).map(|p| p.density)
}

/// `∫ x^k φ(x) dx`, with `dx = |x'(v)| dv` and `x' = -f'/f²`.
pub fn s_moment_quadrature(k: u32) -> Result<f64> {
    let r = integrate(
        |v| {
            let (Ok(p), Ok(lf), Ok(dl)) = (s_density(v), ln_f(v), dlog_f(v)) else {
                return 0.0;
            };
            // x^k φ f' x², with ln x = -ln f
            (p.ln_density + lf + dl.ln() - (k as f64 + 2.0) * lf).exp()
        },
        0.0,
        PI,
        QuadConfig {
            abs_tol: 1e-11,
            rel_tol: 1e-11,
            max_intervals: 4000,
        },
    )?;
    Ok(r.value)
}

/// `∫ x^k` against the law as the image of `(1/π)dv` under `x(v)`.
pub fn s_moment_uniform(k: u32) -> Result<f64> {
    let r = integrate(|v| (-(k as f64) * ln_f(v).unwrap_or(f64::INFINITY)).exp(), 0.0, PI, tight())?;
    Ok(r.value / PI)
}

/// Samples `φ` at `n` parameter values `v_i = π(i + ½)/n`.
pub fn s_density_scan(n: usize) -> Result<Vec<ParametricPoint>> {
    (0..n).map(|i| s_density(PI * (i as f64 + 0.5) / n as f64)).collect()
}

/// Boundary values `η±(x) = θ cot θ ± iθ` where `x = f(θ)`.
pub fn eta_boundary(x: f64) -> Result<(Complex64, Complex64)> {
    if x.is_nan() || x < 1.0 / E {
        return Err(Error::Domain(format!("eta boundary needs x >= 1/e, got {x}")));
    }
    let theta = f_inverse(x)?;
    let re = 1.0 - one_minus_u_cot_u(theta);
    Ok((Complex64::new(re, theta), Complex64::new(re, -theta)))
}

/// `G(ζ) = (1/ζ) / (1 - η(1/ζ))` with `η(w) = -W₀(-w)`.
pub fn cauchy_transform_s(zeta: Complex64) -> Result<Complex64> {
    let w = 1.0 / zeta;
    let eta = -lambert_w0_complex(-w)?;
    Ok(w / (1.0 - eta))
}

/// Default distance kept from the endpoints `0` and `e`.
pub const STIELTJES_DELTA: f64 = 1e-6;

/// `-(1/π) Im G(t + iε)`.
pub fn stieltjes_density(t: f64, eps: f64) -> Result<f64> {
    stieltjes_density_with(t, eps, STIELTJES_DELTA)
}

pub fn stieltjes_density_with(t: f64, eps: f64, delta: f64) -> Result<f64> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::Domain(format!("epsilon must be positive, got {eps}")));
    }
    if !t.is_finite() || t.abs() < delta || (t - E).abs() < delta {
        return Err(Error::Domain(format!("t = {t} is within {delta} of an endpoint")));
    }
    let g = cauchy_transform_s(Complex64::new(t, eps))?;
    Ok(-g.im / PI)
}

/// Strict local maxima of a sampled profile. An endpoint counts when it is
/// strictly above its only neighbour.
pub fn count_strict_local_maxima(values: &[f64]) -> usize {
    let n = values.len();
    match n {
        0 => 0,
        1 => 1,
        _ => {
            let mut count = 0;
            if values[0] > values[1] {
                count += 1;
            }
            if values[n - 1] > values[n - 2] {
                count += 1;
            }
            count
                + values
                    .windows(3)
                    .filter(|w| w[1] > w[0] && w[1] > w[2])
                    .count()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levy_endpoint_and_moments() {
        assert_eq!(levy_density_y(1.0, E).unwrap(), 0.0);
        assert!(levy_density_y(1.0, 3.0).is_err());
        assert!((levy_moment(1.0, 0).unwrap() - 1.0).abs() < 1e-9);
        assert!((levy_moment(1.0, 2).unwrap() - 8.0 / 3.0).abs() < 1e-8);
        let lt = LevyTriple::new(2.0).unwrap();
        assert!((lt.mass().unwrap() - 2.0).abs() < 1e-9);
        assert!((lt.b - 1.0).abs() < 1e-9);
    }

    #[test]
    fn free_poisson_mass_and_moments() {
        for t in [0.5, 1.0, 2.0] {
            let mass = free_poisson_moment(t, 0).unwrap() + free_poisson_atom(t).unwrap();
            assert!((mass - 1.0).abs() < 1e-8, "t = {t}");
        }
        for (k, c) in [1.0, 2.0, 5.0, 14.0].iter().enumerate() {
            assert!((free_poisson_moment(1.0, k as u32 + 1).unwrap() - c).abs() < 1e-8);
        }
        assert_eq!(free_poisson_density(1.0, 4.5).unwrap(), 0.0);
    }

    #[test]
    fn boolean_density_at_half_pi() {
        let p = s_density(PI / 2.0).unwrap();
        assert!((p.x - 2.0 / PI).abs() < 1e-15);
        let want = PI / (4.0 * (1.0 + PI * PI / 4.0));
        assert!((p.density - want).abs() < 1e-14);
        assert!((s_density_f_form(PI / 2.0).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn boolean_moments() {
        for (k, want) in [(0, 1.0), (1, 1.0), (2, 2.0), (3, 4.5)] {
            assert!((s_moment_uniform(k).unwrap() - want).abs() < 1e-8, "k = {k}");
            assert!((s_moment_quadrature(k).unwrap() - want).abs() < 1e-6, "k = {k}");
        }
    }

    #[test]
    fn eta_boundary_values() {
        let (p, m) = eta_boundary(1.0 / E).unwrap();
        assert!((p - Complex64::new(1.0, 0.0)).norm() < 1e-12 && p == m.conj());
        let (p, _) = eta_boundary(PI / 2.0).unwrap();
        assert!((p - Complex64::new(0.0, PI / 2.0)).norm() < 1e-10);
    }

    #[test]
    fn stieltjes_matches_parametric() {
        let want = s_density_at(1.0).unwrap();
        let mut last = f64::INFINITY;
        for eps in [1e-3, 1e-5, 1e-7] {
            let err = (stieltjes_density(1.0, eps).unwrap() - want).abs();
            assert!(err < last);
            last = err;
        }
        assert!(last < 1e-4);
        assert!(stieltjes_density(1e-9, 1e-7).is_err());
    }

    #[test]
    fn maxima_counter() {
        assert_eq!(count_strict_local_maxima(&[3.0, 1.0, 2.0]), 2);
        assert_eq!(count_strict_local_maxima(&[1.0, 2.0, 1.0]), 1);
        assert_eq!(count_strict_local_maxima(&[1.0, 1.0, 1.0]), 0);
    }
}
