//! Principal branch of the Lambert W function.

use std::f64::consts::{E, PI};

use num_complex::Complex64;

use super::aux::{g_aux, ln_f};
use super::quadrature::{integrate, QuadConfig};
use crate::error::{Error, Result};
use crate::scalar::{factorial, Rational, Scalar};
use crate::series::TruncSeries;
use crate::MAX_ORDER;

const BRANCH: f64 = -1.0 / E;

fn branch_seed(p: f64) -> f64 {
    -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p.powi(3) - 43.0 / 540.0 * p.powi(4)
}

/// `W₀(x)` for real `x ≥ -1/e`.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if x.is_nan() || x < BRANCH {
        return Err(Error::Domain(format!("W0 is real only for x >= -1/e, got {x}")));
    }
    if x == 0.0 || x.is_infinite() {
        return Ok(x);
    }
    let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
    if p < 1e-3 {
        return Ok(branch_seed(p));
    }
    let mut w = if x < -0.25 {
        branch_seed(p)
    } else if x < 3.0 {
        x.ln_1p()
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };
    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 {
            break;
        }
        let wp1 = w + 1.0;
        let dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= dw;
        if dw.abs() <= 4.0 * f64::EPSILON * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}

fn complex_seed(z: Complex64) -> Complex64 {
    let branch = Complex64::new(BRANCH, 0.0);
    if (z - branch).norm() < 0.3 {
        let p = (2.0 * (E * z + 1.0)).sqrt();
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    }
    if z.re > -1.0 && z.re < 1.5 && z.im.abs() < 1.0 && z.re > -2.5 * z.im.abs() - 0.2 {
        // [2/2] Padé approximant of W(z)/z at the origin
        let num = 1.0 + z * (1.9 + z * (17.0 / 60.0));
        let den = 1.0 + z * (2.9 + z * (101.0 / 60.0));
        return z * num / den;
    }
    let l1 = z.ln();
    let l2 = l1.ln();
    l1 - l2 + l2 / l1
}

/// `W₀(z)` on the plane cut along `(-∞, -1/e)`.
///
/// Points with `Im z = 0` and `Re z < -1/e` lie on the cut and are rejected;
/// the two sides of the cut are reached with a signed imaginary part.
pub fn lambert_w0_complex(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if z.im == 0.0 {
        if z.re < BRANCH {
            return Err(Error::Domain(format!("{} lies on the branch cut of W0", z.re)));
        }
        return lambert_w0(z.re).map(|w| Complex64::new(w, 0.0));
    }
    let mut w = complex_seed(z);
    for _ in 0..200 {
        let ew = w.exp();
        let f = w * ew - z;
        if f.norm() == 0.0 {
            break;
        }
        let wp1 = w + 1.0;
        let dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= dw;
        if dw.norm() <= 4.0 * f64::EPSILON * (1.0 + w.norm()) {
            break;
        }
    }
    if !w.re.is_finite() || !w.im.is_finite() || w.im.abs() > PI {
        return Err(Error::NoConvergence(format!("W0 iteration at {z}")));
    }
    Ok(w)
}

/// Taylor coefficients of `-W₀(-z)`, that is `n^{n-1}/n!`, up to order `p`.
pub fn w0_series(p: usize) -> Result<TruncSeries> {
    if p > MAX_ORDER {
        return Err(Error::OrderCap(p));
    }
    let coeffs = (0..=p)
        .map(|n| {
            if n == 0 {
                Rational::from_i64(0)
            } else {
                Rational::from_i64(n as i64).powi(n as i64 - 1) / factorial(n as u64)
            }
        })
        .collect();
    Ok(TruncSeries::new(coeffs))
}

/// `W₀(z)/z` through the Stieltjes-type representation
/// `(1/π) ∫₀^π g(u) / (z + f(u)) du`.
pub fn w0_integral_repr(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= BRANCH {
        return Err(Error::Domain(format!("{} is on the cut of the integral representation", z.re)));
    }
    let cfg = QuadConfig {
        abs_tol: 1e-13,
        rel_tol: 1e-13,
        max_intervals: 4000,
    };
    let r = integrate(
        |u| {
            // g/(z+f) = g·(1/f) / (1 + z/f); 1/f vanishes at π
            let inv_f = (-ln_f(u).unwrap_or(f64::INFINITY)).exp();
            let g = g_aux(u).unwrap_or(0.0);
            Complex64::new(g * inv_f, 0.0) / (1.0 + z * inv_f)
        },
        0.0,
        PI,
        cfg,
    )?;
    Ok(r.value / PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert!((lambert_w0(1.0).unwrap() - 0.567_143_290_409_783_8).abs() < 1e-15);
        assert!((lambert_w0(E).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(lambert_w0(BRANCH).unwrap(), -1.0);
        assert!(lambert_w0(-0.5).is_err());
    }

    #[test]
    fn cut_is_rejected() {
        assert!(lambert_w0_complex(Complex64::new(-1.0, 0.0)).is_err());
        let above = lambert_w0_complex(Complex64::new(-1.0, 1e-300)).unwrap();
        let below = lambert_w0_complex(Complex64::new(-1.0, -1e-300)).unwrap();
        assert!(above.im > 0.0 && below.im < 0.0);
        assert!((above - below.conj()).norm() < 1e-14);
    }

    #[test]
    fn series_coefficients() {
        let s = w0_series(4).unwrap();
        let want = [Rational::from_i64(0), Rational::from_i64(1), Rational::from_i64(1), crate::rat(3, 2), crate::rat(8, 3)];
        assert_eq!(s.coeffs(), &want);
        assert!(w0_series(MAX_ORDER + 1).is_err());
    }

    #[test]
    fn integral_matches_closed_form() {
        for z in [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.5), Complex64::new(3.0, -2.0)] {
            let lhs = w0_integral_repr(z).unwrap();
            let rhs = if z.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { lambert_w0_complex(z).unwrap() / z };
            assert!((lhs - rhs).norm() < 1e-10, "z = {z}: {lhs} vs {rhs}");
        }
    }
}
