//! Bracketed root finding for monotone functions.

use crate::error::{Error, Result};

/// Root of an increasing function on `[lo, hi]`, by bisection safeguarded
/// Newton steps. `func(lo) <= 0 <= func(hi)` is assumed; infinite values at
/// the ends are fine.
pub fn increasing_root(
    func: impl Fn(f64) -> f64,
    deriv: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<f64> {
    let mut x = 0.5 * (lo + hi);
    for _ in 0..400 {
        let fx = func(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let d = deriv(x);
        let newton = x - fx / d;
        let next = if d.is_finite() && d > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - x).abs();
        x = next;
        if hi - lo <= tol || step <= 0.25 * tol {
            // a final Newton polish
            let fx = func(x);
            let d = deriv(x);
            let polished = x - fx / d;
            if polished.is_finite() && polished >= lo && polished <= hi {
                x = polished;
            }
            return Ok(x);
        }
    }
    Err(Error::NoConvergence(format!("bracket [{lo}, {hi}] did not shrink below {tol}")))
}
