//! Special functions and numerics: Lambert W₀, the auxiliary pair `f`, `g`,
//! limit-law densities, quadrature and root finding.

mod aux;
mod density;
mod lambert;
pub mod quadrature;
pub mod roots;

pub use aux::{dlog_f, f_aux, f_inverse, f_prime, g_aux, ln_f};
pub use density::{
    cauchy_transform_s, count_strict_local_maxima, eta_boundary, free_poisson_atom, free_poisson_density,
    free_poisson_moment, free_poisson_support, levy_density_y, levy_drift, levy_moment, s_density,
    s_density_at, s_density_f_form, s_density_scan, s_moment_quadrature, s_moment_uniform,
    stieltjes_density, stieltjes_density_with, LevyTriple, ParametricPoint, STIELTJES_DELTA,
};
pub use lambert::{lambert_w0, lambert_w0_complex, w0_integral_repr, w0_series};
