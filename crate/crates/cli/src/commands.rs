//! Subcommand implementations. Each one builds a [`Table`].

use std::f64::consts::{E, PI};

use num_complex::Complex64;

use freeprob::convolution::ConvKind;
use freeprob::limits::{run_experiment, ExperimentMode};
use freeprob::scalar::render_rational;
use freeprob::special;
use freeprob::transforms::{
    boolean_cumulants, boolean_eta, free_cumulants, psi_from_moments, psi_inverse, r_from_moments, s_from_moments,
    sigma_from_moments,
};
use freeprob::verify::{run_battery, VerifyConfig};
use freeprob::{Error, Rational, Scalar, TruncSeries, MAX_ORDER};

use crate::law::LawExpr;
use crate::table::{fmt_g17, Table};

/// A failure with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoConvergence(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

pub type Outcome = Result<Table, Failure>;

fn check_order(p: usize) -> Result<(), Failure> {
    if p == 0 || p > MAX_ORDER {
        return Err(usage(format!("--order must be in 1..={MAX_ORDER}, got {p}")));
    }
    Ok(())
}

fn exact_row(index: usize, v: &Rational) -> Vec<String> {
    vec![index.to_string(), render_rational(v), fmt_g17(v.to_f64())]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Psi,
    PsiInv,
    #[value(name = "S")]
    S,
    #[value(name = "Sigma")]
    Sigma,
    #[value(name = "R")]
    R,
    Eta,
    Cumulants,
    BooleanCumulants,
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::Psi => "psi",
            Which::PsiInv => "psi-inv",
            Which::S => "S",
            Which::Sigma => "Sigma",
            Which::R => "R",
            Which::Eta => "eta",
            Which::Cumulants => "cumulants",
            Which::BooleanCumulants => "boolean-cumulants",
        }
    }
}

/// Series coefficients (or cumulants) of order `p`.
pub fn transform(law: &LawExpr, which: Which, p: usize) -> Outcome {
    check_order(p)?;
    // S, Sigma and R lose one order relative to the moments
    let needed = match which {
        Which::S | Which::Sigma | Which::R => p + 1,
        _ => p,
    };
    if needed > MAX_ORDER {
        return Err(usage(format!("{} at order {p} needs {needed} moments; the cap is {MAX_ORDER}", which.name())));
    }
    let m = law.0.moments(needed)?;
    let mut t = Table::new(&["index", "value", "value_f64"]);
    t.meta("command", "transform").meta("law", law).meta("which", which.name()).meta("order", p);
    let series: TruncSeries = match which {
        Which::Psi => psi_from_moments(&m),
        Which::PsiInv => psi_inverse(&m)?,
        Which::S => s_from_moments(&m)?,
        Which::Sigma => sigma_from_moments(&m)?,
        Which::R => r_from_moments(&m),
        Which::Eta => boolean_eta(&m),
        Which::Cumulants | Which::BooleanCumulants => {
            let c = if which == Which::Cumulants { free_cumulants(&m) } else { boolean_cumulants(&m) };
            for (i, v) in c.values().iter().enumerate() {
                t.push(exact_row(i + 1, v));
            }
            return Ok(t);
        }
    };
    for (i, v) in series.coeffs().iter().enumerate() {
        t.push(exact_row(i, v));
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Op {
    Boxplus,
    Boxtimes,
    Uplus,
}

pub fn convolve(op: Op, a: &LawExpr, b: &LawExpr, p: usize) -> Outcome {
    check_order(p)?;
    let (kind, name) = match op {
        Op::Boxplus => (ConvKind::BoxPlus, "boxplus"),
        Op::Boxtimes => (ConvKind::BoxTimes, "boxtimes"),
        Op::Uplus => (ConvKind::UPlus, "uplus"),
    };
    let m = kind.apply(&a.0.moments(p)?, &b.0.moments(p)?)?;
    let mut t = Table::new(&["k", "moment", "moment_f64"]);
    t.meta("command", "convolve").meta("op", name).meta("a", a).meta("b", b).meta("order", p);
    for k in 1..=p {
        t.push(exact_row(k, m.m(k)));
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Free,
    Boolean,
    ExchangedFree,
    ExchangedBoolean,
}

impl From<Mode> for ExperimentMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Free => ExperimentMode::Free,
            Mode::Boolean => ExperimentMode::Boolean,
            Mode::ExchangedFree => ExperimentMode::ExchangedFree,
            Mode::ExchangedBoolean => ExperimentMode::ExchangedBoolean,
        }
    }
}

pub fn limit(mode: Mode, law: &LawExpr, ns: &[u64], p: usize) -> Outcome {
    check_order(p)?;
    if ns.is_empty() || ns.contains(&0) {
        return Err(usage("--n needs positive integers"));
    }
    let mode = ExperimentMode::from(mode);
    let report = run_experiment(mode, &law.0, ns, p)?;
    let mut t = Table::new(&["n", "k", "moment", "limit", "abs_error", "rel_error"]);
    t.meta("command", "limit")
        .meta("mode", mode.name())
        .meta("formula", mode.formula())
        .meta("law", law)
        .meta("alpha", render_rational(&report.alpha))
        .meta("s0", render_rational(&report.s0))
        .meta("order", p);
    for r in &report.rows {
        t.push(vec![
            r.n.to_string(),
            r.k.to_string(),
            render_rational(&r.moment),
            render_rational(&r.limit),
            fmt_g17(r.abs_error),
            fmt_g17(r.rel_error),
        ]);
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Density {
    SLimit,
    YLevy,
    FreePoisson,
}

/// Density samples, uniform in the natural parameter of each law.
pub fn density(which: Density, alpha: f64, t: f64, grid: usize) -> Outcome {
    if grid < 2 {
        return Err(usage("--grid must be at least 2"));
    }
    let mut table;
    match which {
        Density::SLimit => {
            // v_i = π(i + 1/2)/grid, both endpoints are singular
            table = Table::new(&["v_f64", "x_f64", "density_f64", "ln_density_f64"]);
            table.meta("command", "density").meta("which", "s-limit").meta("sampling", "uniform in v over (0, pi)");
            for p in special::s_density_scan(grid)? {
                table.push(vec![fmt_g17(p.v), fmt_g17(p.x), fmt_g17(p.density), fmt_g17(p.ln_density)]);
            }
        }
        Density::YLevy => {
            // u_i = π i/grid; u = 0 is the endpoint s = αe where the density vanishes
            table = Table::new(&["u_f64", "s_f64", "density_f64"]);
            table
                .meta("command", "density")
                .meta("which", "y-levy")
                .meta("alpha", fmt_g17(alpha))
                .meta("sampling", "uniform in u over [0, pi), s = alpha/f(u)");
            if !(alpha > 0.0 && alpha.is_finite()) {
                return Err(usage(format!("--alpha must be > 0, got {alpha}")));
            }
            for i in 0..grid {
                let u = PI * i as f64 / grid as f64;
                let s = if i == 0 { alpha * E } else { alpha / special::f_aux(u)? };
                table.push(vec![fmt_g17(u), fmt_g17(s), fmt_g17(special::levy_density_y(alpha, s)?)]);
            }
        }
        Density::FreePoisson => {
            let (a, b) = special::free_poisson_support(t)?;
            table = Table::new(&["theta_f64", "x_f64", "density_f64"]);
            table
                .meta("command", "density")
                .meta("which", "free-poisson")
                .meta("t", fmt_g17(t))
                .meta("atom_at_zero", fmt_g17(special::free_poisson_atom(t)?))
                .meta("sampling", "uniform in theta over [0, pi], x = a + (b-a)(1-cos theta)/2");
            for i in 0..grid {
                let theta = PI * i as f64 / (grid - 1) as f64;
                let x = a + 0.5 * (b - a) * (1.0 - theta.cos());
                table.push(vec![fmt_g17(theta), fmt_g17(x), fmt_g17(special::free_poisson_density(t, x)?)]);
            }
        }
    }
    Ok(table)
}

pub fn lambertw(z: Complex64, real: bool, check_integral: bool) -> Outcome {
    let w = if real {
        Complex64::new(special::lambert_w0(z.re)?, 0.0)
    } else {
        special::lambert_w0_complex(z)?
    };
    let residual = (w * w.exp() - z).norm();
    let mut cols = vec!["z_re_f64", "z_im_f64", "w_re_f64", "w_im_f64", "residual_f64"];
    let mut row = vec![fmt_g17(z.re), fmt_g17(z.im), fmt_g17(w.re), fmt_g17(w.im), fmt_g17(residual)];
    if check_integral {
        let q = special::w0_integral_repr(z)?;
        let direct = if z.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { w / z };
        cols.extend(["integral_re_f64", "integral_im_f64", "discrepancy_f64"]);
        row.extend([fmt_g17(q.re), fmt_g17(q.im), fmt_g17((q - direct).norm())]);
    }
    let mut t = Table::new(&cols);
    t.meta("command", "lambertw").meta("branch", "W0");
    t.push(row);
    Ok(t)
}

/// Runs the invariant battery; the boolean is true when every check passed.
pub fn verify(order: usize, seed: u64, inject_fault: bool) -> Result<(Table, bool), Failure> {
    check_order(order)?;
    let cfg = VerifyConfig {
        order,
        seed,
        inject_fault,
        ..VerifyConfig::default()
    };
    let results = run_battery(&cfg);
    let mut t = Table::new(&["check", "status", "detail"]);
    t.meta("command", "verify").meta("order", order).meta("seed", seed);
    let ok = results.iter().all(|r| r.passed);
    for r in results {
        t.push(vec![r.name.to_string(), if r.passed { "PASS" } else { "FAIL" }.into(), r.detail]);
    }
    Ok((t, ok))
}
