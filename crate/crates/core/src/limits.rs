//! Limit laws of iterated free/boolean convolutions and finite-`n`
//! convergence experiments.
//!
//! For a law `ρ` on `[0, ∞)` with `α = Var(ρ)/m_1(ρ)^2 > 0` and
//! `s_0 = 1/m_1(ρ)`:
//!
//! * free: `D_{s_0^n/n}((ρ^{⊠n})^{⊞n}) → 𝔶_α`, where `S_{𝔶_α}(z) = exp(-αz)`;
//! * boolean: `D_{s_0^{n-1}/n}((ρ^{⊠(n-1)})^{⊎n}) → 𝔰_α`, where `Σ_{𝔰_α}(z) = exp(-αz)`;
//! * exchanged free: `D_{s_0^n/n^n}((ρ^{⊞n})^{⊠n}) → 𝔶_α`;
//! * exchanged boolean: `D_{s_0^n/(n-1)^n}((ρ^{⊎(n-1)})^{⊠n}) → 𝔰_α`.
//!
//! The two boolean scalings are the ones that keep the first moment equal
//! to 1 for every `n`; they agree with `s_0^n/n` and `s_0^n/n^n` only
//! asymptotically or when `m_1 = 1`.
//!
//! Every finite-`n` moment is an exact rational.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::convolution::{boxplus_power, boxtimes_power, dilate, uplus_power};
use crate::error::{Error, Result};
use crate::scalar::{factorial, rat, Rational, Scalar};
use crate::series::TruncSeries;
use crate::transforms::{
    free_cumulants, hankel_min_eigenvalue, moments_from_free_cumulants, moments_from_sigma,
    moments_from_s, Divisibility, MomentSeq,
};

/// `α = (m_2 - m_1^2) / m_1^2`.
pub fn alpha_of(m: &MomentSeq) -> Result<Rational> {
    m.require_order(2)?;
    m.require_positive_mean()?;
    let m1sq = m.first().clone() * m.first().clone();
    Ok(m.variance()? / m1sq)
}

/// `s_0 = 1 / m_1`.
pub fn s0_of(m: &MomentSeq) -> Result<Rational> {
    m.require_positive_mean()?;
    Ok(m.first().recip())
}

fn require_positive(name: &'static str, v: &Rational) -> Result<()> {
    if Scalar::is_positive(v) {
        Ok(())
    } else {
        Err(Error::Parameter {
            name,
            constraint: "> 0",
            value: v.to_string(),
        })
    }
}

/// Free cumulants `(αn)^{n-1}/n!` of `𝔶_α`, for `n = 1..=p`.
pub fn y_cumulants(alpha: &Rational, p: usize) -> Vec<Rational> {
    (1..=p)
        .map(|n| {
            let an = alpha.clone() * rat(n as i64, 1);
            an.powi(n as i64 - 1) / factorial(n as u64)
        })
        .collect()
}

/// Moments of `𝔶_α` from its free cumulants. The law is flagged both ⊞- and
/// ⊠-infinitely divisible.
pub fn y_moments(alpha: &Rational, p: usize) -> Result<MomentSeq> {
    require_positive("alpha", alpha)?;
    Ok(moments_from_free_cumulants(&y_cumulants(alpha, p))?.with_divisibility(Divisibility {
        free_additive: true,
        free_multiplicative: true,
    }))
}

/// `exp(-αz)` to the given order.
pub fn exp_neg_alpha(alpha: &Rational, order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |k| if k == 1 { -alpha.clone() } else { Rational::zero() })
        .exp()
        .expect("zero constant term")
}

/// Moments of `𝔶_α` through `S = exp(-αz)` instead of cumulants.
pub fn y_moments_from_s(alpha: &Rational, p: usize) -> Result<MomentSeq> {
    require_positive("alpha", alpha)?;
    moments_from_s(&exp_neg_alpha(alpha, p.saturating_sub(1)), p)
}

/// `n^n / n!`, the moments of `𝔰_1`.
pub fn s1_closed_form(p: usize) -> Result<MomentSeq> {
    MomentSeq::new(
        (0..=p)
            .map(|n| {
                if n == 0 {
                    Rational::one()
                } else {
                    rat(n as i64, 1).powi(n as i64) / factorial(n as u64)
                }
            })
            .collect(),
    )
}

/// Moments of `𝔰_α` from `Σ = exp(-αz)`.
pub fn s_moments_pipeline(alpha: &Rational, p: usize) -> Result<MomentSeq> {
    require_positive("alpha", alpha)?;
    moments_from_sigma(&exp_neg_alpha(alpha, p.saturating_sub(1)), p)
}

/// Moments of `𝔰_α`; closed form `n^n/n!` at `α = 1`.
pub fn s_moments(alpha: &Rational, p: usize) -> Result<MomentSeq> {
    require_positive("alpha", alpha)?;
    if alpha.is_one() {
        s1_closed_form(p)
    } else {
        s_moments_pipeline(alpha, p)
    }
}

/// A named law with exact rational parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum LawSpec {
    FreePoisson { t: Rational },
    Dirac { c: Rational },
    Moments(Vec<Rational>),
    YLimit { alpha: Rational },
    SLimit { alpha: Rational },
}

impl LawSpec {
    /// Moments up to order `p`.
    pub fn moments(&self, p: usize) -> Result<MomentSeq> {
        match self {
            LawSpec::FreePoisson { t } => {
                require_positive("t", t)?;
                Ok(moments_from_free_cumulants(&vec![t.clone(); p])?.with_divisibility(
                    Divisibility {
                        free_additive: true,
                        free_multiplicative: false,
                    },
                ))
            }
            LawSpec::Dirac { c } => {
                require_positive("c", c)?;
                MomentSeq::dirac(c.clone(), p)
            }
            LawSpec::Moments(list) => {
                if list.len() < p {
                    return Err(Error::InsufficientOrder {
                        needed: p,
                        available: list.len(),
                    });
                }
                MomentSeq::from_tail(&list[..p])
            }
            LawSpec::YLimit { alpha } => y_moments(alpha, p),
            LawSpec::SLimit { alpha } => s_moments(alpha, p),
        }
    }
}

impl fmt::Display for LawSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawSpec::FreePoisson { t } => write!(f, "free-poisson:t={t}"),
            LawSpec::Dirac { c } => write!(f, "dirac:c={c}"),
            LawSpec::Moments(list) => {
                write!(f, "moments:")?;
                for (i, m) in list.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{m}")?;
                }
                Ok(())
            }
            LawSpec::YLimit { alpha } => write!(f, "y-limit:alpha={alpha}"),
            LawSpec::SLimit { alpha } => write!(f, "s-limit:alpha={alpha}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentMode {
    Free,
    Boolean,
    ExchangedFree,
    ExchangedBoolean,
}

impl ExperimentMode {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentMode::Free => "free",
            ExperimentMode::Boolean => "boolean",
            ExperimentMode::ExchangedFree => "exchanged-free",
            ExperimentMode::ExchangedBoolean => "exchanged-boolean",
        }
    }

    /// Human-readable form of the sequence of laws being computed.
    pub fn formula(self) -> &'static str {
        match self {
            ExperimentMode::Free => "D_{s0^n/n}((rho^{boxtimes n})^{boxplus n})",
            ExperimentMode::Boolean => {
                "D_{s0^(n-1)/n}((rho^{boxtimes (n-1)})^{uplus n}); rho^{boxtimes 0} = delta_1"
            }
            ExperimentMode::ExchangedFree => "D_{s0^n/n^n}((rho^{boxplus n})^{boxtimes n})",
            ExperimentMode::ExchangedBoolean => {
                "D_{s0^n/(n-1)^n}((rho^{uplus (n-1)})^{boxtimes n}); n >= 2"
            }
        }
    }

    fn is_free(self) -> bool {
        matches!(self, ExperimentMode::Free | ExperimentMode::ExchangedFree)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub n: u64,
    pub k: usize,
    pub moment: Rational,
    pub limit: Rational,
    pub abs_error: f64,
    pub rel_error: f64,
}

impl ExperimentRow {
    pub fn exact_error(&self) -> Rational {
        (self.moment.clone() - self.limit.clone()).abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub mode: ExperimentMode,
    pub law: String,
    pub alpha: Rational,
    pub s0: Rational,
    pub order: usize,
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentReport {
    /// Rows for moment order `k`, in increasing `n`.
    pub fn column(&self, k: usize) -> Vec<&ExperimentRow> {
        self.rows.iter().filter(|r| r.k == k).collect()
    }

    /// Least-squares slope of `log(abs_error)` against `log(n)` for moment
    /// order `k`, restricted to `n` in `[n_min, n_max]`.
    pub fn loglog_slope(&self, k: usize, n_min: u64, n_max: u64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .column(k)
            .into_iter()
            .filter(|r| r.n >= n_min && r.n <= n_max && r.abs_error > 0.0)
            .map(|r| ((r.n as f64).ln(), r.abs_error.ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let len = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        Some(sxy / sxx)
    }
}

/// Default `n` grid: 1, 2, 4, …, 256.
pub fn default_ns() -> Vec<u64> {
    (0..=8).map(|e| 1u64 << e).collect()
}

fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn nth_law(mode: ExperimentMode, rho: &MomentSeq, s0: &Rational, n: u64) -> Result<MomentSeq> {
    let p = rho.order();
    let nr = int(n);
    match mode {
        ExperimentMode::Free => {
            let inner = boxtimes_power(rho, &nr)?;
            let outer = boxplus_power(&inner, &nr)?;
            dilate(&outer, &(s0.powi(n as i64) / nr))
        }
        ExperimentMode::Boolean => {
            let inner = if n == 1 {
                MomentSeq::dirac(Rational::one(), p)?
            } else {
                boxtimes_power(rho, &int(n - 1))?
            };
            let outer = uplus_power(&inner, &nr)?;
            dilate(&outer, &(s0.powi(n as i64 - 1) / nr))
        }
        ExperimentMode::ExchangedFree => {
            let inner = boxplus_power(rho, &nr)?;
            let outer = boxtimes_power(&inner, &nr)?;
            dilate(&outer, &(s0.clone() / nr).powi(n as i64))
        }
        ExperimentMode::ExchangedBoolean => {
            if n < 2 {
                return Err(Error::Parameter {
                    name: "n",
                    constraint: "n >= 2 in exchanged-boolean mode",
                    value: n.to_string(),
                });
            }
            let inner = uplus_power(rho, &int(n - 1))?;
            let outer = boxtimes_power(&inner, &nr)?;
            dilate(&outer, &(s0.clone() / int(n - 1)).powi(n as i64))
        }
    }
}

/// Runs one experiment mode over the given `n` values at moment orders
/// `1..=p`. Rows are ordered by `(n, k)`.
pub fn run_experiment(mode: ExperimentMode, law: &LawSpec, ns: &[u64], p: usize) -> Result<ExperimentReport> {
    let rho = law.moments(p.max(2))?;
    let alpha = alpha_of(&rho)?;
    if !Scalar::is_positive(&alpha) {
        return Err(Error::DegenerateLaw(alpha.to_string()));
    }
    let rho = rho.truncate(p)?;
    let s0 = s0_of(&rho)?;
    let limit = if mode.is_free() {
        y_moments(&alpha, p)?
    } else {
        s_moments(&alpha, p)?
    };

    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    if ns.first() == Some(&0) {
        return Err(Error::Parameter {
            name: "n",
            constraint: "n >= 1",
            value: "0".into(),
        });
    }

    // rows are independent; evaluate each n on its own thread
    let laws: Vec<Result<MomentSeq>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ns
            .iter()
            .map(|&n| {
                let rho = &rho;
                let s0 = &s0;
                scope.spawn(move || nth_law(mode, rho, s0, n))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("experiment worker panicked"))
            .collect()
    });

    let mut rows = Vec::with_capacity(ns.len() * p);
    for (&n, law_n) in ns.iter().zip(laws) {
        let law_n = law_n?;
        for k in 1..=p {
            let moment = law_n.m(k).clone();
            let lim = limit.m(k).clone();
            let diff = (moment.clone() - lim.clone()).abs();
            let abs_error = diff.to_f64();
            let rel_error = (diff / lim.abs()).to_f64();
            rows.push(ExperimentRow {
                n,
                k,
                moment,
                limit: lim,
                abs_error,
                rel_error,
            });
        }
    }
    Ok(ExperimentReport {
        mode,
        law: law.to_string(),
        alpha,
        s0,
        order: p,
        rows,
    })
}

pub fn free_limit_experiment(law: &LawSpec, ns: &[u64], p: usize) -> Result<ExperimentReport> {
    run_experiment(ExperimentMode::Free, law, ns, p)
}

pub fn boolean_limit_experiment(law: &LawSpec, ns: &[u64], p: usize) -> Result<ExperimentReport> {
    run_experiment(ExperimentMode::Boolean, law, ns, p)
}

/// Exchanged-order experiment; `boolean = false` selects the free variant.
pub fn exchanged_experiment(law: &LawSpec, boolean: bool, ns: &[u64], p: usize) -> Result<ExperimentReport> {
    let mode = if boolean {
        ExperimentMode::ExchangedBoolean
    } else {
        ExperimentMode::ExchangedFree
    };
    run_experiment(mode, law, ns, p)
}

/// Moments `(2n+1)^{n-1}/n!` for `n = 0..=p`.
pub fn shifted_law_closed_form(p: usize) -> Vec<Rational> {
    (0..=p)
        .map(|n| rat(2 * n as i64 + 1, 1).powi(n as i64 - 1) / factorial(n as u64))
        .collect()
}

/// Free cumulants `(n+1)^n/(n+1)!`, i.e. those of `𝔶_1` shifted down by one.
pub fn shifted_cumulants(p: usize) -> Vec<Rational> {
    (1..=p)
        .map(|n| rat(n as i64 + 1, 1).powi(n as i64) / factorial(n as u64 + 1))
        .collect()
}

/// Checks that the shifted cumulants produce the moments `(2n+1)^{n-1}/n!`.
pub fn shifted_cumulant_check(p: usize) -> Result<bool> {
    let m = moments_from_free_cumulants(&shifted_cumulants(p))?;
    Ok(m.moments() == shifted_law_closed_form(p).as_slice())
}

/// Hankel-positivity evidence for ⊞-infinite divisibility.
#[derive(Debug, Clone, PartialEq)]
pub struct IdEvidence {
    pub depth: usize,
    /// Shifted cumulants `κ_2, κ_3, …, κ_{2·depth}` as floats.
    pub shifted_cumulants: Vec<f64>,
    /// Minimum eigenvalue of the `s × s` Hankel matrix, for `s = 1..=depth`.
    pub min_eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
}

impl IdEvidence {
    pub fn is_psd(&self, tol: f64) -> bool {
        self.min_eigenvalue >= -tol
    }
}

/// Builds Hankel matrices `[κ_{i+j+2}]` of the free cumulants up to size
/// `depth`. Under the free Lévy–Khintchine form these are moment matrices
/// of the Lévy measure, so negative eigenvalues rule out ⊞-divisibility.
pub fn id_evidence(m: &MomentSeq, depth: usize) -> Result<IdEvidence> {
    m.require_order(2 * depth)?;
    let kappa = free_cumulants(m);
    let shifted: Vec<f64> = kappa.values()[1..2 * depth].iter().map(Scalar::to_f64).collect();
    Ok(id_evidence_from_shifted(&shifted, depth))
}

/// Same as [`id_evidence`], starting from `κ_2, κ_3, …` directly.
pub fn id_evidence_from_shifted(shifted: &[f64], depth: usize) -> IdEvidence {
    let depth = depth.min(shifted.len().div_ceil(2));
    let min_eigenvalues: Vec<f64> = (1..=depth)
        .map(|s| hankel_min_eigenvalue(&shifted[..2 * s - 1]))
        .collect();
    let min_eigenvalue = min_eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    IdEvidence {
        depth,
        shifted_cumulants: shifted.to_vec(),
        min_eigenvalues,
        min_eigenvalue: if depth == 0 { 0.0 } else { min_eigenvalue },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi() -> LawSpec {
        LawSpec::FreePoisson { t: rat(1, 1) }
    }

    #[test]
    fn alpha_and_s0() {
        let m = pi().moments(4).unwrap();
        assert_eq!(alpha_of(&m).unwrap(), rat(1, 1));
        assert_eq!(s0_of(&m).unwrap(), rat(1, 1));
        let d = LawSpec::Dirac { c: rat(3, 1) }.moments(3).unwrap();
        assert_eq!(alpha_of(&d).unwrap(), rat(0, 1));
        let p2 = LawSpec::FreePoisson { t: rat(2, 1) }.moments(2).unwrap();
        assert_eq!(p2.moments(), &[rat(1, 1), rat(2, 1), rat(6, 1)][..]);
        assert_eq!(alpha_of(&p2).unwrap(), rat(1, 2));
        assert_eq!(s0_of(&p2).unwrap(), rat(1, 2));
        let short = MomentSeq::from_tail(&[rat(1, 1)]).unwrap();
        assert!(matches!(alpha_of(&short), Err(Error::InsufficientOrder { .. })));
    }

    #[test]
    fn y_moments_examples() {
        let y = y_moments(&rat(1, 1), 4).unwrap();
        assert_eq!(y.moments(), &[rat(1, 1), rat(1, 1), rat(2, 1), rat(11, 2), rat(53, 3)][..]);
        for a in [rat(1, 3), rat(5, 2)] {
            assert_eq!(y_cumulants(&a, 3)[0], rat(1, 1));
        }
        // 𝓡 of 𝔶_1 is -W0(-z)/z
        let r = free_cumulants(&y_moments(&rat(1, 1), 10).unwrap());
        let w = crate::special::w0_series(10).unwrap();
        assert_eq!(r.values(), &w.coeffs()[1..]);
    }

    #[test]
    fn s_moments_examples() {
        let s = s_moments(&rat(1, 1), 4).unwrap();
        assert_eq!(s.moments(), &[rat(1, 1), rat(1, 1), rat(2, 1), rat(9, 2), rat(32, 3)][..]);
        let beta = crate::transforms::boolean_cumulants(&s_moments(&rat(1, 1), 6).unwrap());
        let w = crate::special::w0_series(6).unwrap();
        assert_eq!(beta.values(), &w.coeffs()[1..]);
        assert_eq!(s_moments_pipeline(&rat(1, 1), 8).unwrap(), s1_closed_form(8).unwrap());
    }

    #[test]
    fn free_experiment_examples() {
        let rep = free_limit_experiment(&pi(), &[1, 2, 4, 8], 4).unwrap();
        let row = rep.rows.iter().find(|r| r.n == 1 && r.k == 3).unwrap();
        assert_eq!(row.moment, rat(5, 1));
        assert_eq!(row.exact_error(), rat(1, 2));
        assert!(rep.column(1).iter().all(|r| r.moment == rat(1, 1)));
        // α is preserved exactly, so m_2 = 1 + α for every n
        assert!(rep.column(2).iter().all(|r| r.moment == rat(2, 1)));
        let k3: Vec<_> = rep.column(3).iter().map(|r| r.moment.clone()).collect();
        assert!(k3.windows(2).all(|w| w[0] < w[1] && w[1] < rat(11, 2)));
    }

    #[test]
    fn boolean_experiment_examples() {
        let rep = boolean_limit_experiment(&pi(), &[1, 64], 2).unwrap();
        let n1 = rep.column(1)[0];
        assert_eq!(n1.moment, rat(1, 1));
        assert_eq!(rep.column(2)[1].limit, rat(2, 1));
        // D_n((π^{⊠(n-1)})^{⊎n}) coincides with the s0 = 1 scaling
        let rho = pi().moments(4).unwrap();
        let n = rat(8, 1);
        let direct = dilate(
            &uplus_power(&boxtimes_power(&rho, &rat(7, 1)).unwrap(), &n).unwrap(),
            &n.recip(),
        )
        .unwrap();
        let rep = boolean_limit_experiment(&pi(), &[8], 4).unwrap();
        let from_report: Vec<_> = rep.rows.iter().map(|r| r.moment.clone()).collect();
        assert_eq!(&direct.moments()[1..], from_report.as_slice());
    }

    #[test]
    fn exchanged_examples() {
        let rep = exchanged_experiment(&pi(), false, &[1, 2, 4, 8, 16], 3).unwrap();
        assert!(rep.column(1).iter().all(|r| r.exact_error().is_zero()));
        assert!(rep.column(2).iter().all(|r| r.exact_error().is_zero()));
        let e: Vec<_> = rep.column(3).iter().map(|r| r.exact_error()).collect();
        assert!(e.windows(2).all(|w| w[1] < w[0]));
        let other = LawSpec::Moments(vec![rat(1, 1), rat(2, 1), rat(6, 1), rat(24, 1)]);
        let rep2 = exchanged_experiment(&other, false, &[4], 3).unwrap();
        assert_eq!(rep2.alpha, rat(1, 1));
        assert_eq!(rep2.column(3)[0].limit, rep.column(3)[0].limit);
        assert!(exchanged_experiment(&pi(), true, &[1], 3).is_err());
        let rep = exchanged_experiment(&pi(), true, &[2, 4, 8, 16], 2).unwrap();
        assert!(rep.column(1).iter().all(|r| r.exact_error().is_zero()));
        let e: Vec<_> = rep.column(2).iter().map(|r| r.exact_error()).collect();
        assert!(e.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn degenerate_law_rejected() {
        let err = free_limit_experiment(&LawSpec::Dirac { c: rat(1, 1) }, &[1], 3).unwrap_err();
        assert!(matches!(err, Error::DegenerateLaw(_)));
    }

    #[test]
    fn shifted_cumulants_match() {
        let k = shifted_cumulants(3);
        assert_eq!(k, vec![rat(1, 1), rat(3, 2), rat(8, 3)]);
        let m = shifted_law_closed_form(3);
        assert_eq!(m, vec![rat(1, 1), rat(1, 1), rat(5, 2), rat(49, 6)]);
        assert!(shifted_cumulant_check(8).unwrap());
    }

    #[test]
    fn id_evidence_examples() {
        let y = y_moments(&rat(1, 1), 6).unwrap();
        let ev = id_evidence(&y, 3).unwrap();
        assert!(ev.is_psd(1e-9));
        let d = MomentSeq::dirac(rat(2, 1), 6).unwrap();
        let ev = id_evidence(&d, 3).unwrap();
        assert!(ev.shifted_cumulants.iter().all(|&c| c == 0.0));
        assert!(ev.is_psd(1e-12));
        let bad = id_evidence_from_shifted(&[1.0, 0.0, -1.0], 2);
        assert!(bad.min_eigenvalue < -0.5);
        assert!(matches!(id_evidence(&y, 4), Err(Error::InsufficientOrder { .. })));
    }
}
