//! Seeded invariant battery shared by the `verify` command and the tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convolution::{box_plus, box_times, dilate, power_identity_check, uplus};
use crate::error::Result;
use crate::limits::{shifted_cumulant_check, y_cumulants};
use crate::oracle::{interval_moments, nc_moments, ORACLE_MAX};
use crate::scalar::{rat, Rational, Scalar};
use crate::series::TruncSeries;
use crate::special;
use crate::transforms::{
    boolean_cumulants, free_cumulants, moments_from_s, s_from_moments, s_r_functional_check,
    sigma_from_moments, MomentSeq,
};

/// Moments `m_0..=m_p` of a random discrete law with one to four atoms at
/// positive rationals and positive rational weights.
pub fn random_moments(rng: &mut impl Rng, p: usize) -> MomentSeq {
    let atoms = rng.gen_range(1..=4);
    let xs: Vec<Rational> = (0..atoms)
        .map(|_| rat(rng.gen_range(1..=9), rng.gen_range(1..=4)))
        .collect();
    let ws: Vec<i64> = (0..atoms).map(|_| rng.gen_range(1..=5)).collect();
    let total: i64 = ws.iter().sum();
    let m = (0..=p)
        .map(|k| {
            xs.iter()
                .zip(&ws)
                .fold(Rational::from_i64(0), |acc, (x, &w)| acc + rat(w, total) * x.powi(k as i64))
        })
        .collect();
    MomentSeq::new(m).expect("a discrete law has a valid moment sequence")
}

/// `count` random sequences of order `p` from a fixed seed.
pub fn random_batch(seed: u64, count: usize, p: usize) -> Vec<MomentSeq> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_moments(&mut rng, p)).collect()
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub order: usize,
    pub seed: u64,
    pub samples: usize,
    /// Corrupts one oracle coefficient so the harness can be seen to fail.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            order: crate::DEFAULT_ORDER,
            seed: 0,
            samples: 20,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn record(out: &mut Vec<CheckResult>, name: &'static str, r: Result<(bool, String)>) {
    let (passed, detail) = r.unwrap_or_else(|e| (false, format!("error: {e}")));
    out.push(CheckResult { name, passed, detail });
}

fn all_of(seqs: &[MomentSeq], f: impl Fn(&MomentSeq) -> Result<bool>) -> Result<(bool, String)> {
    for (i, m) in seqs.iter().enumerate() {
        if !f(m)? {
            return Ok((false, format!("sample {i} fails")));
        }
    }
    Ok((true, format!("{} samples", seqs.len())))
}

/// Runs every invariant and returns one result per check.
pub fn run_battery(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let p = cfg.order.clamp(2, crate::MAX_ORDER);
    let seqs = random_batch(cfg.seed, cfg.samples, p);
    let oracle_p = p.min(ORACLE_MAX);
    let mut out = Vec::new();

    record(&mut out, "series.revert_compose", {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
        (|| {
            for _ in 0..cfg.samples {
                let mut c: Vec<Rational> = (0..=p).map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))).collect();
                c[0] = Rational::from_i64(0);
                c[1] = rat(rng.gen_range(1..=4), 1);
                let f = TruncSeries::new(c);
                let inv = f.revert()?;
                if f.compose(&inv)? != TruncSeries::identity(p) || inv.compose(&f)? != TruncSeries::identity(p) {
                    return Ok((false, "f(f^-1(z)) != z".into()));
                }
            }
            Ok((true, format!("{} series", cfg.samples)))
        })()
    });

    record(&mut out, "transforms.taylor_s0_s1", all_of(&seqs, |m| {
        let s = s_from_moments(m)?;
        let sigma = sigma_from_moments(m)?;
        let m1 = m.first().clone();
        let s0 = m1.recip();
        let s1 = -m.variance()? / (m1.clone() * m1.clone() * m1);
        Ok(s.coeffs()[0] == s0 && sigma.coeffs()[0] == s0 && s.coeffs()[1] == s1 && sigma.coeffs()[1] == s1)
    }));

    record(&mut out, "transforms.r_of_zs_is_z", all_of(&seqs, s_r_functional_check));

    record(&mut out, "transforms.s_round_trip", all_of(&seqs, |m| {
        let back = moments_from_s(&s_from_moments(m)?, p)?;
        Ok(back == *m)
    }));

    record(&mut out, "oracle.free_cumulants_nc", all_of(&seqs, |m| {
        let m = m.truncate(oracle_p)?;
        let kappa = free_cumulants(&m);
        let mut via = nc_moments(kappa.values());
        if cfg.inject_fault {
            let last = via.len() - 1;
            via[last] = via[last].clone() + Rational::from_i64(1);
        }
        Ok(via == m.moments())
    }));

    record(&mut out, "oracle.boolean_cumulants_interval", all_of(&seqs, |m| {
        let m = m.truncate(oracle_p)?;
        Ok(interval_moments(boolean_cumulants(&m).values()) == m.moments())
    }));

    record(&mut out, "convolution.boxplus_adds_free_cumulants", all_of(&seqs, |m| {
        let sum = box_plus(m, &seqs[0])?;
        let lhs = free_cumulants(&sum);
        let (a, b) = (free_cumulants(m), free_cumulants(&seqs[0]));
        Ok(lhs.values().iter().zip(a.values().iter().zip(b.values())).all(|(l, (x, y))| *l == x.clone() + y.clone()))
    }));

    record(&mut out, "convolution.uplus_adds_boolean_cumulants", all_of(&seqs, |m| {
        let sum = uplus(m, &seqs[0])?;
        let lhs = boolean_cumulants(&sum);
        let (a, b) = (boolean_cumulants(m), boolean_cumulants(&seqs[0]));
        Ok(lhs.values().iter().zip(a.values().iter().zip(b.values())).all(|(l, (x, y))| *l == x.clone() + y.clone()))
    }));

    record(&mut out, "convolution.boxtimes_multiplies_s", all_of(&seqs, |m| {
        let prod = box_times(m, &seqs[0])?;
        let lhs = s_from_moments(&prod)?;
        Ok(lhs == &s_from_moments(m)? * &s_from_moments(&seqs[0])?)
    }));

    record(&mut out, "convolution.dilation_divides_s", all_of(&seqs, |m| {
        let c = rat(5, 3);
        Ok(s_from_moments(&dilate(m, &c)?)? == s_from_moments(m)?.scale(&c.recip()))
    }));

    record(&mut out, "limits.power_identities", (|| {
        let ok = power_identity_check(&rat(1, 1), &rat(2, 1), p)? && power_identity_check(&rat(3, 2), &rat(1, 3), p)?;
        Ok((ok, "(1, 2) and (3/2, 1/3)".into()))
    })());

    record(&mut out, "limits.shifted_cumulants", shifted_cumulant_check(p).map(|ok| (ok, format!("order {p}"))));

    record(&mut out, "special.w0_series_matches_cumulants", (|| {
        let w = special::w0_series(p)?;
        Ok((w.coeffs()[1..] == y_cumulants(&rat(1, 1), p)[..], format!("order {p}")))
    })());

    record(&mut out, "special.lambert_residual", (|| {
        let mut worst: f64 = 0.0;
        for i in 0..=200 {
            let x = -1.0 / std::f64::consts::E + i as f64 * 0.05;
            let w = special::lambert_w0(x)?;
            worst = worst.max((w * w.exp() - x).abs() / x.abs().max(1.0));
        }
        Ok((worst <= 1e-14, format!("max relative residual {worst:.2e}")))
    })());

    record(&mut out, "special.levy_moments", (|| {
        let mut worst: f64 = 0.0;
        for k in 0..3u32 {
            let want = ((k + 2) as f64).powi(k as i32 + 1) / (1..=k + 2).map(f64::from).product::<f64>();
            worst = worst.max((special::levy_moment(1.0, k)? / want - 1.0).abs());
        }
        Ok((worst <= 1e-8, format!("max relative error {worst:.2e}")))
    })());

    record(&mut out, "special.boolean_density_forms", (|| {
        let mut worst: f64 = 0.0;
        for i in 1..100 {
            let v = std::f64::consts::PI * i as f64 / 100.0;
            let a = special::s_density(v)?.density;
            worst = worst.max((special::s_density_f_form(v)? / a - 1.0).abs());
        }
        Ok((worst <= 1e-10, format!("max relative gap {worst:.2e}")))
    })());

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_battery_passes() {
        let cfg = VerifyConfig {
            samples: 5,
            ..VerifyConfig::default()
        };
        for r in run_battery(&cfg) {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }

    #[test]
    fn injected_fault_is_caught() {
        let cfg = VerifyConfig {
            samples: 2,
            inject_fault: true,
            ..VerifyConfig::default()
        };
        let failed: Vec<_> = run_battery(&cfg).into_iter().filter(|r| !r.passed).map(|r| r.name).collect();
        assert_eq!(failed, vec!["oracle.free_cumulants_nc"]);
    }

    #[test]
    fn batches_are_reproducible() {
        assert_eq!(random_batch(7, 3, 4), random_batch(7, 3, 4));
        assert!(random_batch(7, 3, 4).iter().all(|m| m.first().is_positive()));
    }
}
