use crate::error::{domain, Result};
use crate::forward::EndpointSampler;
use crate::measures::InitialLaw;
use crate::rng::derive_seed;

use super::special::normal_cdf;

/// One-sample Kolmogorov–Smirnov result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KSResult {
    pub statistic: f64,
    pub p_value: f64,
    pub n: usize,
}

/// P(K > λ) for the Kolmogorov distribution, series truncated at 100 terms.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    let p = if lambda < 1.18 {
        // Jacobi-transformed series converges fast for small λ.
        let c = std::f64::consts::PI * std::f64::consts::PI / (8.0 * lambda * lambda);
        let mut s = 0.0;
        for k in 1..=100 {
            let j = (2 * k - 1) as f64;
            let term = (-j * j * c).exp();
            s += term;
            if term < 1e-300 {
                break;
            }
        }
        1.0 - (2.0 * std::f64::consts::PI).sqrt() / lambda * s
    } else {
        let mut s = 0.0;
        for k in 1..=100 {
            let kf = k as f64;
            let term = (-2.0 * kf * kf * lambda * lambda).exp();
            s += if k % 2 == 1 { term } else { -term };
            if term < 1e-300 {
                break;
            }
        }
        2.0 * s
    };
    p.clamp(0.0, 1.0)
}

/// D_n = sup_x |F_n(x) − F(x)| with the asymptotic p-value K(√n D_n).
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<KSResult> {
    if samples.is_empty() {
        return Err(domain("KS statistic needs at least one sample"));
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(domain("KS samples must be finite"));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n);
    }
    let d = d.clamp(0.0, 1.0);
    Ok(KSResult {
        statistic: d,
        p_value: kolmogorov_survival(n.sqrt() * d),
        n: xs.len(),
    })
}

/// Where a sweep starts.
pub enum SweepStart<'a> {
    Point(&'a [f64]),
    /// One draw from the law, shared by all times.
    Law(&'a dyn InitialLaw),
}

/// KS results of one marginal X_t, coordinates treated as d scalar draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub t: f64,
    /// Against N(0, 1/μ).
    pub raw: KSResult,
    /// Coordinates centred and scaled by their own mean and sd, against N(0, 1).
    pub standardized: KSResult,
}

/// Runs the KS test on the coordinates of one marginal X_t for each `t`.
/// All times share the same random numbers, so the sweep is one coupled
/// realisation observed at several horizons.
pub fn ks_sweep(
    sampler: &dyn EndpointSampler,
    start: SweepStart<'_>,
    mu: f64,
    times: &[f64],
    seed: u64,
) -> Result<Vec<SweepPoint>> {
    if !(mu > 0.0) {
        return Err(domain(format!("mu must be positive, got {mu}")));
    }
    let x0 = match start {
        SweepStart::Point(x) => x.to_vec(),
        SweepStart::Law(law) => law.sample(1, derive_seed(seed, 1))?.into_inner(),
    };
    let path_seed = derive_seed(seed, 2);
    let sd = 1.0 / mu.sqrt();
    times
        .iter()
        .map(|&t| {
            let xt = sampler.sample_endpoints(&x0, t, 1, path_seed)?.into_inner();
            let raw = ks_statistic(&xt, |x| normal_cdf(x, 0.0, sd))?;
            let n = xt.len() as f64;
            let mean = xt.iter().sum::<f64>() / n;
            let var = xt.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
            let standardized = if var > 0.0 {
                let s = var.sqrt();
                let z: Vec<f64> = xt.iter().map(|x| (x - mean) / s).collect();
                ks_statistic(&z, |x| normal_cdf(x, 0.0, 1.0))?
            } else {
                KSResult { statistic: 0.5, p_value: kolmogorov_survival(n.sqrt() * 0.5), n: xt.len() }
            };
            Ok(SweepPoint { t, raw, standardized })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::OUProcess;

    fn std_normal(x: f64) -> f64 {
        normal_cdf(x, 0.0, 1.0)
    }

    fn probit(p: f64) -> f64 {
        let (mut lo, mut hi) = (-40.0, 40.0);
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if std_normal(m) < p {
                lo = m;
            } else {
                hi = m;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn exact_quantiles_give_half_over_n() {
        let n = 500;
        let xs: Vec<f64> = (1..=n).map(|i| probit((i as f64 - 0.5) / n as f64)).collect();
        let r = ks_statistic(&xs, std_normal).unwrap();
        assert!((r.statistic - 0.5 / n as f64).abs() < 1e-12);
    }

    #[test]
    fn constant_sample_at_the_median() {
        let r = ks_statistic(&vec![0.0; 100_000], std_normal).unwrap();
        assert!((r.statistic - 0.5).abs() < 1e-15);
        assert!(r.p_value < 1e-100);
    }

    #[test]
    fn kolmogorov_branches_agree_and_match_known_values() {
        // Both series at the switch point.
        let lam: f64 = 1.18;
        let mut alt = 0.0;
        for k in 1..=100 {
            let kf = k as f64;
            let t = (-2.0 * kf * kf * lam * lam).exp();
            alt += if k % 2 == 1 { t } else { -t };
        }
        assert!((kolmogorov_survival(lam - 1e-12) - 2.0 * alt).abs() < 1e-12);
        // Classical 5% critical value 1.3581.
        assert!((kolmogorov_survival(1.358_098_6) - 0.05).abs() < 1e-6);
        assert_eq!(kolmogorov_survival(0.0), 1.0);
    }

    #[test]
    fn non_finite_rejected() {
        assert!(ks_statistic(&[f64::NAN], std_normal).is_err());
        assert!(ks_statistic(&[], std_normal).is_err());
    }

    #[test]
    fn sweep_from_shifted_point_then_mixed() {
        let d = 1024;
        let ou = OUProcess::new(1.0, d).unwrap();
        let x0 = vec![255.0 / (d as f64).sqrt(); d];
        let out = ks_sweep(&ou, SweepStart::Point(&x0), 1.0, &[0.0, 20.0], 3).unwrap();
        assert!(out[0].raw.statistic >= 0.3);
        assert!(out[1].raw.statistic <= 0.08);
    }
}
