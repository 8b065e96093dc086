use crate::error::{domain, Result};
use crate::points::{norm, Points};

use super::special::normal_cdf;

/// Second argument of [`empirical_tv_1d`].
pub enum Reference<'a> {
    /// Exact law given by its CDF; bin masses are CDF differences.
    Cdf(&'a dyn Fn(f64) -> f64),
    Samples(&'a [f64]),
}

/// Binned total-variation estimate between two one-dimensional laws.
#[derive(Debug, Clone, PartialEq)]
pub struct TVEstimate {
    pub value: f64,
    pub n_a: usize,
    /// Zero when the reference is an exact CDF.
    pub n_b: usize,
    pub bins: usize,
    pub range: (f64, f64),
    /// Delta-method standard error of `value` (sampling noise only, not binning bias).
    pub std_error: f64,
}

const MIN_COVERAGE: f64 = 0.999;

fn bin_counts(samples: &[f64], lo: f64, hi: f64, bins: usize) -> (Vec<f64>, usize) {
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0.0; bins];
    let mut inside = 0;
    for &x in samples {
        if x >= lo && x <= hi {
            inside += 1;
        }
        let i = ((x - lo) / width).floor();
        let i = if i < 0.0 { 0 } else { (i as usize).min(bins - 1) };
        counts[i] += 1.0;
    }
    (counts, inside)
}

fn check_finite(xs: &[f64], side: &str) -> Result<()> {
    if xs.is_empty() {
        return Err(domain(format!("sample {side} is empty")));
    }
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(domain(format!("sample {side} contains non-finite values")));
    }
    Ok(())
}

fn min_max(xs: &[f64]) -> (f64, f64) {
    xs.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)))
}

/// ½ Σ |p̂_i − q_i| over equal-width bins of `range`. Mass outside the range
/// is folded into the edge bins. Defaults: ⌈√min(n_a, n_b)⌉ bins and the
/// joint sample range.
pub fn empirical_tv_1d(
    samples_a: &[f64],
    reference: Reference<'_>,
    bins: Option<usize>,
    range: Option<(f64, f64)>,
) -> Result<TVEstimate> {
    check_finite(samples_a, "a")?;
    let n_a = samples_a.len();
    let n_b = match &reference {
        Reference::Samples(b) => {
            check_finite(b, "b")?;
            b.len()
        }
        Reference::Cdf(_) => 0,
    };
    let bins = bins.unwrap_or_else(|| {
        let m = if n_b == 0 { n_a } else { n_a.min(n_b) };
        ((m as f64).sqrt().ceil() as usize).max(2)
    });
    if bins < 2 {
        return Err(domain("at least two bins are required"));
    }
    let (lo, hi) = match range {
        Some(r) => r,
        None => {
            let (mut lo, mut hi) = min_max(samples_a);
            if let Reference::Samples(b) = &reference {
                let (l, h) = min_max(b);
                lo = lo.min(l);
                hi = hi.max(h);
            }
            if lo == hi {
                (lo - 0.5, hi + 0.5)
            } else {
                (lo, hi)
            }
        }
    };
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(domain(format!("invalid bin range [{lo}, {hi}]")));
    }

    let (ca, inside_a) = bin_counts(samples_a, lo, hi, bins);
    if (inside_a as f64) < MIN_COVERAGE * n_a as f64 {
        return Err(domain(format!(
            "range [{lo}, {hi}] covers only {inside_a} of {n_a} samples from a"
        )));
    }
    let p: Vec<f64> = ca.iter().map(|c| c / n_a as f64).collect();

    let width = (hi - lo) / bins as f64;
    let (q, var_b) = match reference {
        Reference::Cdf(cdf) => {
            if cdf(hi) - cdf(lo) < MIN_COVERAGE {
                return Err(domain(format!(
                    "range [{lo}, {hi}] covers only {} of the reference mass",
                    cdf(hi) - cdf(lo)
                )));
            }
            let mut edges: Vec<f64> = (0..=bins).map(|i| cdf(lo + i as f64 * width)).collect();
            edges[0] = 0.0;
            edges[bins] = 1.0;
            (edges.windows(2).map(|w| (w[1] - w[0]).max(0.0)).collect::<Vec<_>>(), None)
        }
        Reference::Samples(b) => {
            let (cb, inside_b) = bin_counts(b, lo, hi, bins);
            if (inside_b as f64) < MIN_COVERAGE * n_b as f64 {
                return Err(domain(format!(
                    "range [{lo}, {hi}] covers only {inside_b} of {n_b} samples from b"
                )));
            }
            (cb.iter().map(|c| c / n_b as f64).collect(), Some(n_b as f64))
        }
    };

    let mut value = 0.0;
    let (mut sa, mut sa2, mut sb, mut sb2) = (0.0, 0.0, 0.0, 0.0);
    for (pi, qi) in p.iter().zip(&q) {
        value += (pi - qi).abs();
        let s = 0.5 * (pi - qi).signum();
        sa += s * pi;
        sa2 += s * s * pi;
        sb += s * qi;
        sb2 += s * s * qi;
    }
    let mut var = (sa2 - sa * sa).max(0.0) / n_a as f64;
    if let Some(nb) = var_b {
        var += (sb2 - sb * sb).max(0.0) / nb;
    }
    Ok(TVEstimate {
        value: (0.5 * value).clamp(0.0, 1.0),
        n_a,
        n_b,
        bins,
        range: (lo, hi),
        std_error: var.sqrt(),
    })
}

/// Binned TV between ⟨x, direction⟩ and its law under N(0, I/μ), which is
/// N(0, 1/μ). The default range is the sample range widened to ±6/√μ.
pub fn projected_tv_vs_gaussian(
    samples: &Points,
    direction: &[f64],
    mu: f64,
    bins: Option<usize>,
    range: Option<(f64, f64)>,
) -> Result<TVEstimate> {
    if direction.len() != samples.dim() {
        return Err(domain(format!(
            "direction has length {} but points live in R^{}",
            direction.len(),
            samples.dim()
        )));
    }
    if (norm(direction) - 1.0).abs() > 1e-10 {
        return Err(domain("direction must be a unit vector"));
    }
    if !(mu > 0.0) {
        return Err(domain(format!("mu must be positive, got {mu}")));
    }
    let proj = samples.project(direction);
    if proj.is_empty() {
        return Err(domain("no samples"));
    }
    let sd = 1.0 / mu.sqrt();
    let range = range.unwrap_or_else(|| {
        let (lo, hi) = min_max(&proj);
        (lo.min(-6.0 * sd), hi.max(6.0 * sd))
    });
    let cdf = move |x: f64| normal_cdf(x, 0.0, sd);
    empirical_tv_1d(&proj, Reference::Cdf(&cdf), bins, Some(range))
}
