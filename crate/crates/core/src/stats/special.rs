use statrs::function::{erf, gamma};

use crate::error::{domain, Result};

/// P(χ²_k ≤ x) = P(k/2, x/2), the regularized lower incomplete gamma function.
pub fn chisq_cdf(k: usize, x: f64) -> Result<f64> {
    if k == 0 {
        return Err(domain("chi-square degrees of freedom must be positive"));
    }
    if !(x >= 0.0) {
        return Err(domain(format!("chi-square argument must be nonnegative, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    Ok(gamma::gamma_lr(k as f64 / 2.0, x / 2.0))
}

/// P(χ²_k > x), computed without cancellation in the upper tail.
pub fn chisq_sf(k: usize, x: f64) -> Result<f64> {
    if k == 0 {
        return Err(domain("chi-square degrees of freedom must be positive"));
    }
    if !(x >= 0.0) {
        return Err(domain(format!("chi-square argument must be nonnegative, got {x}")));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    Ok(gamma::gamma_ur(k as f64 / 2.0, x / 2.0))
}

/// x with P(χ²_k ≤ x) = prob, by bisection to machine resolution.
pub fn chisq_quantile(k: usize, prob: f64) -> Result<f64> {
    if !(prob > 0.0 && prob < 1.0) {
        return Err(domain(format!("probability must lie in (0,1), got {prob}")));
    }
    let (mut lo, mut hi) = (0.0, k as f64 + 10.0);
    while chisq_cdf(k, hi)? < prob {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if chisq_cdf(k, mid)? < prob {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// CDF of N(mean, sd²).
pub fn normal_cdf(x: f64, mean: f64, sd: f64) -> f64 {
    0.5 * erf::erfc(-(x - mean) / (sd * std::f64::consts::SQRT_2))
}

/// π(H ≥ 1/r) for π = N(0, I/μ) and a rank-k projection: P(χ²_k ≤ μ(r²-1)).
pub fn gaussian_pi_term(k: usize, r: f64, mu: f64) -> Result<f64> {
    if !(r > 1.0) {
        return Err(domain(format!("r must exceed 1, got {r}")));
    }
    if !(mu > 0.0) {
        return Err(domain(format!("mu must be positive, got {mu}")));
    }
    chisq_cdf(k, mu * (r * r - 1.0))
}
