use super::rate::RateFunction;
use crate::error::{domain, structural, Result};
use crate::forward::EndpointSampler;
use crate::measures::{projected_norms, InitialLaw, SphericalMeasure};
use crate::projection::SubspaceProjector;
use crate::rng::{derive_seed, par_map};
use crate::stats::gaussian_pi_term;

/// How π(H ≥ 1/r) is evaluated.
#[derive(Debug, Clone, Copy)]
pub enum PiTermSource<'a> {
    /// π = N(0, I/μ): P(χ²_k ≤ μ(r² - 1)), no sampling error.
    GaussianClosedForm { mu: f64 },
    /// Monte Carlo over `n` draws from a spherical measure.
    Spherical { measure: &'a SphericalMeasure, n: usize },
}

/// Terms of the lower bound
/// TV ≥ π(H ≥ 1/r) - ρ0(H ≥ C) - ∫_{H < C} r γ(H, T) dρ0, C = C_{r,T}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBoundReport {
    pub t: f64,
    pub r: f64,
    pub c_rt: f64,
    pub pi_term: f64,
    pub rho_tail_term: f64,
    pub integral_term: f64,
    pub total: f64,
    pub pi_se: f64,
    pub rho_tail_se: f64,
    pub integral_se: f64,
    /// Standard error of `total`; the two ρ0 terms share samples, so their
    /// sum is treated as one estimator.
    pub total_se: f64,
}

fn mean_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let m = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (m, 0.0);
    }
    let var = values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

/// Monte-Carlo evaluation of the lower bound at horizon `t` from `n` draws
/// of `rho0`. Only the rate enters; the process is never simulated.
#[allow(clippy::too_many_arguments)]
pub fn tv_lower_bound(
    pi_source: PiTermSource<'_>,
    rho0: &dyn InitialLaw,
    proj: &SubspaceProjector,
    rate: &RateFunction,
    r: f64,
    t: f64,
    n: usize,
    seed: u64,
) -> Result<LowerBoundReport> {
    if n == 0 {
        return Err(domain("lower bound needs n > 0 samples"));
    }
    if rho0.dim() != proj.dim() {
        return Err(structural("initial law and projector dimensions differ"));
    }
    let c = rate.c_rt(r, t)?;
    let k = proj.rank();

    let (pi_term, pi_se) = match pi_source {
        PiTermSource::GaussianClosedForm { mu } => (gaussian_pi_term(k, r, mu)?, 0.0),
        PiTermSource::Spherical { measure, n } => {
            if measure.d != proj.dim() {
                return Err(structural("noise measure and projector dimensions differ"));
            }
            // {H ≥ 1/r} = {|G|² ≤ r² - 1}; the law of |G| is rotation invariant.
            let bound = r * r - 1.0;
            let norms = projected_norms(measure, k, n, derive_seed(seed, 11))?;
            let hits: Vec<f64> = norms.iter().map(|g| f64::from(u8::from(g * g <= bound))).collect();
            mean_se(&hits)
        }
    };

    let xs = rho0.sample(n, derive_seed(seed, 12))?;
    let hs: Vec<f64> = xs.rows().map(|x| proj.h(x)).collect();
    let parts: Vec<Result<(f64, f64)>> = par_map(n, |i| {
        let h = hs[i];
        if h >= c {
            Ok((1.0, 0.0))
        } else {
            Ok((0.0, r * rate.gamma(h, t)?))
        }
    });
    let mut tail = Vec::with_capacity(n);
    let mut integral = Vec::with_capacity(n);
    let mut joint = Vec::with_capacity(n);
    for p in parts {
        let (a, b) = p?;
        tail.push(a);
        integral.push(b);
        joint.push(a + b);
    }
    let (rho_tail_term, rho_tail_se) = mean_se(&tail);
    let (integral_term, integral_se) = mean_se(&integral);
    let (_, joint_se) = mean_se(&joint);
    Ok(LowerBoundReport {
        t,
        r,
        c_rt: c,
        pi_term,
        rho_tail_term,
        integral_term,
        total: pi_term - rho_tail_term - integral_term,
        pi_se,
        rho_tail_se,
        integral_se,
        total_se: (pi_se * pi_se + joint_se * joint_se).sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectedHReport {
    /// Monte-Carlo mean of H(X_t) given X_0 = x.
    pub estimate: f64,
    pub std_error: f64,
    /// γ(H(x), t).
    pub bound: f64,
    pub passed: bool,
}

/// Compares E_x[H(X_t)] with γ(H(x), t); passes iff the estimate is at most
/// the bound plus three standard errors (and 1e-12 relative for rounding in
/// the mean).
#[allow(clippy::too_many_arguments)]
pub fn expected_h_check(
    sampler: &dyn EndpointSampler,
    proj: &SubspaceProjector,
    rate: &RateFunction,
    x: &[f64],
    t: f64,
    n: usize,
    seed: u64,
) -> Result<ExpectedHReport> {
    if n == 0 {
        return Err(domain("expected-H check needs n > 0"));
    }
    let ends = sampler.sample_endpoints(x, t, n, seed)?;
    let hs: Vec<f64> = ends.rows().map(|y| proj.h(y)).collect();
    let (estimate, std_error) = mean_se(&hs);
    let bound = rate.gamma(proj.h(x), t)?;
    Ok(ExpectedHReport {
        estimate,
        std_error,
        bound,
        passed: estimate <= bound * (1.0 + 1e-12) + 3.0 * std_error,
    })
}
