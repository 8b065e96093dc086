use rand_distr::{Distribution, StandardNormal};

use super::{Diffusion, Dispersion, EndpointSampler};
use crate::error::{structural, Result};
use crate::measures::SphericalMeasure;
use crate::points::Points;
use crate::rng;

/// dX = -μ X dt + √2 dB on R^d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OUProcess {
    pub mu: f64,
    pub d: usize,
}

impl OUProcess {
    pub fn new(mu: f64, d: usize) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(structural(format!("OU rate mu must be positive, got {mu}")));
        }
        if d == 0 {
            return Err(structural("dimension must be positive"));
        }
        Ok(Self { mu, d })
    }

    /// Invariant law N(0, I/μ).
    pub fn invariant_measure(&self) -> SphericalMeasure {
        SphericalMeasure::gaussian(self.d, self.mu).expect("validated at construction")
    }

    /// (e^{-μt}, sqrt((1 - e^{-2μt})/μ)).
    pub fn transition_coefficients(&self, t: f64) -> (f64, f64) {
        let decay = (-self.mu * t).exp();
        let var = -(-2.0 * self.mu * t).exp_m1() / self.mu;
        (decay, var.max(0.0).sqrt())
    }
}

impl Diffusion for OUProcess {
    fn dim(&self) -> usize {
        self.d
    }

    fn drift_into(&self, x: &[f64], out: &mut [f64]) {
        for (o, v) in out.iter_mut().zip(x) {
            *o = -self.mu * v;
        }
    }

    fn dispersion(&self, _x: &[f64]) -> Dispersion {
        Dispersion::Scalar(2.0)
    }
}

/// `n` exact draws of X_T given X_0 = x0: e^{-μT} x0 + sqrt((1-e^{-2μT})/μ) Z.
pub fn ou_transition_sample(proc_: &OUProcess, x0: &[f64], t: f64, seed: u64, n: usize) -> Result<Points> {
    proc_.sample_endpoints(x0, t, n, seed)
}

impl EndpointSampler for OUProcess {
    fn dim(&self) -> usize {
        self.d
    }

    fn sample_endpoints(&self, x0: &[f64], t: f64, n: usize, seed: u64) -> Result<Points> {
        if x0.len() != self.d {
            return Err(structural(format!("x0 has length {} but d = {}", x0.len(), self.d)));
        }
        if !(t >= 0.0) {
            return Err(crate::error::domain(format!("time must be nonnegative, got {t}")));
        }
        let (decay, sd) = self.transition_coefficients(t);
        let coords = rng::par_rows(n, self.d, seed, |rng, _, row| {
            for (v, x) in row.iter_mut().zip(x0) {
                let z: f64 = StandardNormal.sample(rng);
                *v = decay * x + sd * z;
            }
        });
        Ok(Points::new(self.d, coords))
    }

    fn propagate(&self, starts: &Points, t: f64, seed: u64) -> Result<Points> {
        if starts.dim() != self.d {
            return Err(structural("starting points have the wrong dimension"));
        }
        if !(t >= 0.0) {
            return Err(crate::error::domain(format!("time must be nonnegative, got {t}")));
        }
        let (decay, sd) = self.transition_coefficients(t);
        let coords = rng::par_rows(starts.len(), self.d, seed, |rng, i, row| {
            for (v, x) in row.iter_mut().zip(starts.row(i)) {
                let z: f64 = StandardNormal.sample(rng);
                *v = decay * x + sd * z;
            }
        });
        Ok(Points::new(self.d, coords))
    }
}
