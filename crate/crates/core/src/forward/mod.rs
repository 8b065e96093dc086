//! Forward diffusions: the Ornstein–Uhlenbeck process with exact
//! transitions, tempered Langevin diffusions integrated by Euler–Maruyama,
//! and numerical validators for the drift/dispersion conditions.

mod checks;
mod ergodicity;
mod langevin;
mod ou;

pub use checks::{
    check_linear_growth, check_lg_numeric, check_sigma_bound, Envelope, LgReport,
    LinearGrowthReport, SigmaBoundReport,
};
pub use ergodicity::{classify_ergodicity, Regime};
pub use langevin::{
    dispersion_scalar, drift, lg_max_scale, simulate_path, simulate_path_observed, EulerMaruyama,
    IntegratorConfig, Scheme, TemperedLangevin, DIVERGENCE_RADIUS,
};
pub use ou::{ou_transition_sample, OUProcess};

use crate::error::Result;
use crate::points::Points;

/// Diffusion matrix a = σσᵀ at a point.
#[derive(Debug, Clone, PartialEq)]
pub enum Dispersion {
    /// a = c·I.
    Scalar(f64),
    /// a = diag(values).
    Diagonal(Vec<f64>),
}

impl Dispersion {
    /// <a v, v>.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        match self {
            Dispersion::Scalar(c) => c * crate::points::dot(v, v),
            Dispersion::Diagonal(a) => a.iter().zip(v).map(|(ai, vi)| ai * vi * vi).sum(),
        }
    }

    /// a_ii.
    pub fn diagonal(&self, i: usize) -> f64 {
        match self {
            Dispersion::Scalar(c) => *c,
            Dispersion::Diagonal(a) => a[i],
        }
    }
}

/// Time-homogeneous SDE dY = b(Y) dt + σ(Y) dB with diagonal σσᵀ.
pub trait Diffusion: Sync {
    fn dim(&self) -> usize;

    fn drift_into(&self, x: &[f64], out: &mut [f64]);

    fn dispersion(&self, x: &[f64]) -> Dispersion;

    fn drift(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; x.len()];
        self.drift_into(x, &mut out);
        out
    }
}

/// A Markov process that can be sampled at a fixed horizon.
pub trait EndpointSampler: Sync {
    fn dim(&self) -> usize;

    /// `n` independent copies of X_t started from `x0`.
    fn sample_endpoints(&self, x0: &[f64], t: f64, n: usize, seed: u64) -> Result<Points>;

    /// One copy of X_t for every starting point.
    fn propagate(&self, starts: &Points, t: f64, seed: u64) -> Result<Points>;
}
