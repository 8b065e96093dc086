//! Measurement layer: chi-square probabilities, binned total variation in
//! one dimension, and Kolmogorov–Smirnov statistics.

mod ks;
mod special;
mod tv;

pub use ks::{kolmogorov_survival, ks_statistic, ks_sweep, KSResult, SweepPoint, SweepStart};
pub use special::{chisq_cdf, chisq_quantile, chisq_sf, gaussian_pi_term, normal_cdf};
pub use tv::{empirical_tv_1d, projected_tv_vs_gaussian, Reference, TVEstimate};
