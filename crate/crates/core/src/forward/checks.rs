use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{Diffusion, TemperedLangevin};
use crate::error::{structural, Result};
use crate::points::{dot, Points};
use crate::projection::SubspaceProjector;
use crate::rng::{self, StreamRng};

/// Law of the points at which global conditions are spot-checked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Envelope {
    /// N(0, scale² I).
    Gaussian { scale: f64 },
    /// Uniform direction with log-uniform radius in [min_radius, max_radius].
    LogRadial { min_radius: f64, max_radius: f64 },
}

impl Envelope {
    pub fn gaussian(scale: f64) -> Self {
        Envelope::Gaussian { scale }
    }

    fn draw(&self, rng: &mut StreamRng, row: &mut [f64]) {
        let mut sq = 0.0;
        for v in row.iter_mut() {
            let z: f64 = StandardNormal.sample(rng);
            *v = z;
            sq += z * z;
        }
        match *self {
            Envelope::Gaussian { scale } => row.iter_mut().for_each(|v| *v *= scale),
            Envelope::LogRadial { min_radius, max_radius } => {
                let u: f64 = rng.random();
                let r = min_radius * (max_radius / min_radius).powf(u);
                let s = r / sq.sqrt().max(f64::MIN_POSITIVE);
                row.iter_mut().for_each(|v| *v *= s);
            }
        }
    }

    /// `n` envelope points in R^d.
    pub fn sample(&self, d: usize, n: usize, seed: u64) -> Points {
        Points::new(d, rng::par_rows(n, d, seed, |rng, _, row| self.draw(rng, row)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearGrowthReport {
    /// max |<b(x),u>| / (μ |<x,u>|) over the sampled pairs.
    pub max_ratio: f64,
    pub worst_point: Vec<f64>,
    pub worst_direction: Vec<f64>,
    pub passed: bool,
}

/// Spot-checks |<b(x), u>| ≤ μ |<x, u>| at `n_points` pairs of envelope
/// points and uniform directions. Pairs with |<x,u>| < 1e-12 are skipped.
pub fn check_linear_growth<D: Diffusion + ?Sized>(
    process: &D,
    mu: f64,
    n_points: usize,
    envelope: Envelope,
    seed: u64,
) -> LinearGrowthReport {
    let d = process.dim();
    let xs = envelope.sample(d, n_points, rng::derive_seed(seed, 1));
    let us = Envelope::gaussian(1.0).sample(d, n_points, rng::derive_seed(seed, 2));
    let ratios: Vec<f64> = rng::par_map(n_points, |i| {
        let x = xs.row(i);
        let u = us.row(i);
        let un = dot(u, u).sqrt();
        let xu = dot(x, u) / un;
        if xu.abs() < 1e-12 {
            return f64::NEG_INFINITY;
        }
        let bu = dot(&process.drift(x), u) / un;
        bu.abs() / (mu * xu.abs())
    });
    let (mut best, mut idx) = (f64::NEG_INFINITY, 0);
    for (i, r) in ratios.iter().enumerate() {
        if *r > best || r.is_nan() {
            best = *r;
            idx = i;
            if r.is_nan() {
                break;
            }
        }
    }
    let max_ratio = if best == f64::NEG_INFINITY { 0.0 } else { best };
    let (worst_point, worst_direction) = if n_points > 0 {
        let u = us.row(idx);
        let un = dot(u, u).sqrt();
        (xs.row(idx).to_vec(), u.iter().map(|v| v / un).collect())
    } else {
        (Vec::new(), Vec::new())
    };
    LinearGrowthReport {
        max_ratio,
        worst_point,
        worst_direction,
        passed: max_ratio <= 1.0 + 1e-9,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LgReport {
    /// max over the grid of (lhs(r) - μr) / (1 + μr).
    pub max_excess: f64,
    pub worst_radius: f64,
    pub passed: bool,
}

/// Evaluates H^{2ℓ-1}(H-2ℓ)H' - μr on a geometric grid of `n_grid` radii
/// in [1e-9 r_max, r_max]; passes iff every value is ≤ 1e-9 (1 + μr).
pub fn check_lg_numeric(tl: &TemperedLangevin, mu: f64, r_max: f64, n_grid: usize) -> Result<LgReport> {
    if !(r_max > 0.0) {
        return Err(crate::error::domain(format!("r_max must be positive, got {r_max}")));
    }
    if n_grid < 2 {
        return Err(crate::error::domain("need at least two grid points"));
    }
    let r_min = r_max * 1e-9;
    let ratio = r_max / r_min;
    let mut max_excess = f64::NEG_INFINITY;
    let mut worst_radius = r_min;
    for i in 0..n_grid {
        let r = r_min * ratio.powf(i as f64 / (n_grid - 1) as f64);
        let excess = (tl.lg_left_side(r) - mu * r) / (1.0 + mu * r);
        if excess > max_excess || excess.is_nan() {
            max_excess = excess;
            worst_radius = r;
        }
    }
    Ok(LgReport {
        max_excess,
        worst_radius,
        passed: max_excess <= 1e-9,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaBoundReport {
    /// max of (3<aĜ,Ĝ> - Σ<a y_j, y_j>) / Σ<a y_j, y_j>.
    pub max_violation: f64,
    pub worst_point: Vec<f64>,
    pub passed: bool,
}

/// Spot-checks Σ_j <a y_j, y_j> ≥ 3 <a Ĝ, Ĝ> with Ĝ = G/sqrt(1+|G|²).
pub fn check_sigma_bound<D: Diffusion + ?Sized>(
    process: &D,
    proj: &SubspaceProjector,
    n_points: usize,
    envelope: Envelope,
    seed: u64,
) -> Result<SigmaBoundReport> {
    if proj.rank() < 3 {
        return Err(structural("balance condition needs k >= 3"));
    }
    if proj.dim() != process.dim() {
        return Err(structural("projector and process dimensions differ"));
    }
    let xs = envelope.sample(process.dim(), n_points, seed);
    let viol: Vec<f64> = rng::par_map(n_points, |i| {
        let x = xs.row(i);
        let a = process.dispersion(x);
        let trace: f64 = proj.basis().iter().map(|y| a.quadratic_form(y)).sum();
        let g = proj.project(x);
        let hh = 1.0 / (1.0 + dot(&g, &g));
        let rhs = 3.0 * hh * a.quadratic_form(&g);
        (rhs - trace) / trace.abs().max(f64::MIN_POSITIVE)
    });
    let (mut worst, mut idx) = (f64::NEG_INFINITY, 0);
    for (i, v) in viol.iter().enumerate() {
        if *v > worst {
            worst = *v;
            idx = i;
        }
    }
    Ok(SigmaBoundReport {
        max_violation: worst,
        worst_point: if n_points > 0 { xs.row(idx).to_vec() } else { Vec::new() },
        passed: n_points == 0 || worst <= 1e-9,
    })
}
