use rand_distr::{Distribution, StandardNormal};

use super::{Diffusion, Dispersion, EndpointSampler};
use crate::error::{domain, structural, Error, Result};
use crate::measures::{RadialProfile, SphericalMeasure};
use crate::points::{norm, Points};
use crate::rng::{self, StreamRng};

/// Iterates leaving this ball abort the integration.
pub const DIVERGENCE_RADIUS: f64 = 1e12;

/// Tempered Langevin diffusion for π ∝ exp(-H(|x|)) at temperature ℓ:
///
/// b(x) = -H^{2ℓ-1} (H - 2ℓ) H'(|x|) x/|x|,  σ(x) = √2 H(|x|)^ℓ I.
///
/// The drift evaluates H through `max(H, h_floor)` so the negative power
/// stays finite at the origin; the dispersion is not floored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemperedLangevin {
    pub profile: RadialProfile,
    pub ell: f64,
    pub d: usize,
    pub h_floor: f64,
}

impl TemperedLangevin {
    pub fn new(profile: RadialProfile, ell: f64, d: usize) -> Result<Self> {
        profile.validate()?;
        if !(ell >= 0.0 && ell.is_finite()) {
            return Err(structural(format!("temperature must be nonnegative, got {ell}")));
        }
        if d == 0 {
            return Err(structural("dimension must be positive"));
        }
        Ok(Self { profile, ell, d, h_floor: 1e-8 })
    }

    pub fn with_floor(mut self, h_floor: f64) -> Self {
        self.h_floor = h_floor;
        self
    }

    pub fn invariant_measure(&self) -> SphericalMeasure {
        SphericalMeasure { d: self.d, profile: self.profile }
    }

    /// Radial drift magnitude f(r) with b(x) = -f(|x|) x/|x| (floored H).
    pub fn radial_rate(&self, r: f64) -> f64 {
        let h = self.profile.value(r).max(self.h_floor);
        pow(h, 2.0 * self.ell - 1.0) * (h - 2.0 * self.ell) * self.profile.derivative(r)
    }

    /// Left side of the linear-growth condition, H^{2ℓ-1}(H-2ℓ)H', unfloored.
    pub fn lg_left_side(&self, r: f64) -> f64 {
        let h = self.profile.value(r);
        h.powf(2.0 * self.ell - 1.0) * (h - 2.0 * self.ell) * self.profile.derivative(r)
    }

    /// Closed-form sufficient condition: ℓ ≤ 1/p - 1/2 and a ≤ (μ/p)^{1/(2ℓ+1)} - ℓ.
    pub fn satisfies_lg_sufficient(&self, mu: f64) -> bool {
        let p = self.profile.exponent();
        self.ell <= 1.0 / p - 0.5 && self.profile.scale() <= lg_max_scale(mu, p, self.ell)
    }
}

/// h^e with the zero-temperature exponents short-cut.
fn pow(h: f64, e: f64) -> f64 {
    if e == -1.0 {
        1.0 / h
    } else {
        h.powf(e)
    }
}

/// Largest profile scale a allowed by the closed-form linear-growth condition.
pub fn lg_max_scale(mu: f64, p: f64, ell: f64) -> f64 {
    (mu / p).powf(1.0 / (2.0 * ell + 1.0)) - ell
}

/// b(x); the zero vector at the origin.
pub fn drift(tl: &TemperedLangevin, x: &[f64]) -> Vec<f64> {
    Diffusion::drift(tl, x)
}

/// √2 H(|x|)^ℓ.
pub fn dispersion_scalar(tl: &TemperedLangevin, x: &[f64]) -> f64 {
    std::f64::consts::SQRT_2 * tl.profile.value(norm(x)).powf(tl.ell)
}

impl Diffusion for TemperedLangevin {
    fn dim(&self) -> usize {
        self.d
    }

    fn drift_into(&self, x: &[f64], out: &mut [f64]) {
        let r = norm(x);
        if r == 0.0 {
            out.iter_mut().for_each(|o| *o = 0.0);
            return;
        }
        let s = -self.radial_rate(r) / r;
        for (o, v) in out.iter_mut().zip(x) {
            *o = s * v;
        }
    }

    fn dispersion(&self, x: &[f64]) -> Dispersion {
        if self.ell == 0.0 {
            return Dispersion::Scalar(2.0);
        }
        Dispersion::Scalar(2.0 * self.profile.value(norm(x)).powf(2.0 * self.ell))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    #[default]
    EulerMaruyama,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub step: f64,
    pub scheme: Scheme,
}

impl IntegratorConfig {
    pub fn new(step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(structural(format!("integrator step must be positive, got {step}")));
        }
        Ok(Self { step, scheme: Scheme::EulerMaruyama })
    }
}

fn integrate<D, F>(
    process: &D,
    x: &mut [f64],
    t: f64,
    step: f64,
    rng: &mut StreamRng,
    mut observe: F,
) -> Result<()>
where
    D: Diffusion + ?Sized,
    F: FnMut(usize, f64, &[f64]),
{
    let full = (t / step).floor() as usize;
    let rest = t - full as f64 * step;
    let mut b = vec![0.0; x.len()];
    let mut clock = 0.0;
    let n_steps = full + usize::from(rest > 1e-12 * step);
    for k in 0..n_steps {
        let h = if k < full { step } else { rest };
        process.drift_into(x, &mut b);
        let a = process.dispersion(x);
        let sh = h.sqrt();
        for (i, (xi, bi)) in x.iter_mut().zip(&b).enumerate() {
            let z: f64 = StandardNormal.sample(rng);
            *xi += bi * h + a.diagonal(i).max(0.0).sqrt() * sh * z;
        }
        clock += h;
        let r = norm(x);
        if !(r <= DIVERGENCE_RADIUS) {
            return Err(Error::Divergence { step: k + 1, norm: r });
        }
        observe(k + 1, clock, x);
    }
    Ok(())
}

fn check_inputs(d: usize, x0: &[f64], t: f64) -> Result<()> {
    if x0.len() != d {
        return Err(structural(format!("x0 has length {} but d = {d}", x0.len())));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(domain(format!("horizon must be nonnegative and finite, got {t}")));
    }
    Ok(())
}

/// Euler–Maruyama endpoint at time `t`; the last step is shortened to land
/// exactly on `t`.
pub fn simulate_path<D: Diffusion + ?Sized>(
    process: &D,
    x0: &[f64],
    t: f64,
    cfg: &IntegratorConfig,
    seed: u64,
) -> Result<Vec<f64>> {
    simulate_path_observed(process, x0, t, cfg, seed, |_, _, _| {})
}

/// [`simulate_path`] calling `observe(step_index, time, state)` after every step.
pub fn simulate_path_observed<D, F>(
    process: &D,
    x0: &[f64],
    t: f64,
    cfg: &IntegratorConfig,
    seed: u64,
    observe: F,
) -> Result<Vec<f64>>
where
    D: Diffusion + ?Sized,
    F: FnMut(usize, f64, &[f64]),
{
    check_inputs(process.dim(), x0, t)?;
    let mut x = x0.to_vec();
    let mut rng = rng::substream(seed, 0);
    integrate(process, &mut x, t, cfg.step, &mut rng, observe)?;
    Ok(x)
}

/// Endpoint sampler that integrates any [`Diffusion`] with Euler–Maruyama.
#[derive(Debug, Clone)]
pub struct EulerMaruyama<D> {
    pub process: D,
    pub cfg: IntegratorConfig,
}

impl<D: Diffusion> EulerMaruyama<D> {
    pub fn new(process: D, cfg: IntegratorConfig) -> Self {
        Self { process, cfg }
    }
}

impl<D: Diffusion> EndpointSampler for EulerMaruyama<D> {
    fn dim(&self) -> usize {
        self.process.dim()
    }

    fn sample_endpoints(&self, x0: &[f64], t: f64, n: usize, seed: u64) -> Result<Points> {
        check_inputs(self.process.dim(), x0, t)?;
        let coords = rng::try_par_rows(n, x0.len(), seed, |rng, _, row| {
            row.copy_from_slice(x0);
            integrate(&self.process, row, t, self.cfg.step, rng, |_, _, _| {})
        })?;
        Ok(Points::new(x0.len(), coords))
    }

    fn propagate(&self, starts: &Points, t: f64, seed: u64) -> Result<Points> {
        if starts.dim() != self.process.dim() {
            return Err(structural("starting points have the wrong dimension"));
        }
        check_inputs(starts.dim(), starts.row(0), t)?;
        let coords = rng::try_par_rows(starts.len(), starts.dim(), seed, |rng, i, row| {
            row.copy_from_slice(starts.row(i));
            integrate(&self.process, row, t, self.cfg.step, rng, |_, _, _| {})
        })?;
        Ok(Points::new(starts.dim(), coords))
    }
}
