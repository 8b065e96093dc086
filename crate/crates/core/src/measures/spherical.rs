use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::{domain, structural, Error, Result};
use crate::points::Points;
use crate::rng;

/// Largest Gamma shape `d/p` accepted by the radial sampler.
pub const MAX_SHAPE: f64 = 1e7;

/// Radial potential H with density of π proportional to exp(-H(|x|)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialProfile {
    /// H(r) = a r².
    Quadratic { a: f64 },
    /// H(r) = a r^p on the whole half-line.
    PowerTail { a: f64, p: f64 },
}

impl RadialProfile {
    /// Profile of the Gaussian N(0, I/mu).
    pub fn gaussian(mu: f64) -> Self {
        RadialProfile::Quadratic { a: mu / 2.0 }
    }

    pub fn scale(&self) -> f64 {
        match *self {
            RadialProfile::Quadratic { a } | RadialProfile::PowerTail { a, .. } => a,
        }
    }

    pub fn exponent(&self) -> f64 {
        match *self {
            RadialProfile::Quadratic { .. } => 2.0,
            RadialProfile::PowerTail { p, .. } => p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (a, p) = (self.scale(), self.exponent());
        if !(a > 0.0 && a.is_finite()) {
            return Err(structural(format!("profile scale a must be positive, got {a}")));
        }
        if !(p > 0.0 && p <= 2.0) {
            return Err(structural(format!("profile exponent p must lie in (0, 2], got {p}")));
        }
        Ok(())
    }

    pub fn value(&self, r: f64) -> f64 {
        match *self {
            RadialProfile::Quadratic { a } => a * r * r,
            RadialProfile::PowerTail { a, p } => a * r.powf(p),
        }
    }

    /// H'(r); infinite at r = 0 when p < 1.
    pub fn derivative(&self, r: f64) -> f64 {
        match *self {
            RadialProfile::Quadratic { a } => 2.0 * a * r,
            RadialProfile::PowerTail { a, p } => a * p * r.powf(p - 1.0),
        }
    }
}

/// Spherically symmetric probability measure on R^d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalMeasure {
    pub d: usize,
    pub profile: RadialProfile,
}

impl SphericalMeasure {
    pub fn new(d: usize, profile: RadialProfile) -> Result<Self> {
        if d == 0 {
            return Err(structural("dimension must be positive"));
        }
        profile.validate()?;
        Ok(Self { d, profile })
    }

    /// N(0, I/mu) on R^d.
    pub fn gaussian(d: usize, mu: f64) -> Result<Self> {
        Self::new(d, RadialProfile::gaussian(mu))
    }

    fn radial_law(&self) -> Result<Gamma<f64>> {
        let shape = self.d as f64 / self.profile.exponent();
        if shape > MAX_SHAPE {
            return Err(Error::OutOfRange(format!(
                "radial Gamma shape d/p = {shape:e} exceeds {MAX_SHAPE:e}"
            )));
        }
        Gamma::new(shape, 1.0).map_err(|e| Error::OutOfRange(format!("radial Gamma law: {e}")))
    }

    /// Exact radius: a r^p ~ Gamma(d/p, 1).
    fn draw_radius<R: rand::Rng + ?Sized>(&self, law: &Gamma<f64>, rng: &mut R) -> f64 {
        let s: f64 = law.sample(rng);
        let (a, p) = (self.profile.scale(), self.profile.exponent());
        (s / a).powf(1.0 / p)
    }
}

/// -H(|x|).
pub fn log_density_unnormalized(pi: &SphericalMeasure, x: &[f64]) -> f64 {
    -pi.profile.value(crate::points::norm(x))
}

/// `n` exact draws from π: Gamma radial part times a uniform direction.
pub fn sample_spherical(pi: &SphericalMeasure, n: usize, seed: u64) -> Result<Points> {
    pi.profile.validate()?;
    let law = pi.radial_law()?;
    let coords = rng::par_rows(n, pi.d, seed, |rng, _, row| {
        let r = pi.draw_radius(&law, rng);
        let mut sq = 0.0;
        loop {
            for v in row.iter_mut() {
                let z: f64 = StandardNormal.sample(rng);
                *v = z;
                sq += z * z;
            }
            if sq > 0.0 {
                break;
            }
        }
        let scale = r / sq.sqrt();
        row.iter_mut().for_each(|v| *v *= scale);
    });
    Ok(Points::new(pi.d, coords))
}

/// `n` draws of |G(x)| for x ~ π, where G projects onto any fixed
/// `k`-dimensional subspace.
///
/// Uses the law of the first `k` coordinates of a uniform direction:
/// with Z in R^k standard Gaussian and C ~ χ²(d-k) independent, the squared
/// projected length fraction is |Z|²/(|Z|² + C). Cost is O(k) per draw
/// instead of O(d).
pub fn projected_norms(pi: &SphericalMeasure, k: usize, n: usize, seed: u64) -> Result<Vec<f64>> {
    if k == 0 || k > pi.d {
        return Err(structural(format!("projection rank k = {k} must lie in 1..={}", pi.d)));
    }
    pi.profile.validate()?;
    let law = pi.radial_law()?;
    let rest = if pi.d > k {
        Some(
            Gamma::new((pi.d - k) as f64 / 2.0, 2.0)
                .map_err(|e| Error::OutOfRange(format!("chi-square law: {e}")))?,
        )
    } else {
        None
    };
    Ok(rng::par_rows(n, 1, seed, |rng, _, out| {
        let r = pi.draw_radius(&law, rng);
        let head: f64 = (0..k)
            .map(|_| {
                let z: f64 = StandardNormal.sample(rng);
                z * z
            })
            .sum();
        let tail = rest.as_ref().map_or(0.0, |g| g.sample(rng));
        let total = head + tail;
        out[0] = if total > 0.0 { r * (head / total).sqrt() } else { 0.0 };
    }))
}

/// Empirical quantile of projected lengths and the induced r_k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusQuantile {
    /// (1 - eps/2)-quantile q of |G(x)|, the radius of the projected ball.
    pub radius: f64,
    pub radius_se: f64,
    /// r_k = sqrt(1 + q²), so that {1 + |G|² ≤ r_k²} is the projected ball.
    pub r_k: f64,
    pub r_k_se: f64,
    pub n: usize,
}

/// Order-statistic quantile at index ceil((1 - eps/2) n), no interpolation.
///
/// The standard error is half the width of the order-statistic band at
/// ±1 binomial standard deviation around the target index.
pub fn radius_quantile(mut values: Vec<f64>, eps: f64) -> Result<RadiusQuantile> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(domain(format!("eps must lie in (0, 1), got {eps}")));
    }
    let n = values.len();
    if n == 0 {
        return Err(domain("quantile of an empty sample"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(domain("non-finite value in quantile sample"));
    }
    values.sort_by(f64::total_cmp);
    let level = 1.0 - eps / 2.0;
    let nf = n as f64;
    let idx = ((level * nf).ceil() as usize).clamp(1, n);
    let q = values[idx - 1];
    let spread = (nf * level * (1.0 - level)).sqrt();
    let lo = ((level * nf - spread).floor() as usize).clamp(1, n);
    let hi = ((level * nf + spread).ceil() as usize).clamp(1, n);
    let q_se = (values[hi - 1] - values[lo - 1]) / 2.0;
    let r_k = (1.0 + q * q).sqrt();
    Ok(RadiusQuantile {
        radius: q,
        radius_se: q_se,
        r_k,
        r_k_se: q * q_se / r_k,
        n,
    })
}

/// Monte-Carlo r_k of the `k`-dimensional projection of π at level 1 - eps/2.
pub fn quantile_rk(
    pi: &SphericalMeasure,
    k: usize,
    eps: f64,
    n: usize,
    seed: u64,
) -> Result<RadiusQuantile> {
    if k > pi.d {
        return Err(structural(format!("k = {k} exceeds dimension d = {}", pi.d)));
    }
    let norms = projected_norms(pi, k, n, seed)?;
    radius_quantile(norms, eps)
}
