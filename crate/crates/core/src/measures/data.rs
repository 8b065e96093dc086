use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{structural, Result};
use crate::points::{norm, Points};
use crate::report::{Check, CheckReport};
use crate::rng::{self, StreamRng};

/// Shape of the mass carried by one mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModeKind {
    /// Uniform on the closed ball of the mode radius.
    #[default]
    UniformBall,
    /// Gaussian with per-coordinate deviation radius/(2 sqrt(d)),
    /// conditioned on the ball of the mode radius.
    TruncatedGaussian,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeSpec {
    pub center: Vec<f64>,
    /// Absolute radius of the ball carrying the mode's mass.
    pub radius: f64,
    pub weight: f64,
    pub kind: ModeKind,
}

/// Remaining mass 1 - Σ weights: a centered Gaussian c·N(0, I).
/// `scale = 0` is a point mass at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bulk {
    pub scale: f64,
}

/// Which mixture component produced a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Mode(usize),
    Bulk,
}

/// Parametric member of the multi-modal data class.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiModalData {
    pub d: usize,
    /// Distance scale R of the furthest mode.
    pub radius: f64,
    pub delta: f64,
    pub eps: f64,
    pub modes: Vec<ModeSpec>,
    /// Index of the furthest mode x_0 in `modes`.
    pub designated: usize,
    pub bulk: Bulk,
}

impl MultiModalData {
    /// One uniform-ball mode at R(1+δ)·e_1 with radius δR and weight `b_rho`,
    /// plus a Gaussian bulk of scale R/(4√d), whose norm concentrates
    /// near R/4 whatever the dimension.
    pub fn single_mode(d: usize, radius: f64, delta: f64, eps: f64, b_rho: f64) -> Self {
        let mut center = vec![0.0; d];
        if d > 0 {
            center[0] = radius * (1.0 + delta);
        }
        Self {
            d,
            radius,
            delta,
            eps,
            modes: vec![ModeSpec {
                center,
                radius: delta * radius,
                weight: b_rho,
                kind: ModeKind::UniformBall,
            }],
            designated: 0,
            bulk: Bulk { scale: radius / (4.0 * (d.max(1) as f64).sqrt()) },
        }
    }

    pub fn with_bulk_scale(mut self, scale: f64) -> Self {
        self.bulk.scale = scale;
        self
    }

    pub fn with_mode_kind(mut self, kind: ModeKind) -> Self {
        self.modes.iter_mut().for_each(|m| m.kind = kind);
        self
    }

    pub fn with_mode(mut self, mode: ModeSpec) -> Self {
        self.modes.push(mode);
        self
    }

    pub fn furthest_mode(&self) -> &ModeSpec {
        &self.modes[self.designated]
    }

    /// Unit vector towards the designated mode.
    pub fn principal_direction(&self) -> Vec<f64> {
        let c = &self.furthest_mode().center;
        let n = norm(c);
        c.iter().map(|v| v / n).collect()
    }

    pub fn b_rho(&self) -> f64 {
        self.furthest_mode().weight
    }

    pub fn bulk_weight(&self) -> f64 {
        (1.0 - self.modes.iter().map(|m| m.weight).sum::<f64>()).max(0.0)
    }

    /// Total weight of modes whose ball reaches at least distance R from the
    /// origin: the aggregated alternative to `b_rho`.
    pub fn far_mode_weight(&self) -> f64 {
        self.modes
            .iter()
            .filter(|m| norm(&m.center) + m.radius >= self.radius)
            .map(|m| m.weight)
            .sum()
    }

    /// Radius R(1+2δ) of the ball that must hold all but eps/2 of the mass.
    pub fn outer_radius(&self) -> f64 {
        self.radius * (1.0 + 2.0 * self.delta)
    }

    /// Field invariants that make the spec usable at all.
    pub fn check_structure(&self) -> Result<()> {
        if self.d == 0 {
            return Err(structural("dimension d must be positive"));
        }
        if !(self.radius > 2.0) {
            return Err(structural(format!("R must exceed 2, got {}", self.radius)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(structural(format!("delta must lie in (0,1), got {}", self.delta)));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(structural(format!("eps must lie in (0,1), got {}", self.eps)));
        }
        if self.modes.is_empty() || self.designated >= self.modes.len() {
            return Err(structural("no designated furthest mode"));
        }
        for (i, m) in self.modes.iter().enumerate() {
            if m.center.len() != self.d {
                return Err(structural(format!(
                    "mode {i} center has length {} but d = {}",
                    m.center.len(),
                    self.d
                )));
            }
            if !(m.weight > 0.0 && m.weight <= 1.0) {
                return Err(structural(format!("mode {i} weight {} is not in (0,1]", m.weight)));
            }
            if !(m.radius >= 0.0) {
                return Err(structural(format!("mode {i} radius {} is negative", m.radius)));
            }
        }
        let total: f64 = self.modes.iter().map(|m| m.weight).sum();
        if total > 1.0 + 1e-12 {
            return Err(structural(format!("mode weights sum to {total} > 1")));
        }
        if !(self.bulk.scale >= 0.0) {
            return Err(structural("bulk scale must be nonnegative"));
        }
        Ok(())
    }

    fn draw_into(&self, rng: &mut StreamRng, row: &mut [f64]) -> Component {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (i, m) in self.modes.iter().enumerate() {
            acc += m.weight;
            if u < acc {
                draw_mode(m, rng, row);
                return Component::Mode(i);
            }
        }
        for v in row.iter_mut() {
            let z: f64 = StandardNormal.sample(rng);
            *v = self.bulk.scale * z;
        }
        Component::Bulk
    }
}

fn gaussian_direction(rng: &mut StreamRng, row: &mut [f64]) {
    loop {
        let mut sq = 0.0;
        for v in row.iter_mut() {
            let z: f64 = StandardNormal.sample(rng);
            *v = z;
            sq += z * z;
        }
        if sq > 0.0 {
            let inv = 1.0 / sq.sqrt();
            row.iter_mut().for_each(|v| *v *= inv);
            return;
        }
    }
}

fn draw_mode(m: &ModeSpec, rng: &mut StreamRng, row: &mut [f64]) {
    let d = row.len();
    if m.radius == 0.0 {
        row.copy_from_slice(&m.center);
        return;
    }
    match m.kind {
        ModeKind::UniformBall => {
            gaussian_direction(rng, row);
            let u: f64 = rng.random();
            let r = m.radius * u.powf(1.0 / d as f64);
            for (v, c) in row.iter_mut().zip(&m.center) {
                *v = c + r * *v;
            }
        }
        ModeKind::TruncatedGaussian => {
            let sd = m.radius / (2.0 * (d as f64).sqrt());
            loop {
                let mut sq = 0.0;
                for v in row.iter_mut() {
                    let z: f64 = StandardNormal.sample(rng);
                    *v = sd * z;
                    sq += *v * *v;
                }
                if sq <= m.radius * m.radius {
                    break;
                }
            }
            for (v, c) in row.iter_mut().zip(&m.center) {
                *v += c;
            }
        }
    }
}

/// `n` draws from a single mode in R^d.
pub(crate) fn sample_mode(m: &ModeSpec, n: usize, seed: u64) -> Points {
    let d = m.center.len();
    Points::new(d, rng::par_rows(n, d, seed, |rng, _, row| draw_mode(m, rng, row)))
}

/// `n` draws from the mixture; deterministic in `(spec, n, seed)`.
pub fn sample_data(spec: &MultiModalData, n: usize, seed: u64) -> Result<Points> {
    spec.check_structure()?;
    let coords = rng::par_rows(n, spec.d, seed, |rng, _, row| {
        spec.draw_into(rng, row);
    });
    Ok(Points::new(spec.d, coords))
}

/// Like [`sample_data`] (same points for the same seed) plus the component
/// that produced each point.
pub fn sample_data_labeled(
    spec: &MultiModalData,
    n: usize,
    seed: u64,
) -> Result<(Points, Vec<Component>)> {
    spec.check_structure()?;
    let d = spec.d;
    let raw = rng::par_rows(n, d + 1, seed, |rng, _, row| {
        let (x, tag) = row.split_at_mut(d);
        tag[0] = match spec.draw_into(rng, x) {
            Component::Mode(i) => i as f64,
            Component::Bulk => -1.0,
        };
    });
    let mut coords = Vec::with_capacity(n * d);
    let mut labels = Vec::with_capacity(n);
    for row in raw.chunks(d + 1) {
        coords.extend_from_slice(&row[..d]);
        labels.push(if row[d] < 0.0 {
            Component::Bulk
        } else {
            Component::Mode(row[d] as usize)
        });
    }
    Ok((Points::new(d, coords), labels))
}

/// Checks the explicit inequalities of the data class. The tail mass
/// outside B(0, R(1+2δ)) is estimated from `n_mc` samples and must stay
/// below eps/2 at three standard errors.
pub fn validate_data_spec(spec: &MultiModalData, n_mc: usize, seed: u64) -> Result<CheckReport> {
    spec.check_structure()?;
    let mut report = CheckReport::default();
    let x0 = spec.furthest_mode();
    let target = spec.radius * (1.0 + spec.delta);
    let dist = norm(&x0.center);
    report.push(
        Check::new(
            "mode distance |x0| = R(1+delta)",
            ((dist - target) / target).abs() <= 1e-12,
            dist,
            target,
        )
        .with_note("relative tolerance 1e-12"),
    );
    let rad_target = spec.delta * spec.radius;
    report.push(Check::new(
        "mode radius = delta R",
        (x0.radius - rad_target).abs() <= 1e-12 * rad_target.max(1.0),
        x0.radius,
        rad_target,
    ));
    let other_max = spec
        .modes
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != spec.designated)
        .map(|(_, m)| norm(&m.center))
        .fold(0.0, f64::max);
    report.push(Check::new(
        "designated mode is furthest",
        other_max <= dist,
        other_max,
        dist,
    ));
    report.push(Check::new(
        "b_rho > 3 eps",
        x0.weight > 3.0 * spec.eps,
        x0.weight,
        3.0 * spec.eps,
    ));

    let outer = spec.outer_radius();
    let pts = sample_data(spec, n_mc, rng::derive_seed(seed, 0xda7a))?;
    let escaped = pts.rows().filter(|r| norm(r) > outer).count() as f64;
    let n = n_mc.max(1) as f64;
    let p = escaped / n;
    let se = (p * (1.0 - p) / n).sqrt();
    report.push(
        Check::new(
            "tail mass outside B(0,R(1+2delta)) < eps/2",
            p + 3.0 * se < spec.eps / 2.0,
            p,
            spec.eps / 2.0,
        )
        .with_std_error(se)
        .with_note(format!("Monte Carlo, n = {n_mc}, 3 sigma")),
    );
    Ok(report)
}
