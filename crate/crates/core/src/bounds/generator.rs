use crate::error::{structural, Result};
use crate::forward::{Diffusion, Envelope};
use crate::points::dot;
use crate::projection::SubspaceProjector;
use crate::rng;

/// Generator A applied to H(x) = (1 + |G x|²)^(-1/2):
/// <b, ∇H> + ½ Tr(a Hess H) with ∇H = -H³ G and
/// Hess H = H³ (3H² G Gᵀ - Σ_j y_j y_jᵀ).
pub fn generator_apply_h<D: Diffusion + ?Sized>(process: &D, proj: &SubspaceProjector, x: &[f64]) -> f64 {
    let g = proj.project(x);
    let g2 = dot(&g, &g);
    let h = 1.0 / (1.0 + g2).sqrt();
    let h3 = h * h * h;
    let b = process.drift(x);
    let a = process.dispersion(x);
    let first = -h3 * dot(&b, &g);
    let trace_sub: f64 = proj.basis().iter().map(|y| a.quadratic_form(y)).sum();
    let second = 0.5 * h3 * (3.0 * h * h * a.quadratic_form(&g) - trace_sub);
    first + second
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorReport {
    /// max of A H(x) - μ H(x) over the sampled points.
    pub max_excess: f64,
    pub worst_point: Vec<f64>,
    pub passed: bool,
}

/// Spot-checks A H ≤ μ H at `n_points` envelope points; passes iff the
/// largest excess is at most 1e-9.
pub fn check_generator_bound<D: Diffusion + ?Sized>(
    process: &D,
    proj: &SubspaceProjector,
    mu: f64,
    n_points: usize,
    envelope: Envelope,
    seed: u64,
) -> Result<GeneratorReport> {
    if proj.dim() != process.dim() {
        return Err(structural("projector and process dimensions differ"));
    }
    let xs = envelope.sample(process.dim(), n_points, seed);
    let excess = rng::par_map(n_points, |i| {
        let x = xs.row(i);
        generator_apply_h(process, proj, x) - mu * proj.h(x)
    });
    let (mut worst, mut idx) = (f64::NEG_INFINITY, 0);
    for (i, &v) in excess.iter().enumerate() {
        if v > worst || v.is_nan() {
            worst = v;
            idx = i;
            if v.is_nan() {
                break;
            }
        }
    }
    Ok(GeneratorReport {
        max_excess: worst,
        worst_point: if n_points > 0 { xs.row(idx).to_vec() } else { Vec::new() },
        passed: n_points == 0 || worst <= 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::{Dispersion, OUProcess};

    #[test]
    fn orthogonal_point_has_only_the_trace_term() {
        let ou = OUProcess::new(1.0, 5).unwrap();
        let proj = SubspaceProjector::coordinate(5, 3).unwrap();
        let x = [0.0, 0.0, 0.0, 4.0, -2.0];
        // G = 0, H = 1, scalar dispersion c = 2: value = -k c / 2.
        assert!((generator_apply_h(&ou, &proj, &x) + 3.0).abs() < 1e-15);
        assert!((generator_apply_h(&ou, &proj, &[0.0; 5]) + 3.0).abs() < 1e-15);
    }

    struct DoubleRate;

    impl Diffusion for DoubleRate {
        fn dim(&self) -> usize {
            4
        }
        fn drift_into(&self, x: &[f64], out: &mut [f64]) {
            for (o, v) in out.iter_mut().zip(x) {
                *o = -2.0 * v;
            }
        }
        fn dispersion(&self, _x: &[f64]) -> Dispersion {
            Dispersion::Scalar(2.0)
        }
    }

    #[test]
    fn ou_passes_and_doubled_rate_fails() {
        let ou = OUProcess::new(1.0, 4).unwrap();
        let proj = SubspaceProjector::coordinate(4, 3).unwrap();
        let env = Envelope::gaussian(20.0);
        assert!(check_generator_bound(&ou, &proj, 1.0, 5000, env, 1).unwrap().passed);
        let rep = check_generator_bound(&DoubleRate, &proj, 1.0, 5000, env, 1).unwrap();
        assert!(!rep.passed && rep.max_excess > 0.0);
    }
}
