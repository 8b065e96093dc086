use nalgebra::{DMatrix, DVector};

use crate::error::{domain, structural, Result};
use crate::measures::{sample_mode, MultiModalData};
use crate::points::norm;
use crate::rng::derive_seed;
use crate::stats::chisq_cdf;

/// KL(N(m1, S1) ‖ N(m2, S2)) via Cholesky factors of both covariances.
pub fn kl_gaussians(m1: &[f64], s1: &DMatrix<f64>, m2: &[f64], s2: &DMatrix<f64>) -> Result<f64> {
    let d = m1.len();
    if m2.len() != d || s1.shape() != (d, d) || s2.shape() != (d, d) {
        return Err(structural("mean and covariance shapes disagree"));
    }
    let l1 = s1
        .clone()
        .cholesky()
        .ok_or_else(|| domain("first covariance is not positive definite"))?;
    let l2 = s2
        .clone()
        .cholesky()
        .ok_or_else(|| domain("second covariance is not positive definite"))?;
    let l1 = l1.l();
    let l2 = l2.l();
    // Tr(S2⁻¹ S1) = ‖L2⁻¹ L1‖_F².
    let w = l2
        .solve_lower_triangular(&l1)
        .ok_or_else(|| domain("singular Cholesky factor"))?;
    let diff = DVector::from_iterator(d, m1.iter().zip(m2).map(|(a, b)| a - b));
    let z = l2
        .solve_lower_triangular(&diff)
        .ok_or_else(|| domain("singular Cholesky factor"))?;
    let logdet = |l: &DMatrix<f64>| 2.0 * l.diagonal().iter().map(|v| v.ln()).sum::<f64>();
    let kl = 0.5 * (w.norm_squared() - d as f64 + z.norm_squared() + logdet(&l2) - logdet(&l1));
    Ok(kl.max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperBoundReport {
    pub t: f64,
    /// min(1, inside·sqrt(KLbar/2) + outside).
    pub value: f64,
    pub kl_bar: f64,
    /// ρ0(B(0, R(1+2δ))).
    pub inside_mass: f64,
    pub outside_mass: f64,
    /// Standard error of the masses; 0 when every component was resolved exactly.
    pub mass_std_error: f64,
}

/// ρ0 mass outside B(0, R(1+2δ)) with its standard error. Balls that lie
/// entirely inside or outside and the Gaussian bulk are exact; straddling
/// modes use `n_mc` draws.
fn outside_mass(rho0: &MultiModalData, n_mc: usize, seed: u64) -> Result<(f64, f64)> {
    let big = rho0.outer_radius();
    let tol = 1e-12 * big;
    let mut mass = 0.0;
    let mut var = 0.0;
    for (i, m) in rho0.modes.iter().enumerate() {
        let c = norm(&m.center);
        if c + m.radius <= big + tol {
            continue;
        }
        if c - m.radius > big {
            mass += m.weight;
            continue;
        }
        if n_mc == 0 {
            return Err(domain("a mode straddles the ball boundary and n_mc = 0"));
        }
        let pts = sample_mode(m, n_mc, derive_seed(seed, i as u64));
        let frac = pts.rows().filter(|x| norm(x) > big).count() as f64 / n_mc as f64;
        mass += m.weight * frac;
        var += m.weight * m.weight * frac * (1.0 - frac) / n_mc as f64;
    }
    let bw = rho0.bulk_weight();
    if bw > 0.0 && rho0.bulk.scale > 0.0 {
        let s = big / rho0.bulk.scale;
        mass += bw * (1.0 - chisq_cdf(rho0.d, s * s)?);
    }
    Ok((mass.clamp(0.0, 1.0), var.sqrt()))
}

/// Pinsker/KL upper bound on ‖Law(X_T) - π‖_TV for the OU process started
/// from `rho0`. Needs μT > log(2)/2.
pub fn ou_tv_upper_bound(mu: f64, rho0: &MultiModalData, t: f64, n_mc: usize, seed: u64) -> Result<UpperBoundReport> {
    rho0.check_structure()?;
    if !(mu > 0.0) {
        return Err(domain(format!("mu must be positive, got {mu}")));
    }
    if !(mu * t > std::f64::consts::LN_2 / 2.0) {
        return Err(domain(format!("upper bound needs mu T > log(2)/2, got mu T = {}", mu * t)));
    }
    let outer = rho0.outer_radius();
    let kl_bar = 0.5 * mu * (-2.0 * mu * t).exp() * outer * outer + 0.5 * rho0.d as f64 * (-4.0 * mu * t).exp();
    let (outside, se) = outside_mass(rho0, n_mc, seed)?;
    let inside = 1.0 - outside;
    Ok(UpperBoundReport {
        t,
        value: (inside * (kl_bar / 2.0).sqrt() + outside).min(1.0),
        kl_bar,
        inside_mass: inside,
        outside_mass: outside,
        mass_std_error: se,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_kl_identities() {
        let s = DMatrix::from_row_slice(2, 2, &[2.0, 0.3, 0.3, 1.0]);
        assert!(kl_gaussians(&[1.0, -1.0], &s, &[1.0, -1.0], &s).unwrap().abs() < 1e-12);
        let id = DMatrix::identity(3, 3);
        let kl = kl_gaussians(&[1.0, 2.0, 2.0], &id, &[0.0; 3], &id).unwrap();
        assert!((kl - 4.5).abs() < 1e-12);
    }

    #[test]
    fn scalar_variance_ratio() {
        // KL(N(0,s²) ‖ N(0,1)) = (s² - 1 - ln s²)/2.
        let s1 = DMatrix::from_element(1, 1, 4.0);
        let s2 = DMatrix::from_element(1, 1, 1.0);
        let kl = kl_gaussians(&[0.0], &s1, &[0.0], &s2).unwrap();
        assert!((kl - 0.5 * (3.0 - 4f64.ln())).abs() < 1e-14);
    }

    #[test]
    fn indefinite_covariance_rejected() {
        let bad = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        let id = DMatrix::identity(2, 2);
        assert!(kl_gaussians(&[0.0; 2], &bad, &[0.0; 2], &id).is_err());
    }

    #[test]
    fn horizon_precondition_and_limit() {
        let data = MultiModalData::single_mode(16, 50.0, 0.02, 0.05, 0.5);
        assert!(ou_tv_upper_bound(1.0, &data, 0.3, 0, 1).is_err());
        let far = ou_tv_upper_bound(1.0, &data, 200.0, 0, 1).unwrap();
        assert!(far.value < data.eps / 2.0);
        assert!((far.value - far.outside_mass).abs() < 1e-12);
        assert_eq!(far.mass_std_error, 0.0);
    }
}
