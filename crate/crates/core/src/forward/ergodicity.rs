use crate::error::{structural, Result};

/// Convergence class of a tempered Langevin diffusion with tail exponent p
/// and temperature ℓ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// TV decays like exp(-c t^exponent).
    Subexponential { exponent: f64 },
    Exponential,
    Uniform,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Subexponential { exponent } => write!(f, "subexponential (exponent {exponent})"),
            Regime::Exponential => write!(f, "exponential"),
            Regime::Uniform => write!(f, "uniform"),
        }
    }
}

/// Boundaries are closed: ℓ = 1/p - 1 and ℓ = 1/p - 1/2 are both exponential.
pub fn classify_ergodicity(p: f64, ell: f64) -> Result<Regime> {
    if !(p > 0.0) || p.is_nan() {
        return Err(structural(format!("tail exponent p must be positive, got {p}")));
    }
    if !(ell >= 0.0) {
        return Err(structural(format!("temperature must be nonnegative, got {ell}")));
    }
    let exp_edge = 1.0 / p - 0.5;
    Ok(if p < 1.0 {
        let sub_edge = 1.0 / p - 1.0;
        if ell < sub_edge {
            Regime::Subexponential { exponent: p / (2.0 - p - 2.0 * ell * p) }
        } else if ell <= exp_edge {
            Regime::Exponential
        } else {
            Regime::Uniform
        }
    } else if p <= 2.0 {
        if ell <= exp_edge {
            Regime::Exponential
        } else {
            Regime::Uniform
        }
    } else {
        Regime::Uniform
    })
}
