use crate::error::{domain, Error, Result};
use crate::report::{Check, CheckReport};

/// Characteristic times of the cut-off, with the inputs that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct HorizonSet {
    pub mu: f64,
    pub radius: f64,
    pub delta: f64,
    pub eps: f64,
    pub d: usize,
    pub r_k: Option<f64>,
    pub beta: Option<f64>,
    /// (1/μ) log(R / (2 r_k)); an error when r_k is missing or R ≤ 2 r_k.
    pub t_c: std::result::Result<f64, Error>,
    /// log R - log max{sqrt(2 log(1/ε)), 1}.
    pub t_b: f64,
    /// (1/μ) max{log(2 d^{1/4} / ε^{1/2}), log(2R(1+2δ)√μ / ε)}.
    pub t_ou_thm: f64,
    /// log R + log(1+2δ) + log(1/ε).
    pub t_ou_prop: f64,
    /// ((1-β)/μ log R, (1+β)/μ log R).
    pub envelope: Option<(f64, f64)>,
}

pub fn horizons(
    mu: f64,
    radius: f64,
    delta: f64,
    eps: f64,
    d: usize,
    r_k: Option<f64>,
    beta: Option<f64>,
) -> Result<HorizonSet> {
    if !(mu > 0.0) {
        return Err(domain(format!("mu must be positive, got {mu}")));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(domain(format!("R must be positive, got {radius}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(domain(format!("eps must lie in (0, 1), got {eps}")));
    }
    if !(delta >= 0.0) {
        return Err(domain(format!("delta must be nonnegative, got {delta}")));
    }
    let log_r = radius.ln();
    let t_c = match r_k {
        None => Err(domain("r_k not supplied")),
        Some(rk) if !(radius > 2.0 * rk) => Err(domain(format!(
            "T_c needs R > 2 r_k, got R = {radius}, r_k = {rk}"
        ))),
        Some(rk) => Ok((radius / (2.0 * rk)).ln() / mu),
    };
    let t_b = log_r - (2.0 * (1.0 / eps).ln()).sqrt().max(1.0).ln();
    let a = (2.0 * (d as f64).powf(0.25) / eps.sqrt()).ln();
    let b = (2.0 * radius * (1.0 + 2.0 * delta) * mu.sqrt() / eps).ln();
    let t_ou_thm = a.max(b) / mu;
    let t_ou_prop = log_r + (1.0 + 2.0 * delta).ln() + (1.0 / eps).ln();
    let envelope = beta.map(|b| ((1.0 - b) / mu * log_r, (1.0 + b) / mu * log_r));
    Ok(HorizonSet {
        mu,
        radius,
        delta,
        eps,
        d,
        r_k,
        beta,
        t_c,
        t_b,
        t_ou_thm,
        t_ou_prop,
        envelope,
    })
}

/// The three scale conditions linking the data class to the forward process:
/// (a) R ≥ (ε/μ)^{1/2} d^{1/4}, (b) R^β ≥ 2√μ(1+2δ)/ε, (c) 2 r_k ≤ R^β.
pub fn validate_bridge_assumptions(
    mu: f64,
    radius: f64,
    delta: f64,
    eps: f64,
    d: usize,
    beta: f64,
    r_k: f64,
) -> CheckReport {
    let mut rep = CheckReport::default();
    let need_a = (eps / mu).sqrt() * (d as f64).powf(0.25);
    rep.push(Check::new("(a) R >= (eps/mu)^(1/2) d^(1/4)", radius >= need_a, radius, need_a));
    let r_beta = radius.powf(beta);
    let need_b = 2.0 * mu.sqrt() * (1.0 + 2.0 * delta) / eps;
    rep.push(Check::new("(b) R^beta >= 2 sqrt(mu) (1+2delta)/eps", r_beta >= need_b, r_beta, need_b));
    rep.push(Check::new("(c) 2 r_k <= R^beta", 2.0 * r_k <= r_beta, 2.0 * r_k, r_beta));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_examples() {
        let h = horizons(1.0, 100.0, 0.01, 0.05, 10, Some(5.0), None).unwrap();
        assert!((h.t_c.clone().unwrap() - 10f64.ln()).abs() < 1e-15);
        let expect = 100f64.ln() + 1.02f64.ln() + 20f64.ln();
        assert!((h.t_ou_prop - expect).abs() < 1e-14);
        let e2 = std::f64::consts::E.powi(2);
        let h = horizons(1.0, e2, 0.01, 0.7, 10, None, Some(0.2)).unwrap();
        assert!((h.t_b - 2.0).abs() < 1e-15);
        assert!(h.t_c.is_err());
        let (lo, hi) = h.envelope.unwrap();
        assert!((lo - 1.6).abs() < 1e-14 && (hi - 2.4).abs() < 1e-14);
    }

    #[test]
    fn t_c_error_leaves_other_horizons() {
        let h = horizons(1.0, 10.0, 0.01, 0.1, 4, Some(5.0), None).unwrap();
        assert!(h.t_c.is_err());
        assert!(h.t_b > 0.0 && h.t_ou_prop > 0.0 && h.t_ou_thm > 0.0);
    }

    #[test]
    fn bridge_examples() {
        let rep = validate_bridge_assumptions(1.0, 32.0, 0.01, 0.1, 10_000, 0.5, 2.0);
        assert!(rep.checks[0].passed);
        assert!(!rep.checks[1].passed);
        assert!(!rep.passed());
        assert!(validate_bridge_assumptions(1.0, 1e6, 0.01, 0.1, 100, 0.3, 3.0).passed());
        let rb = 1e6f64.powf(0.3);
        let rep = validate_bridge_assumptions(1.0, 1e6, 0.01, 0.1, 100, 0.3, rb / 2.0);
        assert!(rep.checks[2].passed);
    }
}
