//! Monte-Carlo lower bound on the TV distance at T_c for the OU process,
//! next to the KL/Pinsker upper bound.
//!
//!     cargo run --release --example lower_bound

use mixlab::bounds::{horizons, ou_tv_upper_bound, tv_lower_bound, PiTermSource, RateFunction, SubspaceProjector};
use mixlab::measures::{quantile_rk, MultiModalData, SphericalMeasure};

fn main() -> mixlab::Result<()> {
    let (d, radius, delta, eps, mu, k) = (16, 200.0, 0.02, 0.05, 1.0, 3);
    let data = MultiModalData::single_mode(d, radius, delta, eps, 0.5);
    let proj = SubspaceProjector::with_leading(&data.principal_direction(), k)?;
    let rate = RateFunction::linear(mu)?;

    // r_k from the invariant law N(0, I/mu).
    let r_k = quantile_rk(&SphericalMeasure::gaussian(d, mu)?, k, eps, 300_000, 1)?.r_k;
    let t_c = horizons(mu, radius, delta, eps, d, Some(r_k), None)?.t_c?;
    println!("r_k = {r_k:.4}, T_c = {t_c:.4}");

    for t in [1.0, 2.0, t_c, 5.0, 8.0] {
        let lower = tv_lower_bound(PiTermSource::GaussianClosedForm { mu }, &data, &proj, &rate, r_k, t, 100_000, 2)?;
        let upper = ou_tv_upper_bound(mu, &data, t, 100_000, 3)?;
        println!(
            "t = {t:6.3}  lower {:8.4} (pi {:.4}, tail {:.4}, integral {:.4})  upper {:.4}",
            lower.total, lower.pi_term, lower.rho_tail_term, lower.integral_term, upper.value
        );
    }
    Ok(())
}
