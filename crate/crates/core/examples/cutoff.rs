//! Projected TV between the OU marginal and its invariant law, started from
//! a far mode. The distance stays high up to T_b and collapses by T_OU.
//!
//!     cargo run --release --example cutoff

use mixlab::bounds::horizons;
use mixlab::forward::{EndpointSampler, OUProcess};
use mixlab::measures::{sample_data, MultiModalData};
use mixlab::stats::projected_tv_vs_gaussian;

fn main() -> mixlab::Result<()> {
    let (d, radius, delta, eps, b_rho, mu) = (16, 50.0, 0.02, 0.05, 0.5, 1.0);
    let data = MultiModalData::single_mode(d, radius, delta, eps, b_rho);
    let h = horizons(mu, radius, delta, eps, d, None, None)?;
    let ou = OUProcess::new(mu, d)?;
    let start = sample_data(&data, 100_000, 1)?;
    let dir = data.principal_direction();

    println!("T_b = {:.3}, T_OU = {:.3}, floor (b-eps)/2 = {}", h.t_b, h.t_ou_prop, (b_rho - eps) / 2.0);
    println!("{:>8} {:>8} {:>8}", "t", "tv", "se");
    for t in [0.0, 1.0, 2.0, h.t_b, 4.0, 5.0, h.t_ou_prop, 10.0] {
        let x_t = ou.propagate(&start, t, 2)?;
        let tv = projected_tv_vs_gaussian(&x_t, &dir, mu, None, None)?;
        println!("{t:8.3} {:8.4} {:8.4}", tv.value, tv.std_error);
    }
    Ok(())
}
