//! Structural checks for a data law and a tempered Langevin forward process.
//!
//!     cargo run --release --example validate

use mixlab::bounds::{check_generator_bound, validate_bridge_assumptions, SubspaceProjector};
use mixlab::forward::{
    check_lg_numeric, check_sigma_bound, lg_max_scale, Envelope, TemperedLangevin,
};
use mixlab::measures::{validate_data_spec, MultiModalData, RadialProfile};

fn main() -> mixlab::Result<()> {
    let (d, radius, delta, eps, mu) = (16, 1e6, 0.01, 0.1, 1.0);
    let data = MultiModalData::single_mode(d, radius, delta, eps, 0.5);
    print!("{}", validate_data_spec(&data, 100_000, 1)?);

    let (p, ell) = (1.0, 0.4);
    let tl = TemperedLangevin::new(RadialProfile::PowerTail { a: lg_max_scale(mu, p, ell), p }, ell, d)?;
    let lg = check_lg_numeric(&tl, mu, 10.0 * radius, 10_000)?;
    println!("LG: max excess {:.3e} at r = {:.3e} -> {}", lg.max_excess, lg.worst_radius, lg.passed);

    let proj = SubspaceProjector::with_leading(&data.principal_direction(), 3)?;
    let env = Envelope::gaussian(radius);
    let sigma = check_sigma_bound(&tl, &proj, 10_000, env, 2)?;
    println!("dispersion balance: max violation {:.3e} -> {}", sigma.max_violation, sigma.passed);
    let gen = check_generator_bound(&tl, &proj, mu, 10_000, env, 3)?;
    println!("generator: max(AH - muH) {:.3e} -> {}", gen.max_excess, gen.passed);

    print!("{}", validate_bridge_assumptions(mu, radius, delta, eps, d, 0.3, 3.0));
    Ok(())
}
