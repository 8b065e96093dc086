//! Ξ, γ and C_{r,T} for a linear rate and for ξ(s) = √s.
//!
//!     cargo run --example rate_calculus

use mixlab::bounds::RateFunction;

fn main() -> mixlab::Result<()> {
    let linear = RateFunction::linear(1.0)?;
    let root = RateFunction::general(f64::sqrt, 1e-8, 1e8)?;
    for (name, rate) in [("mu s", &linear), ("sqrt s", &root)] {
        println!("xi(s) = {name}");
        println!("  Xi(1, 4)      = {:.12}", rate.xi_integral(1.0, 4.0)?);
        println!("  gamma(0.5, 1) = {:.12}", rate.gamma(0.5, 1.0)?);
        let c = rate.c_rt(2.0, 0.5)?;
        println!("  C(2, 0.5)     = {c:.12}  gamma(C, 0.5) = {:.12}", rate.gamma(c, 0.5)?);
    }
    Ok(())
}
