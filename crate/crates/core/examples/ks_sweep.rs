//! KS statistic of the coordinates of one OU marginal in d = 1024, started
//! at distance R along the diagonal.
//!
//!     cargo run --release --example ks_sweep

use mixlab::bounds::horizons;
use mixlab::forward::OUProcess;
use mixlab::stats::{ks_sweep, SweepStart};

fn main() -> mixlab::Result<()> {
    let (d, radius, mu) = (1024, 255.0, 1.0);
    let h = horizons(mu, radius, 0.02, 0.05, d, None, None)?;
    let x0 = vec![radius / (d as f64).sqrt(); d];
    let times = [0.0, h.t_b / 2.0, h.t_b, h.t_ou_prop];
    let sweep = ks_sweep(&OUProcess::new(mu, d)?, SweepStart::Point(&x0), mu, &times, 7)?;
    for p in sweep {
        println!(
            "t = {:6.3}  D = {:.4}  p = {:.3e}  (standardized D = {:.4})",
            p.t, p.raw.statistic, p.raw.p_value, p.standardized.statistic
        );
    }
    Ok(())
}
