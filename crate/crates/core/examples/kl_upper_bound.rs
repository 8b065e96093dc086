//! Gaussian KL divergence and the Pinsker upper bound on the OU distance
//! to equilibrium.
//!
//!     cargo run --example kl_upper_bound

use mixlab::bounds::{horizons, kl_gaussians, ou_tv_upper_bound};
use mixlab::measures::MultiModalData;
use mixlab::nalgebra::DMatrix;

fn main() -> mixlab::Result<()> {
    let s1 = DMatrix::from_row_slice(2, 2, &[2.0, 0.3, 0.3, 1.0]);
    let eye = DMatrix::identity(2, 2);
    println!("KL(N(m, S) || N(0, I)) = {:.6}", kl_gaussians(&[1.0, -0.5], &s1, &[0.0, 0.0], &eye)?);

    let (d, radius, delta, eps, mu) = (16, 50.0, 0.02, 0.05, 1.0);
    let data = MultiModalData::single_mode(d, radius, delta, eps, 0.5);
    let t_ou = horizons(mu, radius, delta, eps, d, None, None)?.t_ou_thm;
    for t in [1.0, 3.0, 5.0, t_ou, 12.0] {
        let u = ou_tv_upper_bound(mu, &data, t, 100_000, 1)?;
        println!("t = {t:6.3}  bound {:.4}  (KLbar {:.3e}, outside mass {:.2e})", u.value, u.kl_bar, u.outside_mass);
    }
    Ok(())
}
