//! A H - μH along a ray in the projection subspace, for OU at the right rate
//! and for OU at twice the rate checked against μ.
//!
//!     cargo run --example generator_bound

use mixlab::bounds::{generator_apply_h, SubspaceProjector};
use mixlab::forward::OUProcess;

fn main() -> mixlab::Result<()> {
    let (d, mu) = (8, 1.0);
    let proj = SubspaceProjector::coordinate(d, 3)?;
    let ou = OUProcess::new(mu, d)?;
    let fast = OUProcess::new(2.0 * mu, d)?;
    println!("{:>8} {:>14} {:>14}", "|G|", "OU(mu)", "OU(2mu)");
    for g in [0.0, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0] {
        let mut x = vec![0.0; d];
        x[0] = g;
        x[5] = 3.0;
        let h = proj.h(&x);
        let a = generator_apply_h(&ou, &proj, &x) - mu * h;
        let b = generator_apply_h(&fast, &proj, &x) - mu * h;
        println!("{g:8.1} {a:14.6e} {b:14.6e}");
    }
    Ok(())
}
