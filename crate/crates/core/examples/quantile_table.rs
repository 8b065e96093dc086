//! Radius of the 3-dimensional projection of exp(-|x|^p) at level 0.95,
//! for a few tail exponents and dimensions.
//!
//!     cargo run --release --example quantile_table

use mixlab::measures::{quantile_rk, RadialProfile, SphericalMeasure};

fn main() -> mixlab::Result<()> {
    let dims = [3, 30, 300, 3000];
    print!("{:>6}", "p");
    dims.iter().for_each(|d| print!("{:>10}", format!("d={d}")));
    println!();
    for p in [2.0, 1.5, 1.0] {
        print!("{p:>6}");
        for (i, d) in dims.into_iter().enumerate() {
            let pi = SphericalMeasure::new(d, RadialProfile::PowerTail { a: 1.0, p })?;
            let q = quantile_rk(&pi, 3, 0.1, 300_000, i as u64)?;
            print!("{:>10.3}", q.radius);
        }
        println!();
    }
    Ok(())
}
