//! Binning bias of the histogram TV estimator under the null: samples of
//! N(0, 1) against the exact CDF, with the default bin count. Thresholds on
//! projected TV in the tests sit above these values.
//!
//!     cargo run --release --example tv_null_calibration

use mixlab::stats::{empirical_tv_1d, normal_cdf, Reference};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

fn main() -> mixlab::Result<()> {
    let cdf = |x: f64| normal_cdf(x, 0.0, 1.0);
    println!("{:>9} {:>6} {:>10} {:>10}", "n", "bins", "mean tv", "max tv");
    for n in [10_000, 100_000, 1_000_000] {
        let mut values = Vec::new();
        let mut bins = 0;
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let tv = empirical_tv_1d(&x, Reference::Cdf(&cdf), None, None)?;
            bins = tv.bins;
            values.push(tv.value);
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let max = values.iter().cloned().fold(0.0, f64::max);
        println!("{n:>9} {bins:>6} {mean:>10.5} {max:>10.5}");
    }
    Ok(())
}
