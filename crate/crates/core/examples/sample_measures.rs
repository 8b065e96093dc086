//! Draws from a multi-modal data law and from a power-tail invariant measure.
//!
//!     cargo run --example sample_measures

use mixlab::measures::{sample_data_labeled, sample_spherical, Component, MultiModalData, RadialProfile, SphericalMeasure};
use mixlab::points::norm;

fn main() -> mixlab::Result<()> {
    let data = MultiModalData::single_mode(8, 20.0, 0.05, 0.05, 0.3);
    let (pts, labels) = sample_data_labeled(&data, 50_000, 1)?;
    let far = labels.iter().filter(|c| **c == Component::Mode(0)).count();
    let mean_norm = pts.rows().map(norm).sum::<f64>() / pts.len() as f64;
    println!("data: {far} of {} draws from the far mode, mean |x| = {mean_norm:.3}", pts.len());

    for p in [1.0, 1.5, 2.0] {
        let pi = SphericalMeasure::new(8, RadialProfile::PowerTail { a: 1.0, p })?;
        let r: Vec<f64> = sample_spherical(&pi, 50_000, 2)?.rows().map(norm).collect();
        println!("exp(-|x|^{p}): mean |x| = {:.3}", r.iter().sum::<f64>() / r.len() as f64);
    }
    Ok(())
}
