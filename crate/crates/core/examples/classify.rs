//! Ergodicity regime of tempered Langevin diffusions over a small (p, ℓ) grid.
//!
//!     cargo run --example classify

use mixlab::forward::classify_ergodicity;

fn main() -> mixlab::Result<()> {
    for p in [0.5, 1.0, 1.5, 3.0] {
        for ell in [0.0, 0.5, 1.0, 1.5, 2.0] {
            println!("p = {p:3}, ell = {ell:3}: {}", classify_ergodicity(p, ell)?);
        }
    }
    Ok(())
}
