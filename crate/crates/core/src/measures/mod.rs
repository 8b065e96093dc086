//! Data distributions of the multi-modal class and spherically symmetric
//! noise measures.

mod data;
pub(crate) use data::sample_mode;
mod spherical;

pub use data::{
    sample_data, sample_data_labeled, validate_data_spec, Bulk, Component, ModeKind, ModeSpec,
    MultiModalData,
};
pub use spherical::{
    log_density_unnormalized, projected_norms, quantile_rk, radius_quantile, sample_spherical,
    RadialProfile, RadiusQuantile, SphericalMeasure, MAX_SHAPE,
};

use crate::error::Result;
use crate::points::Points;

/// Anything that can produce i.i.d. starting points for a forward process.
pub trait InitialLaw: Sync {
    fn dim(&self) -> usize;
    fn sample(&self, n: usize, seed: u64) -> Result<Points>;
}

impl InitialLaw for MultiModalData {
    fn dim(&self) -> usize {
        self.d
    }

    fn sample(&self, n: usize, seed: u64) -> Result<Points> {
        sample_data(self, n, seed)
    }
}

impl InitialLaw for SphericalMeasure {
    fn dim(&self) -> usize {
        self.d
    }

    fn sample(&self, n: usize, seed: u64) -> Result<Points> {
        sample_spherical(self, n, seed)
    }
}

/// Raw points act as their empirical measure: draws are uniform with replacement.
impl InitialLaw for Points {
    fn dim(&self) -> usize {
        Points::dim(self)
    }

    fn sample(&self, n: usize, seed: u64) -> Result<Points> {
        use rand::Rng;
        if self.is_empty() {
            return Err(crate::error::domain("empirical law has no points"));
        }
        let m = self.len();
        let coords = crate::rng::par_rows(n, self.dim(), seed, |rng, _, row| {
            row.copy_from_slice(self.row(rng.random_range(0..m)));
        });
        Ok(Points::new(self.dim(), coords))
    }
}
