// Negated float comparisons are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod error;
pub mod forward;
pub mod measures;
pub mod points;
pub mod projection;
pub mod report;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use nalgebra;
