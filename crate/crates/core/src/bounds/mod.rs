//! Total-variation bounds for forward diffusions: the rate calculus behind
//! the Lyapunov lower bound, the generator inequality for the projected test
//! function, Monte-Carlo lower bounds, the Gaussian KL/Pinsker upper bound
//! and the characteristic horizons.

mod generator;
mod horizons;
mod lower;
mod rate;
mod upper;

pub use crate::projection::SubspaceProjector;
pub use generator::{check_generator_bound, generator_apply_h, GeneratorReport};
pub use horizons::{horizons, validate_bridge_assumptions, HorizonSet};
pub use lower::{expected_h_check, tv_lower_bound, ExpectedHReport, LowerBoundReport, PiTermSource};
pub use rate::RateFunction;
pub use upper::{kl_gaussians, ou_tv_upper_bound, UpperBoundReport};
