//! Assumption-violation scenarios: each maps a vanilla dataset (or its
//! generation setup) to a misspecified one while keeping the vanilla ground
//! truth for evaluation.

mod build;
mod confounders;
mod missing;
mod nonstationary;
mod scenario;
mod transforms;

pub use build::{build_dataset, rng_stream, Dataset, RngStream};
pub use confounders::{attach_confounders, BaseSetup, ConfoundedSetup, ConfounderLink};
pub use missing::{apply_mcar, zero_order_hold};
pub use nonstationary::{make_nonstationary_scales, make_tv_coefficient_path, TV_KERNEL_WIDTH};
pub use scenario::{BaseModel, Scenario, ScenarioSpec, DEFAULT_KERNEL_WIDTH};
pub use transforms::{add_measurement_error, add_trend_season, discretize_mixed, minmax, zscore};
