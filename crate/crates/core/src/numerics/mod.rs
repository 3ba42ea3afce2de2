//! Shared numerical kernels.

mod cholesky;
mod gp;
mod lstsq;
mod matrix;
mod ode;
mod spectral;
mod stats;

pub use cholesky::{cholesky, cholesky_escalating, CholeskyFactor};
pub use gp::{sample_gp_scales, GpSampler, GpSpec};
pub use lstsq::{ols_fit, ridge_fit, OlsFit};
pub use matrix::Matrix;
pub use ode::rk4_step;
pub use spectral::{companion_matrix, spectral_radius};
pub use stats::{fisher_z_pvalue, partial_correlation, pearson, soft_threshold, PartialCorrelation};
