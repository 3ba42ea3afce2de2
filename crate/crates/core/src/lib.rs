//! Robustness benchmark engine for time-series causal discovery.
//!
//! The crate synthesizes datasets from a linear VAR model and the nonlinear
//! Lorenz-96 system, perturbs them with one of several assumption-violation
//! scenarios, runs classical discovery baselines (VAR-Granger, Lasso-Granger,
//! PCMCI) over hyperparameter grids and scores the recovered graphs with
//! off-diagonal AUROC/AUPRC.
//!
//! Module map:
//!
//! - [`numerics`]: Cholesky, QR least squares, GP path sampling, partial
//!   correlation, RK4 and soft thresholding.
//! - [`generators`]: vanilla VAR and Lorenz-96 simulators with ground truth.
//! - [`misspec`]: the assumption-violation transforms and [`misspec::build_dataset`].
//! - [`methods`]: discovery baselines emitting [`methods::ScoreMatrix`] values.
//! - [`eval`]: metrics, aggregation and hyperparameter-selection protocols.
//! - [`harness`]: experiment configuration, grid runner, reports and charts.

pub mod error;
pub mod eval;
pub mod generators;
pub mod harness;
pub mod methods;
pub mod misspec;
pub mod numerics;

pub use error::{Error, Result};
