//! Classical causal discovery baselines. Every method returns a continuous
//! score matrix (used for ranking metrics) and a thresholded summary graph.

mod config;
mod design;
mod lasso;
mod pcmci;
mod scores;
mod var;

pub use config::{default_grid, MethodConfig, MethodKind, DEFAULT_LAMBDA_GRID};
pub use design::{build_lag_design, LagDesign};
pub use lasso::{lasso_coordinate_descent, lasso_granger, lasso_granger_design, LassoFit, LassoOptions};
pub use pcmci::pcmci;
pub use scores::{collapse_window, ScoreMatrix};
pub use var::{var_granger, var_granger_design, RIDGE_FALLBACK};

use crate::error::Result;
use crate::generators::TimeSeriesMatrix;
use crate::numerics::Matrix;

/// Side information a method reports alongside its scores.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    /// Targets whose OLS fit fell back to ridge.
    pub ridge_fallback: Vec<usize>,
    /// Coordinate-descent sweeps per target.
    pub lasso_sweeps: Vec<usize>,
    /// Selected parents `(source, lag)` per target.
    pub parents: Vec<Vec<(usize, usize)>>,
    /// MCI p-values, `p_values[l-1][(p, q)]` for the link `x_{t-l,p} → x_{t,q}`.
    pub p_values: Option<Vec<Matrix>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodOutput {
    pub scores: ScoreMatrix,
    /// `graph[p][q]`: p is declared a cause of q.
    pub graph: Vec<Vec<bool>>,
    /// Lag-resolved scores, `window[l-1]` indexed like the summary scores.
    pub window: Option<Vec<Matrix>>,
    pub diagnostics: Diagnostics,
}

/// Runs whichever method `cfg` names.
pub fn run_method(x: &TimeSeriesMatrix, cfg: &MethodConfig) -> Result<MethodOutput> {
    cfg.validate()?;
    match cfg {
        MethodConfig::Var { .. } => var_granger(x, cfg),
        MethodConfig::Lgc { .. } => lasso_granger(x, cfg),
        MethodConfig::Pcmci { .. } => pcmci(x, cfg),
    }
}

pub(crate) fn threshold_graph(scores: &ScoreMatrix, threshold: f64) -> Vec<Vec<bool>> {
    let d = scores.d();
    (0..d)
        .map(|p| (0..d).map(|q| scores.get(p, q) > threshold).collect())
        .collect()
}
