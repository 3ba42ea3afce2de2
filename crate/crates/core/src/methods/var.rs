use crate::error::{Error, Result};
use crate::generators::TimeSeriesMatrix;
use crate::numerics::{ols_fit, ridge_fit, Matrix};

use super::{build_lag_design, threshold_graph, Diagnostics, LagDesign, MethodConfig, MethodOutput};

/// Ridge penalty used when a target's OLS design is singular.
pub const RIDGE_FALLBACK: f64 = 1e-6;

pub fn var_granger(x: &TimeSeriesMatrix, cfg: &MethodConfig) -> Result<MethodOutput> {
    let design = build_lag_design(x, cfg.tau_max())?;
    var_granger_design(&design, cfg)
}

/// OLS per target on the lag design plus an unscored intercept.
pub fn var_granger_design(design: &LagDesign, cfg: &MethodConfig) -> Result<MethodOutput> {
    let MethodConfig::Var { threshold, .. } = *cfg else {
        return Err(Error::Config(format!("var_granger got a {} config", cfg.kind().name())));
    };
    let (n, d, tau) = (design.rows(), design.d, design.tau_max);
    let k = d * tau;
    if n <= k + 1 {
        return Err(Error::InvalidArgument(format!(
            "{n} design rows cannot fit {} coefficients",
            k + 1
        )));
    }
    let mut x = Matrix::zeros(n, k + 1);
    for r in 0..n {
        let row = x.row_mut(r);
        row[0] = 1.0;
        row[1..].copy_from_slice(design.predictors.row(r));
    }

    let mut window = vec![Matrix::zeros(d, d); tau];
    let mut diagnostics = Diagnostics::default();
    for q in 0..d {
        let y = design.targets.column(q);
        let fit = match ols_fit(&x, &y) {
            Ok(fit) => fit,
            Err(Error::RankDeficient { .. }) => {
                diagnostics.ridge_fallback.push(q);
                ridge_fit(&x, &y, RIDGE_FALLBACK)?
            }
            Err(e) => return Err(e),
        };
        for lag in 1..=tau {
            for p in 0..d {
                window[lag - 1][(p, q)] = fit.coefficients[1 + design.column_index(lag, p)].abs();
            }
        }
    }
    let scores = super::collapse_window(&window)?;
    Ok(MethodOutput {
        graph: threshold_graph(&scores, threshold),
        scores,
        window: Some(window),
        diagnostics,
    })
}
