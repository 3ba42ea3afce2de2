use crate::error::{Error, Result};
use crate::generators::TimeSeriesMatrix;
use crate::numerics::Matrix;

/// Regression form of a lag-`tau_max` VAR. Row `r` corresponds to time
/// `t = r + tau_max`; predictor column `(lag-1)·d + var` holds `x[t-lag, var]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LagDesign {
    pub tau_max: usize,
    pub d: usize,
    pub predictors: Matrix,
    pub targets: Matrix,
}

impl LagDesign {
    pub fn rows(&self) -> usize {
        self.predictors.rows()
    }

    pub fn column_index(&self, lag: usize, var: usize) -> usize {
        debug_assert!(lag >= 1 && lag <= self.tau_max && var < self.d);
        (lag - 1) * self.d + var
    }

    /// Column-wise z-scores over the design rows. Constant columns become
    /// zero rather than NaN.
    pub fn standardized(&self) -> LagDesign {
        LagDesign {
            tau_max: self.tau_max,
            d: self.d,
            predictors: standardize_columns(&self.predictors),
            targets: standardize_columns(&self.targets),
        }
    }
}

pub(crate) fn standardize_columns(m: &Matrix) -> Matrix {
    let (n, k) = (m.rows(), m.cols());
    let mut out = m.clone();
    for j in 0..k {
        let mean = (0..n).map(|i| m[(i, j)]).sum::<f64>() / n as f64;
        let var = (0..n).map(|i| (m[(i, j)] - mean).powi(2)).sum::<f64>() / n as f64;
        let sd = var.sqrt();
        for i in 0..n {
            out[(i, j)] = if sd > 0.0 { (m[(i, j)] - mean) / sd } else { 0.0 };
        }
    }
    out
}

pub fn build_lag_design(x: &TimeSeriesMatrix, tau_max: usize) -> Result<LagDesign> {
    x.require_complete()?;
    let (t, d) = (x.len(), x.width());
    if tau_max == 0 {
        return Err(Error::InvalidArgument("tau_max must be >= 1".into()));
    }
    if t <= tau_max {
        return Err(Error::InvalidArgument(format!(
            "series of length {t} is too short for tau_max = {tau_max}"
        )));
    }
    let rows = t - tau_max;
    let mut predictors = Matrix::zeros(rows, d * tau_max);
    let mut targets = Matrix::zeros(rows, d);
    for r in 0..rows {
        let now = r + tau_max;
        targets.row_mut(r).copy_from_slice(x.row(now));
        let row = predictors.row_mut(r);
        for lag in 1..=tau_max {
            row[(lag - 1) * d..lag * d].copy_from_slice(x.row(now - lag));
        }
    }
    Ok(LagDesign {
        tau_max,
        d,
        predictors,
        targets,
    })
}
