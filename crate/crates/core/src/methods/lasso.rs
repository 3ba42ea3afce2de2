use crate::error::{Error, Result};
use crate::generators::TimeSeriesMatrix;
use crate::numerics::{soft_threshold, Matrix};

use super::{build_lag_design, threshold_graph, Diagnostics, LagDesign, MethodConfig, MethodOutput};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LassoOptions {
    pub lambda: f64,
    /// Stop once no coefficient moves by more than this in a sweep.
    pub tol: f64,
    pub max_sweeps: usize,
    pub track_objective: bool,
}

impl LassoOptions {
    pub fn new(lambda: f64) -> Self {
        Self {
            lambda,
            tol: 1e-6,
            max_sweeps: 10_000,
            track_objective: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LassoFit {
    pub coefficients: Vec<f64>,
    pub sweeps: usize,
    /// Objective before the first sweep and after each sweep, if tracked.
    pub objective: Vec<f64>,
}

/// Cyclic coordinate descent for `(1/2n)‖y − Xβ‖² + λ‖β‖₁`, run on the Gram
/// form so each sweep costs `O(k²)` regardless of `n`.
pub fn lasso_coordinate_descent(x: &Matrix, y: &[f64], opts: &LassoOptions) -> Result<LassoFit> {
    let (n, k) = (x.rows(), x.cols());
    if y.len() != n {
        return Err(Error::Dimension(format!("lasso: x has {n} rows, y has {}", y.len())));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("lasso needs at least one row".into()));
    }
    if !(opts.lambda >= 0.0 && opts.lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!("lambda must be finite and >= 0, got {}", opts.lambda)));
    }
    let nf = n as f64;
    let mut gram = Matrix::zeros(k, k);
    let mut xty = vec![0.0; k];
    for i in 0..n {
        let row = x.row(i);
        for a in 0..k {
            xty[a] += row[a] * y[i];
            for b in a..k {
                gram[(a, b)] += row[a] * row[b];
            }
        }
    }
    for a in 0..k {
        xty[a] /= nf;
        for b in a..k {
            gram[(a, b)] /= nf;
            gram[(b, a)] = gram[(a, b)];
        }
    }
    let yty = y.iter().map(|v| v * v).sum::<f64>() / nf;

    let objective = |beta: &[f64], gbeta: &[f64]| {
        let lin: f64 = beta.iter().zip(&xty).map(|(b, c)| b * c).sum();
        let quad: f64 = beta.iter().zip(gbeta).map(|(b, g)| b * g).sum();
        let l1: f64 = beta.iter().map(|b| b.abs()).sum();
        0.5 * yty - lin + 0.5 * quad + opts.lambda * l1
    };

    let mut beta = vec![0.0; k];
    // running G·β
    let mut gbeta = vec![0.0; k];
    let mut trace = Vec::new();
    if opts.track_objective {
        trace.push(objective(&beta, &gbeta));
    }
    let mut max_change = f64::INFINITY;
    for sweep in 1..=opts.max_sweeps {
        max_change = 0.0f64;
        for j in 0..k {
            let gjj = gram[(j, j)];
            if gjj <= 0.0 {
                continue;
            }
            let partial = xty[j] - gbeta[j] + gjj * beta[j];
            let new = soft_threshold(partial, opts.lambda) / gjj;
            let delta = new - beta[j];
            if delta != 0.0 {
                beta[j] = new;
                for (a, g) in gbeta.iter_mut().enumerate() {
                    *g += delta * gram[(a, j)];
                }
                max_change = max_change.max(delta.abs());
            }
        }
        if opts.track_objective {
            trace.push(objective(&beta, &gbeta));
        }
        if !max_change.is_finite() {
            return Err(Error::NonFinite("lasso coefficients".into()));
        }
        if max_change < opts.tol {
            return Ok(LassoFit {
                coefficients: beta,
                sweeps: sweep,
                objective: trace,
            });
        }
    }
    Err(Error::NoConvergence {
        sweeps: opts.max_sweeps,
        max_change,
    })
}

pub fn lasso_granger(x: &TimeSeriesMatrix, cfg: &MethodConfig) -> Result<MethodOutput> {
    let design = build_lag_design(x, cfg.tau_max())?;
    lasso_granger_design(&design, cfg)
}

/// Lasso per target on the column-standardized design. Targets stay on their
/// raw scale.
pub fn lasso_granger_design(design: &LagDesign, cfg: &MethodConfig) -> Result<MethodOutput> {
    let MethodConfig::Lgc { threshold, lambda, .. } = *cfg else {
        return Err(Error::Config(format!("lasso_granger got a {} config", cfg.kind().name())));
    };
    let predictors = super::design::standardize_columns(&design.predictors);
    let (d, tau) = (design.d, design.tau_max);
    let opts = LassoOptions::new(lambda);
    let mut window = vec![Matrix::zeros(d, d); tau];
    let mut diagnostics = Diagnostics::default();
    for q in 0..d {
        let fit = lasso_coordinate_descent(&predictors, &design.targets.column(q), &opts)?;
        diagnostics.lasso_sweeps.push(fit.sweeps);
        for lag in 1..=tau {
            for p in 0..d {
                window[lag - 1][(p, q)] = fit.coefficients[design.column_index(lag, p)].abs();
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
