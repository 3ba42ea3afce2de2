use statrs::function::erf::erfc;

use crate::error::{Error, Result};

use super::lstsq::{ols_fit, ridge_fit};
use super::Matrix;

const MIN_P_VALUE: f64 = 1e-300;
const DEGENERATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialCorrelation {
    pub r: f64,
    pub p_value: f64,
}

/// `sign(z)·max(|z| − λ, 0)`.
pub fn soft_threshold(z: f64, lambda: f64) -> f64 {
    debug_assert!(lambda >= 0.0);
    if z > lambda {
        z - lambda
    } else if z < -lambda {
        z + lambda
    } else {
        0.0
    }
}

/// Plain Pearson correlation.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    let empty = Matrix::zeros(x.len(), 0);
    partial_correlation(x, y, &empty).map(|pc| pc.r)
}

/// Two-sided Fisher-z p-value for a correlation `r` with `dof` effective samples.
pub fn fisher_z_pvalue(r: f64, dof: f64) -> f64 {
    let z = r.clamp(-1.0, 1.0).atanh().abs() * dof.sqrt();
    erfc(z / std::f64::consts::SQRT_2).clamp(MIN_P_VALUE, 1.0)
}

/// Partial correlation of `x` and `y` given the columns of `z`, with a
/// Fisher-z test on `n − k − 3` effective samples.
///
/// All inputs are centered first, so the result is unchanged by affine maps
/// with positive slope on `x`, `y` and any affine map on the `z` columns.
pub fn partial_correlation(x: &[f64], y: &[f64], z: &Matrix) -> Result<PartialCorrelation> {
    let n = x.len();
    let k = z.cols();
    if y.len() != n || z.rows() != n {
        return Err(Error::Dimension(format!(
            "partial correlation inputs disagree: x={n} y={} z={}",
            y.len(),
            z.rows()
        )));
    }
    if n <= k + 3 {
        return Err(Error::InvalidArgument(format!(
            "partial correlation needs n > k + 3, got n={n} k={k}"
        )));
    }
    let xc = centered(x);
    let yc = centered(y);
    let (rx, ry) = if k == 0 {
        (xc.clone(), yc.clone())
    } else {
        let mut zc = z.clone();
        for j in 0..k {
            let mean = (0..n).map(|i| zc[(i, j)]).sum::<f64>() / n as f64;
            for i in 0..n {
                zc[(i, j)] -= mean;
            }
        }
        (residualize(&zc, &xc)?, residualize(&zc, &yc)?)
    };
    check_spread(&xc, &rx, "x")?;
    check_spread(&yc, &ry, "y")?;
    let sxy: f64 = rx.iter().zip(&ry).map(|(a, b)| a * b).sum();
    let sxx: f64 = rx.iter().map(|a| a * a).sum();
    let syy: f64 = ry.iter().map(|a| a * a).sum();
    let r = (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0);
    let p_value = fisher_z_pvalue(r, (n - k - 3) as f64);
    Ok(PartialCorrelation { r, p_value })
}

fn centered(v: &[f64]) -> Vec<f64> {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter().map(|a| a - mean).collect()
}

fn residualize(z: &Matrix, v: &[f64]) -> Result<Vec<f64>> {
    match ols_fit(z, v) {
        Ok(fit) => Ok(fit.residuals),
        Err(Error::RankDeficient { .. }) => Ok(ridge_fit(z, v, 1e-10)?.residuals),
        Err(e) => Err(e),
    }
}

fn check_spread(original: &[f64], residual: &[f64], which: &str) -> Result<()> {
    let base = original.iter().map(|a| a * a).sum::<f64>().sqrt();
    let res = residual.iter().map(|a| a * a).sum::<f64>().sqrt();
    if base == 0.0 || res <= DEGENERATE_TOL * base {
        return Err(Error::Degenerate(format!(
            "{which} is (conditionally) constant; relation is deterministic"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn soft_threshold_cases() {
        assert_eq!(soft_threshold(3.0, 1.0), 2.0);
        assert_eq!(soft_threshold(-0.5, 1.0), 0.0);
        assert_eq!(soft_threshold(-3.0, 1.0), -2.0);
        for lam in [0.0, 0.3, 5.0] {
            assert_eq!(soft_threshold(0.0, lam), 0.0);
        }
    }

    #[test]
    fn identical_vectors_fully_correlated() {
        let x: Vec<f64> = (0..50).map(|i| (i as f64 * 0.37).sin()).collect();
        let pc = partial_correlation(&x, &x, &Matrix::zeros(50, 0)).unwrap();
        assert!((pc.r - 1.0).abs() < 1e-12);
        assert!(pc.p_value < 1e-100);
    }

    #[test]
    fn constant_input_is_degenerate() {
        let x = vec![2.0; 20];
        let y: Vec<f64> = (0..20).map(f64::from).collect();
        assert!(matches!(
            partial_correlation(&x, &y, &Matrix::zeros(20, 0)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn deterministic_given_z_is_degenerate() {
        let z: Vec<f64> = (0..30).map(|i| (i as f64).cos()).collect();
        let x: Vec<f64> = z.iter().map(|v| 2.0 * v + 1.0).collect();
        let y: Vec<f64> = (0..30).map(|i| (i as f64 * 0.7).sin()).collect();
        let zm = Matrix::from_columns(&[&z]).unwrap();
        assert!(matches!(partial_correlation(&x, &y, &zm), Err(Error::Degenerate(_))));
    }

    #[test]
    fn too_few_samples_rejected() {
        let x = [1.0, 2.0, 3.0, 4.0];
        assert!(partial_correlation(&x, &x, &Matrix::zeros(4, 1)).is_err());
    }

    #[test]
    fn p_value_clamped() {
        assert_eq!(fisher_z_pvalue(1.0, 100.0), 1e-300);
        assert_eq!(fisher_z_pvalue(0.0, 100.0), 1.0);
    }
}
