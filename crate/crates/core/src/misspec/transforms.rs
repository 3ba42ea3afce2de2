use std::f64::consts::PI;

use rand::seq::index;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::generators::TimeSeriesMatrix;

fn mean(col: &[f64]) -> f64 {
    col.iter().sum::<f64>() / col.len() as f64
}

/// Divide-by-T variance.
fn population_variance(col: &[f64]) -> f64 {
    let m = mean(col);
    col.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / col.len() as f64
}

/// Adds independent Gaussian noise with variance `α·Var(X_i)` to each column.
pub fn add_measurement_error<R: Rng + ?Sized>(x: &TimeSeriesMatrix, alpha: f64, rng: &mut R) -> Result<TimeSeriesMatrix> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!("alpha must be >= 0, got {alpha}")));
    }
    x.require_complete()?;
    if alpha == 0.0 {
        return Ok(x.clone());
    }
    x.map_columns(|i, col| {
        let var = population_variance(col);
        if var == 0.0 {
            return Err(Error::Degenerate(format!("column {i} has zero variance")));
        }
        let sd = (alpha * var).sqrt();
        Ok(col.iter().map(|v| v + sd * rng.sample::<f64, _>(StandardNormal)).collect())
    })
}

/// Per-column `(x − mean) / std` with the population standard deviation.
pub fn zscore(x: &TimeSeriesMatrix) -> Result<TimeSeriesMatrix> {
    x.map_columns(|i, col| {
        let m = mean(col);
        let sd = population_variance(col).sqrt();
        if sd == 0.0 {
            return Err(Error::Degenerate(format!("column {i} is constant")));
        }
        Ok(col.iter().map(|v| (v - m) / sd).collect())
    })
}

/// Per-column `(x − min) / (max − min)`.
pub fn minmax(x: &TimeSeriesMatrix) -> Result<TimeSeriesMatrix> {
    x.map_columns(|i, col| {
        let lo = col.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !(hi > lo) {
            return Err(Error::Degenerate(format!("column {i} is constant")));
        }
        let span = hi - lo;
        Ok(col.iter().map(|v| (v - lo) / span).collect())
    })
}

/// Min–max normalizes, then binarizes `⌊d·β⌋` uniformly chosen columns at
/// the strict threshold `> 0.5`.
pub fn discretize_mixed<R: Rng + ?Sized>(x: &TimeSeriesMatrix, beta: f64, rng: &mut R) -> Result<TimeSeriesMatrix> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidArgument(format!("beta must lie in [0,1], got {beta}")));
    }
    let normalized = minmax(x)?;
    let d = x.width();
    let count = ((d as f64) * beta).floor() as usize;
    let mut chosen = vec![false; d];
    for i in index::sample(rng, d, count) {
        chosen[i] = true;
    }
    normalized.map_columns(|i, col| {
        Ok(if chosen[i] {
            col.iter().map(|&v| if v > 0.5 { 1.0 } else { 0.0 }).collect()
        } else {
            col.to_vec()
        })
    })
}

/// Adds `ρ·t·i/2 + η·sin(2πt/P + φ_i) + (η/2)·cos(4πt/P + φ_i)` with
/// `φ_i = 2πi/d`, `t` and `i` counted from zero.
pub fn add_trend_season(x: &TimeSeriesMatrix, rho: f64, eta: f64, period: usize) -> Result<TimeSeriesMatrix> {
    if period < 2 {
        return Err(Error::InvalidArgument(format!("period must be >= 2, got {period}")));
    }
    if !rho.is_finite() || !eta.is_finite() {
        return Err(Error::InvalidArgument("trend and season magnitudes must be finite".into()));
    }
    let d = x.width() as f64;
    let p = period as f64;
    x.map_columns(|i, col| {
        let phase = 2.0 * PI * i as f64 / d;
        Ok(col
            .iter()
            .enumerate()
            .map(|(t, v)| {
                let t = t as f64;
                let trend = rho * t * i as f64 / 2.0;
                let season = eta * (2.0 * PI * t / p + phase).sin() + eta / 2.0 * (4.0 * PI * t / p + phase).cos();
                v + trend + season
            })
            .collect())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn series(cols: &[Vec<f64>]) -> TimeSeriesMatrix {
        TimeSeriesMatrix::from_columns(cols).unwrap()
    }

    #[test]
    fn zscore_of_one_two_three() {
        let z = zscore(&series(&[vec![1.0, 2.0, 3.0]])).unwrap();
        let k = 1.224744871391589;
        assert!((z.get(0, 0) + k).abs() < 1e-12);
        assert_eq!(z.get(1, 0), 0.0);
        assert!((z.get(2, 0) - k).abs() < 1e-12);
    }

    #[test]
    fn constant_columns_rejected() {
        let x = series(&[vec![1.0, 1.0, 1.0]]);
        assert!(zscore(&x).is_err());
        assert!(minmax(&x).is_err());
        assert!(add_measurement_error(&x, 1.0, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
        assert_eq!(add_measurement_error(&x, 0.0, &mut ChaCha8Rng::seed_from_u64(0)).unwrap(), x);
    }

    #[test]
    fn minmax_two_four_six() {
        let m = minmax(&series(&[vec![2.0, 4.0, 6.0]])).unwrap();
        assert_eq!(m.column(0), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn discretization_threshold_is_strict() {
        let x = series(&[vec![0.0, 0.2, 0.7, 0.5, 1.0]]);
        let out = discretize_mixed(&x, 1.0, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(out.column(0), vec![0.0, 0.0, 1.0, 0.0, 1.0]);
    }

    #[test]
    fn beta_zero_equals_minmax() {
        let x = series(&[vec![3.0, -1.0, 2.0], vec![0.5, 0.25, 4.0]]);
        let out = discretize_mixed(&x, 0.0, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(out, minmax(&x).unwrap());
        assert!(discretize_mixed(&x, 1.5, &mut ChaCha8Rng::seed_from_u64(1)).is_err());
    }

    #[test]
    fn trend_and_season_terms() {
        let zeros = series(&[vec![0.0; 12], vec![0.0; 12], vec![0.0; 12]]);
        let trend = add_trend_season(&zeros, 0.01, 0.0, 12).unwrap();
        assert!((trend.get(10, 2) - 0.1).abs() < 1e-15);
        let season = add_trend_season(&zeros, 0.0, 0.5, 12).unwrap();
        assert_eq!(season.get(0, 0), 0.25);
        assert_eq!(add_trend_season(&zeros, 0.0, 0.0, 12).unwrap(), zeros);
        assert!(add_trend_season(&zeros, 0.0, 0.0, 1).is_err());
    }
}
