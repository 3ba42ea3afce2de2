// Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use tscd_bench::numerics::Matrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normals(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

/// Fraction of (positive, negative) pairs ordered correctly, ties worth half.
pub fn auroc_pairs(scores: &[f64], labels: &[bool]) -> f64 {
    let (mut wins, mut pairs) = (0.0, 0.0);
    for i in 0..scores.len() {
        for j in 0..scores.len() {
            if labels[i] && !labels[j] {
                pairs += 1.0;
                if scores[i] > scores[j] {
                    wins += 1.0;
                } else if scores[i] == scores[j] {
                    wins += 0.5;
                }
            }
        }
    }
    wins / pairs
}

/// Average precision by sweeping every distinct threshold `score >= τ`.
pub fn auprc_thresholds(scores: &[f64], labels: &[bool]) -> f64 {
    let total_pos = labels.iter().filter(|&&l| l).count() as f64;
    let mut taus: Vec<f64> = scores.to_vec();
    taus.sort_by(|a, b| b.partial_cmp(a).unwrap());
    taus.dedup();
    let mut prev_recall = 0.0;
    let mut ap = 0.0;
    for tau in taus {
        let selected: Vec<usize> = (0..scores.len()).filter(|&i| scores[i] >= tau).collect();
        let tp = selected.iter().filter(|&&i| labels[i]).count() as f64;
        let precision = tp / selected.len() as f64;
        let recall = tp / total_pos;
        ap += (recall - prev_recall) * precision;
        prev_recall = recall;
    }
    ap
}

/// Largest violation of the lasso optimality conditions for
/// `(1/2n)‖y − Xβ‖² + λ‖β‖₁`.
pub fn kkt_violation(x: &Matrix, y: &[f64], beta: &[f64], lambda: f64) -> f64 {
    let n = x.rows() as f64;
    let fitted = x.matvec(beta).unwrap();
    let resid: Vec<f64> = y.iter().zip(&fitted).map(|(a, b)| a - b).collect();
    let mut worst = 0.0f64;
    for j in 0..x.cols() {
        let g = (0..x.rows()).map(|i| x[(i, j)] * resid[i]).sum::<f64>() / n;
        let v = if beta[j] != 0.0 {
            (g - lambda * beta[j].signum()).abs()
        } else {
            (g.abs() - lambda).max(0.0)
        };
        worst = worst.max(v);
    }
    worst
}

/// Spectral radius from the long-run growth rate of `‖M^k v‖`.
pub fn power_iteration_radius(m: &Matrix, steps: usize) -> f64 {
    let n = m.rows();
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64 * 0.37).sin()).collect();
    let mut log_norm = 0.0;
    let mut marks = Vec::new();
    for k in 0..steps {
        v = m.matvec(&v).unwrap();
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        log_norm += norm.ln();
        v.iter_mut().for_each(|a| *a /= norm);
        if k == steps / 2 || k == steps - 1 {
            marks.push((k, log_norm));
        }
    }
    let (k1, l1) = marks[0];
    let (k2, l2) = marks[1];
    ((l2 - l1) / (k2 - k1) as f64).exp()
}

/// Partial correlation from the inverse covariance of `[x, y, Z]`.
pub fn partial_corr_precision(x: &[f64], y: &[f64], z: &Matrix) -> f64 {
    let n = x.len();
    let k = z.cols() + 2;
    let mut data = DMatrix::<f64>::zeros(n, k);
    for i in 0..n {
        data[(i, 0)] = x[i];
        data[(i, 1)] = y[i];
        for j in 0..z.cols() {
            data[(i, j + 2)] = z[(i, j)];
        }
    }
    for j in 0..k {
        let mean = data.column(j).mean();
        data.column_mut(j).add_scalar_mut(-mean);
    }
    let cov = data.transpose() * &data;
    let p = cov.try_inverse().expect("invertible covariance");
    -p[(0, 1)] / (p[(0, 0)] * p[(1, 1)]).sqrt()
}

/// OLS through the normal equations.
pub fn ols_normal_equations(x: &Matrix, y: &[f64]) -> Vec<f64> {
    let xm = DMatrix::from_row_slice(x.rows(), x.cols(), x.as_slice());
    let yv = nalgebra::DVector::from_column_slice(y);
    let xtx = xm.transpose() * &xm;
    let xty = xm.transpose() * yv;
    (xtx.try_inverse().expect("full rank") * xty).iter().copied().collect()
}
