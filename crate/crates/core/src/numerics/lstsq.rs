use crate::error::{Error, Result};

use super::Matrix;

/// Relative tolerance on `|R_jj| / ‖X_j‖` below which column `j` is treated
/// as linearly dependent on its predecessors.
const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct OlsFit {
    pub coefficients: Vec<f64>,
    pub residuals: Vec<f64>,
}

/// Least-squares fit of `y` on the columns of `x` via Householder QR.
pub fn ols_fit(x: &Matrix, y: &[f64]) -> Result<OlsFit> {
    check_shapes(x, y)?;
    if x.rows() < x.cols() {
        return Err(Error::Dimension(format!(
            "ols needs n >= p, got n={} p={}",
            x.rows(),
            x.cols()
        )));
    }
    let coefficients = qr_solve(column_major(x), x.rows(), x.cols(), y.to_vec(), true)?;
    let residuals = residuals(x, y, &coefficients);
    Ok(OlsFit {
        coefficients,
        residuals,
    })
}

/// Ridge regression `min ‖y − Xβ‖² + penalty·‖β‖²`, solved as least squares on
/// the augmented system `[X; √penalty·I]`. Always full rank for `penalty > 0`.
pub fn ridge_fit(x: &Matrix, y: &[f64], penalty: f64) -> Result<OlsFit> {
    check_shapes(x, y)?;
    if !(penalty > 0.0) {
        return Err(Error::InvalidArgument(format!("ridge penalty must be > 0, got {penalty}")));
    }
    let (n, p) = (x.rows(), x.cols());
    let rows = n + p;
    let mut cols = vec![0.0; rows * p];
    let root = penalty.sqrt();
    for j in 0..p {
        for i in 0..n {
            cols[j * rows + i] = x[(i, j)];
        }
        cols[j * rows + n + j] = root;
    }
    let mut rhs = y.to_vec();
    rhs.resize(rows, 0.0);
    let coefficients = qr_solve(cols, rows, p, rhs, false)?;
    let residuals = residuals(x, y, &coefficients);
    Ok(OlsFit {
        coefficients,
        residuals,
    })
}

fn check_shapes(x: &Matrix, y: &[f64]) -> Result<()> {
    if x.rows() != y.len() {
        return Err(Error::Dimension(format!(
            "design has {} rows but target has {}",
            x.rows(),
            y.len()
        )));
    }
    if !x.is_finite() || y.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("least-squares input".into()));
    }
    Ok(())
}

fn column_major(x: &Matrix) -> Vec<f64> {
    let (n, p) = (x.rows(), x.cols());
    let mut out = vec![0.0; n * p];
    for i in 0..n {
        for (j, v) in x.row(i).iter().enumerate() {
            out[j * n + i] = *v;
        }
    }
    out
}

fn residuals(x: &Matrix, y: &[f64], beta: &[f64]) -> Vec<f64> {
    (0..x.rows())
        .map(|i| y[i] - x.row(i).iter().zip(beta).map(|(a, b)| a * b).sum::<f64>())
        .collect()
}

/// In-place Householder QR on a column-major `n×p` array, applying the same
/// reflections to `rhs`, then back substitution.
fn qr_solve(mut a: Vec<f64>, n: usize, p: usize, mut rhs: Vec<f64>, check_rank: bool) -> Result<Vec<f64>> {
    let norms: Vec<f64> = (0..p)
        .map(|j| a[j * n..(j + 1) * n].iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    let mut diag = vec![0.0; p];
    for j in 0..p {
        let col = &mut a[j * n..(j + 1) * n];
        let sub_norm = col[j..].iter().map(|v| v * v).sum::<f64>().sqrt();
        if check_rank && (norms[j] == 0.0 || sub_norm <= RANK_TOL * norms[j]) {
            return Err(Error::RankDeficient { column: j });
        }
        if sub_norm == 0.0 {
            return Err(Error::RankDeficient { column: j });
        }
        let alpha = if col[j] > 0.0 { -sub_norm } else { sub_norm };
        // v = x - alpha e1, stored in col[j..]
        col[j] -= alpha;
        let vnorm2: f64 = col[j..].iter().map(|v| v * v).sum();
        diag[j] = alpha;
        if vnorm2 == 0.0 {
            continue;
        }
        let v: Vec<f64> = col[j..].to_vec();
        for k in (j + 1)..p {
            let ck = &mut a[k * n + j..(k + 1) * n];
            let dot: f64 = ck.iter().zip(&v).map(|(c, w)| c * w).sum();
            let f = 2.0 * dot / vnorm2;
            for (c, w) in ck.iter_mut().zip(&v) {
                *c -= f * w;
            }
        }
        let dot: f64 = rhs[j..].iter().zip(&v).map(|(c, w)| c * w).sum();
        let f = 2.0 * dot / vnorm2;
        for (c, w) in rhs[j..].iter_mut().zip(&v) {
            *c -= f * w;
        }
    }
    let mut beta = vec![0.0; p];
    for j in (0..p).rev() {
        let mut acc = rhs[j];
        for k in (j + 1)..p {
            acc -= a[k * n + j] * beta[k];
        }
        beta[j] = acc / diag[j];
    }
    Ok(beta)
}
