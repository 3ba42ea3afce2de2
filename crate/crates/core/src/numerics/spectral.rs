use nalgebra::DMatrix;

use crate::error::{Error, Result};

use super::Matrix;

/// Companion matrix of a VAR with lag matrices `A_1..A_τ` (each `d×d`).
///
/// Block layout: first block row is `[A_1 A_2 … A_τ]`, followed by an
/// identity shift on the sub-diagonal.
pub fn companion_matrix(lags: &[Matrix]) -> Result<Matrix> {
    let tau = lags.len();
    let d = lags.first().map_or(0, Matrix::rows);
    if tau == 0 || lags.iter().any(|a| a.rows() != d || a.cols() != d) {
        return Err(Error::Dimension("companion needs >= 1 square lag matrices of equal size".into()));
    }
    let n = d * tau;
    let mut c = Matrix::zeros(n, n);
    for (l, a) in lags.iter().enumerate() {
        for i in 0..d {
            for j in 0..d {
                c[(i, l * d + j)] = a[(i, j)];
            }
        }
    }
    for i in d..n {
        c[(i, i - d)] = 1.0;
    }
    Ok(c)
}

/// Largest eigenvalue modulus, from a real Schur decomposition.
pub fn spectral_radius(m: &Matrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::Dimension("spectral radius needs a square matrix".into()));
    }
    if m.rows() == 0 {
        return Ok(0.0);
    }
    if !m.is_finite() {
        return Err(Error::NonFinite("spectral radius input".into()));
    }
    let dm = DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice());
    let schur = nalgebra::Schur::try_new(dm, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::NonFinite("schur decomposition did not converge".into()))?;
    Ok(schur
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max))
}
