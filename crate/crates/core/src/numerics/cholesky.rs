use crate::error::{Error, Result};

use super::Matrix;

const SYMMETRY_TOL: f64 = 1e-10;
const ESCALATION_STEPS: usize = 4;

/// Lower-triangular factor together with the diagonal jitter that was
/// actually applied to obtain it.
#[derive(Debug, Clone)]
pub struct CholeskyFactor {
    pub lower: Matrix,
    pub jitter: f64,
}

/// Cholesky factor `L` of `S + jitter·I`.
///
/// When the requested jitter is not enough, the jitter is escalated starting
/// from `1e-10·trace(S)/n` and multiplied by ten up to four times before the
/// input is declared not positive semidefinite. Use [`cholesky_escalating`]
/// to learn which jitter was applied.
pub fn cholesky(s: &Matrix, jitter: f64) -> Result<Matrix> {
    cholesky_escalating(s, jitter).map(|f| f.lower)
}

pub fn cholesky_escalating(s: &Matrix, jitter: f64) -> Result<CholeskyFactor> {
    validate(s, jitter)?;
    let mut last_pivot = match factor(s, jitter) {
        Ok(lower) => return Ok(CholeskyFactor { lower, jitter }),
        Err(pivot) => pivot,
    };
    let n = s.rows();
    let base = (1e-10 * s.trace() / n as f64).abs().max(jitter).max(f64::MIN_POSITIVE);
    let mut current = base;
    for step in 0..=ESCALATION_STEPS {
        if step > 0 {
            current *= 10.0;
        }
        match factor(s, current) {
            Ok(lower) => {
                return Ok(CholeskyFactor {
                    lower,
                    jitter: current,
                })
            }
            Err(pivot) => last_pivot = pivot,
        }
    }
    Err(Error::NotPositiveDefinite {
        pivot: last_pivot,
        jitter: current,
    })
}

fn validate(s: &Matrix, jitter: f64) -> Result<()> {
    if !s.is_square() {
        return Err(Error::Dimension(format!(
            "cholesky needs a square matrix, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    if !(jitter >= 0.0 && jitter.is_finite()) {
        return Err(Error::InvalidArgument(format!("jitter must be >= 0, got {jitter}")));
    }
    if !s.is_finite() {
        return Err(Error::NonFinite("cholesky input".into()));
    }
    let asym = s.max_asymmetry();
    if asym > SYMMETRY_TOL * s.max_abs().max(1.0) {
        return Err(Error::NotSymmetric(asym));
    }
    Ok(())
}

/// Plain Cholesky–Banachiewicz on `S + jitter·I`; returns the failing pivot.
fn factor(s: &Matrix, jitter: f64) -> std::result::Result<Matrix, usize> {
    let n = s.rows();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let row_j: Vec<f64> = l.row(j)[..j].to_vec();
        let d = s[(j, j)] + jitter - row_j.iter().map(|v| v * v).sum::<f64>();
        if !(d > 0.0) || !d.is_finite() {
            return Err(j);
        }
        let ljj = d.sqrt();
        l[(j, j)] = ljj;
        for i in (j + 1)..n {
            let dot: f64 = l.row(i)[..j].iter().zip(&row_j).map(|(a, b)| a * b).sum();
            // lower half of a symmetric input: read S[j][i] == S[i][j]
            l[(i, j)] = (s[(i, j)] - dot) / ljj;
        }
    }
    Ok(l)
}

/// Rank-revealing Cholesky with diagonal pivoting.
///
/// Returns an `n×r` factor `F` with `F·Fᵀ ≈ S`, stopping once every remaining
/// Schur-complement diagonal is at most `tol·max(diag S)`. For a PSD input all
/// discarded entries are then bounded by that tolerance.
pub(crate) fn pivoted_cholesky(s: &Matrix, tol: f64) -> Result<Matrix> {
    validate(s, 0.0)?;
    let n = s.rows();
    let scale = (0..n).map(|i| s[(i, i)]).fold(0.0_f64, f64::max);
    let cutoff = tol * scale;
    let mut diag: Vec<f64> = (0..n).map(|i| s[(i, i)]).collect();
    // columns of the factor, each of length n, in original row order
    let mut columns: Vec<Vec<f64>> = Vec::new();
    let mut used = vec![false; n];
    while columns.len() < n {
        let (piv, &dmax) = diag
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("unused pivot remains");
        if dmax <= cutoff {
            break;
        }
        let root = dmax.sqrt();
        let mut col = vec![0.0; n];
        for i in 0..n {
            if used[i] {
                continue;
            }
            let prior: f64 = columns.iter().map(|c| c[i] * c[piv]).sum();
            col[i] = (s[(i, piv)] - prior) / root;
        }
        col[piv] = root;
        used[piv] = true;
        for i in 0..n {
            if !used[i] {
                diag[i] -= col[i] * col[i];
            }
        }
        columns.push(col);
    }
    let rank = columns.len();
    let mut f = Matrix::zeros(n, rank);
    for (k, col) in columns.iter().enumerate() {
        for i in 0..n {
            f[(i, k)] = col[i];
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(l: &Matrix) -> Matrix {
        l.matmul(&l.transpose()).unwrap()
    }

    fn max_diff(a: &Matrix, b: &Matrix) -> f64 {
        a.as_slice()
            .iter()
            .zip(b.as_slice())
            .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }

    #[test]
    fn identity_factor_is_identity() {
        let l = cholesky(&Matrix::identity(3), 0.0).unwrap();
        assert_eq!(l, Matrix::identity(3));
    }

    #[test]
    fn two_by_two_reconstructs() {
        let s = Matrix::from_rows(&[vec![4.0, 2.0], vec![2.0, 3.0]]).unwrap();
        let l = cholesky(&s, 0.0).unwrap();
        assert_eq!(l[(0, 1)], 0.0);
        assert!(max_diff(&reconstruct(&l), &s) < 1e-12);
        assert_eq!(l[(0, 0)], 2.0);
        assert_eq!(l[(1, 0)], 1.0);
        assert!((l[(1, 1)] - 2.0_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn asymmetric_rejected() {
        let s = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert!(matches!(cholesky(&s, 0.0), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn non_square_rejected() {
        assert!(matches!(cholesky(&Matrix::zeros(2, 3), 0.0), Err(Error::Dimension(_))));
    }

    #[test]
    fn indefinite_fails_after_escalation() {
        let s = Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        assert!(matches!(
            cholesky(&s, 0.0),
            Err(Error::NotPositiveDefinite { pivot: 1, .. })
        ));
    }

    #[test]
    fn singular_psd_recovers_with_jitter() {
        let s = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let f = cholesky_escalating(&s, 0.0).unwrap();
        assert!(f.jitter > 0.0);
        let mut target = s.clone();
        for i in 0..2 {
            target[(i, i)] += f.jitter;
        }
        assert!(max_diff(&reconstruct(&f.lower), &target) < 1e-8 * 2.0);
    }

    #[test]
    fn pivoted_factor_truncates_rank_one() {
        let s = Matrix::from_vec(4, 4, vec![1.0; 16]).unwrap();
        let f = pivoted_cholesky(&s, 1e-12).unwrap();
        assert_eq!(f.cols(), 1);
        assert!(max_diff(&reconstruct(&f), &s) < 1e-15);
    }
}
