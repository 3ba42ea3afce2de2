use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::numerics::Matrix;

/// `d×d` edge confidences; `get(p, q)` is the belief that p causes q.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix {
    inner: Matrix,
}

impl ScoreMatrix {
    pub fn zeros(d: usize) -> Self {
        Self {
            inner: Matrix::zeros(d, d),
        }
    }

    pub fn from_matrix(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!("score matrix must be square, got {}x{}", m.rows(), m.cols())));
        }
        if let Some(v) = m.as_slice().iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::NonFinite(format!("scores must be finite and >= 0, found {v}")));
        }
        Ok(Self { inner: m })
    }

    pub fn d(&self) -> usize {
        self.inner.rows()
    }

    pub fn get(&self, source: usize, target: usize) -> f64 {
        self.inner[(source, target)]
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.inner
    }

    /// Off-diagonal scores in row-major order (source-major).
    pub fn off_diagonal(&self) -> Vec<f64> {
        let d = self.d();
        let mut out = Vec::with_capacity(d * d.saturating_sub(1));
        for p in 0..d {
            for q in 0..d {
                if p != q {
                    out.push(self.get(p, q));
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &ScoreMatrix) -> f64 {
        self.inner
            .as_slice()
            .iter()
            .zip(other.inner.as_slice())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Headerless CSV, one row per source.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
        for p in 0..self.d() {
            w.write_record(self.inner.row(p).iter().map(|v| v.to_string()))?;
        }
        w.flush().map_err(|e| Error::io("<score csv>", e))?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(reader);
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let row = rec
                .iter()
                .map(|f| f.trim().parse::<f64>().map_err(|e| Error::Parse(format!("score '{f}': {e}"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_matrix(Matrix::from_rows(&rows)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv(f)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_csv(f)
    }
}

/// Entrywise max over the lag axis.
pub fn collapse_window(window: &[Matrix]) -> Result<ScoreMatrix> {
    let Some(first) = window.first() else {
        return Err(Error::InvalidArgument("empty window".into()));
    };
    let mut out = first.clone();
    for layer in &window[1..] {
        if layer.rows() != out.rows() || layer.cols() != out.cols() {
            return Err(Error::Dimension("window layers differ in shape".into()));
        }
        for (o, v) in out.as_mut_slice().iter_mut().zip(layer.as_slice()) {
            *o = o.max(*v);
        }
    }
    ScoreMatrix::from_matrix(out)
}
