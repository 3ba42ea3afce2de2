use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// `T×d` observations in row-major order with an optional missing mask.
///
/// Missing cells hold `NaN` in `values`; every observed cell is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesMatrix {
    len: usize,
    width: usize,
    values: Vec<f64>,
    mask: Option<Vec<bool>>,
}

impl TimeSeriesMatrix {
    pub fn new(len: usize, width: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != len * width {
            return Err(Error::Dimension(format!(
                "{len}x{width} series needs {} values, got {}",
                len * width,
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!(
                "series value at t={} var={}",
                pos / width.max(1),
                pos % width.max(1)
            )));
        }
        Ok(Self {
            len,
            width,
            values,
            mask: None,
        })
    }

    /// Builds a series from per-variable columns.
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let width = columns.len();
        let len = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != len) {
            return Err(Error::Dimension("columns differ in length".into()));
        }
        let mut values = vec![0.0; len * width];
        for (j, col) in columns.iter().enumerate() {
            for (t, v) in col.iter().enumerate() {
                values[t * width + j] = *v;
            }
        }
        Self::new(len, width, values)
    }

    /// Attaches a missing mask (`true` = missing); masked values become `NaN`.
    pub fn with_mask(mut self, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != self.values.len() {
            return Err(Error::Dimension(format!(
                "mask has {} cells, series has {}",
                mask.len(),
                self.values.len()
            )));
        }
        for (v, &m) in self.values.iter_mut().zip(&mask) {
            if m {
                *v = f64::NAN;
            }
        }
        self.mask = mask.iter().any(|&m| m).then_some(mask);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mask(&self) -> Option<&[bool]> {
        self.mask.as_deref()
    }

    pub fn has_missing(&self) -> bool {
        self.mask.is_some()
    }

    pub fn is_missing(&self, t: usize, i: usize) -> bool {
        self.mask.as_ref().is_some_and(|m| m[t * self.width + i])
    }

    pub fn get(&self, t: usize, i: usize) -> f64 {
        self.values[t * self.width + i]
    }

    pub fn row(&self, t: usize) -> &[f64] {
        &self.values[t * self.width..(t + 1) * self.width]
    }

    pub fn column(&self, i: usize) -> Vec<f64> {
        (0..self.len).map(|t| self.get(t, i)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.width).map(|i| self.column(i)).collect()
    }

    /// Applies `f` to every column; rejects series with missing cells.
    pub fn map_columns<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, &[f64]) -> Result<Vec<f64>>,
    {
        self.require_complete()?;
        let cols = self
            .columns()
            .iter()
            .enumerate()
            .map(|(i, c)| f(i, c))
            .collect::<Result<Vec<_>>>()?;
        Self::from_columns(&cols)
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.has_missing() {
            return Err(Error::InvalidArgument("series has missing entries".into()));
        }
        Ok(())
    }

    /// First `k` columns as a new series, mask included.
    pub fn leading_columns(&self, k: usize) -> Result<Self> {
        if k > self.width {
            return Err(Error::Dimension(format!("asked for {k} of {} columns", self.width)));
        }
        let mut values = Vec::with_capacity(self.len * k);
        let mut mask = Vec::with_capacity(self.len * k);
        for t in 0..self.len {
            for i in 0..k {
                let missing = self.is_missing(t, i);
                values.push(if missing { 0.0 } else { self.get(t, i) });
                mask.push(missing);
            }
        }
        Self::new(self.len, k, values)?.with_mask(mask)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record((0..self.width).map(|i| format!("var_{i}")))?;
        for t in 0..self.len {
            w.write_record((0..self.width).map(|i| {
                if self.is_missing(t, i) {
                    String::new()
                } else {
                    format!("{}", self.get(t, i))
                }
            }))?;
        }
        w.flush().map_err(|e| Error::io("<csv writer>", e))?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(reader);
        let headers = r.headers()?.clone();
        let width = headers.len();
        for (i, h) in headers.iter().enumerate() {
            if h != format!("var_{i}") {
                return Err(Error::Parse(format!("unexpected header `{h}` at column {i}")));
            }
        }
        let mut values = Vec::new();
        let mut mask = Vec::new();
        for (t, rec) in r.records().enumerate() {
            let rec = rec?;
            if rec.len() != width {
                return Err(Error::Parse(format!("row {t} has {} fields, expected {width}", rec.len())));
            }
            for field in rec.iter() {
                if field.is_empty() {
                    values.push(0.0);
                    mask.push(true);
                } else {
                    let v: f64 = field
                        .parse()
                        .map_err(|_| Error::Parse(format!("row {t}: bad number `{field}`")))?;
                    values.push(v);
                    mask.push(false);
                }
            }
        }
        let len = if width == 0 { 0 } else { values.len() / width };
        Self::new(len, width, values)?.with_mask(mask)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv(std::io::BufWriter::new(file))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_csv(std::io::BufReader::new(file))
    }
}
