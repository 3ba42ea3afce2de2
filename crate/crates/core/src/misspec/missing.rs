use rand::Rng;

use crate::error::{Error, Result};
use crate::generators::TimeSeriesMatrix;

/// Marks every cell missing independently with probability `γ`.
pub fn apply_mcar<R: Rng + ?Sized>(x: &TimeSeriesMatrix, gamma: f64, rng: &mut R) -> Result<TimeSeriesMatrix> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(Error::InvalidArgument(format!("gamma must lie in [0,1), got {gamma}")));
    }
    x.require_complete()?;
    let mask: Vec<bool> = (0..x.values().len()).map(|_| rng.random_bool(gamma)).collect();
    x.clone().with_mask(mask)
}

/// Zero-order hold: each gap takes the last observed value of its column;
/// a gap at the head of a column takes the first observed value.
pub fn zero_order_hold(x: &TimeSeriesMatrix) -> Result<TimeSeriesMatrix> {
    let d = x.width();
    let mut cols = Vec::with_capacity(d);
    for i in 0..d {
        let first = (0..x.len())
            .find(|&t| !x.is_missing(t, i))
            .ok_or_else(|| Error::InvalidArgument(format!("column {i} is entirely missing")))?;
        let mut held = x.get(first, i);
        let col: Vec<f64> = (0..x.len())
            .map(|t| {
                if !x.is_missing(t, i) {
                    held = x.get(t, i);
                }
                held
            })
            .collect();
        cols.push(col);
    }
    TimeSeriesMatrix::from_columns(&cols)
}
