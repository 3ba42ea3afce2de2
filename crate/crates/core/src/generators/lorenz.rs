use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{rk4_step, Matrix};

use super::var::DIVERGENCE_LIMIT;
use super::{CausalGraph, NoiseSpec, TimeSeriesMatrix};

/// Lorenz-96 system `ẋ_i = (x_{i+1} − x_{i−2})·x_{i−1} − x_i + F` on a ring
/// of `d` variables, sampled every `dt_sample` with observation noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lorenz96Spec {
    pub d: usize,
    pub forcing: f64,
    pub dt_sample: f64,
    pub substeps: usize,
    pub burn_in: usize,
    pub noise: NoiseSpec,
}

impl Lorenz96Spec {
    pub fn new(d: usize, forcing: f64) -> Self {
        Self {
            d,
            forcing,
            dt_sample: 0.05,
            substeps: 5,
            burn_in: 1000,
            noise: NoiseSpec::gaussian(0.1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 4 {
            return Err(Error::InvalidArgument(format!("Lorenz-96 needs d >= 4, got {}", self.d)));
        }
        if !self.forcing.is_finite() {
            return Err(Error::InvalidArgument("forcing must be finite".into()));
        }
        if !(self.dt_sample > 0.0 && self.dt_sample.is_finite()) {
            return Err(Error::InvalidArgument("dt_sample must be > 0".into()));
        }
        if self.substeps == 0 {
            return Err(Error::InvalidArgument("substeps must be >= 1".into()));
        }
        self.noise.validate()
    }

    pub fn integrator_step(&self) -> f64 {
        self.dt_sample / self.substeps as f64
    }
}

/// Writes the Lorenz-96 vector field at `x` into `out`.
pub fn lorenz96_derivative(x: &[f64], forcing: f64, out: &mut [f64]) {
    let d = x.len();
    for i in 0..d {
        let prev = x[(i + d - 1) % d];
        let prev2 = x[(i + d - 2) % d];
        let next = x[(i + 1) % d];
        out[i] = (next - prev2) * prev - x[i] + forcing;
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Lorenz96Options<'a> {
    /// `d×T` multipliers on the observation noise.
    pub scale_path: Option<&'a Matrix>,
    /// Initial state; defaults to `F` everywhere with `x_0` offset by 0.01.
    pub initial: Option<&'a [f64]>,
}

/// Noise-free trajectory: `burn_in` samples are discarded, then `t` retained.
pub fn lorenz96_trajectory(spec: &Lorenz96Spec, t: usize, initial: Option<&[f64]>) -> Result<TimeSeriesMatrix> {
    spec.validate()?;
    if t == 0 {
        return Err(Error::InvalidArgument("Lorenz-96 needs T >= 1".into()));
    }
    let d = spec.d;
    let mut state = match initial {
        Some(x0) if x0.len() != d => {
            return Err(Error::Dimension(format!("initial state has {} entries, expected {d}", x0.len())))
        }
        Some(x0) => x0.to_vec(),
        None => {
            let mut x = vec![spec.forcing; d];
            x[0] += 0.01;
            x
        }
    };
    let dt = spec.integrator_step();
    let forcing = spec.forcing;
    let field = |x: &[f64], out: &mut [f64]| lorenz96_derivative(x, forcing, out);
    let mut out = Vec::with_capacity(t * d);
    for sample in 0..spec.burn_in + t {
        for _ in 0..spec.substeps {
            state = rk4_step(field, &state, dt)?;
        }
        if let Some(bad) = state.iter().find(|v| !(v.abs() <= DIVERGENCE_LIMIT)) {
            return Err(Error::Diverged {
                step: sample,
                value: bad.abs(),
            });
        }
        if sample >= spec.burn_in {
            out.extend_from_slice(&state);
        }
    }
    TimeSeriesMatrix::new(t, d, out)
}

/// Trajectory plus observation noise on the recorded values only.
pub fn simulate_lorenz96<R: Rng + ?Sized>(
    spec: &Lorenz96Spec,
    t: usize,
    opts: &Lorenz96Options<'_>,
    rng: &mut R,
) -> Result<TimeSeriesMatrix> {
    if let Some(sp) = opts.scale_path {
        if sp.rows() != spec.d || sp.cols() != t {
            return Err(Error::Dimension(format!(
                "scale path is {}x{}, expected {}x{t}",
                sp.rows(),
                sp.cols(),
                spec.d
            )));
        }
    }
    let clean = lorenz96_trajectory(spec, t, opts.initial)?;
    let d = spec.d;
    let mut values = clean.values().to_vec();
    for s in 0..t {
        for i in 0..d {
            let scale = opts.scale_path.map_or(1.0, |sp| sp[(i, s)]);
            values[s * d + i] += scale * spec.noise.sample(rng);
        }
    }
    TimeSeriesMatrix::new(t, d, values)
}

/// Summary graph: `i` has parents `i−2`, `i−1`, `i+1` (mod d) and itself.
pub fn lorenz96_ground_truth(d: usize) -> Result<CausalGraph> {
    if d < 4 {
        return Err(Error::InvalidArgument(format!("Lorenz-96 needs d >= 4, got {d}")));
    }
    let mut summary = vec![vec![false; d]; d];
    for i in 0..d {
        for p in [(i + d - 2) % d, (i + d - 1) % d, (i + 1) % d, i] {
            summary[p][i] = true;
        }
    }
    CausalGraph::from_summary(summary)
}
