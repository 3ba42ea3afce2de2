use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{companion_matrix, spectral_radius, Matrix};

use super::{CausalGraph, NoiseSpec, TimeSeriesMatrix};

/// Steps simulated and discarded before the retained VAR samples.
pub const VAR_BURN_IN: usize = 200;
/// Any state magnitude above this aborts a simulation.
pub const DIVERGENCE_LIMIT: f64 = 1e9;

const RADIUS_SLACK: f64 = 1e-9;

/// Sparse stable VAR(τ) system `x_t = Σ_l A_l x_{t−l} + u_t`.
///
/// `coeffs[l - 1][(q, p)]` is the effect of `x_{t−l,p}` on `x_{t,q}`.
#[derive(Debug, Clone, PartialEq)]
pub struct VarSystem {
    coeffs: Vec<Matrix>,
    noise: Vec<NoiseSpec>,
    spectral_radius_cap: f64,
}

impl VarSystem {
    pub fn new(coeffs: Vec<Matrix>, noise: Vec<NoiseSpec>, spectral_radius_cap: f64) -> Result<Self> {
        let d = coeffs.first().map_or(0, Matrix::rows);
        if d == 0 {
            return Err(Error::InvalidArgument("VAR needs at least one lag and one variable".into()));
        }
        if coeffs.iter().any(|a| a.rows() != d || a.cols() != d) {
            return Err(Error::Dimension("every lag matrix must be d×d".into()));
        }
        if coeffs.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFinite("VAR coefficients".into()));
        }
        if noise.len() != d {
            return Err(Error::Dimension(format!("{} noise specs for {d} variables", noise.len())));
        }
        for n in &noise {
            n.validate()?;
        }
        if !(spectral_radius_cap > 0.0 && spectral_radius_cap < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "spectral radius cap must lie in (0,1), got {spectral_radius_cap}"
            )));
        }
        let system = Self {
            coeffs,
            noise,
            spectral_radius_cap,
        };
        let radius = system.spectral_radius()?;
        if radius > spectral_radius_cap + RADIUS_SLACK {
            return Err(Error::InvalidArgument(format!(
                "companion spectral radius {radius} exceeds cap {spectral_radius_cap}"
            )));
        }
        Ok(system)
    }

    pub fn d(&self) -> usize {
        self.coeffs[0].rows()
    }

    pub fn tau_max(&self) -> usize {
        self.coeffs.len()
    }

    /// Lag matrices `A_1..A_τ`.
    pub fn coeffs(&self) -> &[Matrix] {
        &self.coeffs
    }

    pub fn noise(&self) -> &[NoiseSpec] {
        &self.noise
    }

    pub fn spectral_radius_cap(&self) -> f64 {
        self.spectral_radius_cap
    }

    pub fn spectral_radius(&self) -> Result<f64> {
        spectral_radius(&companion_matrix(&self.coeffs)?)
    }

    /// Same dynamics with every variable's noise replaced by `noise`.
    pub fn with_noise(&self, noise: NoiseSpec) -> Result<Self> {
        noise.validate()?;
        Ok(Self {
            noise: vec![noise; self.d()],
            ..self.clone()
        })
    }
}

/// Sparsity and magnitude settings for [`sample_var_system`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarSampling {
    pub d: usize,
    pub tau_max: usize,
    /// Parents per variable, the variable itself included.
    pub parents_per_var: usize,
    pub coeff_range: (f64, f64),
    pub spectral_radius_cap: f64,
}

impl VarSampling {
    pub fn new(d: usize) -> Self {
        Self {
            d,
            tau_max: 3,
            parents_per_var: 3,
            coeff_range: (0.1, 0.5),
            spectral_radius_cap: 0.95,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::InvalidArgument(format!("VAR needs d >= 2, got {}", self.d)));
        }
        if self.tau_max == 0 {
            return Err(Error::InvalidArgument("VAR needs tau_max >= 1".into()));
        }
        if self.parents_per_var == 0 || self.parents_per_var > self.d {
            return Err(Error::InvalidArgument(format!(
                "cannot give each of {} variables {} distinct parents (self included)",
                self.d, self.parents_per_var
            )));
        }
        let (lo, hi) = self.coeff_range;
        if !(lo > 0.0 && lo < hi && hi.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "coefficient range needs 0 < lo < hi, got [{lo}, {hi}]"
            )));
        }
        if !(self.spectral_radius_cap > 0.0 && self.spectral_radius_cap < 1.0) {
            return Err(Error::InvalidArgument("spectral radius cap must lie in (0,1)".into()));
        }
        Ok(())
    }
}

/// Draws a sparse VAR system: every variable gets itself plus
/// `parents_per_var − 1` distinct other parents, each edge active at one
/// uniformly chosen lag with magnitude in `coeff_range` and random sign.
/// Lag `l` is then scaled by `c^l`, which multiplies every companion
/// eigenvalue by `c`, so that the spectral radius is at most the cap.
pub fn sample_var_system<R: Rng + ?Sized>(params: &VarSampling, noise: NoiseSpec, rng: &mut R) -> Result<VarSystem> {
    params.validate()?;
    noise.validate()?;
    let VarSampling {
        d,
        tau_max,
        parents_per_var,
        coeff_range: (lo, hi),
        spectral_radius_cap: cap,
    } = *params;

    let mut coeffs = vec![Matrix::zeros(d, d); tau_max];
    for q in 0..d {
        let others: Vec<usize> = (0..d).filter(|&p| p != q).collect();
        let mut parents: Vec<usize> = others.choose_multiple(rng, parents_per_var - 1).copied().collect();
        parents.push(q);
        parents.sort_unstable();
        for p in parents {
            let lag = rng.random_range(1..=tau_max);
            let magnitude = rng.random_range(lo..=hi);
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            coeffs[lag - 1][(q, p)] = sign * magnitude;
        }
    }

    let radius = spectral_radius(&companion_matrix(&coeffs)?)?;
    if radius > cap {
        let c = cap / radius;
        for (l, a) in coeffs.iter_mut().enumerate() {
            let factor = c.powi(l as i32 + 1);
            a.as_mut_slice().iter_mut().for_each(|v| *v *= factor);
        }
    }
    VarSystem::new(coeffs, vec![noise; d], cap)
}

/// `window[l][p][q] = (A_l[q][p] ≠ 0)`; summary is the lag-OR.
pub fn var_ground_truth(sys: &VarSystem) -> CausalGraph {
    let d = sys.d();
    let mut window = vec![vec![vec![false; d]; d]; sys.tau_max() + 1];
    for (l, a) in sys.coeffs().iter().enumerate() {
        for q in 0..d {
            for p in 0..d {
                window[l + 1][p][q] = a[(q, p)] != 0.0;
            }
        }
    }
    CausalGraph::from_window(window).expect("lag-0 layer is empty by construction")
}

/// Optional overrides for [`simulate_var`].
#[derive(Debug, Clone, Copy)]
pub struct VarSimOptions<'a> {
    /// `d×T` multipliers on the noise of each retained step.
    pub scale_path: Option<&'a Matrix>,
    /// One set of `τ` lag matrices per retained step.
    pub coeff_path: Option<&'a [Vec<Matrix>]>,
    pub burn_in: usize,
    /// `τ` initial states, oldest first. Drawn from the noise law when absent.
    pub initial: Option<&'a [Vec<f64>]>,
}

impl Default for VarSimOptions<'_> {
    fn default() -> Self {
        Self {
            scale_path: None,
            coeff_path: None,
            burn_in: VAR_BURN_IN,
            initial: None,
        }
    }
}

/// Simulates `t` retained samples of the VAR.
///
/// Burn-in steps use the first column of the scale path and the first entry of
/// the coefficient path.
pub fn simulate_var<R: Rng + ?Sized>(
    sys: &VarSystem,
    t: usize,
    opts: &VarSimOptions<'_>,
    rng: &mut R,
) -> Result<TimeSeriesMatrix> {
    let d = sys.d();
    let tau = sys.tau_max();
    if t < tau + 1 {
        return Err(Error::InvalidArgument(format!("VAR needs T >= tau_max + 1 = {}, got {t}", tau + 1)));
    }
    if let Some(sp) = opts.scale_path {
        if sp.rows() != d || sp.cols() != t {
            return Err(Error::Dimension(format!(
                "scale path is {}x{}, expected {d}x{t}",
                sp.rows(),
                sp.cols()
            )));
        }
    }
    if let Some(cp) = opts.coeff_path {
        if cp.len() != t || cp.iter().any(|set| set.len() != tau || set.iter().any(|a| a.rows() != d || a.cols() != d)) {
            return Err(Error::Dimension(format!("coefficient path must hold {t} sets of {tau} {d}x{d} matrices")));
        }
    }

    // ring of the last `tau` states, newest last
    let mut history: Vec<Vec<f64>> = match opts.initial {
        Some(init) => {
            if init.len() != tau || init.iter().any(|s| s.len() != d) {
                return Err(Error::Dimension(format!("initial condition must be {tau} states of length {d}")));
            }
            init.to_vec()
        }
        None => (0..tau)
            .map(|_| sys.noise().iter().map(|n| n.sample(rng)).collect())
            .collect(),
    };

    let total = opts.burn_in + t;
    let mut out = Vec::with_capacity(t * d);
    let mut next = vec![0.0; d];
    for step in 0..total {
        let r = step.saturating_sub(opts.burn_in);
        let lags: &[Matrix] = match opts.coeff_path {
            Some(cp) => &cp[r],
            None => sys.coeffs(),
        };
        for q in 0..d {
            let mut acc = 0.0;
            for (l, a) in lags.iter().enumerate() {
                let past = &history[tau - 1 - l];
                acc += a.row(q).iter().zip(past).map(|(c, x)| c * x).sum::<f64>();
            }
            let scale = opts.scale_path.map_or(1.0, |sp| sp[(q, r)]);
            next[q] = acc + scale * sys.noise()[q].sample(rng);
        }
        if let Some(bad) = next.iter().find(|v| !(v.abs() <= DIVERGENCE_LIMIT)) {
            return Err(Error::Diverged { step, value: bad.abs() });
        }
        history.remove(0);
        history.push(next.clone());
        if step >= opts.burn_in {
            out.extend_from_slice(&next);
        }
    }
    TimeSeriesMatrix::new(t, d, out)
}
