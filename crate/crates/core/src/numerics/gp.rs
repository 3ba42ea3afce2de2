use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::cholesky::pivoted_cholesky;
use super::Matrix;

/// Truncation tolerance for the kernel factor, relative to the kernel diagonal.
const FACTOR_TOL: f64 = 1e-13;

/// Log-normal Gaussian-process path parameters.
///
/// The log path is `g ~ GP(m·1, ν²K)` with the squared-exponential kernel
/// `K_ij = exp(−(t_i − t_j)² / (2ℓ²))` on integer time steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GpSpec {
    pub mean_log_scale: f64,
    pub amplitude: f64,
    pub kernel_width: f64,
    pub length: usize,
}

impl GpSpec {
    pub fn new(mean_log_scale: f64, amplitude: f64, kernel_width: f64, length: usize) -> Result<Self> {
        let spec = Self {
            mean_log_scale,
            amplitude,
            kernel_width,
            length,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.mean_log_scale.is_finite() {
            return Err(Error::InvalidArgument("GP mean must be finite".into()));
        }
        if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "GP amplitude must be >= 0, got {}",
                self.amplitude
            )));
        }
        if !(self.kernel_width > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "GP kernel width must be > 0, got {}",
                self.kernel_width
            )));
        }
        if self.length == 0 {
            return Err(Error::InvalidArgument("GP length must be >= 1".into()));
        }
        Ok(())
    }

    pub fn kernel(&self) -> Matrix {
        let n = self.length;
        let mut k = Matrix::zeros(n, n);
        let denom = 2.0 * self.kernel_width * self.kernel_width;
        for i in 0..n {
            for j in 0..n {
                let dt = i as f64 - j as f64;
                k[(i, j)] = (-(dt * dt) / denom).exp();
            }
        }
        k
    }
}

/// Reusable sampler: factors the kernel once and draws many paths.
#[derive(Debug, Clone)]
pub struct GpSampler {
    spec: GpSpec,
    factor: Option<Matrix>,
}

impl GpSampler {
    pub fn new(spec: GpSpec) -> Result<Self> {
        spec.validate()?;
        let factor = if spec.amplitude == 0.0 {
            None
        } else {
            Some(pivoted_cholesky(&spec.kernel(), FACTOR_TOL)?)
        };
        Ok(Self { spec, factor })
    }

    pub fn spec(&self) -> &GpSpec {
        &self.spec
    }

    /// One draw of the log path `g`.
    pub fn sample_log<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let n = self.spec.length;
        let m = self.spec.mean_log_scale;
        let Some(f) = &self.factor else {
            return vec![m; n];
        };
        let z: Vec<f64> = (0..f.cols()).map(|_| rng.sample(StandardNormal)).collect();
        let nu = self.spec.amplitude;
        (0..n)
            .map(|i| m + nu * f.row(i).iter().zip(&z).map(|(a, b)| a * b).sum::<f64>())
            .collect()
    }

    /// One draw of the positive scale path `exp(g)`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.sample_log(rng).into_iter().map(f64::exp).collect()
    }
}

/// Samples `ω_t = exp(g_t)` for a single path.
pub fn sample_gp_scales<R: Rng + ?Sized>(spec: &GpSpec, rng: &mut R) -> Result<Vec<f64>> {
    Ok(GpSampler::new(*spec)?.sample(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_amplitude_is_constant() {
        let spec = GpSpec::new(0.7, 0.0, 5.0, 50).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let out = sample_gp_scales(&spec, &mut rng).unwrap();
        assert!(out.iter().all(|&v| v == 0.7_f64.exp()));
    }

    #[test]
    fn huge_width_gives_shared_deviate() {
        let t = 100;
        let spec = GpSpec::new(0.0, 1.0, 1e6 * t as f64, t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let out = sample_gp_scales(&spec, &mut rng).unwrap();
        let first = out[0];
        assert!(out.iter().all(|v| (v - first).abs() < 1e-6));
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(GpSpec::new(0.0, -1.0, 1.0, 10).is_err());
        assert!(GpSpec::new(0.0, 1.0, 0.0, 10).is_err());
        assert!(GpSpec::new(0.0, 1.0, 1.0, 0).is_err());
    }

    #[test]
    fn same_seed_same_path() {
        let spec = GpSpec::new(1.0, 1.0, 20.0, 80).unwrap();
        let a = sample_gp_scales(&spec, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = sample_gp_scales(&spec, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|&v| v > 0.0));
    }
}
