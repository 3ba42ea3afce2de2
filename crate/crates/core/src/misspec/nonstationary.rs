use rand::Rng;

use crate::error::{Error, Result};
use crate::generators::VarSystem;
use crate::numerics::{GpSampler, GpSpec, Matrix};

/// Kernel width (time steps) of the coefficient-modulating GP paths.
pub const TV_KERNEL_WIDTH: f64 = 50.0;

/// `d×T` positive noise multipliers, one independent log-GP path per row.
pub fn make_nonstationary_scales<R: Rng + ?Sized>(
    d: usize,
    t: usize,
    mean_log_scale: f64,
    amplitude: f64,
    kernel_width: f64,
    rng: &mut R,
) -> Result<Matrix> {
    let sampler = GpSampler::new(GpSpec::new(mean_log_scale, amplitude, kernel_width, t)?)?;
    let mut scales = Matrix::zeros(d, t);
    for i in 0..d {
        scales.row_mut(i).copy_from_slice(&sampler.sample(rng));
    }
    Ok(scales)
}

/// Time-varying coefficient path: each nonzero base entry `a` becomes
/// `a·(1 + σ_TV·g_t)` with an independent GP path `g` (m = 0, ν = 1).
pub fn make_tv_coefficient_path<R: Rng + ?Sized>(
    sys: &VarSystem,
    t: usize,
    sigma_tv: f64,
    rng: &mut R,
) -> Result<Vec<Vec<Matrix>>> {
    if !(sigma_tv >= 0.0 && sigma_tv.is_finite()) {
        return Err(Error::InvalidArgument(format!("sigma_tv must be >= 0, got {sigma_tv}")));
    }
    let sampler = GpSampler::new(GpSpec::new(0.0, 1.0, TV_KERNEL_WIDTH, t)?)?;
    let mut path: Vec<Vec<Matrix>> = vec![sys.coeffs().to_vec(); t];
    let d = sys.d();
    for (l, a) in sys.coeffs().iter().enumerate() {
        for q in 0..d {
            for p in 0..d {
                let base = a[(q, p)];
                if base == 0.0 {
                    continue;
                }
                let g = sampler.sample_log(rng);
                for (s, gs) in g.iter().enumerate() {
                    path[s][l][(q, p)] = base * (1.0 + sigma_tv * gs);
                }
            }
        }
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::NoiseSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_amplitude_gives_exp_mean() {
        let s = make_nonstationary_scales(3, 40, 1.0, 0.0, 20.0, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert!(s.as_slice().iter().all(|&v| v == 1.0_f64.exp()));
    }

    #[test]
    fn rows_differ() {
        let s = make_nonstationary_scales(2, 100, 1.0, 1.0, 20.0, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_ne!(s.row(0), s.row(1));
        assert!(s.as_slice().iter().all(|&v| v > 0.0));
    }

    #[test]
    fn tv_path_preserves_sparsity() {
        let mut a = Matrix::zeros(2, 2);
        a[(0, 0)] = 0.5;
        a[(1, 0)] = -0.3;
        let sys = VarSystem::new(vec![a], vec![NoiseSpec::gaussian(1.0); 2], 0.95).unwrap();
        let path = make_tv_coefficient_path(&sys, 30, 0.3, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert_eq!(path.len(), 30);
        for set in &path {
            assert_eq!(set[0][(0, 1)], 0.0);
            assert_eq!(set[0][(1, 1)], 0.0);
            assert!(set[0][(1, 0)] != 0.0);
        }
        let flat = make_tv_coefficient_path(&sys, 30, 0.0, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert!(flat.iter().all(|set| set[0] == sys.coeffs()[0]));
    }
}
