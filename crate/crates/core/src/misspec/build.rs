use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::generators::{
    sample_var_system, simulate_lorenz96, simulate_var, CausalGraph, Lorenz96Options, Lorenz96Spec, NoiseSpec,
    TimeSeriesMatrix, VarSimOptions,
};

use super::{
    add_measurement_error, add_trend_season, apply_mcar, attach_confounders, discretize_mixed,
    make_nonstationary_scales, make_tv_coefficient_path, minmax, zero_order_hold, zscore, BaseModel, BaseSetup,
    Scenario, ScenarioSpec,
};

/// Independent random streams derived from one trial seed. Keeping them
/// apart makes every scenario share the vanilla system and noise draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RngStream {
    Structure = 0,
    Simulation = 1,
    Scenario = 2,
}

pub fn rng_stream(seed: u64, stream: RngStream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

/// A generated dataset with its evaluation ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub data: TimeSeriesMatrix,
    pub graph: CausalGraph,
}

fn base_setup(base: &BaseModel, seed: u64) -> Result<BaseSetup> {
    match *base {
        BaseModel::Linear { sampling, noise_scale } => {
            let mut rng = rng_stream(seed, RngStream::Structure);
            let system = sample_var_system(&sampling, NoiseSpec::gaussian(noise_scale), &mut rng)?;
            Ok(BaseSetup::Var { system, sampling })
        }
        BaseModel::Nonlinear { d, forcing } => {
            let spec = Lorenz96Spec::new(d, forcing);
            spec.validate()?;
            Ok(BaseSetup::Lorenz(spec))
        }
    }
}

fn simulate_base(setup: &BaseSetup, t: usize, seed: u64) -> Result<TimeSeriesMatrix> {
    let mut rng = rng_stream(seed, RngStream::Simulation);
    match setup {
        BaseSetup::Var { system, .. } => simulate_var(system, t, &VarSimOptions::default(), &mut rng),
        BaseSetup::Lorenz(spec) => simulate_lorenz96(spec, t, &Lorenz96Options::default(), &mut rng),
    }
}

/// Generates the vanilla data for `spec.base` and applies `spec.scenario`.
///
/// Nonstationary noise, confounders, time-varying coefficients and
/// exponential noise change the generation itself; the other scenarios
/// post-process the vanilla output. The returned graph is always the vanilla
/// ground truth for the same seed.
pub fn build_dataset(spec: &ScenarioSpec, seed: u64) -> Result<Dataset> {
    spec.validate()?;
    let t = spec.t;
    let setup = base_setup(&spec.base, seed)?;
    let graph = setup.ground_truth()?;
    let mut scenario_rng = rng_stream(seed, RngStream::Scenario);

    let data = match spec.scenario {
        Scenario::Vanilla => simulate_base(&setup, t, seed)?,
        Scenario::MeasurementError { alpha } => {
            add_measurement_error(&simulate_base(&setup, t, seed)?, alpha, &mut scenario_rng)?
        }
        Scenario::Standardized => zscore(&simulate_base(&setup, t, seed)?)?,
        Scenario::Minmax => minmax(&simulate_base(&setup, t, seed)?)?,
        Scenario::Mixed { beta } => discretize_mixed(&simulate_base(&setup, t, seed)?, beta, &mut scenario_rng)?,
        Scenario::Missing { gamma } => {
            let masked = apply_mcar(&simulate_base(&setup, t, seed)?, gamma, &mut scenario_rng)?;
            zero_order_hold(&masked)?
        }
        Scenario::TrendSeason { rho, eta, period } => {
            add_trend_season(&simulate_base(&setup, t, seed)?, rho, eta, period)?
        }
        Scenario::Nonstationary { m, nu, kernel_width } => {
            let scales = make_nonstationary_scales(setup.d(), t, m, nu, kernel_width, &mut scenario_rng)?;
            let mut rng = rng_stream(seed, RngStream::Simulation);
            match &setup {
                BaseSetup::Var { system, .. } => {
                    let opts = VarSimOptions {
                        scale_path: Some(&scales),
                        ..Default::default()
                    };
                    simulate_var(system, t, &opts, &mut rng)?
                }
                BaseSetup::Lorenz(lspec) => {
                    let opts = Lorenz96Options {
                        scale_path: Some(&scales),
                        initial: None,
                    };
                    simulate_lorenz96(lspec, t, &opts, &mut rng)?
                }
            }
        }
        Scenario::Confounders { zeta, strength } => {
            let (confounded, _) = attach_confounders(&setup, zeta, strength, &mut scenario_rng)?;
            confounded.simulate(t, &mut rng_stream(seed, RngStream::Simulation))?
        }
        Scenario::TvCoefficients { sigma_tv } => {
            let BaseSetup::Var { system, .. } = &setup else {
                unreachable!("validated: linear only");
            };
            let path = make_tv_coefficient_path(system, t, sigma_tv, &mut scenario_rng)?;
            let opts = VarSimOptions {
                coeff_path: Some(&path),
                ..Default::default()
            };
            simulate_var(system, t, &opts, &mut rng_stream(seed, RngStream::Simulation))?
        }
        Scenario::ExponentialNoise => {
            let exp_setup = match &setup {
                BaseSetup::Var { system, sampling } => BaseSetup::Var {
                    system: system.with_noise(NoiseSpec::exponential(system.noise()[0].scale))?,
                    sampling: *sampling,
                },
                BaseSetup::Lorenz(lspec) => {
                    let mut l = *lspec;
                    l.noise = NoiseSpec::exponential(lspec.noise.scale);
                    BaseSetup::Lorenz(l)
                }
            };
            simulate_base(&exp_setup, t, seed)?
        }
    };
    Ok(Dataset { data, graph })
}
