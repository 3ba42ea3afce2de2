use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::generators::{
    lorenz96_ground_truth, lorenz96_trajectory, sample_var_system, simulate_lorenz96, simulate_var, var_ground_truth,
    CausalGraph, Lorenz96Options, Lorenz96Spec, TimeSeriesMatrix, VarSampling, VarSimOptions, VarSystem,
};
use crate::numerics::Matrix;

/// Vanilla generation setup.
#[derive(Debug, Clone, PartialEq)]
pub enum BaseSetup {
    Var { system: VarSystem, sampling: VarSampling },
    Lorenz(Lorenz96Spec),
}

impl BaseSetup {
    pub fn d(&self) -> usize {
        match self {
            BaseSetup::Var { system, .. } => system.d(),
            BaseSetup::Lorenz(spec) => spec.d,
        }
    }

    pub fn ground_truth(&self) -> Result<CausalGraph> {
        match self {
            BaseSetup::Var { system, .. } => Ok(var_ground_truth(system)),
            BaseSetup::Lorenz(spec) => lorenz96_ground_truth(spec.d),
        }
    }
}

/// One confounded observed pair and the latent wired into both members.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfounderLink {
    pub pair: (usize, usize),
    pub latent: usize,
    /// Lag of the latent's effect on each member; zero for contemporaneous links.
    pub lags: (usize, usize),
    pub weights: (f64, f64),
}

/// Generation setup after latent confounders were attached.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfoundedSetup {
    /// No pair was confounded; the base setup is used as is.
    Unchanged(BaseSetup),
    /// Observed variables are the first `observed` of a block-triangular VAR
    /// whose remaining `observed` variables are the latent VAR process.
    Var {
        augmented: VarSystem,
        observed: usize,
        links: Vec<ConfounderLink>,
    },
    /// Observed Lorenz-96 series plus contemporaneous contributions of an
    /// independent latent Lorenz-96 trajectory.
    Lorenz {
        spec: Lorenz96Spec,
        latent_initial: Vec<f64>,
        links: Vec<ConfounderLink>,
    },
}

impl ConfoundedSetup {
    pub fn links(&self) -> &[ConfounderLink] {
        match self {
            ConfoundedSetup::Unchanged(_) => &[],
            ConfoundedSetup::Var { links, .. } | ConfoundedSetup::Lorenz { links, .. } => links,
        }
    }

    /// Simulates `t` samples of the observed variables only.
    pub fn simulate<R: Rng + ?Sized>(&self, t: usize, rng: &mut R) -> Result<TimeSeriesMatrix> {
        match self {
            ConfoundedSetup::Unchanged(BaseSetup::Var { system, .. }) => {
                simulate_var(system, t, &VarSimOptions::default(), rng)
            }
            ConfoundedSetup::Unchanged(BaseSetup::Lorenz(spec)) => {
                simulate_lorenz96(spec, t, &Lorenz96Options::default(), rng)
            }
            ConfoundedSetup::Var { augmented, observed, .. } => {
                simulate_var(augmented, t, &VarSimOptions::default(), rng)?.leading_columns(*observed)
            }
            ConfoundedSetup::Lorenz {
                spec,
                latent_initial,
                links,
            } => {
                let observed = simulate_lorenz96(spec, t, &Lorenz96Options::default(), rng)?;
                let latent = lorenz96_trajectory(spec, t, Some(latent_initial))?;
                let d = spec.d;
                let mut values = observed.values().to_vec();
                for link in links {
                    let (a, b) = link.pair;
                    for s in 0..t {
                        let l = latent.get(s, link.latent);
                        values[s * d + a] += link.weights.0 * l;
                        values[s * d + b] += link.weights.1 * l;
                    }
                }
                TimeSeriesMatrix::new(t, d, values)
            }
        }
    }
}

fn signed<R: Rng + ?Sized>(strength: f64, rng: &mut R) -> f64 {
    if rng.random_bool(0.5) {
        strength
    } else {
        -strength
    }
}

/// Attaches `d` latent confounders to a vanilla setup.
///
/// Each unordered observed pair is confounded with probability `ζ` by one
/// uniformly chosen latent. Linear setups get cross-lag links (lag uniform in
/// `1..=τ_max`) from a latent VAR process; nonlinear setups get
/// contemporaneous links from a latent Lorenz-96 trajectory. The returned
/// graph is the observed vanilla graph.
pub fn attach_confounders<R: Rng + ?Sized>(
    base: &BaseSetup,
    zeta: f64,
    strength: f64,
    rng: &mut R,
) -> Result<(ConfoundedSetup, CausalGraph)> {
    if !(0.0..=1.0).contains(&zeta) {
        return Err(Error::InvalidArgument(format!("zeta must lie in [0,1], got {zeta}")));
    }
    if !strength.is_finite() {
        return Err(Error::InvalidArgument("confounder strength must be finite".into()));
    }
    let d = base.d();
    let graph = base.ground_truth()?;
    let tau = match base {
        BaseSetup::Var { system, .. } => system.tau_max(),
        BaseSetup::Lorenz(_) => 0,
    };

    let mut links = Vec::new();
    for a in 0..d {
        for b in (a + 1)..d {
            if !rng.random_bool(zeta) {
                continue;
            }
            let latent = rng.random_range(0..d);
            let lags = if tau > 0 {
                (rng.random_range(1..=tau), rng.random_range(1..=tau))
            } else {
                (0, 0)
            };
            let weights = (signed(strength, rng), signed(strength, rng));
            links.push(ConfounderLink {
                pair: (a, b),
                latent,
                lags,
                weights,
            });
        }
    }
    if links.is_empty() {
        return Ok((ConfoundedSetup::Unchanged(base.clone()), graph));
    }

    let setup = match base {
        BaseSetup::Var { system, sampling } => {
            let latent_sys = sample_var_system(sampling, system.noise()[0], rng)?;
            let n = 2 * d;
            let mut coeffs = vec![Matrix::zeros(n, n); tau];
            for (l, (obs, lat)) in system.coeffs().iter().zip(latent_sys.coeffs()).enumerate() {
                for i in 0..d {
                    for j in 0..d {
                        coeffs[l][(i, j)] = obs[(i, j)];
                        coeffs[l][(d + i, d + j)] = lat[(i, j)];
                    }
                }
            }
            for link in &links {
                let (a, b) = link.pair;
                coeffs[link.lags.0 - 1][(a, d + link.latent)] = link.weights.0;
                coeffs[link.lags.1 - 1][(b, d + link.latent)] = link.weights.1;
            }
            let mut noise = system.noise().to_vec();
            noise.extend_from_slice(latent_sys.noise());
            let augmented = VarSystem::new(coeffs, noise, system.spectral_radius_cap())?;
            ConfoundedSetup::Var {
                augmented,
                observed: d,
                links,
            }
        }
        BaseSetup::Lorenz(spec) => {
            let latent_initial = (0..d)
                .map(|_| spec.forcing + 0.01 * rng.sample::<f64, _>(StandardNormal))
                .collect();
            ConfoundedSetup::Lorenz {
                spec: *spec,
                latent_initial,
                links,
            }
        }
    };
    Ok((setup, graph))
}
