use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::VarSampling;

/// Default kernel width (time steps) for the nonstationary noise scales.
pub const DEFAULT_KERNEL_WIDTH: f64 = 20.0;

fn default_kernel_width() -> f64 {
    DEFAULT_KERNEL_WIDTH
}

fn default_strength() -> f64 {
    0.5
}

/// One assumption violation (or none).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scenario {
    Vanilla,
    MeasurementError {
        alpha: f64,
    },
    Nonstationary {
        m: f64,
        nu: f64,
        #[serde(default = "default_kernel_width")]
        kernel_width: f64,
    },
    Confounders {
        zeta: f64,
        #[serde(default = "default_strength")]
        strength: f64,
    },
    Standardized,
    Mixed {
        beta: f64,
    },
    Minmax,
    Missing {
        gamma: f64,
    },
    TrendSeason {
        rho: f64,
        eta: f64,
        period: usize,
    },
    TvCoefficients {
        sigma_tv: f64,
    },
    ExponentialNoise,
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Vanilla => "vanilla",
            Scenario::MeasurementError { .. } => "measurement_error",
            Scenario::Nonstationary { .. } => "nonstationary",
            Scenario::Confounders { .. } => "confounders",
            Scenario::Standardized => "standardized",
            Scenario::Mixed { .. } => "mixed",
            Scenario::Minmax => "minmax",
            Scenario::Missing { .. } => "missing",
            Scenario::TrendSeason { .. } => "trend_season",
            Scenario::TvCoefficients { .. } => "tv_coefficients",
            Scenario::ExponentialNoise => "exponential_noise",
        }
    }

    /// Compact `key=value` rendering of the scenario parameters.
    pub fn param_label(&self) -> String {
        match *self {
            Scenario::Vanilla | Scenario::Standardized | Scenario::Minmax | Scenario::ExponentialNoise => String::new(),
            Scenario::MeasurementError { alpha } => format!("alpha={alpha}"),
            Scenario::Nonstationary { m, nu, kernel_width } => format!("m={m};nu={nu};l={kernel_width}"),
            Scenario::Confounders { zeta, strength } => format!("zeta={zeta};strength={strength}"),
            Scenario::Mixed { beta } => format!("beta={beta}"),
            Scenario::Missing { gamma } => format!("gamma={gamma}"),
            Scenario::TrendSeason { rho, eta, period } => format!("rho={rho};eta={eta};P={period}"),
            Scenario::TvCoefficients { sigma_tv } => format!("sigma_tv={sigma_tv}"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{name} must lie in [0,1], got {v}")))
            }
        };
        match *self {
            Scenario::MeasurementError { alpha } if !(alpha >= 0.0 && alpha.is_finite()) => {
                Err(Error::InvalidArgument(format!("alpha must be >= 0, got {alpha}")))
            }
            Scenario::Nonstationary { m, nu, kernel_width } => {
                if !m.is_finite() || !(nu >= 0.0 && nu.is_finite()) || !(kernel_width > 0.0) {
                    Err(Error::InvalidArgument(format!(
                        "nonstationary needs finite m, nu >= 0, l > 0 (got m={m}, nu={nu}, l={kernel_width})"
                    )))
                } else {
                    Ok(())
                }
            }
            Scenario::Confounders { zeta, strength } => {
                unit("zeta", zeta)?;
                if strength.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidArgument("confounder strength must be finite".into()))
                }
            }
            Scenario::Mixed { beta } => unit("beta", beta),
            Scenario::Missing { gamma } => {
                if (0.0..1.0).contains(&gamma) {
                    Ok(())
                } else {
                    Err(Error::InvalidArgument(format!("gamma must lie in [0,1), got {gamma}")))
                }
            }
            Scenario::TrendSeason { rho, eta, period } => {
                if period < 2 || !rho.is_finite() || !eta.is_finite() {
                    Err(Error::InvalidArgument(format!(
                        "trend/season needs finite rho, eta and P >= 2 (got P={period})"
                    )))
                } else {
                    Ok(())
                }
            }
            Scenario::TvCoefficients { sigma_tv } if !(sigma_tv >= 0.0 && sigma_tv.is_finite()) => {
                Err(Error::InvalidArgument(format!("sigma_tv must be >= 0, got {sigma_tv}")))
            }
            _ => Ok(()),
        }
    }
}

/// Vanilla model family and its size parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum BaseModel {
    Linear { sampling: VarSampling, noise_scale: f64 },
    Nonlinear { d: usize, forcing: f64 },
}

impl BaseModel {
    pub fn linear(d: usize) -> Self {
        BaseModel::Linear {
            sampling: VarSampling::new(d),
            noise_scale: 1.0,
        }
    }

    pub fn nonlinear(d: usize, forcing: f64) -> Self {
        BaseModel::Nonlinear { d, forcing }
    }

    pub fn d(&self) -> usize {
        match self {
            BaseModel::Linear { sampling, .. } => sampling.d,
            BaseModel::Nonlinear { d, .. } => *d,
        }
    }

    pub fn forcing(&self) -> Option<f64> {
        match self {
            BaseModel::Linear { .. } => None,
            BaseModel::Nonlinear { forcing, .. } => Some(*forcing),
        }
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, BaseModel::Linear { .. })
    }
}

/// Everything needed to build one trial's dataset, apart from the seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub base: BaseModel,
    pub t: usize,
    pub scenario: Scenario,
}

impl ScenarioSpec {
    pub fn new(base: BaseModel, t: usize, scenario: Scenario) -> Self {
        Self { base, t, scenario }
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        if self.t < 2 {
            return Err(Error::InvalidArgument(format!("T must be >= 2, got {}", self.t)));
        }
        if matches!(self.scenario, Scenario::TvCoefficients { .. }) && !self.base.is_linear() {
            return Err(Error::InvalidArgument(
                "time-varying coefficients apply to the linear model only".into(),
            ));
        }
        Ok(())
    }
}
