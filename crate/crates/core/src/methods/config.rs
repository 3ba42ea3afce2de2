use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_LAMBDA_GRID: [f64; 5] = [0.001, 0.005, 0.01, 0.05, 0.1];
const TAU_GRID: [usize; 2] = [3, 5];
const THRESHOLD_GRID: [f64; 5] = [0.0, 0.01, 0.05, 0.1, 0.3];
const ALPHA_GRID: [f64; 3] = [0.01, 0.05, 0.1];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodKind {
    Var,
    Lgc,
    Pcmci,
}

impl MethodKind {
    pub fn name(self) -> &'static str {
        match self {
            MethodKind::Var => "var",
            MethodKind::Lgc => "lgc",
            MethodKind::Pcmci => "pcmci",
        }
    }
}

impl std::str::FromStr for MethodKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "var" => Ok(MethodKind::Var),
            "lgc" => Ok(MethodKind::Lgc),
            "pcmci" => Ok(MethodKind::Pcmci),
            other => Err(Error::Parse(format!("unknown method '{other}'"))),
        }
    }
}

/// One hyperparameter configuration of one method.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum MethodConfig {
    Var { tau_max: usize, threshold: f64 },
    Lgc { tau_max: usize, threshold: f64, lambda: f64 },
    Pcmci { tau_max: usize, alpha_sig: f64 },
}

impl MethodConfig {
    pub fn kind(&self) -> MethodKind {
        match self {
            MethodConfig::Var { .. } => MethodKind::Var,
            MethodConfig::Lgc { .. } => MethodKind::Lgc,
            MethodConfig::Pcmci { .. } => MethodKind::Pcmci,
        }
    }

    pub fn tau_max(&self) -> usize {
        match *self {
            MethodConfig::Var { tau_max, .. } | MethodConfig::Lgc { tau_max, .. } | MethodConfig::Pcmci { tau_max, .. } => {
                tau_max
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.tau_max() == 0 {
            return Err(Error::Config("tau_max must be >= 1".into()));
        }
        match *self {
            MethodConfig::Var { threshold, .. } => check_threshold(threshold),
            MethodConfig::Lgc { threshold, lambda, .. } => {
                check_threshold(threshold)?;
                if !(lambda >= 0.0 && lambda.is_finite()) {
                    return Err(Error::Config(format!("lambda must be finite and >= 0, got {lambda}")));
                }
                Ok(())
            }
            MethodConfig::Pcmci { alpha_sig, .. } => {
                if alpha_sig > 0.0 && alpha_sig < 1.0 {
                    Ok(())
                } else {
                    Err(Error::Config(format!("alpha_sig must lie in (0,1), got {alpha_sig}")))
                }
            }
        }
    }

    /// Compact JSON used as the `config_json` column.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("method config serializes")
    }

    /// The same config with the post-hoc threshold cleared. Configs sharing a
    /// key produce identical score matrices.
    pub fn score_key(&self) -> MethodConfig {
        match *self {
            MethodConfig::Var { tau_max, .. } => MethodConfig::Var { tau_max, threshold: 0.0 },
            MethodConfig::Lgc { tau_max, lambda, .. } => MethodConfig::Lgc {
                tau_max,
                threshold: 0.0,
                lambda,
            },
            other => other,
        }
    }
}

fn check_threshold(threshold: f64) -> Result<()> {
    // +inf is allowed: it empties the graph without touching the scores
    if threshold >= 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("threshold must be >= 0, got {threshold}")))
    }
}

/// The default hyperparameter grid for a method.
pub fn default_grid(kind: MethodKind) -> Vec<MethodConfig> {
    let mut out = Vec::new();
    for tau_max in TAU_GRID {
        match kind {
            MethodKind::Var => {
                for threshold in THRESHOLD_GRID {
                    out.push(MethodConfig::Var { tau_max, threshold });
                }
            }
            MethodKind::Lgc => {
                for threshold in THRESHOLD_GRID {
                    for lambda in DEFAULT_LAMBDA_GRID {
                        out.push(MethodConfig::Lgc {
                            tau_max,
                            threshold,
                            lambda,
                        });
                    }
                }
            }
            MethodKind::Pcmci => {
                for alpha_sig in ALPHA_GRID {
                    out.push(MethodConfig::Pcmci { tau_max, alpha_sig });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes() {
        assert_eq!(default_grid(MethodKind::Var).len(), 10);
        assert_eq!(default_grid(MethodKind::Lgc).len(), 50);
        assert_eq!(default_grid(MethodKind::Pcmci).len(), 6);
        for kind in [MethodKind::Var, MethodKind::Lgc, MethodKind::Pcmci] {
            assert!(default_grid(kind).iter().all(|c| c.validate().is_ok() && c.kind() == kind));
        }
    }

    #[test]
    fn json_round_trip() {
        let cfg = MethodConfig::Lgc {
            tau_max: 3,
            threshold: 0.05,
            lambda: 0.01,
        };
        assert_eq!(cfg.to_json(), r#"{"method":"lgc","tau_max":3,"threshold":0.05,"lambda":0.01}"#);
        let back: MethodConfig = serde_json::from_str(&cfg.to_json()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(MethodConfig::Pcmci { tau_max: 3, alpha_sig: 1.0 }.validate().is_err());
        assert!(MethodConfig::Var { tau_max: 0, threshold: 0.1 }.validate().is_err());
        assert!(MethodConfig::Var { tau_max: 3, threshold: -0.1 }.validate().is_err());
        assert!(MethodConfig::Var { tau_max: 3, threshold: f64::INFINITY }.validate().is_ok());
    }
}
