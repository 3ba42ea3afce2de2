use rand::Rng;
use rand_distr::{Distribution, Exp, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseKind {
    Gaussian,
    /// Exponential with mean `scale`, shifted to zero mean.
    Exponential,
}

/// Zero-mean noise law for one variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub kind: NoiseKind,
    pub scale: f64,
}

impl NoiseSpec {
    pub fn gaussian(scale: f64) -> Self {
        Self {
            kind: NoiseKind::Gaussian,
            scale,
        }
    }

    pub fn exponential(scale: f64) -> Self {
        Self {
            kind: NoiseKind::Exponential,
            scale,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "noise scale must be > 0, got {}",
                self.scale
            )));
        }
        Ok(())
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.kind {
            NoiseKind::Gaussian => self.scale * rng.sample::<f64, _>(StandardNormal),
            NoiseKind::Exponential => {
                let exp = Exp::new(1.0 / self.scale).expect("validated positive scale");
                exp.sample(rng) - self.scale
            }
        }
    }
}
