use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::eval::SelectionMode;
use crate::generators::VarSampling;
use crate::methods::{default_grid, MethodConfig, MethodKind};
use crate::misspec::{BaseModel, Scenario, DEFAULT_KERNEL_WIDTH};

/// A family of base settings; every combination of the listed sizes is run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseEntry {
    Linear {
        d: Vec<usize>,
        t: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        parents_per_var: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        noise_scale: Option<f64>,
    },
    Nonlinear {
        d: Vec<usize>,
        t: Vec<usize>,
        f: Vec<f64>,
    },
}

/// One scenario; parameters left out take their per-setting defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioEntry {
    pub kind: String,
    #[serde(flatten)]
    pub params: Map<String, Value>,
}

impl ScenarioEntry {
    pub fn new(kind: &str) -> Self {
        Self {
            kind: kind.into(),
            params: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }

    /// Fills defaults for `base` and parses. `None` when the scenario does
    /// not apply to that base (time-varying coefficients on Lorenz-96).
    pub fn resolve(&self, base: &BaseModel) -> Result<Option<Scenario>> {
        if self.kind == "tv_coefficients" && !base.is_linear() {
            return Ok(None);
        }
        let mut obj = scenario_defaults(&self.kind, base)?;
        for (k, v) in &self.params {
            if !obj.contains_key(k) {
                return Err(Error::Config(format!("scenario '{}' has no parameter '{k}'", self.kind)));
            }
            obj.insert(k.clone(), v.clone());
        }
        obj.insert("kind".into(), Value::String(self.kind.clone()));
        let scenario: Scenario = serde_json::from_value(Value::Object(obj))
            .map_err(|e| Error::Config(format!("scenario '{}': {e}", self.kind)))?;
        scenario
            .validate()
            .map_err(|e| Error::Config(format!("scenario '{}': {e}", self.kind)))?;
        Ok(Some(scenario))
    }
}

fn scenario_defaults(kind: &str, base: &BaseModel) -> Result<Map<String, Value>> {
    let v = match kind {
        "vanilla" | "standardized" | "minmax" | "exponential_noise" => json!({}),
        "measurement_error" => json!({ "alpha": 1.2 }),
        "nonstationary" => {
            let (m, nu) = match base.forcing() {
                None => (1.0, 1.0),
                Some(f) if f <= 10.0 => (2.5, 2.0),
                Some(_) => (3.5, 2.0),
            };
            json!({ "m": m, "nu": nu, "kernel_width": DEFAULT_KERNEL_WIDTH })
        }
        "confounders" => json!({ "zeta": 0.5, "strength": 0.5 }),
        "mixed" => json!({ "beta": 0.5 }),
        "missing" => json!({ "gamma": 0.4 }),
        "trend_season" => json!({ "rho": 0.01, "eta": 0.5, "period": 12 }),
        "tv_coefficients" => json!({ "sigma_tv": 0.3 }),
        other => return Err(Error::Config(format!("unknown scenario kind '{other}'"))),
    };
    match v {
        Value::Object(m) => Ok(m),
        _ => unreachable!(),
    }
}

/// A method with optional overrides of its hyperparameter grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MethodEntry {
    pub method: MethodKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_max: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_sig: Option<Vec<f64>>,
}

impl MethodEntry {
    pub fn new(method: MethodKind) -> Self {
        Self {
            method,
            tau_max: None,
            threshold: None,
            lambda: None,
            alpha_sig: None,
        }
    }

    /// The configuration grid in a fixed order; position is the config id.
    pub fn grid(&self) -> Result<Vec<MethodConfig>> {
        let defaults = default_grid(self.method);
        let distinct = |f: &dyn Fn(&MethodConfig) -> Option<f64>| {
            let mut out: Vec<f64> = Vec::new();
            for c in &defaults {
                if let Some(v) = f(c) {
                    if !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
            out
        };
        let taus = self.tau_max.clone().unwrap_or_else(|| {
            distinct(&|c| Some(c.tau_max() as f64)).into_iter().map(|v| v as usize).collect()
        });
        let thresholds = self.threshold.clone().unwrap_or_else(|| {
            distinct(&|c| match c {
                MethodConfig::Var { threshold, .. } | MethodConfig::Lgc { threshold, .. } => Some(*threshold),
                _ => None,
            })
        });
        let lambdas = self.lambda.clone().unwrap_or_else(|| {
            distinct(&|c| match c {
                MethodConfig::Lgc { lambda, .. } => Some(*lambda),
                _ => None,
            })
        });
        let alphas = self.alpha_sig.clone().unwrap_or_else(|| {
            distinct(&|c| match c {
                MethodConfig::Pcmci { alpha_sig, .. } => Some(*alpha_sig),
                _ => None,
            })
        });
        let unused = match self.method {
            MethodKind::Var => [("lambda", self.lambda.is_some()), ("alpha_sig", self.alpha_sig.is_some())],
            MethodKind::Lgc => [("alpha_sig", self.alpha_sig.is_some()), ("", false)],
            MethodKind::Pcmci => [("threshold", self.threshold.is_some()), ("lambda", self.lambda.is_some())],
        };
        if let Some((name, _)) = unused.iter().find(|u| u.1) {
            return Err(Error::Config(format!("method {} takes no '{name}'", self.method.name())));
        }
        let mut out = Vec::new();
        for &tau_max in &taus {
            match self.method {
                MethodKind::Var => {
                    for &threshold in &thresholds {
                        out.push(MethodConfig::Var { tau_max, threshold });
                    }
                }
                MethodKind::Lgc => {
                    for &threshold in &thresholds {
                        for &lambda in &lambdas {
                            out.push(MethodConfig::Lgc {
                                tau_max,
                                threshold,
                                lambda,
                            });
                        }
                    }
                }
                MethodKind::Pcmci => {
                    for &alpha_sig in &alphas {
                        out.push(MethodConfig::Pcmci { tau_max, alpha_sig });
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(Error::Config(format!("method {} has an empty grid", self.method.name())));
        }
        for c in &out {
            c.validate()?;
        }
        Ok(out)
    }
}

fn default_jobs() -> usize {
    1
}

fn default_modes() -> Vec<SelectionMode> {
    SelectionMode::ALL.to_vec()
}

fn default_out() -> PathBuf {
    PathBuf::from("results")
}

/// Declarative description of an experiment grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub bases: Vec<BaseEntry>,
    pub scenarios: Vec<ScenarioEntry>,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub master_seed: u64,
    pub methods: Vec<MethodEntry>,
    #[serde(default = "default_out")]
    pub out: PathBuf,
    #[serde(default = "default_jobs")]
    pub jobs: usize,
    #[serde(default = "default_modes")]
    pub modes: Vec<SelectionMode>,
    #[serde(default)]
    pub persist_datasets: bool,
}

/// One base model at concrete sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Setting {
    pub base: BaseModel,
    pub t: usize,
}

impl Setting {
    pub fn d(&self) -> usize {
        self.base.d()
    }

    pub fn f(&self) -> Option<f64> {
        self.base.forcing()
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn settings(&self) -> Result<Vec<Setting>> {
        let mut out = Vec::new();
        for b in &self.bases {
            match b {
                BaseEntry::Linear {
                    d,
                    t,
                    parents_per_var,
                    noise_scale,
                } => {
                    for &d in d {
                        for &t in t {
                            let mut sampling = VarSampling::new(d);
                            if let Some(k) = parents_per_var {
                                sampling.parents_per_var = *k;
                            }
                            sampling
                                .validate()
                                .map_err(|e| Error::Config(format!("linear base d={d}: {e}")))?;
                            let noise_scale = noise_scale.unwrap_or(1.0);
                            if !(noise_scale > 0.0 && noise_scale.is_finite()) {
                                return Err(Error::Config(format!("noise_scale must be > 0, got {noise_scale}")));
                            }
                            out.push(Setting {
                                base: BaseModel::Linear { sampling, noise_scale },
                                t,
                            });
                        }
                    }
                }
                BaseEntry::Nonlinear { d, t, f } => {
                    for &d in d {
                        for &t in t {
                            for &f in f {
                                if d < 4 {
                                    return Err(Error::Config(format!("nonlinear base needs d >= 4, got {d}")));
                                }
                                if !(f.is_finite() && f > 0.0) {
                                    return Err(Error::Config(format!("forcing must be > 0, got {f}")));
                                }
                                out.push(Setting {
                                    base: BaseModel::nonlinear(d, f),
                                    t,
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(kind, config)` pairs per method; the index within a method is its config id.
    pub fn method_grids(&self) -> Result<Vec<(MethodKind, Vec<MethodConfig>)>> {
        self.methods.iter().map(|m| Ok((m.method, m.grid()?))).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.bases.is_empty() {
            return Err(Error::Config("bases: list is empty".into()));
        }
        for b in &self.bases {
            let (d, t, f) = match b {
                BaseEntry::Linear { d, t, .. } => (d, t, None),
                BaseEntry::Nonlinear { d, t, f } => (d, t, Some(f)),
            };
            if d.is_empty() || t.is_empty() || f.is_some_and(|f| f.is_empty()) {
                return Err(Error::Config("bases: every size list must be nonempty".into()));
            }
            if t.iter().any(|&t| t < 20) {
                return Err(Error::Config("bases: t must be >= 20".into()));
            }
        }
        if self.scenarios.is_empty() {
            return Err(Error::Config("scenarios: list is empty".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::Config("seeds: list is empty".into()));
        }
        let distinct: BTreeSet<u64> = self.seeds.iter().copied().collect();
        if distinct.len() != self.seeds.len() {
            return Err(Error::Config("seeds: values must be distinct".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("methods: list is empty".into()));
        }
        let kinds: BTreeSet<MethodKind> = self.methods.iter().map(|m| m.method).collect();
        if kinds.len() != self.methods.len() {
            return Err(Error::Config("methods: each method may appear once".into()));
        }
        if self.jobs == 0 {
            return Err(Error::Config("jobs: must be >= 1".into()));
        }
        if self.modes.is_empty() {
            return Err(Error::Config("modes: list is empty".into()));
        }
        self.method_grids()?;
        let settings = self.settings()?;
        let mut labels = BTreeSet::new();
        for s in &settings {
            for entry in &self.scenarios {
                if let Some(sc) = entry.resolve(&s.base)? {
                    if !labels.insert((format!("{:?}", s.base), s.t, sc.name(), sc.param_label())) {
                        return Err(Error::Config(format!("scenarios: '{}' is listed twice", entry.kind)));
                    }
                }
            }
        }
        Ok(())
    }

    /// SHA-256 over the fields that affect results (output directory, job
    /// count and dataset persistence excluded).
    pub fn hash(&self) -> String {
        let mut v = serde_json::to_value(self).expect("config serializes");
        if let Value::Object(m) = &mut v {
            m.remove("out");
            m.remove("jobs");
            m.remove("persist_datasets");
        }
        let digest = Sha256::digest(v.to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}
