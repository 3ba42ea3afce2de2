use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::eval::{aggregate, auprc, auroc, select_hyperparams, write_aggregate_csv, write_results_csv, EvalRecord};
use crate::methods::{run_method, MethodConfig, MethodKind, ScoreMatrix};
use crate::misspec::{build_dataset, Dataset, Scenario, ScenarioSpec};

use super::{ExperimentConfig, Setting};

pub const RESULTS_FILE: &str = "results.csv";
pub const MANIFEST_FILE: &str = "manifest.json";

pub fn aggregate_file(mode: crate::eval::SelectionMode) -> String {
    format!("aggregate_{}.csv", mode.name())
}

/// One (setting, scenario, seed) cell of the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trial {
    pub setting: Setting,
    pub scenario: Scenario,
    pub seed: u64,
    /// Seed handed to the data builder.
    pub data_seed: u64,
}

impl Trial {
    pub fn spec(&self) -> ScenarioSpec {
        ScenarioSpec::new(self.setting.base, self.setting.t, self.scenario)
    }

    /// Directory name used when persisting this trial's dataset.
    pub fn dir_name(&self) -> String {
        let param: String = self
            .scenario
            .param_label()
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '.' { c } else { '_' })
            .collect();
        let f = self.setting.f().map(|f| format!("_f{f}")).unwrap_or_default();
        let mut name = self.scenario.name().to_string();
        if !param.is_empty() {
            name.push('_');
            name.push_str(&param);
        }
        format!("{name}_d{}_t{}{f}_seed{}", self.setting.d(), self.setting.t, self.seed)
    }
}

/// Seed for a trial's data. The scenario is deliberately left out so that
/// every scenario of a (setting, seed) cell perturbs the same vanilla draw.
pub fn derive_data_seed(master_seed: u64, setting: &Setting, seed: u64) -> u64 {
    let mut h = Sha256::new();
    h.update(master_seed.to_le_bytes());
    h.update(format!("{:?}|{}", setting.base, setting.t).as_bytes());
    h.update(seed.to_le_bytes());
    let out = h.finalize();
    let mut first = [0u8; 8];
    first.copy_from_slice(&out[..8]);
    u64::from_le_bytes(first)
}

/// Expands the config into trials in canonical order.
pub fn plan_trials(cfg: &ExperimentConfig) -> Result<Vec<Trial>> {
    let mut out = Vec::new();
    for setting in cfg.settings()? {
        for entry in &cfg.scenarios {
            let Some(scenario) = entry.resolve(&setting.base)? else {
                continue;
            };
            for &seed in &cfg.seeds {
                out.push(Trial {
                    setting,
                    scenario,
                    seed,
                    data_seed: derive_data_seed(cfg.master_seed, &setting, seed),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub config_hash: String,
    pub trials: usize,
    pub records: usize,
    pub sentinel_records: usize,
    pub modes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub out: PathBuf,
    pub records: Vec<EvalRecord>,
    pub manifest: Manifest,
}

fn record_for(trial: &Trial, kind: MethodKind, id: usize, cfg: &MethodConfig) -> EvalRecord {
    EvalRecord {
        scenario: trial.scenario.name().to_string(),
        param: trial.scenario.param_label(),
        d: trial.setting.d(),
        t: trial.setting.t,
        f: trial.setting.f(),
        seed: trial.seed,
        method: kind.name().to_string(),
        config_id: id,
        config_json: cfg.to_json(),
        auroc: None,
        auprc: None,
    }
}

/// Runs every method config on one trial's dataset. Failures (dataset or
/// method) and undefined metrics leave sentinel rows.
pub fn evaluate_trial(
    trial: &Trial,
    grids: &[(MethodKind, Vec<MethodConfig>)],
    persist: Option<&Path>,
) -> Result<Vec<EvalRecord>> {
    let dataset = build_dataset(&trial.spec(), trial.data_seed);
    let dir = persist.map(|p| p.join(trial.dir_name()));
    if let (Ok(ds), Some(dir)) = (&dataset, &dir) {
        save_dataset(ds, dir)?;
    }
    let mut out = Vec::new();
    for (kind, grid) in grids {
        // configs differing only in the threshold share one score matrix
        let mut cache: HashMap<String, Option<ScoreMatrix>> = HashMap::new();
        for (id, cfg) in grid.iter().enumerate() {
            let mut rec = record_for(trial, *kind, id, cfg);
            if let Ok(ds) = &dataset {
                let key = cfg.score_key().to_json();
                let scores = cache
                    .entry(key)
                    .or_insert_with(|| run_method(&ds.data, cfg).ok().map(|o| o.scores));
                if let Some(s) = scores {
                    if let Some(dir) = &dir {
                        s.save(&dir.join(format!("scores_{}_{id}.csv", kind.name())))?;
                    }
                    if let (Ok(a), Ok(p)) = (auroc(s, &ds.graph), auprc(s, &ds.graph)) {
                        rec.auroc = Some(a);
                        rec.auprc = Some(p);
                    }
                }
            }
            out.push(rec.quantized());
        }
    }
    Ok(out)
}

pub fn save_dataset(ds: &Dataset, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    ds.data.save(&dir.join("data.csv"))?;
    ds.graph.save(&dir.join("graph.json"))
}

pub fn load_dataset(dir: &Path) -> Result<Dataset> {
    Ok(Dataset {
        data: crate::generators::TimeSeriesMatrix::load(&dir.join("data.csv"))?,
        graph: crate::generators::CausalGraph::load(&dir.join("graph.json"))?,
    })
}

fn write_file(path: &Path, f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<()> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

/// Runs the whole grid and writes results, aggregates and the manifest to
/// `cfg.out`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunSummary> {
    cfg.validate()?;
    let out = cfg.out.clone();
    fs::create_dir_all(&out).map_err(|e| Error::io(&out, e))?;
    let trials = plan_trials(cfg)?;
    let grids = cfg.method_grids()?;
    let persist = cfg.persist_datasets.then(|| out.join("datasets"));

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {} workers: {e}", cfg.jobs)))?;
    let per_trial: Vec<Result<Vec<EvalRecord>>> = pool.install(|| {
        trials
            .par_iter()
            .map(|t| evaluate_trial(t, &grids, persist.as_deref()))
            .collect()
    });
    let mut records = Vec::new();
    for r in per_trial {
        records.extend(r?);
    }
    records.sort_by(EvalRecord::canonical_cmp);

    write_file(&out.join(RESULTS_FILE), |b| write_results_csv(&records, b))?;
    for &mode in &cfg.modes {
        write_reports(&records, mode, &out)?;
    }
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        config_hash: cfg.hash(),
        trials: trials.len(),
        records: records.len(),
        sentinel_records: records.iter().filter(|r| r.is_sentinel()).count(),
        modes: cfg.modes.iter().map(|m| m.name().to_string()).collect(),
    };
    let path = out.join(MANIFEST_FILE);
    let text = serde_json::to_string_pretty(&manifest)?;
    fs::write(&path, text + "\n").map_err(|e| Error::io(&path, e))?;
    Ok(RunSummary {
        out,
        records,
        manifest,
    })
}

/// Selects, aggregates and writes `aggregate_<mode>.csv`.
pub fn write_reports(records: &[EvalRecord], mode: crate::eval::SelectionMode, out: &Path) -> Result<Vec<crate::eval::AggregateRow>> {
    let rows = aggregate(&select_hyperparams(records, mode)?, mode)?;
    write_file(&out.join(aggregate_file(mode)), |b| write_aggregate_csv(&rows, b))?;
    Ok(rows)
}
