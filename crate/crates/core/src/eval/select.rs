use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::record::setting_cmp;
use super::{AggregateRow, EvalRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionMode {
    /// Per scenario and setting, the config with the best mean AUPRC.
    BestPerDataset,
    /// Per setting, one config maximizing AUPRC averaged over scenarios.
    BestAvgScenarios,
    /// Every config pooled.
    AllHyperAggregate,
}

impl SelectionMode {
    pub const ALL: [SelectionMode; 3] = [
        SelectionMode::BestPerDataset,
        SelectionMode::BestAvgScenarios,
        SelectionMode::AllHyperAggregate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SelectionMode::BestPerDataset => "best_per_dataset",
            SelectionMode::BestAvgScenarios => "best_avg_scenarios",
            SelectionMode::AllHyperAggregate => "all_hyper_aggregate",
        }
    }
}

impl std::str::FromStr for SelectionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown selection mode '{s}'")))
    }
}

/// `(d, t, f bits)`; F is positive so bit order is numeric order.
type Setting = (usize, usize, Option<u64>);

fn setting(r: &EvalRecord) -> Setting {
    (r.d, r.t, r.f.map(f64::to_bits))
}

fn describe(s: &Setting) -> String {
    let f = s.2.map(|b| f64::from_bits(b).to_string()).unwrap_or_else(|| "-".into());
    format!("d={} t={} f={f}", s.0, s.1)
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn sample_std(values: &[f64]) -> f64 {
    // identical values: avoid rounding noise from the mean
    if values.windows(2).all(|w| w[0] == w[1]) {
        return 0.0;
    }
    let m = mean(values);
    (values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (values.len() - 1) as f64).sqrt()
}

/// Every config of a method must be present for every (scenario, seed) that
/// method was run on within a setting.
fn check_coverage(records: &[EvalRecord]) -> Result<()> {
    let mut configs: BTreeMap<(Setting, &str), BTreeSet<usize>> = BTreeMap::new();
    let mut cells: BTreeMap<(Setting, &str), BTreeSet<(String, u64)>> = BTreeMap::new();
    let mut present = BTreeSet::new();
    for r in records {
        let key = (setting(r), r.method.as_str());
        configs.entry(key).or_default().insert(r.config_id);
        cells.entry(key).or_default().insert((r.scenario_label(), r.seed));
        present.insert((setting(r), r.method.as_str(), r.scenario_label(), r.seed, r.config_id));
    }
    for (key, ids) in &configs {
        for (label, seed) in &cells[key] {
            for &id in ids {
                if !present.contains(&(key.0, key.1, label.clone(), *seed, id)) {
                    return Err(Error::Coverage(format!(
                        "method {} config {id} has no record for scenario {label}, seed {seed}, {}",
                        key.1,
                        describe(&key.0)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Mean AUPRC per config over the given records; configs whose trials are
/// all sentinels score −∞.
fn mean_auprc_by_config<'a>(records: impl Iterator<Item = &'a EvalRecord>) -> BTreeMap<usize, f64> {
    let mut vals: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for r in records {
        let entry = vals.entry(r.config_id).or_default();
        if let Some(v) = r.auprc {
            entry.push(v);
        }
    }
    vals.into_iter()
        .map(|(id, v)| (id, if v.is_empty() { f64::NEG_INFINITY } else { mean(&v) }))
        .collect()
}

/// Highest score wins; ties go to the smallest config id.
fn argmax(scores: &BTreeMap<usize, f64>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (&id, &s) in scores {
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((id, s));
        }
    }
    best.map(|b| b.0)
}

/// Filters `records` down to the configs `mode` reports.
pub fn select_hyperparams(records: &[EvalRecord], mode: SelectionMode) -> Result<Vec<EvalRecord>> {
    check_coverage(records)?;
    let keep: BTreeSet<(String, Setting, String, usize)> = match mode {
        SelectionMode::AllHyperAggregate => return Ok(records.to_vec()),
        SelectionMode::BestPerDataset => {
            let mut groups: BTreeMap<(String, Setting, String), Vec<&EvalRecord>> = BTreeMap::new();
            for r in records {
                groups
                    .entry((r.scenario_label(), setting(r), r.method.clone()))
                    .or_default()
                    .push(r);
            }
            groups
                .into_iter()
                .filter_map(|((label, s, m), rs)| {
                    argmax(&mean_auprc_by_config(rs.into_iter())).map(|id| (label, s, m, id))
                })
                .collect()
        }
        SelectionMode::BestAvgScenarios => {
            let mut groups: BTreeMap<(Setting, String), Vec<&EvalRecord>> = BTreeMap::new();
            for r in records {
                groups.entry((setting(r), r.method.clone())).or_default().push(r);
            }
            let mut keep = BTreeSet::new();
            for ((s, m), rs) in groups {
                let labels: BTreeSet<String> = rs.iter().map(|r| r.scenario_label()).collect();
                let mut per_config: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
                for label in &labels {
                    let means = mean_auprc_by_config(rs.iter().copied().filter(|r| &r.scenario_label() == label));
                    for (id, v) in means {
                        per_config.entry(id).or_default().push(v);
                    }
                }
                let avg: BTreeMap<usize, f64> = per_config.into_iter().map(|(id, v)| (id, mean(&v))).collect();
                if let Some(id) = argmax(&avg) {
                    for label in labels {
                        keep.insert((label, s, m.clone(), id));
                    }
                }
            }
            keep
        }
    };
    Ok(records
        .iter()
        .filter(|r| keep.contains(&(r.scenario_label(), setting(r), r.method.clone(), r.config_id)))
        .cloned()
        .collect())
}

/// Mean and sample standard deviation (×100) per (scenario, setting, method).
/// Sentinel records are left out of the statistics; groups with no valid
/// record produce no row.
pub fn aggregate(records: &[EvalRecord], mode: SelectionMode) -> Result<Vec<AggregateRow>> {
    if records.is_empty() {
        return Err(Error::InvalidArgument("nothing to aggregate".into()));
    }
    let mut groups: BTreeMap<(String, Setting, String), (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for r in records {
        let entry = groups
            .entry((r.scenario_label(), setting(r), r.method.clone()))
            .or_default();
        if let (Some(a), Some(p)) = (r.auroc, r.auprc) {
            entry.0.push(a * 100.0);
            entry.1.push(p * 100.0);
        }
    }
    let mut rows: Vec<AggregateRow> = groups
        .into_iter()
        .filter(|(_, (a, _))| !a.is_empty())
        .map(|((label, s, method), (a, p))| AggregateRow {
            scenario: label,
            d: s.0,
            t: s.1,
            f: s.2.map(f64::from_bits),
            method,
            mode: mode.name().to_string(),
            mean_auroc: mean(&a),
            std_auroc: sample_std(&a),
            mean_auprc: mean(&p),
            std_auprc: sample_std(&p),
            n: a.len(),
        })
        .collect();
    rows.sort_by(|x, y| {
        x.scenario
            .cmp(&y.scenario)
            .then_with(|| setting_cmp((x.d, x.t, x.f), (y.d, y.t, y.f)))
            .then_with(|| x.method.cmp(&y.method))
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(scenario: &str, seed: u64, config_id: usize, auprc: f64) -> EvalRecord {
        EvalRecord {
            scenario: scenario.into(),
            param: String::new(),
            d: 10,
            t: 1000,
            f: None,
            seed,
            method: "var".into(),
            config_id,
            config_json: "{}".into(),
            auroc: Some(auprc),
            auprc: Some(auprc),
        }
    }

    #[test]
    fn aggregate_arithmetic() {
        let rs: Vec<_> = [0.1, 0.2, 0.3].iter().enumerate().map(|(i, &v)| rec("vanilla", i as u64, 0, v)).collect();
        let rows = aggregate(&rs, SelectionMode::AllHyperAggregate).unwrap();
        assert_eq!(rows.len(), 1);
        assert!((rows[0].mean_auprc - 20.0).abs() < 1e-12);
        assert!((rows[0].std_auprc - 10.0).abs() < 1e-12);
        let one = aggregate(&[rec("vanilla", 0, 0, 0.5)], SelectionMode::BestPerDataset).unwrap();
        assert_eq!((one[0].mean_auroc, one[0].std_auroc, one[0].n), (50.0, 0.0, 1));
        let same: Vec<_> = (0..3).map(|s| rec("vanilla", s, 0, 1.0)).collect();
        let rows = aggregate(&same, SelectionMode::BestPerDataset).unwrap();
        assert_eq!((rows[0].mean_auroc, rows[0].std_auroc), (100.0, 0.0));
        assert!(aggregate(&[], SelectionMode::BestPerDataset).is_err());
    }

    #[test]
    fn best_per_dataset_is_argmax() {
        let rs = vec![rec("vanilla", 0, 0, 0.5), rec("vanilla", 0, 1, 0.9), rec("vanilla", 0, 2, 0.7)];
        let kept = select_hyperparams(&rs, SelectionMode::BestPerDataset).unwrap();
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].config_id, 1);
    }

    #[test]
    fn best_avg_scenarios_averages() {
        let rs = vec![
            rec("vanilla", 0, 0, 0.9),
            rec("minmax", 0, 0, 0.1),
            rec("vanilla", 0, 1, 0.6),
            rec("minmax", 0, 1, 0.6),
        ];
        let kept = select_hyperparams(&rs, SelectionMode::BestAvgScenarios).unwrap();
        assert!(kept.iter().all(|r| r.config_id == 1));
        assert_eq!(kept.len(), 2);
        let per = select_hyperparams(&rs, SelectionMode::BestPerDataset).unwrap();
        let chosen: BTreeSet<_> = per.iter().map(|r| (r.scenario.clone(), r.config_id)).collect();
        assert!(chosen.contains(&("vanilla".to_string(), 0)));
        assert!(chosen.contains(&("minmax".to_string(), 1)));
    }

    #[test]
    fn single_config_modes_coincide() {
        let rs: Vec<_> = (0..3).map(|s| rec("vanilla", s, 0, 0.3 + s as f64 / 10.0)).collect();
        let out: Vec<_> = SelectionMode::ALL
            .iter()
            .map(|&m| {
                let mut rows = aggregate(&select_hyperparams(&rs, m).unwrap(), m).unwrap();
                rows[0].mode.clear();
                rows
            })
            .collect();
        assert_eq!(out[0], out[1]);
        assert_eq!(out[1], out[2]);
    }

    #[test]
    fn coverage_hole_is_named() {
        let rs = vec![rec("vanilla", 0, 0, 0.5), rec("vanilla", 0, 1, 0.9), rec("vanilla", 1, 0, 0.7)];
        let err = select_hyperparams(&rs, SelectionMode::BestPerDataset).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("config 1") && msg.contains("seed 1"), "{msg}");
    }

    #[test]
    fn sentinels_are_excluded_from_stats() {
        let mut bad = rec("vanilla", 1, 0, 0.0);
        bad.auroc = None;
        bad.auprc = None;
        let rows = aggregate(&[rec("vanilla", 0, 0, 0.4), bad], SelectionMode::AllHyperAggregate).unwrap();
        assert_eq!(rows[0].n, 1);
    }

    #[test]
    fn mode_names_parse() {
        for m in SelectionMode::ALL {
            assert_eq!(m.name().parse::<SelectionMode>().unwrap(), m);
        }
    }
}
