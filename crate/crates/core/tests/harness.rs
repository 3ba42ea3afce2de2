use std::fs;
use std::path::Path;
use std::process::Command;

use tscd_bench::eval::{auprc, auroc, read_results_csv, SelectionMode};
use tscd_bench::harness::{
    aggregate_file, load_dataset, plan_trials, run_experiment, ExperimentConfig, Manifest, MANIFEST_FILE, RESULTS_FILE,
};
use tscd_bench::methods::{run_method, MethodConfig};

const SMALL: &str = r#"{
    "bases": [{"model": "linear", "d": [5], "t": [300]}],
    "scenarios": [{"kind": "vanilla"}, {"kind": "measurement_error", "alpha": 1.2}],
    "seeds": [0, 1, 2, 3, 4],
    "methods": [{"method": "pcmci", "tau_max": [2], "alpha_sig": [0.01, 0.05, 0.1]}]
}"#;

fn config(text: &str, out: &Path) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::from_json(text).unwrap();
    cfg.out = out.to_path_buf();
    cfg
}

#[test]
fn grid_rows_are_counted_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let summary = run_experiment(&config(SMALL, dir.path())).unwrap();
    assert_eq!(summary.records.len(), 30);
    let text = fs::read_to_string(dir.path().join(RESULTS_FILE)).unwrap();
    assert_eq!(text.lines().count(), 31);
    for mode in SelectionMode::ALL {
        assert!(dir.path().join(aggregate_file(mode)).exists());
    }
    let manifest: Manifest = serde_json::from_str(&fs::read_to_string(dir.path().join(MANIFEST_FILE)).unwrap()).unwrap();
    assert_eq!((manifest.trials, manifest.records), (10, 30));
    assert_eq!(manifest.config_hash, summary.manifest.config_hash);
}

#[test]
fn empty_method_list_is_rejected() {
    let text = SMALL.replace(
        r#"[{"method": "pcmci", "tau_max": [2], "alpha_sig": [0.01, 0.05, 0.1]}]"#,
        "[]",
    );
    let cfg = ExperimentConfig::from_json(&text).unwrap();
    let err = cfg.validate().unwrap_err().to_string();
    assert!(err.contains("methods"), "{err}");
}

#[test]
fn worker_count_does_not_change_results() {
    let text = r#"{
        "bases": [{"model": "linear", "d": [5], "t": [300]}, {"model": "nonlinear", "d": [5], "t": [300], "f": [10]}],
        "scenarios": [{"kind": "vanilla"}, {"kind": "missing"}, {"kind": "trend_season"}, {"kind": "tv_coefficients"}],
        "seeds": [0, 1, 2],
        "methods": [
            {"method": "var", "tau_max": [2], "threshold": [0.1]},
            {"method": "lgc", "tau_max": [2], "threshold": [0.1], "lambda": [0.001, 0.05]},
            {"method": "pcmci", "tau_max": [2], "alpha_sig": [0.05]}
        ]
    }"#;
    let serial = tempfile::tempdir().unwrap();
    let parallel = tempfile::tempdir().unwrap();
    let mut a = config(text, serial.path());
    a.jobs = 1;
    let mut b = config(text, parallel.path());
    b.jobs = 8;
    run_experiment(&a).unwrap();
    run_experiment(&b).unwrap();
    for name in [RESULTS_FILE.to_string(), aggregate_file(SelectionMode::BestPerDataset)] {
        let x = fs::read(serial.path().join(&name)).unwrap();
        let y = fs::read(parallel.path().join(&name)).unwrap();
        assert_eq!(x, y, "{name} differs");
    }
}

#[test]
fn persisted_datasets_reproduce_records() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{
        "bases": [{"model": "linear", "d": [4], "t": [250]}],
        "scenarios": [{"kind": "vanilla"}, {"kind": "mixed"}, {"kind": "nonstationary"}],
        "seeds": [7, 8],
        "methods": [
            {"method": "var", "tau_max": [2], "threshold": [0.05]},
            {"method": "lgc", "tau_max": [2], "threshold": [0.05], "lambda": [0.01]},
            {"method": "pcmci", "tau_max": [2], "alpha_sig": [0.05]}
        ],
        "persist_datasets": true
    }"#;
    let cfg = config(text, dir.path());
    let summary = run_experiment(&cfg).unwrap();
    let trials = plan_trials(&cfg).unwrap();
    let mut checked = 0;
    for trial in &trials {
        let ds = load_dataset(&dir.path().join("datasets").join(trial.dir_name())).unwrap();
        let mine = summary.records.iter().filter(|r| {
            r.scenario == trial.scenario.name() && r.param == trial.scenario.param_label() && r.seed == trial.seed
        });
        for rec in mine {
            let method: MethodConfig = serde_json::from_str(&rec.config_json).unwrap();
            let scores = run_method(&ds.data, &method).unwrap().scores;
            let mut again = rec.clone();
            again.auroc = Some(auroc(&scores, &ds.graph).unwrap());
            again.auprc = Some(auprc(&scores, &ds.graph).unwrap());
            assert_eq!(&again.quantized(), rec);
            checked += 1;
        }
    }
    assert_eq!(checked, summary.records.len());
}

#[test]
fn hash_tracks_meaningful_fields_only() {
    let base = ExperimentConfig::from_json(SMALL).unwrap();
    let h = base.hash();

    let mut same = base.clone();
    same.out = "elsewhere".into();
    same.jobs = 16;
    same.persist_datasets = true;
    assert_eq!(same.hash(), h);
    // defaults spelled out explicitly describe the same experiment
    let explicit = SMALL.replacen('{', r#"{"master_seed": 0, "modes": ["best_per_dataset", "best_avg_scenarios", "all_hyper_aggregate"],"#, 1);
    assert_eq!(ExperimentConfig::from_json(&explicit).unwrap().hash(), h);

    let variants = [
        SMALL.replace("\"alpha\": 1.2", "\"alpha\": 1.3"),
        SMALL.replace("[0, 1, 2, 3, 4]", "[0, 1, 2, 3, 5]"),
        SMALL.replace("\"t\": [300]", "\"t\": [301]"),
        SMALL.replace("0.01, 0.05, 0.1", "0.01, 0.05"),
        SMALL.replacen('{', r#"{"master_seed": 3,"#, 1),
        SMALL.replacen('{', r#"{"modes": ["best_per_dataset"],"#, 1),
    ];
    for v in variants {
        assert_ne!(ExperimentConfig::from_json(&v).unwrap().hash(), h, "{v}");
    }
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_tscd-bench")).args(args).output().unwrap()
}

#[test]
fn cli_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("cfg.json");
    let text = r#"{
        "bases": [{"model": "linear", "d": [4], "t": [200]}],
        "scenarios": [{"kind": "vanilla"}, {"kind": "minmax"}, {"kind": "mixed"}, {"kind": "missing"}],
        "seeds": [0, 1],
        "methods": [{"method": "var", "tau_max": [2], "threshold": [0.1]}, {"method": "pcmci", "tau_max": [2], "alpha_sig": [0.05]}]
    }"#;
    fs::write(&cfg_path, text).unwrap();
    let out = dir.path().join("out");
    let (cfg_s, out_s) = (cfg_path.to_str().unwrap(), out.to_str().unwrap());

    let gen = cli(&["generate", "--config", cfg_s, "--out", out_s, "--seed", "5"]);
    assert!(gen.status.success(), "{}", String::from_utf8_lossy(&gen.stderr));
    let datasets: Vec<_> = fs::read_dir(out.join("datasets")).unwrap().collect();
    assert_eq!(datasets.len(), 8);

    let run = cli(&["run", "--config", cfg_s, "--out", out_s, "--seed", "5", "--jobs", "2"]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let records = read_results_csv(fs::File::open(out.join(RESULTS_FILE)).unwrap()).unwrap();
    assert_eq!(records.len(), 16);

    let report = cli(&["report", "--out", out_s, "--mode", "best_avg_scenarios"]);
    assert!(report.status.success());
    assert!(String::from_utf8_lossy(&report.stdout).contains("best_avg_scenarios"));

    let radar = cli(&["radar", "--out", out_s, "--mode", "best_per_dataset", "--metric", "auprc"]);
    assert!(radar.status.success(), "{}", String::from_utf8_lossy(&radar.stderr));
    let svg = fs::read_to_string(out.join("radar_best_per_dataset_auprc.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));

    // score a persisted matrix against its graph
    let cfg = ExperimentConfig::from_json(text).unwrap();
    let first = &plan_trials(&cfg).unwrap()[0];
    let trial_dir = out.join("datasets").join(first.dir_name());
    let ds = load_dataset(&trial_dir).unwrap();
    let scores = run_method(&ds.data, &MethodConfig::Var { tau_max: 2, threshold: 0.1 }).unwrap().scores;
    let scores_path = dir.path().join("scores.csv");
    scores.save(&scores_path).unwrap();
    let eval = cli(&[
        "evaluate",
        "--scores",
        scores_path.to_str().unwrap(),
        "--graph",
        trial_dir.join("graph.json").to_str().unwrap(),
    ]);
    assert!(eval.status.success(), "{}", String::from_utf8_lossy(&eval.stderr));
    let v: serde_json::Value = serde_json::from_slice(&eval.stdout).unwrap();
    let want = auroc(&scores, &ds.graph).unwrap() * 100.0;
    assert!((v["auroc"].as_f64().unwrap() - want).abs() < 1e-9);

    let bad = cli(&["run", "--config", dir.path().join("missing.json").to_str().unwrap()]);
    assert!(!bad.status.success());
}
