// A small experiment grid run end to end: results, aggregates, manifest, radar.
use tscd_bench::eval::SelectionMode;
use tscd_bench::harness::{
    render_radar, run_experiment, write_reports, BaseEntry, ExperimentConfig, MethodEntry, RadarMetric, ScenarioEntry,
    SettingFilter,
};
use tscd_bench::methods::MethodKind;

fn main() -> tscd_bench::Result<()> {
    let out = std::env::temp_dir().join("tscd-bench-run-grid");
    let cfg = ExperimentConfig {
        bases: vec![BaseEntry::Linear { d: vec![6], t: vec![500], parents_per_var: None, noise_scale: None }],
        scenarios: ["vanilla", "minmax", "standardized", "missing", "measurement_error"]
            .into_iter()
            .map(ScenarioEntry::new)
            .collect(),
        seeds: vec![0, 1, 2],
        master_seed: 0,
        methods: vec![
            MethodEntry { tau_max: Some(vec![3]), ..MethodEntry::new(MethodKind::Var) },
            MethodEntry { tau_max: Some(vec![3]), alpha_sig: Some(vec![0.05]), ..MethodEntry::new(MethodKind::Pcmci) },
        ],
        out: out.clone(),
        jobs: 2,
        modes: vec![SelectionMode::BestPerDataset],
        persist_datasets: false,
    };
    let summary = run_experiment(&cfg)?;
    println!("{} records, config hash {}", summary.records.len(), summary.manifest.config_hash);

    let rows = write_reports(&summary.records, SelectionMode::BestPerDataset, &out)?;
    for r in &rows {
        println!("{:<28} {:<6} auroc {:5.1}", r.scenario, r.method, r.mean_auroc);
    }
    let svg = render_radar(&rows, RadarMetric::Auroc, &SettingFilter::default())?;
    let path = out.join("radar.svg");
    std::fs::write(&path, svg).expect("write radar");
    println!("outputs in {}", out.display());
    Ok(())
}
