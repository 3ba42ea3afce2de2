//! Experiment orchestration: config files, the grid runner, persisted
//! outputs and radar charts.

mod config;
mod radar;
mod run;

pub use config::{BaseEntry, ExperimentConfig, MethodEntry, ScenarioEntry, Setting};
pub use radar::{render_radar, RadarMetric, SettingFilter, CHART_RADIUS, RADAR_AXES};
pub use run::{
    aggregate_file, derive_data_seed, evaluate_trial, load_dataset, plan_trials, run_experiment, save_dataset,
    write_reports, Manifest, RunSummary, Trial, MANIFEST_FILE, RESULTS_FILE,
};
