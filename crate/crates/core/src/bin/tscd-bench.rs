use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tscd_bench::eval::{auprc, auroc, read_aggregate_csv, read_results_csv, AggregateRow, SelectionMode};
use tscd_bench::generators::CausalGraph;
use tscd_bench::harness::{
    aggregate_file, plan_trials, render_radar, run_experiment, save_dataset, write_reports, ExperimentConfig,
    RadarMetric, SettingFilter, RESULTS_FILE,
};
use tscd_bench::methods::ScoreMatrix;
use tscd_bench::misspec::build_dataset;
use tscd_bench::{Error, Result};

#[derive(Parser)]
#[command(name = "tscd-bench", version, about = "Robustness benchmark for time-series causal discovery")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config (JSON)
    #[arg(long)]
    config: PathBuf,
    /// Output directory, overrides the config
    #[arg(long)]
    out: Option<PathBuf>,
    /// Master seed, overrides the config
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Write every dataset and ground-truth graph of the grid
    Generate(RunArgs),
    /// Run the full experiment
    Run {
        #[command(flatten)]
        args: RunArgs,
        /// Worker threads, overrides the config
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Score a persisted score matrix against a persisted graph
    Evaluate {
        #[arg(long)]
        scores: PathBuf,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Re-aggregate results.csv for one or all selection modes
    Report {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        mode: Option<SelectionMode>,
    },
    /// Draw a radar chart from an aggregate CSV
    Radar {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "best_per_dataset")]
        mode: SelectionMode,
        #[arg(long, default_value = "auroc")]
        metric: RadarMetric,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        f: Option<f64>,
    },
}

fn load_config(args: &RunArgs) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if let Some(out) = &args.out {
        cfg.out = out.clone();
    }
    if let Some(seed) = args.seed {
        cfg.master_seed = seed;
    }
    Ok(cfg)
}

fn print_rows(rows: &[AggregateRow]) {
    println!(
        "{:<40} {:>4} {:>5} {:>5} {:<6} {:>15} {:>15} {:>3}",
        "scenario", "d", "t", "f", "method", "auroc", "auprc", "n"
    );
    for r in rows {
        let f = r.f.map(|f| f.to_string()).unwrap_or_else(|| "-".into());
        println!(
            "{:<40} {:>4} {:>5} {:>5} {:<6} {:>7.1} ± {:<5.1} {:>7.1} ± {:<5.1} {:>3}",
            r.scenario, r.d, r.t, f, r.method, r.mean_auroc, r.std_auroc, r.mean_auprc, r.std_auprc, r.n
        );
    }
}

fn read_file(path: &Path) -> Result<std::fs::File> {
    std::fs::File::open(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(args) => {
            let cfg = load_config(&args)?;
            cfg.validate()?;
            let root = cfg.out.join("datasets");
            let trials = plan_trials(&cfg)?;
            for trial in &trials {
                let ds = build_dataset(&trial.spec(), trial.data_seed)?;
                save_dataset(&ds, &root.join(trial.dir_name()))?;
            }
            eprintln!("wrote {} datasets under {}", trials.len(), root.display());
        }
        Command::Run { args, jobs } => {
            let mut cfg = load_config(&args)?;
            if let Some(j) = jobs {
                cfg.jobs = j;
            }
            let summary = run_experiment(&cfg)?;
            eprintln!(
                "{} trials, {} records ({} sentinel) -> {}",
                summary.manifest.trials,
                summary.manifest.records,
                summary.manifest.sentinel_records,
                summary.out.display()
            );
        }
        Command::Evaluate { scores, graph } => {
            let s = ScoreMatrix::load(&scores)?;
            let g = CausalGraph::load(&graph)?;
            let out = serde_json::json!({
                "auroc": auroc(&s, &g)? * 100.0,
                "auprc": auprc(&s, &g)? * 100.0,
            });
            println!("{out}");
        }
        Command::Report { out, mode } => {
            let records = read_results_csv(read_file(&out.join(RESULTS_FILE))?)?;
            let modes = mode.map_or_else(|| SelectionMode::ALL.to_vec(), |m| vec![m]);
            for m in modes {
                println!("== {}", m.name());
                print_rows(&write_reports(&records, m, &out)?);
            }
        }
        Command::Radar {
            out,
            mode,
            metric,
            d,
            t,
            f,
        } => {
            let rows = read_aggregate_csv(read_file(&out.join(aggregate_file(mode)))?)?;
            let svg = render_radar(&rows, metric, &SettingFilter { d, t, f })?;
            let name = format!(
                "radar_{}_{}.svg",
                mode.name(),
                match metric {
                    RadarMetric::Auroc => "auroc",
                    RadarMetric::Auprc => "auprc",
                }
            );
            let path = out.join(name);
            std::fs::write(&path, svg).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
