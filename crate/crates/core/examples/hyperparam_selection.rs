// The three reporting protocols applied to a hand-made set of results.
use tscd_bench::eval::{aggregate, select_hyperparams, EvalRecord, SelectionMode};

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
        config_json: format!("{{\"id\":{config_id}}}"),
        auroc: Some((auprc + 1.0) / 2.0),
        auprc: Some(auprc),
    }
}

fn main() -> tscd_bench::Result<()> {
    let mut records = Vec::new();
    for seed in 0..3 {
        let jitter = seed as f64 * 0.01;
        records.push(rec("vanilla", seed, 0, 0.9 + jitter));
        records.push(rec("vanilla", seed, 1, 0.6 + jitter));
        records.push(rec("missing", seed, 0, 0.1 + jitter));
        records.push(rec("missing", seed, 1, 0.6 + jitter));
    }
    for mode in SelectionMode::ALL {
        println!("== {}", mode.name());
        for row in aggregate(&select_hyperparams(&records, mode)?, mode)? {
            println!(
                "  {:<8} auprc {:5.1} ± {:4.1} (n={})",
                row.scenario, row.mean_auprc, row.std_auprc, row.n
            );
        }
    }
    Ok(())
}
