// Lasso-Granger along a penalty path, plus the raw coordinate-descent solver.
use tscd_bench::eval::auprc;
use tscd_bench::methods::{build_lag_design, lasso_coordinate_descent, lasso_granger, LassoOptions, MethodConfig};
use tscd_bench::misspec::{build_dataset, BaseModel, Scenario, ScenarioSpec};

fn main() -> tscd_bench::Result<()> {
    let ds = build_dataset(&ScenarioSpec::new(BaseModel::linear(8), 1000, Scenario::Vanilla), 5)?;
    for lambda in [0.001, 0.01, 0.05, 0.1, 0.3] {
        let cfg = MethodConfig::Lgc { tau_max: 3, threshold: 0.0, lambda };
        let out = lasso_granger(&ds.data, &cfg)?;
        let kept = out.graph.iter().flatten().filter(|&&e| e).count();
        println!(
            "lambda {lambda:<6} nonzero links {kept:>2}  sweeps {:?}  auprc {:.3}",
            out.diagnostics.lasso_sweeps,
            auprc(&out.scores, &ds.graph)?
        );
    }

    let design = build_lag_design(&ds.data, 2)?;
    let opts = LassoOptions { track_objective: true, ..LassoOptions::new(0.05) };
    let fit = lasso_coordinate_descent(&design.predictors, &design.targets.column(0), &opts)?;
    println!("objective {:.5} -> {:.5} in {} sweeps", fit.objective[0], fit.objective.last().unwrap(), fit.sweeps);
    Ok(())
}
