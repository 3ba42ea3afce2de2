// Reference values computed independently of the library code paths.
mod common;

use common::{normals, rng};
use rand::Rng;
use tscd_bench::eval::{auprc_ranked, auroc_ranked};
use tscd_bench::generators::{
    sample_var_system, simulate_var, var_ground_truth, NoiseSpec, TimeSeriesMatrix, VarSampling, VarSimOptions,
    VarSystem,
};
use tscd_bench::methods::{
    build_lag_design, lasso_coordinate_descent, pcmci, run_method, LassoOptions, MethodConfig,
};
use tscd_bench::misspec::{add_measurement_error, attach_confounders, make_nonstationary_scales, BaseSetup};
use tscd_bench::numerics::{
    companion_matrix, ols_fit, partial_correlation, spectral_radius, GpSampler, GpSpec, Matrix,
};
use tscd_bench::Error;

fn random_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    Matrix::from_vec(rows, cols, normals(&mut rng(seed), rows * cols)).unwrap()
}

fn variance(col: &[f64]) -> f64 {
    let m = col.iter().sum::<f64>() / col.len() as f64;
    col.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / col.len() as f64
}

fn correlation(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let cov: f64 = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
    cov / (va * vb).sqrt()
}

#[test]
fn ols_agrees_with_normal_equations() {
    let x = random_matrix(50, 5, 11);
    let y = normals(&mut rng(12), 50);
    let fit = ols_fit(&x, &y).unwrap();
    let reference = common::ols_normal_equations(&x, &y);
    for (a, b) in fit.coefficients.iter().zip(&reference) {
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }
}

#[test]
fn gp_log_scale_covariance_matches_kernel() {
    let spec = GpSpec::new(0.0, 1.0, 10.0, 200).unwrap();
    let kernel = spec.kernel();
    let sampler = GpSampler::new(spec).unwrap();
    let mut r = rng(3);
    let draws = 10_000;
    let n = 200;
    let mut sum = vec![0.0; n];
    let mut cross = vec![0.0; n * n];
    for _ in 0..draws {
        let g = sampler.sample_log(&mut r);
        for i in 0..n {
            sum[i] += g[i];
            let gi = g[i];
            let row = &mut cross[i * n..(i + 1) * n];
            for j in 0..n {
                row[j] += gi * g[j];
            }
        }
    }
    let k = draws as f64;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let cov = cross[i * n + j] / k - (sum[i] / k) * (sum[j] / k);
            worst = worst.max((cov - kernel[(i, j)]).abs());
        }
    }
    assert!(worst < 0.05, "worst covariance error {worst}");
}

#[test]
fn independent_pearson_is_calibrated() {
    let z = Matrix::zeros(500, 0);
    let mut p_values = Vec::new();
    for seed in 0..400 {
        let mut r = rng(1000 + seed);
        let x = normals(&mut r, 500);
        let y = normals(&mut r, 500);
        let pc = partial_correlation(&x, &y, &z).unwrap();
        assert!(pc.r.abs() < 0.15);
        p_values.push(pc.p_value);
    }
    // roughly uniform: mean near 1/2, tail rate near its nominal level
    let mean = p_values.iter().sum::<f64>() / p_values.len() as f64;
    let tail = p_values.iter().filter(|&&p| p < 0.1).count() as f64 / p_values.len() as f64;
    assert!((mean - 0.5).abs() < 0.05, "mean p {mean}");
    assert!((tail - 0.1).abs() < 0.05, "rejection rate {tail}");
}

#[test]
fn conditioning_on_common_driver_removes_correlation() {
    let mut r = rng(5);
    let z = normals(&mut r, 2000);
    let x: Vec<f64> = z.iter().map(|v| v + r.sample::<f64, _>(rand_distr::StandardNormal)).collect();
    let y: Vec<f64> = z.iter().map(|v| v + r.sample::<f64, _>(rand_distr::StandardNormal)).collect();
    let zm = Matrix::from_vec(2000, 1, z).unwrap();
    let pc = partial_correlation(&x, &y, &zm).unwrap();
    assert!(pc.r.abs() < 0.1, "{}", pc.r);
    assert!((pc.r - common::partial_corr_precision(&x, &y, &zm)).abs() < 1e-10);
}

#[test]
fn partial_correlation_agrees_with_precision_matrix() {
    for seed in 0..20 {
        let z = random_matrix(120, 3, 50 + seed);
        let mut r = rng(80 + seed);
        let x: Vec<f64> = (0..120).map(|i| z[(i, 0)] - 0.5 * z[(i, 2)] + r.sample::<f64, _>(rand_distr::StandardNormal)).collect();
        let y: Vec<f64> = (0..120).map(|i| 0.3 * x[i] + z[(i, 1)] + r.sample::<f64, _>(rand_distr::StandardNormal)).collect();
        let got = partial_correlation(&x, &y, &z).unwrap().r;
        let want = common::partial_corr_precision(&x, &y, &z);
        assert!((got - want).abs() < 1e-10, "{got} vs {want}");
    }
}

#[test]
fn lag_zero_covariance_matches_lyapunov_solution() {
    let a = Matrix::from_rows(&[vec![0.5, 0.0], vec![0.3, 0.4]]).unwrap();
    let sys = VarSystem::new(vec![a.clone()], vec![NoiseSpec::gaussian(1.0); 2], 0.95).unwrap();
    // fixed point of S = A S Aᵀ + I
    let mut s = Matrix::identity(2);
    for _ in 0..500 {
        let next = a.matmul(&s).unwrap().matmul(&a.transpose()).unwrap();
        s = Matrix::from_vec(2, 2, next.as_slice().iter().zip(Matrix::identity(2).as_slice()).map(|(x, y)| x + y).collect()).unwrap();
    }
    let x = simulate_var(&sys, 10_000, &VarSimOptions::default(), &mut rng(21)).unwrap();
    let cols = x.columns();
    for i in 0..2 {
        for j in 0..2 {
            let mi = cols[i].iter().sum::<f64>() / 1e4;
            let mj = cols[j].iter().sum::<f64>() / 1e4;
            let c = cols[i].iter().zip(&cols[j]).map(|(u, v)| (u - mi) * (v - mj)).sum::<f64>() / 1e4;
            let rel = (c - s[(i, j)]).abs() / s[(i, j)].abs();
            assert!(rel < 0.15, "entry ({i},{j}): {c} vs {}", s[(i, j)]);
        }
    }
}

#[test]
fn sampled_radius_is_capped_by_power_iteration() {
    for seed in 0..10 {
        let sys = sample_var_system(&VarSampling::new(10), NoiseSpec::gaussian(1.0), &mut rng(seed)).unwrap();
        let companion = companion_matrix(sys.coeffs()).unwrap();
        let by_power = common::power_iteration_radius(&companion, 6000);
        assert!(by_power <= 0.95 + 5e-3, "seed {seed}: {by_power}");
        let by_schur = spectral_radius(&companion).unwrap();
        assert!((by_power - by_schur).abs() < 5e-3, "seed {seed}: {by_power} vs {by_schur}");
    }
}

#[test]
fn sampled_systems_rarely_diverge() {
    let mut ok = 0;
    for seed in 0..200u64 {
        let mut r = rng(seed);
        let sys = sample_var_system(&VarSampling::new(10), NoiseSpec::gaussian(1.0), &mut r).unwrap();
        match simulate_var(&sys, 10_000, &VarSimOptions::default(), &mut r) {
            Ok(_) => ok += 1,
            Err(Error::Diverged { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(ok >= 198, "{ok}/200 completed");
}

#[test]
fn measurement_noise_has_requested_variance() {
    let sys = sample_var_system(&VarSampling::new(4), NoiseSpec::gaussian(1.0), &mut rng(8)).unwrap();
    let x = simulate_var(&sys, 10_000, &VarSimOptions::default(), &mut rng(9)).unwrap();
    let noisy = add_measurement_error(&x, 1.0, &mut rng(10)).unwrap();
    for i in 0..4 {
        let base = x.column(i);
        let diff: Vec<f64> = noisy.column(i).iter().zip(&base).map(|(a, b)| a - b).collect();
        let ratio = variance(&diff) / variance(&base);
        assert!((ratio - 1.0).abs() < 0.1, "column {i}: {ratio}");
    }
    let loud = add_measurement_error(&x, 10.0, &mut rng(11)).unwrap();
    for i in 0..4 {
        let ratio = variance(&loud.column(i)) / variance(&x.column(i));
        assert!((ratio / 11.0 - 1.0).abs() < 0.15, "column {i}: {ratio}");
    }
}

#[test]
fn scale_rows_are_independent() {
    let mut r = rng(17);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for _ in 0..5000 {
        let s = make_nonstationary_scales(2, 30, 1.0, 1.0, 20.0, &mut r).unwrap();
        a.push(s[(0, 15)].ln());
        b.push(s[(1, 15)].ln());
    }
    let c = correlation(&a, &b);
    assert!(c.abs() < 0.05, "{c}");
}

#[test]
fn confounded_pair_shows_spurious_cross_correlation() {
    let sampling = VarSampling::new(5);
    let mut r = rng(4);
    let system = sample_var_system(&sampling, NoiseSpec::gaussian(1.0), &mut r).unwrap();
    let base = BaseSetup::Var { system, sampling };
    let (setup, graph) = attach_confounders(&base, 1.0, 0.5, &mut r).unwrap();
    let x = setup.simulate(5000, &mut r).unwrap();
    let cols = x.columns();
    let lagged = |p: usize, q: usize, lag: usize| -> f64 {
        let n = cols[p].len() - lag;
        correlation(&cols[p][..n], &cols[q][lag..])
    };
    let mut best = 0.0f64;
    for link in setup.links() {
        let (p, q) = link.pair;
        if graph.has_edge(p, q) || graph.has_edge(q, p) {
            continue;
        }
        for lag in 0..=6 {
            best = best.max(lagged(p, q, lag).abs()).max(lagged(q, p, lag).abs());
        }
    }
    assert!(best > 0.2, "strongest spurious correlation {best}");
}

#[test]
fn var_scores_on_white_noise_stay_small() {
    let cfg = MethodConfig::Var { tau_max: 3, threshold: 0.0 };
    let (mut big, mut total) = (0, 0);
    for seed in 0..20 {
        let x = TimeSeriesMatrix::new(1000, 5, normals(&mut rng(300 + seed), 5000)).unwrap();
        let out = run_method(&x, &cfg).unwrap();
        let m = out.scores.as_matrix();
        big += m.as_slice().iter().filter(|&&s| s > 0.3).count();
        total += m.as_slice().len();
    }
    assert!(big as f64 <= 0.05 * total as f64, "{big}/{total}");
}

#[test]
fn converged_lasso_meets_optimality_conditions() {
    for seed in 0..10 {
        let x = random_matrix(200, 8, 400 + seed);
        let beta_true = [1.0, -0.5, 0.0, 0.0, 0.25, 0.0, 0.0, 0.8];
        let mut r = rng(500 + seed);
        let y: Vec<f64> = x
            .matvec(&beta_true)
            .unwrap()
            .into_iter()
            .map(|v| v + 0.5 * r.sample::<f64, _>(rand_distr::StandardNormal))
            .collect();
        for lambda in [0.001, 0.01, 0.05, 0.1, 0.3] {
            let fit = lasso_coordinate_descent(&x, &y, &LassoOptions::new(lambda)).unwrap();
            let v = common::kkt_violation(&x, &y, &fit.coefficients, lambda);
            assert!(v < 1e-5, "seed {seed} lambda {lambda}: {v}");
        }
    }
}

#[test]
fn unpenalized_lasso_equals_ols_on_standardized_lags() {
    let sys = sample_var_system(&VarSampling::new(3), NoiseSpec::gaussian(1.0), &mut rng(30)).unwrap();
    let x = simulate_var(&sys, 500, &VarSimOptions::default(), &mut rng(31)).unwrap();
    let design = build_lag_design(&x, 2).unwrap().standardized();
    let y = design.targets.column(0);
    let fit = lasso_coordinate_descent(&design.predictors, &y, &LassoOptions::new(0.0)).unwrap();
    // lasso has no intercept; centred predictors make the OLS slopes agree
    let mut with_icept = vec![vec![1.0; design.rows()]];
    with_icept.extend(design.predictors.transpose().as_slice().chunks(design.rows()).map(<[f64]>::to_vec));
    let refs: Vec<&[f64]> = with_icept.iter().map(Vec::as_slice).collect();
    let ols = common::ols_normal_equations(&Matrix::from_columns(&refs).unwrap(), &y);
    for (a, b) in fit.coefficients.iter().zip(&ols[1..]) {
        assert!((a - b).abs() < 1e-6, "{a} vs {b}");
    }
}

fn two_variable_link(seed: u64, coupling: f64) -> TimeSeriesMatrix {
    let mut r = rng(seed);
    let n = 1000;
    let e = normals(&mut r, 2 * (n + 50));
    let (mut x, mut y) = (vec![0.0; n + 50], vec![0.0; n + 50]);
    for t in 1..n + 50 {
        x[t] = 0.3 * x[t - 1] + e[2 * t];
        y[t] = 0.3 * y[t - 1] + coupling * x[t - 1] + e[2 * t + 1];
    }
    TimeSeriesMatrix::from_columns(&[x[50..].to_vec(), y[50..].to_vec()]).unwrap()
}

#[test]
fn pcmci_finds_strong_link_but_not_its_reverse() {
    let cfg = MethodConfig::Pcmci { tau_max: 1, alpha_sig: 0.05 };
    let (mut forward, mut reverse) = (0, 0);
    for seed in 0..50 {
        let out = pcmci(&two_variable_link(700 + seed, 0.8), &cfg).unwrap();
        forward += out.graph[0][1] as usize;
        reverse += out.graph[1][0] as usize;
    }
    assert!(forward >= 48, "forward {forward}/50");
    assert!(reverse <= 5, "reverse {reverse}/50");
}

#[test]
fn pcmci_rejection_rate_matches_level_under_independence() {
    let alpha = 0.05;
    let cfg = MethodConfig::Pcmci { tau_max: 2, alpha_sig: alpha };
    let (mut rejected, mut tested) = (0, 0);
    for seed in 0..50 {
        let x = TimeSeriesMatrix::new(500, 4, normals(&mut rng(900 + seed), 2000)).unwrap();
        let out = pcmci(&x, &cfg).unwrap();
        for lag_p in out.diagnostics.p_values.as_ref().unwrap() {
            for p in 0..4 {
                for q in 0..4 {
                    if p != q {
                        tested += 1;
                        rejected += (lag_p[(p, q)] <= alpha) as usize;
                    }
                }
            }
        }
    }
    let rate = rejected as f64 / tested as f64;
    assert!((rate - alpha).abs() <= 0.05, "rate {rate}");
}

fn random_instance(seed: u64) -> (Vec<f64>, Vec<bool>) {
    let mut r = rng(seed);
    loop {
        // coarse rounding forces ties
        let scores: Vec<f64> = (0..90).map(|_| (r.random::<f64>() * 20.0).floor() / 20.0).collect();
        let labels: Vec<bool> = (0..90).map(|_| r.random_bool(0.3)).collect();
        if labels.iter().any(|&l| l) && labels.iter().any(|&l| !l) {
            return (scores, labels);
        }
    }
}

#[test]
fn auroc_matches_pair_counting() {
    for seed in 0..1000 {
        let (s, l) = random_instance(seed);
        let got = auroc_ranked(&s, &l).unwrap();
        assert!((got - common::auroc_pairs(&s, &l)).abs() < 1e-12, "seed {seed}");
    }
}

#[test]
fn auprc_matches_threshold_sweep() {
    for seed in 0..1000 {
        let (s, l) = random_instance(5000 + seed);
        let got = auprc_ranked(&s, &l).unwrap();
        assert!((got - common::auprc_thresholds(&s, &l)).abs() < 1e-12, "seed {seed}");
    }
    assert_eq!(auprc_ranked(&[0.9, 0.1], &[false, true]).unwrap(), 0.5);
}

#[test]
fn ground_truth_summary_is_lag_or_of_window() {
    for seed in 0..30 {
        let sys = sample_var_system(&VarSampling::new(6), NoiseSpec::gaussian(1.0), &mut rng(seed)).unwrap();
        let g = var_ground_truth(&sys);
        let w = g.window().unwrap();
        for p in 0..6 {
            for q in 0..6 {
                assert_eq!(g.has_edge(p, q), w.iter().any(|layer| layer[p][q]));
            }
        }
    }
}
