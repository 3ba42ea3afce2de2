// Smooth positive noise scales from a squared-exponential GP on the log scale.
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tscd_bench::misspec::make_nonstationary_scales;
use tscd_bench::numerics::{GpSampler, GpSpec};

fn main() -> tscd_bench::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let spec = GpSpec::new(0.0, 1.0, 10.0, 200)?;
    let sampler = GpSampler::new(spec)?;

    // empirical covariance of two time points against the kernel
    let draws: Vec<Vec<f64>> = (0..5000).map(|_| sampler.sample_log(&mut rng)).collect();
    let k = spec.kernel();
    for (a, b) in [(0, 0), (50, 55), (50, 70)] {
        let cov = draws.iter().map(|g| g[a] * g[b]).sum::<f64>() / draws.len() as f64;
        println!("cov({a},{b}) = {cov:.3}  kernel {:.3}", k[(a, b)]);
    }

    let scales = make_nonstationary_scales(3, 100, 1.0, 1.0, 20.0, &mut rng)?;
    let row: Vec<String> = (0..10).map(|t| format!("{:.2}", scales[(0, t)])).collect();
    println!("first scales of variable 0: {}", row.join(" "));
    Ok(())
}
