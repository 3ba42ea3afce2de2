// Sample a sparse stable VAR, simulate it and print the ground truth.
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tscd_bench::generators::{sample_var_system, simulate_var, var_ground_truth, NoiseSpec, VarSampling, VarSimOptions};

fn main() -> tscd_bench::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let params = VarSampling::new(6);
    let system = sample_var_system(&params, NoiseSpec::gaussian(1.0), &mut rng)?;
    println!("companion spectral radius: {:.4}", system.spectral_radius()?);

    let graph = var_ground_truth(&system);
    for q in 0..graph.d() {
        println!("parents of x{q}: {:?}", graph.parents(q));
    }

    let data = simulate_var(&system, 500, &VarSimOptions::default(), &mut rng)?;
    println!("simulated {} x {}", data.len(), data.width());
    for t in 0..3 {
        let row: Vec<String> = data.row(t).iter().map(|v| format!("{v:+.3}")).collect();
        println!("t={t}: {}", row.join(" "));
    }
    Ok(())
}
