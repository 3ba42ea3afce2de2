// Lorenz-96 with RK4: the noise-free trajectory, a noisy recording and a
// quick check of the fourth-order step-halving behaviour.
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tscd_bench::generators::{lorenz96_ground_truth, lorenz96_trajectory, simulate_lorenz96, Lorenz96Options, Lorenz96Spec};

fn terminal(substeps: usize) -> tscd_bench::Result<Vec<f64>> {
    let mut spec = Lorenz96Spec::new(10, 8.0);
    spec.burn_in = 0;
    spec.substeps = substeps;
    let traj = lorenz96_trajectory(&spec, 21, None)?;
    Ok(traj.row(20).to_vec())
}

fn main() -> tscd_bench::Result<()> {
    let spec = Lorenz96Spec::new(10, 10.0);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let data = simulate_lorenz96(&spec, 1000, &Lorenz96Options::default(), &mut rng)?;
    let col = data.column(0);
    let mean = col.iter().sum::<f64>() / col.len() as f64;
    println!("x0 mean over 1000 samples: {mean:.3}");
    println!("parents of x3: {:?}", lorenz96_ground_truth(10)?.parents(3));

    // horizon 1 (20 samples of 0.05) at shrinking internal steps
    let reference = terminal(40)?;
    let mut prev_err: Option<f64> = None;
    for substeps in [5, 10, 20] {
        let x = terminal(substeps)?;
        let err = x.iter().zip(&reference).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        match prev_err {
            Some(p) => println!("dt={:.5} err={err:.3e} order={:.2}", 0.05 / substeps as f64, (p / err).log2()),
            None => println!("dt={:.5} err={err:.3e}", 0.05 / substeps as f64),
        }
        prev_err = Some(err);
    }
    Ok(())
}
