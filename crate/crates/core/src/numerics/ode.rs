use crate::error::{Error, Result};

/// One classical fourth-order Runge–Kutta step of `ẋ = f(x)`.
///
/// `f(x, out)` writes the derivative at `x` into `out`.
pub fn rk4_step<F>(f: F, x: &[f64], dt: f64) -> Result<Vec<f64>>
where
    F: Fn(&[f64], &mut [f64]),
{
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("rk4 step must be > 0, got {dt}")));
    }
    let n = x.len();
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut tmp = vec![0.0; n];

    eval(&f, x, &mut k1)?;
    for i in 0..n {
        tmp[i] = x[i] + 0.5 * dt * k1[i];
    }
    eval(&f, &tmp, &mut k2)?;
    for i in 0..n {
        tmp[i] = x[i] + 0.5 * dt * k2[i];
    }
    eval(&f, &tmp, &mut k3)?;
    for i in 0..n {
        tmp[i] = x[i] + dt * k3[i];
    }
    eval(&f, &tmp, &mut k4)?;

    Ok((0..n)
        .map(|i| x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect())
}

fn eval<F: Fn(&[f64], &mut [f64])>(f: &F, x: &[f64], out: &mut [f64]) -> Result<()> {
    f(x, out);
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("vector field derivative".into()));
    }
    Ok(())
}
