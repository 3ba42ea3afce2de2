use crate::error::{Error, Result};
use crate::generators::TimeSeriesMatrix;
use crate::numerics::{partial_correlation, Matrix, PartialCorrelation};

use super::{collapse_window, Diagnostics, MethodConfig, MethodOutput};

/// Largest conditioning-set size tried during parent selection.
const MAX_CONDITIONS: usize = 3;

type Link = (usize, usize);

/// Lagged views of the series over the common sample `t ∈ [2τ, T)`, which
/// leaves room for parents of the source shifted by up to τ more steps.
struct Lagged<'a> {
    x: &'a TimeSeriesMatrix,
    start: usize,
}

impl Lagged<'_> {
    fn n(&self) -> usize {
        self.x.len() - self.start
    }

    fn series(&self, var: usize, lag: usize) -> Vec<f64> {
        (self.start..self.x.len()).map(|t| self.x.get(t - lag, var)).collect()
    }

    fn conditions(&self, links: &[Link]) -> Matrix {
        let cols: Vec<Vec<f64>> = links.iter().map(|&(v, l)| self.series(v, l)).collect();
        let refs: Vec<&[f64]> = cols.iter().map(Vec::as_slice).collect();
        if refs.is_empty() {
            Matrix::zeros(self.n(), 0)
        } else {
            Matrix::from_columns(&refs).expect("equal-length columns")
        }
    }

    fn test(&self, source: Link, target: usize, given: &[Link]) -> Result<PartialCorrelation> {
        partial_correlation(&self.series(source.0, source.1), &self.series(target, 0), &self.conditions(given))
    }
}

/// Parent selection for one target: iteratively drop candidates that become
/// independent of the target given their strongest surviving peers.
fn select_parents(data: &Lagged, target: usize, d: usize, tau: usize, alpha: f64) -> Result<Vec<Link>> {
    // (link, strength)
    let mut alive: Vec<(Link, f64)> = (1..=tau).flat_map(|l| (0..d).map(move |p| ((p, l), f64::INFINITY))).collect();
    for k in 0..=MAX_CONDITIONS {
        if k >= alive.len() {
            break;
        }
        // strongest first; ties keep the canonical link order
        alive.sort_by(|a, b| b.1.total_cmp(&a.1));
        let ranked: Vec<Link> = alive.iter().map(|a| a.0).collect();
        let mut next = Vec::with_capacity(alive.len());
        let mut removed = 0;
        for &(link, _) in &alive {
            let peers: Vec<Link> = ranked.iter().copied().filter(|&o| o != link).take(k).collect();
            let res = data.test(link, target, &peers)?;
            if res.p_value > alpha {
                removed += 1;
            } else {
                next.push((link, res.r.abs()));
            }
        }
        alive = next;
        if removed == 0 && k > 0 {
            break;
        }
    }
    alive.sort_by(|a, b| b.1.total_cmp(&a.1));
    Ok(alive.into_iter().map(|a| a.0).collect())
}

/// PCMCI-style search with partial-correlation tests. Every lagged link is
/// MCI-tested given the selected parents of the target and the lag-shifted
/// parents of the source; scores are `|r|` maximized over lags.
pub fn pcmci(x: &TimeSeriesMatrix, cfg: &MethodConfig) -> Result<MethodOutput> {
    let MethodConfig::Pcmci { tau_max: tau, alpha_sig } = *cfg else {
        return Err(Error::Config(format!("pcmci got a {} config", cfg.kind().name())));
    };
    x.require_complete()?;
    let d = x.width();
    if x.len() <= 2 * tau + 2 * d * tau + 3 {
        return Err(Error::InvalidArgument(format!(
            "series of length {} is too short for pcmci with d={d}, tau_max={tau}",
            x.len()
        )));
    }
    let data = Lagged { x, start: 2 * tau };

    let parents = (0..d)
        .map(|q| select_parents(&data, q, d, tau, alpha_sig))
        .collect::<Result<Vec<_>>>()?;

    let mut window = vec![Matrix::zeros(d, d); tau];
    let mut p_values = vec![Matrix::zeros(d, d); tau];
    let mut graph = vec![vec![false; d]; d];
    for q in 0..d {
        for lag in 1..=tau {
            for p in 0..d {
                let link = (p, lag);
                let mut given: Vec<Link> = parents[q].iter().copied().filter(|&o| o != link).collect();
                for &(v, l) in &parents[p] {
                    let shifted = (v, l + lag);
                    if shifted != link && !given.contains(&shifted) {
                        given.push(shifted);
                    }
                }
                let res = data.test(link, q, &given)?;
                window[lag - 1][(p, q)] = res.r.abs();
                p_values[lag - 1][(p, q)] = res.p_value;
                if res.p_value <= alpha_sig {
                    graph[p][q] = true;
                }
            }
        }
    }
    let scores = collapse_window(&window)?;
    Ok(MethodOutput {
        scores,
        graph,
        window: Some(window),
        diagnostics: Diagnostics {
            parents,
            p_values: Some(p_values),
            ..Diagnostics::default()
        },
    })
}
