use crate::error::{Error, Result};
use crate::generators::CausalGraph;
use crate::methods::ScoreMatrix;

/// Off-diagonal `(score, is_edge)` pairs in source-major order.
pub fn off_diagonal_pairs(scores: &ScoreMatrix, truth: &CausalGraph) -> Result<(Vec<f64>, Vec<bool>)> {
    let d = scores.d();
    if truth.d() != d {
        return Err(Error::Dimension(format!("scores are {d}x{d}, truth has d = {}", truth.d())));
    }
    let mut s = Vec::with_capacity(d * d);
    let mut l = Vec::with_capacity(d * d);
    for p in 0..d {
        for q in 0..d {
            if p != q {
                s.push(scores.get(p, q));
                l.push(truth.has_edge(p, q));
            }
        }
    }
    Ok((s, l))
}

pub fn auroc(scores: &ScoreMatrix, truth: &CausalGraph) -> Result<f64> {
    let (s, l) = off_diagonal_pairs(scores, truth)?;
    auroc_ranked(&s, &l)
}

pub fn auprc(scores: &ScoreMatrix, truth: &CausalGraph) -> Result<f64> {
    let (s, l) = off_diagonal_pairs(scores, truth)?;
    auprc_ranked(&s, &l)
}

fn check(scores: &[f64], labels: &[bool]) -> Result<usize> {
    if scores.len() != labels.len() {
        return Err(Error::Dimension(format!(
            "{} scores vs {} labels",
            scores.len(),
            labels.len()
        )));
    }
    if scores.iter().any(|s| s.is_nan()) {
        return Err(Error::NonFinite("NaN score".into()));
    }
    Ok(labels.iter().filter(|&&b| b).count())
}

/// Indices sorted by score, descending. Ties stay adjacent.
fn descending(scores: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    idx
}

/// Mann–Whitney statistic with average ranks for ties.
pub fn auroc_ranked(scores: &[f64], labels: &[bool]) -> Result<f64> {
    let pos = check(scores, labels)?;
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::UndefinedMetric(format!(
            "auroc needs both classes (positives {pos}, negatives {neg})"
        )));
    }
    let mut idx = descending(scores);
    idx.reverse();
    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && scores[idx[j + 1]] == scores[idx[i]] {
            j += 1;
        }
        // ranks i+1 ..= j+1 share their average
        let avg = (i + j + 2) as f64 / 2.0;
        let hits = idx[i..=j].iter().filter(|&&k| labels[k]).count();
        rank_sum += avg * hits as f64;
        i = j + 1;
    }
    let (p, n) = (pos as f64, neg as f64);
    Ok((rank_sum - p * (p + 1.0) / 2.0) / (p * n))
}

/// Average precision; each block of tied scores is one threshold.
pub fn auprc_ranked(scores: &[f64], labels: &[bool]) -> Result<f64> {
    let pos = check(scores, labels)?;
    if pos == 0 {
        return Err(Error::UndefinedMetric("auprc needs at least one positive".into()));
    }
    let idx = descending(scores);
    let (mut tp, mut seen) = (0usize, 0usize);
    let mut ap = 0.0;
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && scores[idx[j + 1]] == scores[idx[i]] {
            j += 1;
        }
        let hits = idx[i..=j].iter().filter(|&&k| labels[k]).count();
        tp += hits;
        seen += j - i + 1;
        if hits > 0 {
            ap += (tp as f64 / seen as f64) * (hits as f64 / pos as f64);
        }
        i = j + 1;
    }
    Ok(ap)
}
