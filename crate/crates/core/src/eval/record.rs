use std::cmp::Ordering;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const RESULTS_HEADER: [&str; 11] = [
    "scenario", "param", "d", "t", "f", "seed", "method", "config_id", "config_json", "auroc", "auprc",
];

pub const AGGREGATE_HEADER: [&str; 11] = [
    "scenario", "d", "t", "f", "method", "mode", "mean_auroc", "std_auroc", "mean_auprc", "std_auprc", "n",
];

/// Metrics for one (trial, method, config). `None` metrics mark a trial
/// where the metric was undefined or the method failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub scenario: String,
    pub param: String,
    pub d: usize,
    pub t: usize,
    pub f: Option<f64>,
    pub seed: u64,
    pub method: String,
    pub config_id: usize,
    pub config_json: String,
    pub auroc: Option<f64>,
    pub auprc: Option<f64>,
}

impl EvalRecord {
    /// `kind` or `kind:param`; graded variants of one kind stay apart.
    pub fn scenario_label(&self) -> String {
        if self.param.is_empty() {
            self.scenario.clone()
        } else {
            format!("{}:{}", self.scenario, self.param)
        }
    }

    pub fn is_sentinel(&self) -> bool {
        self.auroc.is_none() || self.auprc.is_none()
    }

    /// Rounds metrics to what the results CSV stores, so in-memory and
    /// reloaded records agree exactly.
    pub fn quantized(mut self) -> Self {
        let q = |v: Option<f64>| v.map(|x| format!("{:.4}", x * 100.0).parse::<f64>().unwrap() / 100.0);
        self.auroc = q(self.auroc);
        self.auprc = q(self.auprc);
        self
    }

    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.scenario
            .cmp(&other.scenario)
            .then_with(|| self.param.cmp(&other.param))
            .then_with(|| setting_cmp((self.d, self.t, self.f), (other.d, other.t, other.f)))
            .then_with(|| self.seed.cmp(&other.seed))
            .then_with(|| self.method.cmp(&other.method))
            .then_with(|| self.config_id.cmp(&other.config_id))
    }
}

pub(crate) fn setting_cmp(a: (usize, usize, Option<f64>), b: (usize, usize, Option<f64>)) -> Ordering {
    a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then_with(|| match (a.2, b.2) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(x), Some(y)) => x.total_cmp(&y),
    })
}

/// One aggregated cell; metrics are on the 0–100 scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub scenario: String,
    pub d: usize,
    pub t: usize,
    pub f: Option<f64>,
    pub method: String,
    pub mode: String,
    pub mean_auroc: f64,
    pub std_auroc: f64,
    pub mean_auprc: f64,
    pub std_auprc: f64,
    pub n: usize,
}

fn fmt_metric(v: Option<f64>) -> String {
    v.map(|x| format!("{:.4}", x * 100.0)).unwrap_or_default()
}

fn fmt_f(f: Option<f64>) -> String {
    f.map(|x| x.to_string()).unwrap_or_default()
}

fn parse<T: std::str::FromStr>(field: &str, what: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    field
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("{what} '{field}': {e}")))
}

fn parse_opt_f64(field: &str, what: &str) -> Result<Option<f64>> {
    if field.trim().is_empty() {
        Ok(None)
    } else {
        parse(field, what).map(Some)
    }
}

fn check_header(found: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    if found.iter().ne(expected.iter().copied()) {
        return Err(Error::Parse(format!(
            "unexpected header '{}', expected '{}'",
            found.iter().collect::<Vec<_>>().join(","),
            expected.join(",")
        )));
    }
    Ok(())
}

pub fn write_results_csv<W: Write>(records: &[EvalRecord], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(RESULTS_HEADER)?;
    for r in records {
        w.write_record([
            r.scenario.clone(),
            r.param.clone(),
            r.d.to_string(),
            r.t.to_string(),
            fmt_f(r.f),
            r.seed.to_string(),
            r.method.clone(),
            r.config_id.to_string(),
            r.config_json.clone(),
            fmt_metric(r.auroc),
            fmt_metric(r.auprc),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<results csv>", e))?;
    Ok(())
}

pub fn read_results_csv<R: Read>(reader: R) -> Result<Vec<EvalRecord>> {
    let mut r = csv::Reader::from_reader(reader);
    check_header(r.headers()?, &RESULTS_HEADER)?;
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let metric = |i: usize, name: &str| parse_opt_f64(&rec[i], name).map(|v| v.map(|x| x / 100.0));
        out.push(EvalRecord {
            scenario: rec[0].to_string(),
            param: rec[1].to_string(),
            d: parse(&rec[2], "d")?,
            t: parse(&rec[3], "t")?,
            f: parse_opt_f64(&rec[4], "f")?,
            seed: parse(&rec[5], "seed")?,
            method: rec[6].to_string(),
            config_id: parse(&rec[7], "config_id")?,
            config_json: rec[8].to_string(),
            auroc: metric(9, "auroc")?,
            auprc: metric(10, "auprc")?,
        });
    }
    Ok(out)
}

pub fn write_aggregate_csv<W: Write>(rows: &[AggregateRow], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(AGGREGATE_HEADER)?;
    for r in rows {
        w.write_record([
            r.scenario.clone(),
            r.d.to_string(),
            r.t.to_string(),
            fmt_f(r.f),
            r.method.clone(),
            r.mode.clone(),
            format!("{:.4}", r.mean_auroc),
            format!("{:.4}", r.std_auroc),
            format!("{:.4}", r.mean_auprc),
            format!("{:.4}", r.std_auprc),
            r.n.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<aggregate csv>", e))?;
    Ok(())
}

pub fn read_aggregate_csv<R: Read>(reader: R) -> Result<Vec<AggregateRow>> {
    let mut r = csv::Reader::from_reader(reader);
    check_header(r.headers()?, &AGGREGATE_HEADER)?;
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        out.push(AggregateRow {
            scenario: rec[0].to_string(),
            d: parse(&rec[1], "d")?,
            t: parse(&rec[2], "t")?,
            f: parse_opt_f64(&rec[3], "f")?,
            method: rec[4].to_string(),
            mode: rec[5].to_string(),
            mean_auroc: parse(&rec[6], "mean_auroc")?,
            std_auroc: parse(&rec[7], "std_auroc")?,
            mean_auprc: parse(&rec[8], "mean_auprc")?,
            std_auprc: parse(&rec[9], "std_auprc")?,
            n: parse(&rec[10], "n")?,
        });
    }
    Ok(out)
}
