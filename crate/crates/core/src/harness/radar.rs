use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::eval::AggregateRow;

/// Clockwise axis order, starting at 12 o'clock.
pub const RADAR_AXES: [&str; 9] = [
    "vanilla",
    "mixed",
    "trend_season",
    "minmax",
    "confounders",
    "measurement_error",
    "standardized",
    "missing",
    "nonstationary",
];

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

pub const CHART_RADIUS: f64 = 200.0;
const CENTER: (f64, f64) = (260.0, 260.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadarMetric {
    Auroc,
    Auprc,
}

impl std::str::FromStr for RadarMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auroc" => Ok(RadarMetric::Auroc),
            "auprc" => Ok(RadarMetric::Auprc),
            other => Err(Error::Parse(format!("unknown metric '{other}'"))),
        }
    }
}

/// Restricts the chart to one setting. Unset fields match anything.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SettingFilter {
    pub d: Option<usize>,
    pub t: Option<usize>,
    pub f: Option<f64>,
}

impl SettingFilter {
    fn accepts(&self, r: &AggregateRow) -> bool {
        self.d.is_none_or(|d| d == r.d) && self.t.is_none_or(|t| t == r.t) && self.f.is_none_or(|f| Some(f) == r.f)
    }
}

fn kind_of(label: &str) -> &str {
    label.split(':').next().unwrap_or(label)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn point(axis: usize, n_axes: usize, value: f64) -> (f64, f64) {
    let angle = -std::f64::consts::FRAC_PI_2 + std::f64::consts::TAU * axis as f64 / n_axes as f64;
    let r = CHART_RADIUS * value.clamp(0.0, 100.0) / 100.0;
    (CENTER.0 + r * angle.cos(), CENTER.1 + r * angle.sin())
}

fn points_attr(pts: &[(f64, f64)]) -> String {
    pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect::<Vec<_>>().join(" ")
}

/// Radar chart of one setting: an axis per scenario kind present, one
/// polygon per method on a 0–100 scale.
pub fn render_radar(rows: &[AggregateRow], metric: RadarMetric, filter: &SettingFilter) -> Result<String> {
    let rows: Vec<&AggregateRow> = rows.iter().filter(|r| filter.accepts(r)).collect();
    let settings: BTreeSet<(usize, usize, Option<u64>)> =
        rows.iter().map(|r| (r.d, r.t, r.f.map(f64::to_bits))).collect();
    if settings.len() > 1 {
        return Err(Error::Coverage(format!(
            "rows span {} settings; narrow them with a d/t/f filter",
            settings.len()
        )));
    }
    // kind -> method -> value
    let mut table: BTreeMap<&str, BTreeMap<&str, f64>> = BTreeMap::new();
    let mut label_of: BTreeMap<&str, &str> = BTreeMap::new();
    for r in &rows {
        let kind = kind_of(&r.scenario);
        if !RADAR_AXES.contains(&kind) {
            continue;
        }
        if let Some(prev) = label_of.insert(kind, &r.scenario) {
            if prev != r.scenario {
                return Err(Error::Coverage(format!(
                    "axis {kind} is ambiguous: both '{prev}' and '{}' are present",
                    r.scenario
                )));
            }
        }
        let v = match metric {
            RadarMetric::Auroc => r.mean_auroc,
            RadarMetric::Auprc => r.mean_auprc,
        };
        table.entry(kind).or_default().insert(&r.method, v);
    }
    let axes: Vec<&str> = RADAR_AXES.iter().copied().filter(|a| table.contains_key(a)).collect();
    let methods: BTreeSet<&str> = table.values().flat_map(|m| m.keys().copied()).collect();
    if axes.len() < 3 || methods.is_empty() {
        return Err(Error::Coverage(format!(
            "a radar chart needs at least 3 scenario axes, found {}",
            axes.len()
        )));
    }
    for m in &methods {
        for a in &axes {
            if !table[a].contains_key(m) {
                return Err(Error::Coverage(format!("method {m} has no result for scenario {a}")));
            }
        }
    }

    let n = axes.len();
    let width = CENTER.0 * 2.0 + 160.0;
    let height = CENTER.1 * 2.0;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for ring in [20.0, 40.0, 60.0, 80.0, 100.0] {
        let pts: Vec<_> = (0..n).map(|k| point(k, n, ring)).collect();
        let _ = writeln!(
            svg,
            r##"<polygon class="ring" points="{}" fill="none" stroke="#cccccc"/>"##,
            points_attr(&pts)
        );
    }
    for (k, axis) in axes.iter().enumerate() {
        let (x, y) = point(k, n, 100.0);
        let (lx, ly) = point(k, n, 112.0);
        let _ = writeln!(
            svg,
            r##"<line x1="{:.3}" y1="{:.3}" x2="{x:.3}" y2="{y:.3}" stroke="#999999"/>"##,
            CENTER.0, CENTER.1
        );
        let _ = writeln!(
            svg,
            r#"<text x="{lx:.3}" y="{ly:.3}" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
            escape(axis)
        );
    }
    for (i, m) in methods.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<_> = axes.iter().enumerate().map(|(k, a)| point(k, n, table[a][m])).collect();
        let _ = writeln!(
            svg,
            r#"<polygon class="method" data-method="{}" points="{}" fill="{color}" fill-opacity="0.15" stroke="{color}" stroke-width="2"/>"#,
            escape(m),
            points_attr(&pts)
        );
    }
    let lx = CENTER.0 * 2.0 + 10.0;
    for (i, m) in methods.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = 30.0 + 22.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<g class="legend"><rect x="{lx}" y="{}" width="14" height="14" fill="{color}"/><text x="{}" y="{}">{}</text></g>"#,
            y - 11.0,
            lx + 20.0,
            y,
            escape(m)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
