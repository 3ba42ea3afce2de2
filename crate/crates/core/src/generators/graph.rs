use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ground-truth causal graph.
///
/// `summary[p][q]` marks an edge `p → q`. When present, `window[l][p][q]`
/// marks the lagged edge `x_{t−l,p} → x_{t,q}` for `l` in `0..=tau_max`, and
/// the summary is its OR over lags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalGraph {
    d: usize,
    tau_max: Option<usize>,
    summary: Vec<Vec<bool>>,
    window: Option<Vec<Vec<Vec<bool>>>>,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    d: usize,
    tau_max: Option<usize>,
    summary: Vec<Vec<u8>>,
    window: Option<Vec<Vec<Vec<u8>>>>,
}

impl CausalGraph {
    pub fn empty(d: usize) -> Self {
        Self {
            d,
            tau_max: None,
            summary: vec![vec![false; d]; d],
            window: None,
        }
    }

    pub fn from_summary(summary: Vec<Vec<bool>>) -> Result<Self> {
        let d = summary.len();
        if summary.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension("summary adjacency must be square".into()));
        }
        Ok(Self {
            d,
            tau_max: None,
            summary,
            window: None,
        })
    }

    /// Builds the graph from a window adjacency; the summary is derived.
    pub fn from_window(window: Vec<Vec<Vec<bool>>>) -> Result<Self> {
        let layers = window.len();
        if layers == 0 {
            return Err(Error::Dimension("window needs at least one layer".into()));
        }
        let d = window[0].len();
        if window.iter().any(|layer| layer.len() != d || layer.iter().any(|r| r.len() != d)) {
            return Err(Error::Dimension("window layers must be d×d".into()));
        }
        if (0..d).any(|i| window[0][i][i]) {
            return Err(Error::InvalidArgument("self-edges require lag > 0".into()));
        }
        let mut summary = vec![vec![false; d]; d];
        for layer in &window {
            for p in 0..d {
                for q in 0..d {
                    summary[p][q] |= layer[p][q];
                }
            }
        }
        Ok(Self {
            d,
            tau_max: Some(layers - 1),
            summary,
            window: Some(window),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn tau_max(&self) -> Option<usize> {
        self.tau_max
    }

    pub fn summary(&self) -> &[Vec<bool>] {
        &self.summary
    }

    pub fn window(&self) -> Option<&[Vec<Vec<bool>>]> {
        self.window.as_deref()
    }

    pub fn has_edge(&self, p: usize, q: usize) -> bool {
        self.summary[p][q]
    }

    /// Sources with an edge into `q`, self included when present.
    pub fn parents(&self, q: usize) -> Vec<usize> {
        (0..self.d).filter(|&p| self.summary[p][q]).collect()
    }

    pub fn off_diagonal_edge_count(&self) -> usize {
        (0..self.d)
            .flat_map(|p| (0..self.d).map(move |q| (p, q)))
            .filter(|&(p, q)| p != q && self.summary[p][q])
            .count()
    }

    pub fn to_json(&self) -> Result<String> {
        let bits = |r: &Vec<bool>| r.iter().map(|&b| u8::from(b)).collect::<Vec<_>>();
        let doc = GraphDoc {
            d: self.d,
            tau_max: self.tau_max,
            summary: self.summary.iter().map(bits).collect(),
            window: self
                .window
                .as_ref()
                .map(|w| w.iter().map(|layer| layer.iter().map(bits).collect()).collect()),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDoc = serde_json::from_str(text)?;
        let to_bool = |r: &Vec<u8>| -> Result<Vec<bool>> {
            r.iter()
                .map(|&v| match v {
                    0 => Ok(false),
                    1 => Ok(true),
                    other => Err(Error::Parse(format!("adjacency entries must be 0 or 1, got {other}"))),
                })
                .collect()
        };
        let summary = doc.summary.iter().map(to_bool).collect::<Result<Vec<_>>>()?;
        let graph = match doc.window {
            Some(w) => {
                let window = w
                    .iter()
                    .map(|layer| layer.iter().map(to_bool).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let g = Self::from_window(window)?;
                if g.summary != summary {
                    return Err(Error::Parse("summary disagrees with window lag-OR".into()));
                }
                if doc.tau_max.is_some_and(|t| Some(t) != g.tau_max) {
                    return Err(Error::Parse("tau_max disagrees with window depth".into()));
                }
                g
            }
            None => {
                let mut g = Self::from_summary(summary)?;
                g.tau_max = doc.tau_max;
                g
            }
        };
        if graph.d != doc.d {
            return Err(Error::Parse(format!("d = {} but adjacency is {}×{}", doc.d, graph.d, graph.d)));
        }
        Ok(graph)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}
