//! How often a uniformly random `k`-colouring is rainbow connected.

use serde::{Deserialize, Serialize};

use crate::coloring::{color_edges_random, is_rainbow_connected, MAX_SEARCH_COLOURS};
use crate::error::{Error, Result};
use crate::graph::{gen_gnp, Graph};

use super::report::{CsvRow, Report};
use super::stats::Proportion;
use super::{ConfigEcho, ExperimentConfig};

#[derive(Clone, Debug, PartialEq)]
pub enum GraphSource {
    /// Fresh `G(n, p)` per trial with `p = sqrt((2 ln n + omega) / n)`.
    Gnp { omega: f64 },
    /// The same graph in every trial; only the colouring is random.
    Fixed { graph: Graph, label: String },
}

impl GraphSource {
    fn p(&self, n: usize) -> Option<f64> {
        match self {
            GraphSource::Gnp { omega } => {
                let nf = n as f64;
                Some(((2.0 * nf.ln() + omega) / nf).clamp(0.0, 1.0).sqrt())
            }
            GraphSource::Fixed { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KColoringParams {
    pub k: usize,
    pub source: String,
    pub omega: Option<f64>,
    pub p: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KColoringRecord {
    pub trial: usize,
    pub seed: u64,
    pub edges: usize,
    pub rainbow: bool,
}

impl CsvRow for KColoringRecord {
    const HEADER: &'static [&'static str] = &["trial", "seed", "edges", "rainbow"];

    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.trial.to_string(),
            self.seed.to_string(),
            self.edges.to_string(),
            self.rainbow.to_string(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KColoringSummary {
    pub k: usize,
    pub rainbow: Proportion,
}

pub type KColoringReport = Report<ConfigEcho<KColoringParams>, KColoringRecord, KColoringSummary>;

pub fn run_random_k_coloring_experiment(
    cfg: &ExperimentConfig,
    k: usize,
    source: &GraphSource,
) -> Result<KColoringReport> {
    if k == 0 || k > MAX_SEARCH_COLOURS {
        return Err(Error::UnsupportedColours {
            k,
            min: 1,
            max: MAX_SEARCH_COLOURS,
        });
    }
    if let GraphSource::Fixed { graph, .. } = source {
        if graph.n() != cfg.n {
            return Err(Error::SizeMismatch(graph.n(), cfg.n));
        }
    }
    let p = source.p(cfg.n);
    let records = cfg.run_trials(|trial, rng| {
        let sampled;
        let g = match source {
            GraphSource::Gnp { .. } => {
                sampled = gen_gnp(cfg.n, p.expect("gnp has p"), rng)?;
                &sampled
            }
            GraphSource::Fixed { graph, .. } => graph,
        };
        let col = color_edges_random(g, k, rng)?;
        Ok(KColoringRecord {
            trial,
            seed: cfg.seed(trial),
            edges: g.m(),
            rainbow: is_rainbow_connected(g, &col, k)?,
        })
    })?;
    let hits = records.iter().filter(|r| r.rainbow).count();
    let params = KColoringParams {
        k,
        source: match source {
            GraphSource::Gnp { .. } => "gnp".into(),
            GraphSource::Fixed { label, .. } => label.clone(),
        },
        omega: match source {
            GraphSource::Gnp { omega } => Some(*omega),
            GraphSource::Fixed { .. } => None,
        },
        p,
    };
    let summary = KColoringSummary {
        k,
        rainbow: Proportion::new(hits, records.len()),
    };
    Ok(Report::new(ConfigEcho::new("kcoloring", cfg, params), records, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixed(graph: Graph, label: &str) -> GraphSource {
        GraphSource::Fixed {
            graph,
            label: label.into(),
        }
    }

    #[test]
    fn complete_graph_one_colour() {
        let cfg = ExperimentConfig::new(6, 20, 0);
        let r = run_random_k_coloring_experiment(&cfg, 1, &fixed(Graph::complete(6), "K6")).unwrap();
        assert_eq!(r.summary.rainbow.frequency, 1.0);
    }

    #[test]
    fn path_three_two_colours_is_half() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let cfg = ExperimentConfig::new(3, 4000, 1);
        let r = run_random_k_coloring_experiment(&cfg, 2, &fixed(p3, "P3")).unwrap();
        // P(|X - 2000| >= 200) <= 2 exp(-0.01 * 2000 / 3) ~ 2.5e-3
        assert!((r.summary.rainbow.frequency - 0.5).abs() < 0.05);
    }

    #[test]
    fn rejects_bad_k() {
        let cfg = ExperimentConfig::new(3, 1, 0);
        let src = GraphSource::Gnp { omega: 0.0 };
        assert!(run_random_k_coloring_experiment(&cfg, 0, &src).is_err());
        assert!(run_random_k_coloring_experiment(&cfg, 9, &src).is_err());
    }
}
