//! Frequency of diameter at most 2 at `p = sqrt((2 ln n + c) / n)`.

use serde::{Deserialize, Serialize};

use crate::danger::DEFAULT_D;
use crate::error::{Error, Result};
use crate::process::EdgeWeights;
use crate::two_round::{build_two_round, TwoRoundParams};

use super::certify::certify_with_two_round;
use super::report::{opt, CsvRow, Report};
use super::stats::Proportion;
use super::{ConfigEcho, ExperimentConfig};

/// `sqrt((2 ln n + c) / n)`, clamped to `[0, 1]`.
pub fn threshold_p(n: usize, c: f64) -> f64 {
    let nf = n as f64;
    ((2.0 * nf.ln() + c) / nf).max(0.0).sqrt().min(1.0)
}

/// Limiting probability `exp(-exp(-c) / 2)` of diameter at most 2.
pub fn predicted_limit(c: f64) -> f64 {
    (-(-c).exp() / 2.0).exp()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorollaryParams {
    /// Offsets `c`; every trial evaluates all of them on one weight vector.
    pub cs: Vec<f64>,
    /// Trials (the first ones) on which diameter-2 graphs are also recoloured.
    pub certify_trials: usize,
    pub d: usize,
}

impl Default for CorollaryParams {
    fn default() -> Self {
        CorollaryParams {
            cs: vec![0.0],
            certify_trials: 0,
            d: DEFAULT_D,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorollaryRecord {
    pub trial: usize,
    pub seed: u64,
    pub c: f64,
    pub p: f64,
    pub edges: usize,
    pub diam_le_2: bool,
    /// Present when recolouring was attempted.
    pub certified: Option<bool>,
    pub failure_reason: Option<String>,
}

impl CsvRow for CorollaryRecord {
    const HEADER: &'static [&'static str] = &["trial", "seed", "c", "p", "edges", "diam_le_2", "certified", "failure_reason"];

    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.trial.to_string(),
            self.seed.to_string(),
            self.c.to_string(),
            self.p.to_string(),
            self.edges.to_string(),
            self.diam_le_2.to_string(),
            opt(self.certified),
            self.failure_reason.clone().unwrap_or_default(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorollaryPoint {
    pub c: f64,
    pub p: f64,
    pub diam_le_2: Proportion,
    pub predicted_limit: f64,
    pub certify_attempts: usize,
    pub certify_successes: usize,
    pub certify_rate: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorollarySummary {
    pub n: usize,
    pub points: Vec<CorollaryPoint>,
}

pub type CorollaryReport = Report<ConfigEcho<CorollaryParams>, CorollaryRecord, CorollarySummary>;

pub fn run_corollary_experiment(cfg: &ExperimentConfig, params: &CorollaryParams) -> Result<CorollaryReport> {
    if params.cs.is_empty() {
        return Err(Error::Params("at least one c is required".into()));
    }
    if let Some(c) = params.cs.iter().find(|c| !c.is_finite()) {
        return Err(Error::Params(format!("c = {c} is not finite")));
    }
    let n = cfg.n;
    let two_round = if params.certify_trials > 0 {
        Some(TwoRoundParams::new(n)?.with_d(params.d))
    } else {
        None
    };
    let per_trial = cfg.run_trials(|trial, rng| {
        let weights = EdgeWeights::sample(n, rng);
        let mut rows = Vec::with_capacity(params.cs.len());
        for &c in &params.cs {
            let p = threshold_p(n, c);
            let g = weights.threshold_graph(p)?;
            let diam_le_2 = g.has_diameter_at_most_2();
            let (mut certified, mut failure_reason) = (None, None);
            if let (Some(tr), true) = (&two_round, diam_le_2 && trial < params.certify_trials) {
                let out = build_two_round(tr, rng, Some(&weights))?;
                let sub = certify_with_two_round(&g, &out, params.d)?;
                certified = Some(sub.outcome.is_success());
                failure_reason = sub.outcome.failure().map(|f| f.name().to_string());
            }
            rows.push(CorollaryRecord {
                trial,
                seed: cfg.seed(trial),
                c,
                p,
                edges: g.m(),
                diam_le_2,
                certified,
                failure_reason,
            });
        }
        Ok(rows)
    })?;
    let records: Vec<CorollaryRecord> = per_trial.into_iter().flatten().collect();

    let points = params
        .cs
        .iter()
        .map(|&c| {
            let rows: Vec<&CorollaryRecord> = records.iter().filter(|r| r.c == c).collect();
            let hits = rows.iter().filter(|r| r.diam_le_2).count();
            let attempts = rows.iter().filter(|r| r.certified.is_some()).count();
            let successes = rows.iter().filter(|r| r.certified == Some(true)).count();
            CorollaryPoint {
                c,
                p: threshold_p(n, c),
                diam_le_2: Proportion::new(hits, rows.len()),
                predicted_limit: predicted_limit(c),
                certify_attempts: attempts,
                certify_successes: successes,
                certify_rate: (attempts > 0).then(|| successes as f64 / attempts as f64),
            }
        })
        .collect();
    Ok(Report::new(
        ConfigEcho::new("corollary", cfg, params.clone()),
        records,
        CorollarySummary { n, points },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_values() {
        assert!((predicted_limit(0.0) - (-0.5f64).exp()).abs() < 1e-15);
        assert!((predicted_limit(0.0) - 0.6065).abs() < 1e-4);
        assert!(predicted_limit(20.0) > 0.999_999);
        assert!(predicted_limit(-5.0) < 1e-30);
    }

    #[test]
    fn frequency_is_monotone_in_c() {
        let params = CorollaryParams {
            cs: vec![-2.0, 0.0, 2.0, 4.0],
            ..CorollaryParams::default()
        };
        let report = run_corollary_experiment(&ExperimentConfig::new(60, 40, 3), &params).unwrap();
        for chunk in report.records.chunks(4) {
            for w in chunk.windows(2) {
                assert!(w[0].edges <= w[1].edges);
                assert!(!w[0].diam_le_2 || w[1].diam_le_2);
            }
        }
        let f: Vec<f64> = report.summary.points.iter().map(|p| p.diam_le_2.frequency).collect();
        assert!(f.windows(2).all(|w| w[0] <= w[1]), "{f:?}");
    }

    #[test]
    fn rejects_non_finite_c() {
        let params = CorollaryParams {
            cs: vec![f64::INFINITY],
            ..CorollaryParams::default()
        };
        assert!(run_corollary_experiment(&ExperimentConfig::new(10, 1, 0), &params).is_err());
    }

    #[test]
    fn certification_subsample_only() {
        let params = CorollaryParams {
            cs: vec![3.0],
            certify_trials: 5,
            d: 0,
        };
        let report = run_corollary_experiment(&ExperimentConfig::new(80, 12, 1), &params).unwrap();
        assert!(report.records[5..].iter().all(|r| r.certified.is_none()));
        for r in &report.records[..5] {
            assert_eq!(r.certified.is_some(), r.diam_le_2);
        }
    }
}
