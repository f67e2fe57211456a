//! Hitting times on the random graph process and the coincidence experiment.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::danger::DEFAULT_D;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::OracleBudget;
use crate::process::ProcessSequence;
use crate::two_round::{TwoRoundParams, DEFAULT_EPS};

use super::certify::{certify_tau_coincidence, save_certificate, CertificationRecord, Verdict, DEFAULT_EXACT_CUTOFF};
use super::report::Report;
use super::stats::{Distribution, Proportion};
use super::{ConfigEcho, ExperimentConfig};

/// Smallest `t` with `property(G_t)`, by binary search over snapshots.
/// `property` must be monotone increasing.
pub fn hitting_time<F>(seq: &ProcessSequence, property: F) -> Result<usize>
where
    F: Fn(&Graph) -> bool,
{
    let (mut lo, mut hi) = (0, seq.len());
    if !property(&seq.snapshot(hi)?) {
        return Err(Error::PropertyNeverHolds);
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if property(&seq.snapshot(mid)?) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Hitting time of diameter at most 2.
pub fn tau_diameter_2(seq: &ProcessSequence) -> Result<usize> {
    hitting_time(seq, Graph::has_diameter_at_most_2)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HittingParams {
    pub d: usize,
    pub eps: f64,
    /// Explicit `(p1, p_target)`; required below the builder's default range.
    pub probabilities: Option<(f64, f64)>,
    pub exact_cutoff: usize,
    pub oracle_budget: OracleBudget,
    /// Directory for per-trial snapshot and certificate files.
    #[serde(skip)]
    pub certificate_dir: Option<PathBuf>,
}

impl Default for HittingParams {
    fn default() -> Self {
        HittingParams {
            d: DEFAULT_D,
            eps: DEFAULT_EPS,
            probabilities: None,
            exact_cutoff: DEFAULT_EXACT_CUTOFF,
            oracle_budget: OracleBudget::default(),
            certificate_dir: None,
        }
    }
}

impl HittingParams {
    pub fn two_round_params(&self, n: usize) -> Result<TwoRoundParams> {
        let params = match self.probabilities {
            Some((p1, p)) => TwoRoundParams::with_probabilities(n, p1, p)?,
            None => TwoRoundParams::new(n)?,
        };
        let params = params.with_d(self.d).with_eps(self.eps);
        params.validate()?;
        Ok(params)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HittingSummary {
    pub tau_d: Distribution,
    pub certified_equal: Proportion,
    pub exact_equal: Proportion,
    pub exact_strictly_greater: Proportion,
    pub bound_only: Proportion,
    /// Trials where `tau_D = tau_R` is proven, by either route.
    pub coincidence_proven: Proportion,
    pub certificate_success: Proportion,
    pub property_m: Proportion,
    /// Trials with an exact `tau_R`.
    pub oracle_trials: usize,
    pub oracle_budget_exceeded: usize,
    /// Recolour failure reasons, counted by name.
    pub failure_modes: BTreeMap<String, usize>,
}

pub type HittingReport = Report<ConfigEcho<HittingParams>, CertificationRecord, HittingSummary>;

pub fn run_hitting_experiment(cfg: &ExperimentConfig, params: &HittingParams) -> Result<HittingReport> {
    let two_round = params.two_round_params(cfg.n)?;
    if let Some(dir) = &params.certificate_dir {
        std::fs::create_dir_all(dir)?;
    }
    let records = cfg.run_trials(|trial, rng| {
        let mut cert = certify_tau_coincidence(
            cfg.n,
            &two_round,
            rng,
            params.exact_cutoff,
            params.oracle_budget,
        )?;
        cert.record.trial = trial;
        cert.record.seed = cfg.seed(trial);
        if let Some(dir) = &params.certificate_dir {
            save_certificate(&mut cert, dir, &format!("trial_{trial:06}"))?;
        }
        Ok(cert.record)
    })?;
    let summary = summarize(&records);
    Ok(Report::new(ConfigEcho::new("hitting", cfg, params.clone()), records, summary))
}

fn summarize(records: &[CertificationRecord]) -> HittingSummary {
    let total = records.len();
    let count = |f: &dyn Fn(&CertificationRecord) -> bool| Proportion::new(records.iter().filter(|r| f(r)).count(), total);
    let taus: Vec<usize> = records.iter().map(|r| r.tau_d).collect();
    let mut failure_modes = BTreeMap::new();
    for r in records {
        if let Some(reason) = &r.certificate.failure_reason {
            *failure_modes.entry(reason.clone()).or_insert(0) += 1;
        }
    }
    HittingSummary {
        tau_d: Distribution::of(&taus),
        certified_equal: count(&|r| r.verdict == Verdict::CertifiedEqual),
        exact_equal: count(&|r| r.verdict == Verdict::ExactEqual),
        exact_strictly_greater: count(&|r| r.verdict == Verdict::ExactStrictlyGreater),
        bound_only: count(&|r| r.verdict == Verdict::BoundOnly),
        coincidence_proven: count(&|r| r.verdict.proves_equality()),
        certificate_success: count(&|r| r.certificate.success),
        property_m: count(&|r| r.property_m),
        oracle_trials: records.iter().filter(|r| r.tau_r_exact.is_some()).count(),
        oracle_budget_exceeded: records.iter().filter(|r| r.oracle_budget_exceeded).count(),
        failure_modes,
    }
}
