//! Monte Carlo experiments over seeded, independent trials.
//!
//! Trial `i` of a run with master seed `s` draws from
//! `ChaCha8Rng::seed_from_u64(trial_seed(s, i))`, so results do not depend on
//! how trials are scheduled across worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod certify;
pub mod corollary;
pub mod hitting;
pub mod kcoloring;
pub mod report;
pub mod stats;

pub use certify::{certify_tau_coincidence, CertificationRecord, Verdict};
pub use corollary::{run_corollary_experiment, CorollaryParams};
pub use hitting::{hitting_time, run_hitting_experiment, HittingParams};
pub use kcoloring::{run_random_k_coloring_experiment, GraphSource};
pub use report::{CsvRow, Report, REPORT_VERSION};
pub use stats::{chernoff_tolerance, ChernoffTolerance};

/// Human-readable statement of [`trial_seed`], echoed into every report.
pub const SEED_RULE: &str =
    "seed_i = splitmix64(master ^ splitmix64(i + 0x9e3779b97f4a7c15)); rng = ChaCha8Rng::seed_from_u64(seed_i)";

/// SplitMix64 output function.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn trial_seed(master: u64, trial: u64) -> u64 {
    splitmix64(master ^ splitmix64(trial.wrapping_add(0x9e37_79b9_7f4a_7c15)))
}

pub fn trial_rng(master: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(master, trial))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub trials: usize,
    pub master_seed: u64,
    /// Worker threads; `None` uses rayon's default. Never part of the output.
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(n: usize, trials: usize, master_seed: u64) -> Self {
        ExperimentConfig {
            n,
            trials,
            master_seed,
            threads: None,
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Params("trials must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Params("threads must be at least 1".into()));
        }
        Ok(())
    }

    pub fn seed(&self, trial: usize) -> u64 {
        trial_seed(self.master_seed, trial as u64)
    }

    /// Runs `f(trial, rng)` for every trial on the configured pool and returns
    /// results in trial order.
    pub fn run_trials<T, F>(&self, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(usize, &mut ChaCha8Rng) -> Result<T> + Sync + Send,
    {
        self.validate()?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads.unwrap_or(0))
            .build()
            .map_err(|e| Error::Params(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..self.trials)
                .into_par_iter()
                .map(|i| f(i, &mut trial_rng(self.master_seed, i as u64)))
                .collect()
        })
    }
}

/// Config block written at the top of every report.
#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho<P> {
    pub experiment: &'static str,
    #[serde(flatten)]
    pub base: ExperimentConfig,
    pub seed_rule: &'static str,
    pub params: P,
}

impl<P> ConfigEcho<P> {
    pub fn new(experiment: &'static str, base: &ExperimentConfig, params: P) -> Self {
        ConfigEcho {
            experiment,
            base: base.clone(),
            seed_rule: SEED_RULE,
            params,
        }
    }
}
