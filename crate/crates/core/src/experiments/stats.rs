//! Binomial tail bounds and interval estimates used to size statistical checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest relative deviation for which the two-sided bound
/// `P(|X - np| >= eps np) <= 2 exp(-eps^2 np / 3)` is valid.
pub const MAX_CHERNOFF_EPS: f64 = 1.5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChernoffTolerance {
    /// Smallest admissible relative deviation.
    Epsilon(f64),
    /// `failure_prob >= 2`: every `eps > 0` works (the `0+` boundary).
    Vacuous,
    /// Even `eps = 3/2` leaves the bound above `failure_prob`; `required` is the
    /// unrestricted inversion.
    Insufficient { required: f64 },
}

impl ChernoffTolerance {
    pub fn epsilon(self) -> Option<f64> {
        match self {
            ChernoffTolerance::Epsilon(e) => Some(e),
            ChernoffTolerance::Vacuous => Some(0.0),
            ChernoffTolerance::Insufficient { .. } => None,
        }
    }

    /// Absolute half-width `eps * p` of the frequency band around `p`.
    pub fn band(self, p: f64) -> Option<f64> {
        self.epsilon().map(|e| e * p)
    }
}

/// Smallest `eps <= 3/2` with `2 exp(-eps^2 n p / 3) <= failure_prob`.
pub fn chernoff_tolerance(n: u64, p: f64, failure_prob: f64) -> Result<ChernoffTolerance> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Params(format!("p = {p} must lie in (0, 1)")));
    }
    if n == 0 {
        return Err(Error::Params("n must be positive".into()));
    }
    if !(failure_prob > 0.0) || !failure_prob.is_finite() {
        return Err(Error::Params(format!("failure probability {failure_prob} must be positive")));
    }
    if failure_prob >= 2.0 {
        return Ok(ChernoffTolerance::Vacuous);
    }
    let mean = n as f64 * p;
    let eps = (3.0 * (2.0 / failure_prob).ln() / mean).sqrt();
    if eps <= MAX_CHERNOFF_EPS {
        Ok(ChernoffTolerance::Epsilon(eps))
    } else {
        Ok(ChernoffTolerance::Insufficient { required: eps })
    }
}

/// `min(1, 2 exp(-eps^2 mean / 3))`.
pub fn chernoff_two_sided_bound(mean: f64, eps: f64) -> f64 {
    (2.0 * (-eps * eps * mean / 3.0).exp()).min(1.0)
}

/// Upper bound on `P(Bin(n, p) <= k)` from the relative-entropy Chernoff bound
/// at `x = k / n`; 1 when `k >= np`. Decays like `mu^k e^(-mu)`.
pub fn binomial_lower_tail_bound(n: u64, p: f64, k: u64) -> f64 {
    let nf = n as f64;
    if k as f64 >= nf * p || n == 0 {
        return 1.0;
    }
    if p >= 1.0 {
        return 0.0;
    }
    let x = k as f64 / nf;
    let log = if k == 0 {
        nf * (1.0 - p).ln()
    } else {
        nf * (x * (p / x).ln() + (1.0 - x) * ((1.0 - p) / (1.0 - x)).ln())
    };
    log.exp().min(1.0)
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let centre = (phat + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// 95% two-sided normal quantile.
pub const Z95: f64 = 1.959963984540054;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Proportion {
    pub successes: usize,
    pub trials: usize,
    pub frequency: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl Proportion {
    pub fn new(successes: usize, trials: usize) -> Self {
        let (ci_low, ci_high) = wilson_interval(successes, trials, Z95);
        Proportion {
            successes,
            trials,
            frequency: if trials == 0 {
                0.0
            } else {
                successes as f64 / trials as f64
            },
            ci_low,
            ci_high,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub count: usize,
    pub min: Option<usize>,
    pub max: Option<usize>,
    pub mean: Option<f64>,
}

impl Distribution {
    pub fn of(values: &[usize]) -> Self {
        Distribution {
            count: values.len(),
            min: values.iter().copied().min(),
            max: values.iter().copied().max(),
            mean: (!values.is_empty())
                .then(|| values.iter().sum::<usize>() as f64 / values.len() as f64),
        }
    }
}
