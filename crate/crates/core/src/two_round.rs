//! Two-round construction of a random graph together with an edge 2-colouring.
//!
//! Round 1 draws `G1 ~ G(n, p1)` and colours it uniformly at random. Round 2
//! adds every missing edge with probability `p2`, where
//! `1 - p = (1 - p1)(1 - p2)`, and colours each added edge so that it gives a
//! rainbow 2-path to a pair that was dangerous after round 1, when it can.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitRows;
use crate::coloring::{color_edges_random, Colour, EdgeColoring};
use crate::danger::{pairs_fixed_by, Classification, DEFAULT_D};
use crate::error::{Error, Result};
use crate::graph::{gen_gnp, Graph, Pair};
use crate::process::EdgeWeights;

pub const DEFAULT_EPS: f64 = 0.01;
pub const DEFAULT_TARGET_CONSTANT: f64 = 1.99;
/// Smallest `n` accepted without explicit probabilities.
pub const MIN_DEFAULT_N: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoRoundParams {
    pub n: usize,
    pub eps: f64,
    pub p_target: f64,
    pub d: usize,
    /// Replaces `sqrt((1 + eps) ln n / n)` when set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1_override: Option<f64>,
}

impl TwoRoundParams {
    /// Defaults: `eps = 0.01`, `p = sqrt(1.99 ln n / n)`, `d = 66`.
    pub fn new(n: usize) -> Result<Self> {
        if n < MIN_DEFAULT_N {
            return Err(Error::Params(format!(
                "n = {n} below {MIN_DEFAULT_N}; pass explicit probabilities for tiny graphs"
            )));
        }
        Ok(TwoRoundParams {
            n,
            eps: DEFAULT_EPS,
            p_target: default_p_target(n),
            d: DEFAULT_D,
            p1_override: None,
        })
    }

    /// Explicit round-1 and target probabilities; any `n`.
    pub fn with_probabilities(n: usize, p1: f64, p_target: f64) -> Result<Self> {
        let params = TwoRoundParams {
            n,
            eps: DEFAULT_EPS,
            p_target,
            d: DEFAULT_D,
            p1_override: Some(p1),
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_d(mut self, d: usize) -> Self {
        self.d = d;
        self
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn p1(&self) -> f64 {
        self.p1_override
            .unwrap_or_else(|| default_p1(self.n, self.eps))
    }

    pub fn validate(&self) -> Result<()> {
        if self.p1_override.is_none() && self.n < MIN_DEFAULT_N {
            return Err(Error::Params(format!(
                "n = {} below {MIN_DEFAULT_N} needs explicit probabilities",
                self.n
            )));
        }
        split_probability(self.p1(), self.p_target).map(|_| ())
    }

    /// `(p1, p2)` for these parameters.
    pub fn round_probabilities(&self) -> Result<(f64, f64)> {
        let p1 = self.p1();
        Ok((p1, split_probability(p1, self.p_target)?))
    }
}

/// `sqrt((1 + eps) ln n / n)`.
pub fn default_p1(n: usize, eps: f64) -> f64 {
    let nf = n as f64;
    ((1.0 + eps) * nf.ln() / nf).sqrt()
}

/// `sqrt(1.99 ln n / n)`.
pub fn default_p_target(n: usize) -> f64 {
    let nf = n as f64;
    (DEFAULT_TARGET_CONSTANT * nf.ln() / nf).sqrt()
}

/// Round-2 probability `p2` with `1 - p_target = (1 - p1)(1 - p2)`.
pub fn split_probability(p1: f64, p_target: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_target) || !(0.0..1.0).contains(&p1) {
        return Err(Error::Params(format!(
            "need 0 <= p1 < 1 and 0 <= p_target <= 1 (p1 = {p1}, p_target = {p_target})"
        )));
    }
    if p1 > p_target {
        return Err(Error::Params(format!("p1 = {p1} exceeds p_target = {p_target}")));
    }
    Ok((1.0 - (1.0 - p_target) / (1.0 - p1)).clamp(0.0, 1.0))
}

/// `(p1, p2)` for default `p1 = sqrt((1 + eps) ln n / n)`.
pub fn round_probabilities(n: usize, eps: f64, p_target: f64) -> Result<(f64, f64)> {
    let p1 = default_p1(n, eps);
    Ok((p1, split_probability(p1, p_target)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixLogEntry {
    pub edge: Pair,
    pub color: Colour,
    /// Smallest round-1 dangerous pair this edge fixes in `color`, if any.
    pub target: Option<Pair>,
}

#[derive(Clone, Debug)]
pub struct TwoRoundOutput {
    pub params: TwoRoundParams,
    pub p1: f64,
    pub p2: f64,
    pub g1: Graph,
    pub g2: Graph,
    /// Full 2-colouring of `g2`; agrees with the round-1 colouring on `g1`.
    pub coloring: EdgeColoring,
    /// Dangerous pairs of the round-1 graph, lexicographic.
    pub round1_dangerous: Vec<Pair>,
    pub round2_edges: Vec<Pair>,
    pub fix_log: Vec<FixLogEntry>,
}

impl TwoRoundOutput {
    pub fn round1_coloring(&self) -> EdgeColoring {
        self.coloring.restricted_to(&self.g1)
    }
}

/// Runs both rounds. With `weights`, round 1 is the threshold graph at `p1`
/// and round 2 adds exactly the edges with `p1 < X_e <= p_target`; otherwise
/// both rounds sample from `rng`. Colours always come from `rng`.
pub fn build_two_round<R: Rng + ?Sized>(
    params: &TwoRoundParams,
    rng: &mut R,
    weights: Option<&EdgeWeights>,
) -> Result<TwoRoundOutput> {
    params.validate()?;
    let (p1, p2) = params.round_probabilities()?;
    let n = params.n;
    if let Some(w) = weights {
        if w.n() != n {
            return Err(Error::SizeMismatch(w.n(), n));
        }
    }

    let g1 = match weights {
        Some(w) => w.threshold_graph(p1)?,
        None => gen_gnp(n, p1, rng)?,
    };
    let mut coloring = color_edges_random(&g1, 2, rng)?;
    let cls = Classification::compute_unchecked(&g1, &coloring, params.d);

    let mut adj: BitRows = g1.adjacency().clone();
    let mut round2_edges = Vec::new();
    let mut fix_log = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if g1.has_edge(u, v) {
                continue;
            }
            let e = Pair::new(u, v);
            let added = match weights {
                Some(w) => w.weight(e) <= params.p_target,
                None => rng.gen_bool(p2),
            };
            if !added {
                continue;
            }
            let served = pairs_fixed_by(&g1, &coloring, e, &cls.dangerous)?;
            let mut by_colour = [0usize; 2];
            for &(_, c) in &served {
                by_colour[c as usize] += 1;
            }
            let colour: Colour = if served.is_empty() {
                rng.gen_range(0..2)
            } else if by_colour[1] > by_colour[0] {
                1
            } else {
                0
            };
            let target = served.iter().find(|&&(_, c)| c == colour).map(|&(p, _)| p);
            adj.set_sym(u, v, true);
            round2_edges.push(e);
            fix_log.push(FixLogEntry {
                edge: e,
                color: colour,
                target,
            });
        }
    }
    // Colour round-2 edges only after the sweep: fixes are judged on the round-1 colouring.
    for entry in &fix_log {
        coloring.set(entry.edge, entry.color)?;
    }
    let g2 = Graph::from_adjacency(adj);
    Ok(TwoRoundOutput {
        params: params.clone(),
        p1,
        p2,
        g1,
        g2,
        coloring,
        round1_dangerous: cls.dangerous.sorted(),
        round2_edges,
        fix_log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn probability_split_examples() {
        assert!((split_probability(0.2, 0.5).unwrap() - 0.375).abs() < 1e-15);
        assert!((split_probability(0.0, 0.3).unwrap() - 0.3).abs() < 1e-15);
        assert_eq!(split_probability(0.4, 0.4).unwrap(), 0.0);
        assert!(split_probability(0.5, 0.4).is_err());
    }

    #[test]
    fn product_identity_holds() {
        for n in [8usize, 50, 1000, 100_000] {
            let (p1, p2) = round_probabilities(n, 0.01, default_p_target(n)).unwrap();
            let lhs = 1.0 - default_p_target(n);
            let rhs = (1.0 - p1) * (1.0 - p2);
            assert!(((lhs - rhs) / lhs).abs() <= 1e-12, "n = {n}");
        }
    }

    #[test]
    fn default_mode_rejects_tiny_n() {
        assert!(TwoRoundParams::new(7).is_err());
        assert!(TwoRoundParams::new(8).is_ok());
        assert!(TwoRoundParams::with_probabilities(4, 0.3, 0.6).is_ok());
    }

    #[test]
    fn tiny_build_is_consistent() {
        let params = TwoRoundParams::with_probabilities(4, 0.4, 0.7).unwrap();
        for seed in 0..50 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let out = build_two_round(&params, &mut rng, None).unwrap();
            assert!(out.g1.is_subgraph_of(&out.g2));
            out.coloring.check_full(&out.g2).unwrap();
            assert_eq!(out.fix_log.len(), out.round2_edges.len());
            assert_eq!(out.g2.m(), out.g1.m() + out.round2_edges.len());
        }
    }

    #[test]
    fn coupled_mode_rejects_wrong_n() {
        let params = TwoRoundParams::new(10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let w = EdgeWeights::sample(9, &mut rng);
        assert!(matches!(
            build_two_round(&params, &mut rng, Some(&w)),
            Err(Error::SizeMismatch(9, 10))
        ));
    }
}
