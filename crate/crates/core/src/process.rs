//! The random graph process realised from i.i.d. uniform edge weights.
//!
//! One weight per potential edge couples every snapshot `G_t` of the process
//! with every threshold graph `{e : X_e <= p} ~ G(n, p)`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bits::BitRows;
use crate::error::{Error, Result};
use crate::graph::{pair_count, pair_index, Graph, Pair};

/// Uniform weights for all potential edges, indexed by [`pair_index`].
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeWeights {
    n: usize,
    weights: Vec<f64>,
}

impl EdgeWeights {
    pub fn sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let weights = (0..pair_count(n)).map(|_| rng.gen::<f64>()).collect();
        EdgeWeights { n, weights }
    }

    pub fn from_vec(n: usize, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != pair_count(n) {
            return Err(Error::Params(format!(
                "expected {} weights for n = {n}, got {}",
                pair_count(n),
                weights.len()
            )));
        }
        if let Some(&w) = weights.iter().find(|w| !(0.0..=1.0).contains(*w)) {
            return Err(Error::BadProbability(w));
        }
        Ok(EdgeWeights { n, weights })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self, e: Pair) -> f64 {
        self.weights[pair_index(self.n, e.lo(), e.hi())]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    /// Edges with weight `<= p`.
    pub fn threshold_graph(&self, p: f64) -> Result<Graph> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BadProbability(p));
        }
        let n = self.n;
        let mut adj = BitRows::new(n);
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if self.weights[k] <= p {
                    adj.set_sym(u, v, true);
                }
                k += 1;
            }
        }
        Ok(Graph::from_adjacency(adj))
    }

    /// Number of weights `<= p`; the process time at which the threshold graph appears.
    pub fn count_at_most(&self, p: f64) -> usize {
        self.weights.iter().filter(|&&w| w <= p).count()
    }
}

/// Weighted process: weights plus the edge order they induce.
#[derive(Clone, Debug, PartialEq)]
pub struct ProcessSequence {
    weights: EdgeWeights,
    order: Vec<Pair>,
}

impl ProcessSequence {
    /// Orders `weights` ascending. Ties are resolved by replacing all weights
    /// with `rank / (N + 1)` for a uniformly random ranking drawn from `rng`.
    pub fn from_weights<R: Rng + ?Sized>(mut weights: EdgeWeights, rng: &mut R) -> Self {
        let n = weights.n;
        let mut idx: Vec<u32> = (0..weights.weights.len() as u32).collect();
        idx.sort_unstable_by(|&a, &b| {
            weights.weights[a as usize]
                .total_cmp(&weights.weights[b as usize])
                .then(a.cmp(&b))
        });
        let tied = idx
            .windows(2)
            .any(|w| weights.weights[w[0] as usize] == weights.weights[w[1] as usize]);
        if tied {
            let total = idx.len();
            idx.shuffle(rng);
            for (rank, &e) in idx.iter().enumerate() {
                weights.weights[e as usize] = (rank + 1) as f64 / (total + 1) as f64;
            }
        }
        let pairs = all_pairs(n);
        let order = idx.iter().map(|&e| pairs[e as usize]).collect();
        ProcessSequence { weights, order }
    }

    /// Rebuilds a sequence from weights that are already pairwise distinct.
    pub fn from_distinct_weights(weights: EdgeWeights) -> Result<Self> {
        let mut probe = rand::rngs::mock::StepRng::new(0, 0);
        let seq = Self::from_weights(weights.clone(), &mut probe);
        if seq.weights != weights {
            return Err(Error::Params("process weights are not pairwise distinct".into()));
        }
        Ok(seq)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.weights.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.order.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn weights(&self) -> &EdgeWeights {
        &self.weights
    }

    /// Potential edges in ascending weight order.
    pub fn order(&self) -> &[Pair] {
        &self.order
    }

    /// `G_t`: the first `t` edges of the order.
    pub fn snapshot(&self, t: usize) -> Result<Graph> {
        if t > self.order.len() {
            return Err(Error::TimeOutOfRange {
                t,
                max: self.order.len(),
            });
        }
        let mut adj = BitRows::new(self.n());
        for e in &self.order[..t] {
            adj.set_sym(e.lo(), e.hi(), true);
        }
        Ok(Graph::from_adjacency(adj))
    }

    pub fn threshold_graph(&self, p: f64) -> Result<Graph> {
        self.weights.threshold_graph(p)
    }

    /// 1-based position of `e` in the order.
    pub fn rank(&self, e: Pair) -> usize {
        let w = self.weights.weight(e);
        self.order.partition_point(|&f| self.weights.weight(f) < w) + 1
    }
}

/// Samples weights and orders them.
pub fn gen_weighted_process<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ProcessSequence {
    let w = EdgeWeights::sample(n, rng);
    ProcessSequence::from_weights(w, rng)
}

fn all_pairs(n: usize) -> Vec<Pair> {
    let mut v = Vec::with_capacity(pair_count(n));
    for a in 0..n {
        for b in a + 1..n {
            v.push(Pair::new(a, b));
        }
    }
    v
}
