//! Immutable simple undirected graphs over dense vertex ids `0..n`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bits::{self, BitRows};
use crate::error::{Error, Result};

/// Unordered vertex pair, stored with `lo < hi`.
///
/// Used both for edges and for non-adjacent pairs under analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Pair {
    lo: usize,
    hi: usize,
}

impl Pair {
    /// Panics if `u == v`; use [`Pair::try_new`] for unchecked input.
    pub fn new(u: usize, v: usize) -> Self {
        Self::try_new(u, v).expect("pair endpoints must differ")
    }

    pub fn try_new(u: usize, v: usize) -> Result<Self> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(Pair { lo: u, hi: v }),
            std::cmp::Ordering::Greater => Ok(Pair { lo: v, hi: u }),
            std::cmp::Ordering::Equal => Err(Error::SamePair(u)),
        }
    }

    #[inline]
    pub fn lo(self) -> usize {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> usize {
        self.hi
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint that is not `v`.
    #[inline]
    pub fn other(self, v: usize) -> usize {
        if self.lo == v {
            self.hi
        } else {
            self.lo
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.lo, self.hi)
    }
}

impl From<Pair> for [usize; 2] {
    fn from(p: Pair) -> Self {
        [p.lo, p.hi]
    }
}

impl TryFrom<[usize; 2]> for Pair {
    type Error = Error;
    fn try_from(a: [usize; 2]) -> Result<Self> {
        Pair::try_new(a[0], a[1])
    }
}

/// Number of potential edges on `n` vertices.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Index of pair `(u, v)`, `u < v`, in lexicographic order of all pairs.
#[inline]
pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// Shortest-path diameter; `Infinite` for disconnected graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl Diameter {
    pub fn at_most(self, k: usize) -> bool {
        matches!(self, Diameter::Finite(d) if d <= k)
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: BitRows,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Graph on `n` vertices with exactly the given edges; duplicates collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = BitRows::new(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        n,
                        edge: (u, v),
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj.set_sym(u, v, true);
        }
        Ok(Self::from_adjacency(adj))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(BitRows::new(n))
    }

    pub fn complete(n: usize) -> Self {
        let mut adj = BitRows::new(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    adj.set(u, v);
                }
            }
        }
        Self::from_adjacency(adj)
    }

    pub(crate) fn from_adjacency(adj: BitRows) -> Self {
        let m = adj.total_count() / 2;
        Graph { adj, m }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.n()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn adjacency(&self) -> &BitRows {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj.get(u, v)
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> &[u64] {
        self.adj.row(v)
    }

    pub fn neighbour_iter(&self, v: usize) -> bits::Ones<'_> {
        self.adj.iter_row(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.row_count(v)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Pair> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.adj
                .iter_row(u)
                .filter(move |&v| v > u)
                .map(move |v| Pair { lo: u, hi: v })
        })
    }

    /// Non-adjacent pairs in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = Pair> + '_ {
        let n = self.n();
        (0..n).flat_map(move |u| {
            (u + 1..n)
                .filter(move |&v| !self.adj.get(u, v))
                .map(move |v| Pair { lo: u, hi: v })
        })
    }

    /// A copy with one extra edge.
    pub fn with_edge(&self, e: Pair) -> Result<Self> {
        if e.hi() >= self.n() {
            return Err(Error::VertexOutOfRange {
                vertex: e.hi(),
                n: self.n(),
                edge: (e.lo(), e.hi()),
            });
        }
        let mut adj = self.adj.clone();
        adj.set_sym(e.lo(), e.hi(), true);
        Ok(Self::from_adjacency(adj))
    }

    /// Whether every edge of `self` is an edge of `other` (same vertex set).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n() == other.n()
            && (0..self.n()).all(|v| {
                self.adj
                    .row(v)
                    .iter()
                    .zip(other.adj.row(v))
                    .all(|(a, b)| a & !b == 0)
            })
    }

    /// Number of 2-paths joining `v` and `w`.
    pub fn common_neighbours(&self, v: usize, w: usize) -> Result<usize> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        if v == w {
            return Err(Error::SamePair(v));
        }
        Ok(bits::and_count(self.adj.row(v), self.adj.row(w)))
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
                edge: (v, v),
            })
        } else {
            Ok(())
        }
    }

    /// Diameter by one bitset breadth-first search per vertex.
    pub fn diameter(&self) -> Diameter {
        let n = self.n();
        let words = self.adj.words();
        let mut best = 0;
        let mut seen = vec![0u64; words];
        let mut frontier = vec![0u64; words];
        let mut next = vec![0u64; words];
        for s in 0..n {
            seen.fill(0);
            frontier.fill(0);
            seen[s / 64] |= 1 << (s % 64);
            frontier[s / 64] |= 1 << (s % 64);
            let mut reached = 1;
            let mut depth = 0;
            while reached < n {
                next.fill(0);
                for v in bits::Ones::new(&frontier) {
                    bits::or_into(&mut next, self.adj.row(v));
                }
                let mut added = 0;
                for (nw, sw) in next.iter_mut().zip(seen.iter_mut()) {
                    *nw &= !*sw;
                    *sw |= *nw;
                    added += nw.count_ones() as usize;
                }
                if added == 0 {
                    return Diameter::Infinite;
                }
                reached += added;
                depth += 1;
                std::mem::swap(&mut frontier, &mut next);
            }
            best = best.max(depth);
        }
        Diameter::Finite(best)
    }

    /// `diameter() <= 2` via the all-pairs "adjacent or common neighbour" scan.
    pub fn has_diameter_at_most_2(&self) -> bool {
        self.first_far_pair().is_none()
    }

    /// First pair (lexicographic) that is neither adjacent nor joined by a 2-path.
    pub fn first_far_pair(&self) -> Option<Pair> {
        let n = self.n();
        for u in 0..n {
            let ru = self.adj.row(u);
            for v in u + 1..n {
                if !self.adj.get(u, v) && !bits::intersects(ru, self.adj.row(v)) {
                    return Some(Pair { lo: u, hi: v });
                }
            }
        }
        None
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.diameter() != Diameter::Infinite
    }
}

/// Erdős–Rényi `G(n, p)`: one Bernoulli trial per pair in lexicographic order.
pub fn gen_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadProbability(p));
    }
    let mut adj = BitRows::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                adj.set_sym(u, v, true);
            }
        }
    }
    Ok(Graph::from_adjacency(adj))
}
