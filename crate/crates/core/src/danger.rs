//! Dangerous and sparsely connected pairs, fixes, and the property-M audit.
//!
//! A non-adjacent pair is *dangerous* when it has at most `d` rainbow 2-paths
//! and *sparsely connected* when it has at most `d` 2-paths of any colour.

use serde::{Deserialize, Serialize};

use crate::bits::{self, BitRows};
use crate::coloring::{rainbow_two_paths_unchecked, Colour, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{Graph, Pair};

/// Threshold used throughout the construction.
pub const DEFAULT_D: usize = 66;

/// Limits in the three clauses of property M.
pub const M_DANGEROUS_LIMIT: usize = 3;
pub const M_ADJACENT_LIMIT: usize = 15;
pub const M_SPARSE_LIMIT: usize = 1;

/// Symmetric set of vertex pairs with O(1) membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSet {
    rows: BitRows,
    len: usize,
}

impl PairSet {
    pub fn new(n: usize) -> Self {
        PairSet {
            rows: BitRows::new(n),
            len: 0,
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = Pair>>(n: usize, pairs: I) -> Self {
        let mut s = Self::new(n);
        for p in pairs {
            s.insert(p);
        }
        s
    }

    pub fn insert(&mut self, p: Pair) {
        if !self.contains(p) {
            self.rows.set_sym(p.lo(), p.hi(), true);
            self.len += 1;
        }
    }

    #[inline]
    pub fn contains(&self, p: Pair) -> bool {
        self.rows.get(p.lo(), p.hi())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Partners of `v`, as a bitset row.
    pub fn row(&self, v: usize) -> &[u64] {
        self.rows.row(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows.row_count(v)
    }

    /// Members in lexicographic order.
    pub fn sorted(&self) -> Vec<Pair> {
        let n = self.rows.n();
        let mut out = Vec::with_capacity(self.len);
        for u in 0..n {
            out.extend(self.rows.iter_row(u).filter(|&v| v > u).map(|v| Pair::new(u, v)));
        }
        out
    }
}

/// Dangerous and sparse pair sets of a coloured graph at threshold `d`.
#[derive(Clone, Debug)]
pub struct Classification {
    pub d: usize,
    pub dangerous: PairSet,
    pub sparse: PairSet,
}

impl Classification {
    /// Classifies every non-adjacent pair. The colouring must be full on `g`.
    pub fn compute(g: &Graph, col: &EdgeColoring, d: usize) -> Result<Self> {
        col.check_full(g)?;
        Ok(Self::compute_unchecked(g, col, d))
    }

    pub(crate) fn compute_unchecked(g: &Graph, col: &EdgeColoring, d: usize) -> Self {
        let n = g.n();
        let mut dangerous = PairSet::new(n);
        let mut sparse = PairSet::new(n);
        for u in 0..n {
            let ru = g.neighbours(u);
            for v in u + 1..n {
                if g.has_edge(u, v) {
                    continue;
                }
                let paths = bits::and_count(ru, g.neighbours(v));
                if paths <= d {
                    sparse.insert(Pair::new(u, v));
                    dangerous.insert(Pair::new(u, v));
                } else if rainbow_two_paths_unchecked(g, col, u, v) <= d {
                    dangerous.insert(Pair::new(u, v));
                }
            }
        }
        Classification {
            d,
            dangerous,
            sparse,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry {
    pub pair: Pair,
    pub two_path_count: usize,
    pub rainbow_two_path_count: usize,
    pub is_dangerous: bool,
    pub is_sparse: bool,
}

/// Per non-adjacent pair counts and classification, lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub d: usize,
    pub pairs: Vec<PairEntry>,
}

impl PairReport {
    pub fn dangerous(&self) -> impl Iterator<Item = Pair> + '_ {
        self.pairs.iter().filter(|e| e.is_dangerous).map(|e| e.pair)
    }

    pub fn get(&self, p: Pair) -> Option<&PairEntry> {
        self.pairs
            .binary_search_by(|e| e.pair.cmp(&p))
            .ok()
            .map(|i| &self.pairs[i])
    }
}

pub fn classify_pairs(g: &Graph, col: &EdgeColoring, d: usize) -> Result<PairReport> {
    col.check_full(g)?;
    let pairs = g
        .non_edges()
        .map(|p| {
            let two = bits::and_count(g.neighbours(p.lo()), g.neighbours(p.hi()));
            let rainbow = rainbow_two_paths_unchecked(g, col, p.lo(), p.hi());
            PairEntry {
                pair: p,
                two_path_count: two,
                rainbow_two_path_count: rainbow,
                is_dangerous: rainbow <= d,
                is_sparse: two <= d,
            }
        })
        .collect();
    Ok(PairReport { d, pairs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub passes: bool,
    pub limit: usize,
    pub max: usize,
    pub violations: Vec<Violation>,
}

impl ConditionVerdict {
    fn from_counts(counts: &[usize], limit: usize) -> Self {
        let violations: Vec<Violation> = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > limit)
            .map(|(vertex, &count)| Violation { vertex, count })
            .collect();
        ConditionVerdict {
            passes: violations.is_empty(),
            limit,
            max: counts.iter().copied().max().unwrap_or(0),
            violations,
        }
    }
}

/// Audit of one coloured graph against the three clauses of property M.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MAuditReport {
    pub d: usize,
    pub passes: bool,
    pub dangerous_pairs: usize,
    pub sparse_pairs: usize,
    pub condition_i: ConditionVerdict,
    pub condition_ii: ConditionVerdict,
    pub condition_iii: ConditionVerdict,
    #[serde(skip)]
    pub dangerous_pair_membership: Vec<usize>,
    #[serde(skip)]
    pub adjacent_to_both_of_dangerous: Vec<usize>,
    #[serde(skip)]
    pub sparse_pair_membership: Vec<usize>,
}

pub fn audit_property_m(g: &Graph, col: &EdgeColoring, d: usize) -> Result<MAuditReport> {
    if col.k() != 2 {
        return Err(Error::UnsupportedColours {
            k: col.k(),
            min: 2,
            max: 2,
        });
    }
    let cls = Classification::compute(g, col, d)?;
    Ok(audit_classification(g, &cls))
}

pub(crate) fn audit_classification(g: &Graph, cls: &Classification) -> MAuditReport {
    let n = g.n();
    let membership: Vec<usize> = (0..n).map(|v| cls.dangerous.degree(v)).collect();
    let sparse: Vec<usize> = (0..n).map(|v| cls.sparse.degree(v)).collect();
    let mut both = vec![0usize; n];
    let mut common = vec![0u64; g.adjacency().words()];
    for p in cls.dangerous.sorted() {
        for (c, (a, b)) in common
            .iter_mut()
            .zip(g.neighbours(p.lo()).iter().zip(g.neighbours(p.hi())))
        {
            *c = a & b;
        }
        for z in bits::Ones::new(&common) {
            both[z] += 1;
        }
    }
    let condition_i = ConditionVerdict::from_counts(&membership, M_DANGEROUS_LIMIT);
    let condition_ii = ConditionVerdict::from_counts(&both, M_ADJACENT_LIMIT);
    let condition_iii = ConditionVerdict::from_counts(&sparse, M_SPARSE_LIMIT);
    MAuditReport {
        d: cls.d,
        passes: condition_i.passes && condition_ii.passes && condition_iii.passes,
        dangerous_pairs: cls.dangerous.len(),
        sparse_pairs: cls.sparse.len(),
        condition_i,
        condition_ii,
        condition_iii,
        dangerous_pair_membership: membership,
        adjacent_to_both_of_dangerous: both,
        sparse_pair_membership: sparse,
    }
}

/// A missing edge whose addition in `required_color` adds a rainbow 2-path to `target_pair`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fix {
    pub missing_edge: Pair,
    pub required_color: Colour,
    pub target_pair: Pair,
    /// Set only by [`find_exclusive_fixes`].
    pub exclusive: bool,
}

fn check_two_colour_pair(g: &Graph, col: &EdgeColoring, pair: Pair) -> Result<()> {
    if col.k() != 2 {
        return Err(Error::UnsupportedColours {
            k: col.k(),
            min: 2,
            max: 2,
        });
    }
    g.check_vertex(pair.hi())?;
    if g.has_edge(pair.lo(), pair.hi()) {
        return Err(Error::AdjacentPair(pair));
    }
    Ok(())
}

fn colour_of(col: &EdgeColoring, e: Pair) -> Result<Colour> {
    col.colour(e).ok_or(Error::Unassigned(e))
}

/// All fixes for the non-adjacent `pair`, sorted by missing edge.
pub fn find_fixes(g: &Graph, col: &EdgeColoring, pair: Pair) -> Result<Vec<Fix>> {
    check_two_colour_pair(g, col, pair)?;
    let mut out = Vec::new();
    for (v, w) in [(pair.lo(), pair.hi()), (pair.hi(), pair.lo())] {
        for x in g.neighbour_iter(v) {
            if x == w || g.has_edge(x, w) {
                continue;
            }
            let c = colour_of(col, Pair::new(v, x))?;
            out.push(Fix {
                missing_edge: Pair::new(x, w),
                required_color: 1 - c,
                target_pair: pair,
                exclusive: false,
            });
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Dangerous pairs that adding the non-edge `e` (in a suitable colour) would
/// give a new rainbow 2-path, each with the colour it needs.
pub fn pairs_fixed_by(
    g: &Graph,
    col: &EdgeColoring,
    e: Pair,
    dangerous: &PairSet,
) -> Result<Vec<(Pair, Colour)>> {
    let mut out = Vec::new();
    for (x, y) in [(e.lo(), e.hi()), (e.hi(), e.lo())] {
        // new path c - x - y for pairs {c, y} with c adjacent to x
        let cand = dangerous.row(y);
        for (i, (&a, &b)) in g.neighbours(x).iter().zip(cand).enumerate() {
            let mut hits = a & b;
            while hits != 0 {
                let c = i * 64 + hits.trailing_zeros() as usize;
                hits &= hits - 1;
                let colour = colour_of(col, Pair::new(c, x))?;
                out.push((Pair::new(c, y), 1 - colour));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Fixes for `pair` whose missing edge is a fix for no other pair in `dangerous`.
pub fn find_exclusive_fixes(
    g: &Graph,
    col: &EdgeColoring,
    pair: Pair,
    dangerous: &PairSet,
) -> Result<Vec<Fix>> {
    let fixes = find_fixes(g, col, pair)?;
    let mut out = Vec::new();
    for f in fixes {
        let served = pairs_fixed_by(g, col, f.missing_edge, dangerous)?;
        if served.iter().all(|(p, _)| *p == pair) {
            out.push(Fix {
                exclusive: true,
                ..f
            });
        }
    }
    Ok(out)
}

/// Number of exclusive fixes of every non-adjacent pair, as a symmetric table.
///
/// A missing edge `{x, y}` serves `|Γ(x) ∩ D(y)| + |Γ(y) ∩ D(x)|` dangerous
/// pairs, where `D(v)` are the dangerous partners of `v`. A fix `{x, w}` of
/// `{v, w}` is exclusive iff that count is 0 (or 1 when `{v, w}` is itself
/// dangerous and accounts for it).
pub fn exclusive_fix_counts(g: &Graph, dangerous: &PairSet) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut zero = BitRows::new(n);
    let mut one = BitRows::new(n);
    for x in 0..n {
        for y in x + 1..n {
            if g.has_edge(x, y) {
                continue;
            }
            let served = bits::and_count(g.neighbours(x), dangerous.row(y))
                + bits::and_count(g.neighbours(y), dangerous.row(x));
            match served {
                0 => zero.set_sym(x, y, true),
                1 => one.set_sym(x, y, true),
                _ => {}
            }
        }
    }
    let mut out = vec![vec![0u32; n]; n];
    for v in 0..n {
        for w in v + 1..n {
            if g.has_edge(v, w) {
                continue;
            }
            let table = if dangerous.contains(Pair::new(v, w)) {
                &one
            } else {
                &zero
            };
            let c = bits::and_count(g.neighbours(v), table.row(w))
                + bits::and_count(g.neighbours(w), table.row(v));
            out[v][w] = c as u32;
            out[w][v] = c as u32;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaVerdict {
    pub passes: bool,
    /// Vertices (or pairs, for the exclusive-fix clause) outside the bound.
    pub violations: usize,
    pub checked: usize,
    pub bound_low: Option<f64>,
    pub bound_high: Option<f64>,
    pub observed_min: Option<f64>,
    pub observed_max: Option<f64>,
}

/// Finite-n observations of the structural statements about the round-1 graph.
/// Violations are data, not errors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaAudit {
    pub n: usize,
    pub eps: f64,
    pub d: usize,
    /// Every degree in `[sqrt((1+eps/2) n ln n), sqrt((1+2eps) n ln n)]`.
    pub degree_window: LemmaVerdict,
    /// Every vertex in at most `n^((1-eps/4)/2)` dangerous pairs.
    pub dangerous_per_vertex: LemmaVerdict,
    /// Every non-adjacent pair has at least `2 sqrt((1+eps/4) n ln n)` exclusive fixes.
    pub exclusive_fixes: LemmaVerdict,
}

pub fn audit_whp_lemmas(g1: &Graph, col: &EdgeColoring, eps: f64, d: usize) -> Result<LemmaAudit> {
    if col.k() != 2 {
        return Err(Error::UnsupportedColours {
            k: col.k(),
            min: 2,
            max: 2,
        });
    }
    let cls = Classification::compute(g1, col, d)?;
    let n = g1.n();
    let nf = n as f64;
    let nlogn = nf * nf.max(1.0).ln();

    let low = ((1.0 + eps / 2.0) * nlogn).sqrt();
    let high = ((1.0 + 2.0 * eps) * nlogn).sqrt();
    let degrees: Vec<f64> = (0..n).map(|v| g1.degree(v) as f64).collect();
    let bad = degrees.iter().filter(|&&x| x < low || x > high).count();
    let degree_window = LemmaVerdict {
        passes: bad == 0,
        violations: bad,
        checked: n,
        bound_low: Some(low),
        bound_high: Some(high),
        observed_min: degrees.iter().copied().reduce(f64::min),
        observed_max: degrees.iter().copied().reduce(f64::max),
    };

    let limit = nf.powf(0.5 * (1.0 - eps / 4.0));
    let member: Vec<f64> = (0..n).map(|v| cls.dangerous.degree(v) as f64).collect();
    let bad = member.iter().filter(|&&x| x > limit).count();
    let dangerous_per_vertex = LemmaVerdict {
        passes: bad == 0,
        violations: bad,
        checked: n,
        bound_low: None,
        bound_high: Some(limit),
        observed_min: member.iter().copied().reduce(f64::min),
        observed_max: member.iter().copied().reduce(f64::max),
    };

    let need = 2.0 * ((1.0 + eps / 4.0) * nlogn).sqrt();
    let counts = exclusive_fix_counts(g1, &cls.dangerous);
    let mut checked = 0;
    let mut bad = 0;
    let mut lo: Option<f64> = None;
    let mut hi: Option<f64> = None;
    for p in g1.non_edges() {
        let c = counts[p.lo()][p.hi()] as f64;
        checked += 1;
        if c < need {
            bad += 1;
        }
        lo = Some(lo.map_or(c, |x| x.min(c)));
        hi = Some(hi.map_or(c, |x| x.max(c)));
    }
    let exclusive_fixes = LemmaVerdict {
        passes: bad == 0,
        violations: bad,
        checked,
        bound_low: Some(need),
        bound_high: None,
        observed_min: lo,
        observed_max: hi,
    };
    Ok(LemmaAudit {
        n,
        eps,
        d,
        degree_window,
        dangerous_per_vertex,
        exclusive_fixes,
    })
}
