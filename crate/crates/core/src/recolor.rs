//! Flag-and-recolour: turn a 2-colouring of a spanning subgraph into a
//! colouring of the whole graph in which every pair is adjacent or joined by
//! a rainbow 2-path.
//!
//! Pairs that are dangerous in the subgraph are handled in two passes,
//! sparsely connected ones first (paths may use any edge of `g`), then richly
//! connected ones (paths inside the subgraph, fully unflagged). Every edge
//! whose colour is (re)assigned is flagged and never touched again. Uncoloured
//! leftovers get colour 0. A final repair pass treats any pair that lost its
//! last rainbow 2-path like a sparse pair; it does nothing when the subgraph
//! colouring satisfies property M at `d >= 66`.

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::coloring::{has_rainbow_two_path_2, Colour, EdgeColoring};
use crate::danger::Classification;
use crate::error::{Error, Result};
use crate::graph::{Graph, Pair};

/// Why the construction stopped. Each reason names the pair being processed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", content = "pair")]
pub enum RecolorFailure {
    /// The pair has no 2-path in `g` (diameter exceeds 2).
    NoDiameter2Path(Pair),
    /// Every 2-path of a sparse pair already has both edges flagged.
    BothEdgesFlagged(Pair),
    /// No 2-path with an unflagged edge remains for the pair.
    NoUnflaggedPath(Pair),
}

impl RecolorFailure {
    pub fn pair(self) -> Pair {
        match self {
            RecolorFailure::NoDiameter2Path(p)
            | RecolorFailure::BothEdgesFlagged(p)
            | RecolorFailure::NoUnflaggedPath(p) => p,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RecolorFailure::NoDiameter2Path(_) => "NoDiameter2Path",
            RecolorFailure::BothEdgesFlagged(_) => "BothEdgesFlagged",
            RecolorFailure::NoUnflaggedPath(_) => "NoUnflaggedPath",
        }
    }
}

impl std::fmt::Display for RecolorFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}({})", self.name(), self.pair())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColourWrite {
    pub edge: Pair,
    pub from: Option<Colour>,
    pub to: Colour,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassEntry {
    pub pair: Pair,
    /// Middle vertex of the chosen 2-path; `None` when the pair is adjacent in `g`.
    pub middle: Option<usize>,
    pub flagged: Vec<Pair>,
    pub writes: Vec<ColourWrite>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecolorTrace {
    pub d: usize,
    pub sub_dangerous: usize,
    pub sparse_sub_dangerous: usize,
    pub sparse_pass: Vec<PassEntry>,
    pub rich_pass: Vec<PassEntry>,
    pub repair_pass: Vec<PassEntry>,
    pub leftover_assignments: Vec<Pair>,
    pub flags_per_vertex: Vec<usize>,
    pub max_flags_per_vertex: usize,
}

impl RecolorTrace {
    /// All colour writes in the order they happened (leftovers last).
    pub fn writes(&self) -> impl Iterator<Item = &ColourWrite> {
        self.sparse_pass
            .iter()
            .chain(&self.rich_pass)
            .flat_map(|e| e.writes.iter())
            .chain(self.repair_pass.iter().flat_map(|e| e.writes.iter()))
    }

    pub fn entries(&self) -> impl Iterator<Item = &PassEntry> {
        self.sparse_pass
            .iter()
            .chain(&self.rich_pass)
            .chain(&self.repair_pass)
    }
}

#[derive(Clone, Debug)]
pub enum RecolorOutcome {
    Success {
        coloring: EdgeColoring,
        trace: RecolorTrace,
    },
    Failure {
        failure: RecolorFailure,
        trace: RecolorTrace,
    },
}

impl RecolorOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, RecolorOutcome::Success { .. })
    }

    pub fn trace(&self) -> &RecolorTrace {
        match self {
            RecolorOutcome::Success { trace, .. } | RecolorOutcome::Failure { trace, .. } => trace,
        }
    }

    pub fn coloring(&self) -> Option<&EdgeColoring> {
        match self {
            RecolorOutcome::Success { coloring, .. } => Some(coloring),
            RecolorOutcome::Failure { .. } => None,
        }
    }

    pub fn failure(&self) -> Option<RecolorFailure> {
        match self {
            RecolorOutcome::Failure { failure, .. } => Some(*failure),
            RecolorOutcome::Success { .. } => None,
        }
    }
}

/// Every pair adjacent or joined by a rainbow 2-path, for a full 2-colouring.
pub fn verify_rc2_coloring(g: &Graph, col: &EdgeColoring) -> Result<bool> {
    if col.k() != 2 {
        return Err(Error::UnsupportedColours {
            k: col.k(),
            min: 2,
            max: 2,
        });
    }
    col.check_full(g)?;
    Ok(first_broken_pair(g, col, 0).is_none())
}

/// First non-adjacent pair at or after row `from` without a rainbow 2-path.
fn first_broken_pair(g: &Graph, col: &EdgeColoring, from: usize) -> Option<Pair> {
    let n = g.n();
    for u in from..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && !has_rainbow_two_path_2(col, u, v) {
                return Some(Pair::new(u, v));
            }
        }
    }
    None
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Pass {
    Sparse,
    Rich,
    Repair,
}

struct State<'a> {
    g: &'a Graph,
    gsub: &'a Graph,
    col: EdgeColoring,
}

impl State<'_> {
    fn flagged_on(&self, v: usize, z: usize, w: usize) -> usize {
        self.col.is_flagged(Pair::new(v, z)) as usize + self.col.is_flagged(Pair::new(z, w)) as usize
    }

    fn rainbow_via(&self, v: usize, z: usize, w: usize) -> bool {
        match (self.col.colour(Pair::new(v, z)), self.col.colour(Pair::new(z, w))) {
            (Some(a), Some(b)) => a != b,
            _ => false,
        }
    }

    /// A 2-path in `g` with both edges flagged and different colours.
    fn has_locked_rainbow(&self, v: usize, w: usize) -> Option<usize> {
        let fv = self.col.flags().row(v);
        let fw = self.col.flags().row(w);
        let mut both = vec![0u64; fv.len()];
        for (b, (a, c)) in both.iter_mut().zip(fv.iter().zip(fw)) {
            *b = a & c;
        }
        bits::Ones::new(&both).find(|&z| self.rainbow_via(v, z, w))
    }

    fn process(&mut self, pair: Pair, pass: Pass) -> std::result::Result<PassEntry, RecolorFailure> {
        let (v, w) = (pair.lo(), pair.hi());
        let mut entry = PassEntry {
            pair,
            middle: None,
            flagged: Vec::new(),
            writes: Vec::new(),
        };
        if self.g.has_edge(v, w) {
            return Ok(entry);
        }
        let search = if pass == Pass::Rich { self.gsub } else { self.g };
        let mut common = vec![0u64; search.adjacency().words()];
        for (c, (a, b)) in common
            .iter_mut()
            .zip(search.neighbours(v).iter().zip(search.neighbours(w)))
        {
            *c = a & b;
        }
        let mut best: Option<(usize, usize)> = None;
        let mut any = false;
        for z in bits::Ones::new(&common) {
            any = true;
            let f = self.flagged_on(v, z, w);
            if best.is_none_or(|(bf, _)| f < bf) {
                best = Some((f, z));
                if f == 0 {
                    break;
                }
            }
        }
        if !any && pass != Pass::Rich {
            return Err(RecolorFailure::NoDiameter2Path(pair));
        }
        let z = match (pass, best) {
            (Pass::Rich, Some((0, z))) => z,
            (Pass::Sparse | Pass::Repair, Some((f, z))) if f < 2 => z,
            _ => {
                // the pair may already own a rainbow path that can never change
                if let Some(z) = self.has_locked_rainbow(v, w) {
                    entry.middle = Some(z);
                    return Ok(entry);
                }
                return Err(match pass {
                    Pass::Sparse => RecolorFailure::BothEdgesFlagged(pair),
                    Pass::Rich | Pass::Repair => RecolorFailure::NoUnflaggedPath(pair),
                });
            }
        };
        entry.middle = Some(z);
        let e1 = Pair::new(v, z);
        let e2 = Pair::new(z, w);
        let (first, second) = if e1 < e2 { (e1, e2) } else { (e2, e1) };
        let c1 = self.col.colour(first);
        let c2 = self.col.colour(second);
        let mut writes: Vec<(Pair, Colour)> = Vec::new();
        match (c1, c2) {
            (Some(a), Some(b)) if a != b => {}
            (Some(a), Some(_)) => {
                let target = if !self.col.is_flagged(second) { second } else { first };
                writes.push((target, 1 - a));
            }
            (Some(a), None) => writes.push((second, 1 - a)),
            (None, Some(b)) => writes.push((first, 1 - b)),
            (None, None) => {
                writes.push((first, 0));
                writes.push((second, 1));
            }
        }
        for (e, c) in writes {
            debug_assert!(!self.col.is_flagged(e));
            entry.writes.push(ColourWrite {
                edge: e,
                from: self.col.colour(e),
                to: c,
            });
            self.col.set(e, c).expect("edge in range");
        }
        for e in [first, second] {
            if !self.col.is_flagged(e) {
                self.col.flag(e).expect("assigned before flagging");
                entry.flagged.push(e);
            }
        }
        Ok(entry)
    }
}

/// Recolours `g` starting from a full 2-colouring of the spanning subgraph
/// `gsub`. Edges of `g` outside `gsub` must be uncoloured.
///
/// Returns `Err` only for malformed input; construction failures are reported
/// as [`RecolorOutcome::Failure`]. A success always passes
/// [`verify_rc2_coloring`].
pub fn recolor(g: &Graph, gsub: &Graph, coloring: &EdgeColoring, d: usize) -> Result<RecolorOutcome> {
    if !gsub.is_subgraph_of(g) {
        return Err(Error::NotSpanning("subgraph"));
    }
    if coloring.k() != 2 {
        return Err(Error::UnsupportedColours {
            k: coloring.k(),
            min: 2,
            max: 2,
        });
    }
    coloring.check_full(gsub)?;
    let cls = Classification::compute_unchecked(gsub, coloring, d);
    let dangerous = cls.dangerous.sorted();

    let mut col = coloring.clone();
    col.clear_flags();
    let mut state = State { g, gsub, col };
    let mut trace = RecolorTrace {
        d,
        sub_dangerous: dangerous.len(),
        sparse_sub_dangerous: cls.sparse.len(),
        ..Default::default()
    };

    macro_rules! run {
        ($pair:expr, $pass:expr, $log:expr) => {
            match state.process($pair, $pass) {
                Ok(entry) => $log.push(entry),
                Err(failure) => {
                    finish_trace(&mut trace, &state.col);
                    return Ok(RecolorOutcome::Failure { failure, trace });
                }
            }
        };
    }

    for &p in dangerous.iter().filter(|p| cls.sparse.contains(**p)) {
        run!(p, Pass::Sparse, trace.sparse_pass);
    }
    for &p in dangerous.iter().filter(|p| !cls.sparse.contains(**p)) {
        run!(p, Pass::Rich, trace.rich_pass);
    }
    for e in g.edges() {
        if state.col.colour(e).is_none() {
            state.col.set(e, 0).expect("edge in range");
            trace.leftover_assignments.push(e);
        }
    }
    // Each repair flags at least one more edge, so this terminates.
    let mut row = 0;
    loop {
        match first_broken_pair(g, &state.col, row) {
            Some(p) => {
                row = p.lo();
                run!(p, Pass::Repair, trace.repair_pass);
            }
            // earlier rows may have been disturbed; one clean sweep from 0 ends it
            None if row > 0 => row = 0,
            None => break,
        }
    }
    finish_trace(&mut trace, &state.col);
    debug_assert_eq!(verify_rc2_coloring(g, &state.col), Ok(true));
    Ok(RecolorOutcome::Success {
        coloring: state.col,
        trace,
    })
}

fn finish_trace(trace: &mut RecolorTrace, col: &EdgeColoring) {
    trace.flags_per_vertex = (0..col.n()).map(|v| col.flag_count(v)).collect();
    trace.max_flags_per_vertex = trace.flags_per_vertex.iter().copied().max().unwrap_or(0);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn verify_examples() {
        let k3 = Graph::complete(3);
        let col = EdgeColoring::from_edge_colours(&k3, 2, &[0, 0, 0]).unwrap();
        assert_eq!(verify_rc2_coloring(&k3, &col), Ok(true));
        let g = c4();
        // edge order (0,1),(0,3),(1,2),(2,3)
        let alt = EdgeColoring::from_edge_colours(&g, 2, &[0, 1, 1, 0]).unwrap();
        assert_eq!(verify_rc2_coloring(&g, &alt), Ok(true));
        let mono = EdgeColoring::from_edge_colours(&g, 2, &[0, 0, 0, 0]).unwrap();
        assert_eq!(verify_rc2_coloring(&g, &mono), Ok(false));
        let partial = EdgeColoring::from_edge_colours(&k3, 2, &[0, 0, 0])
            .map(|mut c| {
                c.unset(Pair::new(1, 2));
                c
            })
            .unwrap();
        assert_eq!(verify_rc2_coloring(&k3, &partial), Err(Error::Unassigned(Pair::new(1, 2))));
    }

    #[test]
    fn complete_graph_is_untouched() {
        let k = Graph::complete(6);
        let col = EdgeColoring::from_edge_colours(&k, 2, &[1; 15]).unwrap();
        let out = recolor(&k, &k, &col, 66).unwrap();
        match out {
            RecolorOutcome::Success { coloring, trace } => {
                assert_eq!(coloring, col);
                assert_eq!(trace.max_flags_per_vertex, 0);
                assert!(trace.entries().next().is_none());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn path_fails_for_far_endpoints() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let col = EdgeColoring::from_edge_colours(&p4, 2, &[0, 1, 0]).unwrap();
        let out = recolor(&p4, &p4, &col, 66).unwrap();
        assert_eq!(out.failure(), Some(RecolorFailure::NoDiameter2Path(Pair::new(0, 3))));
    }

    #[test]
    fn uncoloured_extra_edges_get_assigned() {
        // g = C4, gsub = path 0-1-2 plus isolated edge (2,3) missing; gsub spans g
        let g = c4();
        let gsub = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        let col = EdgeColoring::from_edge_colours(&gsub, 2, &[0, 0]).unwrap();
        let out = recolor(&g, &gsub, &col, 66).unwrap();
        let c = out.coloring().expect("success");
        assert_eq!(verify_rc2_coloring(&g, c), Ok(true));
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = c4();
        let big = Graph::complete(4);
        let col = EdgeColoring::from_edge_colours(&big, 2, &[0; 6]).unwrap();
        assert_eq!(recolor(&g, &big, &col, 66).err(), Some(Error::NotSpanning("subgraph")));
        let col3 = EdgeColoring::new(4, 3).unwrap();
        assert!(recolor(&g, &g, &col3, 66).is_err());
        let partial = EdgeColoring::new(4, 2).unwrap();
        assert!(matches!(recolor(&g, &g, &partial, 66), Err(Error::Unassigned(_))));
    }
}
