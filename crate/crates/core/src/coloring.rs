//! Partial edge colourings with flag bits, rainbow 2-path counting and
//! rainbow-connectivity verification.

use rand::Rng;

use crate::bits::{self, BitRows};
use crate::error::{Error, Result};
use crate::graph::{Graph, Pair};

pub type Colour = u8;

/// Largest palette an [`EdgeColoring`] can hold.
pub const MAX_COLOURS: usize = 32;

/// Largest palette the subset-state rainbow search accepts (`2^8` colour subsets).
pub const MAX_SEARCH_COLOURS: usize = 8;

/// Edge colouring on `n` vertices with `k` colours.
///
/// Stored as one adjacency plane per colour, so that "edges of colour `c`
/// at `v`" is a bitset row. Flags mark edges that must not be recoloured.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    k: usize,
    planes: Vec<BitRows>,
    flags: BitRows,
}

impl std::fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EdgeColoring")
            .field("k", &self.k)
            .field("assigned", &self.assignments().collect::<Vec<_>>())
            .field("flagged", &self.flagged_edges().collect::<Vec<_>>())
            .finish()
    }
}

impl EdgeColoring {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if !(1..=MAX_COLOURS).contains(&k) {
            return Err(Error::UnsupportedColours {
                k,
                min: 1,
                max: MAX_COLOURS,
            });
        }
        Ok(EdgeColoring {
            k,
            planes: (0..k).map(|_| BitRows::new(n)).collect(),
            flags: BitRows::new(n),
        })
    }

    /// Colouring of `g` from a per-edge list in `g.edges()` order.
    pub fn from_edge_colours(g: &Graph, k: usize, colours: &[Colour]) -> Result<Self> {
        let mut col = Self::new(g.n(), k)?;
        if colours.len() != g.m() {
            return Err(Error::Params(format!(
                "{} colours given for {} edges",
                colours.len(),
                g.m()
            )));
        }
        for (e, &c) in g.edges().zip(colours) {
            col.set(e, c)?;
        }
        Ok(col)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.flags.n()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn plane(&self, c: Colour) -> &BitRows {
        &self.planes[c as usize]
    }

    #[inline]
    pub fn colour(&self, e: Pair) -> Option<Colour> {
        (0..self.k)
            .find(|&c| self.planes[c].get(e.lo(), e.hi()))
            .map(|c| c as Colour)
    }

    /// Assigns (or overwrites) the colour of `e`. Flags are left untouched.
    pub fn set(&mut self, e: Pair, c: Colour) -> Result<()> {
        if c as usize >= self.k {
            return Err(Error::ColourOutOfRange {
                colour: c as usize,
                k: self.k,
            });
        }
        if e.hi() >= self.n() {
            return Err(Error::VertexOutOfRange {
                vertex: e.hi(),
                n: self.n(),
                edge: (e.lo(), e.hi()),
            });
        }
        for plane in &mut self.planes {
            plane.set_sym(e.lo(), e.hi(), false);
        }
        self.planes[c as usize].set_sym(e.lo(), e.hi(), true);
        Ok(())
    }

    pub fn unset(&mut self, e: Pair) {
        for plane in &mut self.planes {
            plane.set_sym(e.lo(), e.hi(), false);
        }
        self.flags.set_sym(e.lo(), e.hi(), false);
    }

    /// Flags an assigned edge.
    pub fn flag(&mut self, e: Pair) -> Result<()> {
        if self.colour(e).is_none() {
            return Err(Error::Unassigned(e));
        }
        self.flags.set_sym(e.lo(), e.hi(), true);
        Ok(())
    }

    #[inline]
    pub fn is_flagged(&self, e: Pair) -> bool {
        self.flags.get(e.lo(), e.hi())
    }

    pub fn flags(&self) -> &BitRows {
        &self.flags
    }

    pub fn flagged_edges(&self) -> impl Iterator<Item = Pair> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.flags
                .iter_row(u)
                .filter(move |&v| v > u)
                .map(move |v| Pair::new(u, v))
        })
    }

    /// Flagged edges incident with `v`.
    pub fn flag_count(&self, v: usize) -> usize {
        self.flags.row_count(v)
    }

    pub fn clear_flags(&mut self) {
        self.flags = BitRows::new(self.n());
    }

    /// Bitset of neighbours `z` of `v` such that `vz` carries some colour.
    pub fn assigned_row(&self, v: usize) -> Vec<u64> {
        let mut row = vec![0u64; self.flags.words()];
        for plane in &self.planes {
            bits::or_into(&mut row, plane.row(v));
        }
        row
    }

    /// All assigned edges with their colours, lexicographic.
    pub fn assignments(&self) -> impl Iterator<Item = (Pair, Colour)> + '_ {
        (0..self.n()).flat_map(move |u| {
            let row = self.assigned_row(u);
            bits::Ones::new(&row)
                .filter(|&v| v > u)
                .map(|v| {
                    let e = Pair::new(u, v);
                    (e, self.colour(e).expect("assigned"))
                })
                .collect::<Vec<_>>()
        })
    }

    pub fn assigned_count(&self) -> usize {
        self.planes.iter().map(|p| p.total_count()).sum::<usize>() / 2
    }

    /// Checks that every assigned edge is an edge of `g`.
    pub fn check_domain(&self, g: &Graph) -> Result<()> {
        if g.n() != self.n() {
            return Err(Error::SizeMismatch(g.n(), self.n()));
        }
        for u in 0..g.n() {
            let row = self.assigned_row(u);
            for (i, (a, e)) in row.iter().zip(g.neighbours(u)).enumerate() {
                let stray = a & !e;
                if stray != 0 {
                    let v = i * 64 + stray.trailing_zeros() as usize;
                    return Err(Error::ColourOutsideGraph(Pair::new(u, v)));
                }
            }
        }
        Ok(())
    }

    /// Checks that the assigned edges are exactly the edges of `g`.
    pub fn check_full(&self, g: &Graph) -> Result<()> {
        self.check_domain(g)?;
        for u in 0..g.n() {
            let row = self.assigned_row(u);
            for (i, (a, e)) in row.iter().zip(g.neighbours(u)).enumerate() {
                let missing = e & !a;
                if missing != 0 {
                    let v = i * 64 + missing.trailing_zeros() as usize;
                    return Err(Error::Unassigned(Pair::new(u, v)));
                }
            }
        }
        Ok(())
    }

    /// Copy keeping only the edges of `g`, without flags.
    pub fn restricted_to(&self, g: &Graph) -> Self {
        let mut out = EdgeColoring {
            k: self.k,
            planes: self.planes.clone(),
            flags: BitRows::new(self.n()),
        };
        for plane in &mut out.planes {
            for v in 0..g.n() {
                for (w, a) in plane.row_mut(v).iter_mut().zip(g.neighbours(v)) {
                    *w &= a;
                }
            }
        }
        out
    }

    /// Copy with colour `c` renamed to `perm[c]`.
    pub fn relabelled(&self, perm: &[Colour]) -> Self {
        assert_eq!(perm.len(), self.k);
        let mut planes = vec![BitRows::new(self.n()); self.k];
        for (c, plane) in self.planes.iter().enumerate() {
            planes[perm[c] as usize] = plane.clone();
        }
        EdgeColoring {
            k: self.k,
            planes,
            flags: self.flags.clone(),
        }
    }
}

/// Colours every edge of `g` independently and uniformly from `0..k`,
/// visiting edges in lexicographic order.
pub fn color_edges_random<R: Rng + ?Sized>(g: &Graph, k: usize, rng: &mut R) -> Result<EdgeColoring> {
    let mut col = EdgeColoring::new(g.n(), k)?;
    for e in g.edges() {
        let c = rng.gen_range(0..k) as Colour;
        col.set(e, c)?;
    }
    Ok(col)
}

/// Number of middle vertices `z` with `vz`, `zw` edges of different colours.
pub fn rainbow_two_path_count(g: &Graph, col: &EdgeColoring, v: usize, w: usize) -> Result<usize> {
    g.check_vertex(v)?;
    g.check_vertex(w)?;
    if v == w {
        return Err(Error::SamePair(v));
    }
    if g.n() != col.n() {
        return Err(Error::SizeMismatch(g.n(), col.n()));
    }
    let av = col.assigned_row(v);
    let aw = col.assigned_row(w);
    let (gv, gw) = (g.neighbours(v), g.neighbours(w));
    for i in 0..gv.len() {
        let common = gv[i] & gw[i];
        for (end, assigned) in [(v, av[i]), (w, aw[i])] {
            let missing = common & !assigned;
            if missing != 0 {
                let z = i * 64 + missing.trailing_zeros() as usize;
                return Err(Error::Unassigned(Pair::new(end, z)));
            }
        }
    }
    Ok(rainbow_two_paths_unchecked(g, col, v, w))
}

/// [`rainbow_two_path_count`] without validation; assumes paths are assigned.
#[inline]
pub(crate) fn rainbow_two_paths_unchecked(g: &Graph, col: &EdgeColoring, v: usize, w: usize) -> usize {
    let all = bits::and_count(g.neighbours(v), g.neighbours(w));
    let mono: usize = col
        .planes
        .iter()
        .map(|p| bits::and_count(p.row(v), p.row(w)))
        .sum();
    all - mono
}

/// Whether `v` and `w` are joined by a 2-path whose edges have distinct colours,
/// for `k = 2` colourings.
#[inline]
pub(crate) fn has_rainbow_two_path_2(col: &EdgeColoring, v: usize, w: usize) -> bool {
    let (a0, a1) = (col.planes[0].row(v), col.planes[1].row(v));
    let (b0, b1) = (col.planes[0].row(w), col.planes[1].row(w));
    (0..a0.len()).any(|i| (a0[i] & b1[i]) | (a1[i] & b0[i]) != 0)
}

/// Whether every vertex pair is joined by a rainbow path of length `<= max_len`.
///
/// `k = 2` uses the pair scan; other palettes search `(vertex, colour subset)`
/// states, which is exact because a rainbow walk always contains a rainbow path
/// between its ends.
pub fn is_rainbow_connected(g: &Graph, col: &EdgeColoring, max_len: usize) -> Result<bool> {
    col.check_full(g)?;
    if max_len == 0 {
        return Err(Error::Params("max_len must be at least 1".into()));
    }
    let n = g.n();
    if max_len == 1 || col.k() == 1 {
        return Ok(g.m() == crate::graph::pair_count(n));
    }
    if col.k() == 2 {
        return Ok(all_pairs_rainbow_2(g, col));
    }
    if col.k() > MAX_SEARCH_COLOURS {
        return Err(Error::UnsupportedColours {
            k: col.k(),
            min: 1,
            max: MAX_SEARCH_COLOURS,
        });
    }
    Ok(subset_search(g, col, max_len.min(col.k())))
}

fn all_pairs_rainbow_2(g: &Graph, col: &EdgeColoring) -> bool {
    let n = g.n();
    (0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v) || has_rainbow_two_path_2(col, u, v)))
}

fn subset_search(g: &Graph, col: &EdgeColoring, max_len: usize) -> bool {
    let n = g.n();
    let k = col.k();
    let words = g.adjacency().words();
    let subsets = 1usize << k;
    let mut reach = vec![0u64; subsets * words];
    let mut covered = vec![0u64; words];
    for s in 0..n {
        reach.fill(0);
        reach[s / 64] |= 1 << (s % 64);
        covered.fill(0);
        covered[s / 64] |= 1 << (s % 64);
        for set in 0..subsets {
            let size = set.count_ones() as usize;
            if size >= max_len {
                continue;
            }
            let (before, after) = reach.split_at_mut((set + 1) * words);
            let src = &before[set * words..];
            if src.iter().all(|&w| w == 0) {
                continue;
            }
            for c in 0..k {
                if set >> c & 1 == 1 {
                    continue;
                }
                let target = set | 1 << c;
                let off = (target - set - 1) * words;
                let dst = &mut after[off..off + words];
                let plane = &col.planes[c];
                for x in bits::Ones::new(src) {
                    bits::or_into(dst, plane.row(x));
                }
            }
        }
        for set in 0..subsets {
            if (set.count_ones() as usize) <= max_len {
                bits::or_into(&mut covered, &reach[set * words..(set + 1) * words]);
            }
        }
        if !bits::is_full(&covered, n) {
            return false;
        }
    }
    true
}
