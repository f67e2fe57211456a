//! Exact rainbow connection numbers for small graphs.

use serde::{Deserialize, Serialize};

use crate::coloring::{is_rainbow_connected, Colour, EdgeColoring, MAX_SEARCH_COLOURS};
use crate::error::Result;
use crate::graph::{Diameter, Graph, Pair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    /// Colourings (for `rc_exact`) or search nodes (for `rc_at_most_2`).
    pub max_colorings: u64,
    pub max_k: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_colorings: 1 << 30,
            max_k: MAX_SEARCH_COLOURS,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RcValue {
    Finite(usize),
    Infinite,
    /// Gave up while trying `k` colours.
    BudgetExceeded { k: usize },
}

/// Smallest `k` admitting a rainbow `k`-colouring, with a witness when finite.
pub fn rc_exact_with_witness(g: &Graph, budget: OracleBudget) -> Result<(RcValue, Option<EdgeColoring>)> {
    let diam = match g.diameter() {
        Diameter::Infinite => return Ok((RcValue::Infinite, None)),
        Diameter::Finite(d) => d,
    };
    let edges: Vec<Pair> = g.edges().collect();
    let m = edges.len();
    let mut spent = 0u64;
    let mut k = diam.max(1);
    loop {
        if k > budget.max_k.min(MAX_SEARCH_COLOURS) {
            return Ok((RcValue::BudgetExceeded { k }, None));
        }
        let mut col = EdgeColoring::new(g.n(), k)?;
        let mut digits = vec![0 as Colour; m];
        for &e in &edges {
            col.set(e, 0)?;
        }
        loop {
            spent += 1;
            if spent > budget.max_colorings {
                return Ok((RcValue::BudgetExceeded { k }, None));
            }
            if is_rainbow_connected(g, &col, k)? {
                return Ok((RcValue::Finite(k), Some(col)));
            }
            // odometer over every edge but the first, whose colour is fixed to 0
            let mut advanced = false;
            for i in (1..m).rev() {
                digits[i] += 1;
                if (digits[i] as usize) < k {
                    col.set(edges[i], digits[i])?;
                    advanced = true;
                    break;
                }
                digits[i] = 0;
                col.set(edges[i], 0)?;
            }
            if !advanced {
                break;
            }
        }
        k += 1;
    }
}

pub fn rc_exact(g: &Graph, budget: OracleBudget) -> Result<RcValue> {
    rc_exact_with_witness(g, budget).map(|(v, _)| v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rc2Answer {
    Yes(EdgeColoring),
    No,
    BudgetExceeded,
}

impl Rc2Answer {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Rc2Answer::Yes(_) => Some(true),
            Rc2Answer::No => Some(false),
            Rc2Answer::BudgetExceeded => None,
        }
    }
}

/// Backtracking search for a 2-colouring where every non-adjacent pair has a
/// bicoloured 2-path. Each pair is a clause "some middle `z` has
/// `colour(vz) != colour(zw)`"; clauses down to one live path propagate.
pub fn rc_at_most_2(g: &Graph, budget: OracleBudget) -> Result<Rc2Answer> {
    let n = g.n();
    let edges: Vec<Pair> = g.edges().collect();
    let m = edges.len();
    if !g.has_diameter_at_most_2() {
        return Ok(Rc2Answer::No);
    }
    let index = |a: usize, b: usize| -> usize {
        edges
            .binary_search(&Pair::new(a, b))
            .expect("path edge present")
    };
    let clauses: Vec<Vec<(usize, usize)>> = g
        .non_edges()
        .map(|p| {
            g.neighbour_iter(p.lo())
                .filter(|&z| g.has_edge(z, p.hi()))
                .map(|z| (index(p.lo(), z), index(z, p.hi())))
                .collect()
        })
        .collect();

    let mut weight = vec![0usize; m];
    for c in clauses.iter().filter(|c| c.len() == 1) {
        weight[c[0].0] += 1;
        weight[c[0].1] += 1;
    }
    let mut order: Vec<usize> = (1..m).collect();
    order.sort_by(|&a, &b| weight[b].cmp(&weight[a]).then(a.cmp(&b)));

    let mut search = Search {
        clauses: &clauses,
        assign: vec![-1; m],
        trail: Vec::new(),
        nodes: 0,
        budget: budget.max_colorings,
    };
    if m > 0 {
        search.assign[0] = 0;
        search.trail.push(0);
    }
    let found = match search.solve(&order) {
        Some(found) => found,
        None => return Ok(Rc2Answer::BudgetExceeded),
    };
    if !found {
        return Ok(Rc2Answer::No);
    }
    let mut col = EdgeColoring::new(n, 2)?;
    for (e, &a) in edges.iter().zip(&search.assign) {
        col.set(*e, a.max(0) as Colour)?;
    }
    Ok(Rc2Answer::Yes(col))
}

struct Search<'a> {
    clauses: &'a [Vec<(usize, usize)>],
    assign: Vec<i8>,
    trail: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// `None` when the node budget runs out.
    fn solve(&mut self, order: &[usize]) -> Option<bool> {
        if !self.propagate() {
            return Some(false);
        }
        let next = order.iter().copied().find(|&e| self.assign[e] < 0);
        let Some(e) = next else {
            return Some(true);
        };
        for value in [0i8, 1] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let mark = self.trail.len();
            self.assign[e] = value;
            self.trail.push(e);
            match self.solve(order) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            for &x in &self.trail[mark..] {
                self.assign[x] = -1;
            }
            self.trail.truncate(mark);
        }
        Some(false)
    }

    /// Unit propagation to a fixed point; false on a violated clause.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for clause in self.clauses {
                let mut live = None;
                let mut live_count = 0;
                let mut satisfied = false;
                for &(a, b) in clause {
                    let (x, y) = (self.assign[a], self.assign[b]);
                    if x >= 0 && y >= 0 {
                        if x != y {
                            satisfied = true;
                            break;
                        }
                    } else {
                        live_count += 1;
                        live = Some((a, b));
                    }
                }
                if satisfied {
                    continue;
                }
                match (live_count, live) {
                    (0, _) => return false,
                    (1, Some((a, b))) => {
                        let (x, y) = (self.assign[a], self.assign[b]);
                        if x >= 0 && y < 0 {
                            self.assign[b] = 1 - x;
                            self.trail.push(b);
                            changed = true;
                        } else if y >= 0 && x < 0 {
                            self.assign[a] = 1 - y;
                            self.trail.push(a);
                            changed = true;
                        }
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }
}
