//! Test-only oracles that share no code with the library: a simple-path
//! enumerating rainbow checker and a canonical-form catalog of small graphs.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rainbowlab::Graph;

/// Every pair joined by a simple path of at most `k` edges with distinct colours.
pub fn brute_rainbow_connected(n: usize, edges: &[(usize, usize)], colours: &[u8], k: usize) -> bool {
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    (0..n).all(|s| (s + 1..n).all(|t| rainbow_path_exists(&adj, colours, s, t, k)))
}

fn rainbow_path_exists(adj: &[Vec<(usize, usize)>], colours: &[u8], s: usize, t: usize, k: usize) -> bool {
    fn dfs(
        adj: &[Vec<(usize, usize)>],
        colours: &[u8],
        at: usize,
        t: usize,
        left: usize,
        visited: u64,
        used: u64,
    ) -> bool {
        if at == t {
            return true;
        }
        if left == 0 {
            return false;
        }
        adj[at].iter().any(|&(next, e)| {
            let c = 1u64 << colours[e];
            visited & (1 << next) == 0
                && used & c == 0
                && dfs(adj, colours, next, t, left - 1, visited | (1 << next), used | c)
        })
    }
    dfs(adj, colours, s, t, k, 1 << s, 0)
}

/// Smallest `k` with a rainbow `k`-colouring, by trying every colouring;
/// `None` when disconnected.
pub fn brute_rc(n: usize, edges: &[(usize, usize)]) -> Option<usize> {
    if !connected(n, edges) {
        return None;
    }
    if n <= 1 {
        return Some(1);
    }
    let m = edges.len();
    for k in 1..=m.max(1) {
        let mut colours = vec![0u8; m];
        loop {
            if brute_rainbow_connected(n, edges, &colours, k) {
                return Some(k);
            }
            let mut i = 0;
            while i < m && colours[i] as usize == k - 1 {
                colours[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            colours[i] += 1;
        }
    }
    unreachable!("a spanning tree coloured injectively is rainbow")
}

pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub fn cycle(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

pub fn path(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

pub fn cube() -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for v in 0..8usize {
        for b in 0..3 {
            let w = v ^ (1 << b);
            if v < w {
                e.push((v, w));
            }
        }
    }
    e
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative edge list per isomorphism class of connected graphs on
/// `n` vertices (the class's lexicographically smallest edge mask).
pub fn connected_catalog(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs = pairs(n);
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    let maps: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|perm| pairs.iter().map(|&(u, v)| index(perm[u], perm[v])).collect())
        .collect();
    let mut classes = BTreeSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        if !connected(n, &edges) {
            continue;
        }
        let canonical = maps
            .iter()
            .map(|map| {
                (0..pairs.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(0u32, |acc, i| acc | 1 << map[i])
            })
            .min()
            .unwrap();
        classes.insert(canonical);
    }
    classes
        .into_iter()
        .map(|mask| (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect())
        .collect()
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).unwrap()
}
