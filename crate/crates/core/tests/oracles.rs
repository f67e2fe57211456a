mod common;

use common::{brute_rainbow_connected, brute_rc, connected_catalog, cube, cycle, graph, path};
use rainbowlab::coloring::EdgeColoring;
use rainbowlab::oracle::{rc_at_most_2, rc_exact, rc_exact_with_witness, OracleBudget, RcValue};
use rainbowlab::{is_rainbow_connected, Graph, Pair};

// Values produced by `brute_rc` and frozen here.
const RC_C5: usize = 3;
const RC_C6: usize = 3;
const RC_Q3: usize = 3;

#[test]
fn catalog_sizes() {
    let sizes: Vec<usize> = (1..=5).map(|n| connected_catalog(n).len()).collect();
    assert_eq!(sizes, vec![1, 1, 2, 6, 21]);
}

#[test]
fn brute_force_frozen_values() {
    assert_eq!(brute_rc(5, &cycle(5)), Some(RC_C5));
    assert_eq!(brute_rc(6, &cycle(6)), Some(RC_C6));
    assert_eq!(brute_rc(5, &path(5)), Some(4));
    assert_eq!(brute_rc(3, &[(0, 1)]), None);
}

#[test]
fn brute_force_cube() {
    assert_eq!(brute_rc(8, &cube()), Some(RC_Q3));
}

#[test]
fn exact_matches_frozen_values() {
    let b = OracleBudget::default();
    assert_eq!(rc_exact(&Graph::complete(5), b), Ok(RcValue::Finite(1)));
    assert_eq!(rc_exact(&graph(5, &path(5)), b), Ok(RcValue::Finite(4)));
    assert_eq!(rc_exact(&graph(5, &cycle(5)), b), Ok(RcValue::Finite(RC_C5)));
    assert_eq!(rc_exact(&graph(6, &cycle(6)), b), Ok(RcValue::Finite(RC_C6)));
    assert_eq!(rc_exact(&graph(8, &cube()), b), Ok(RcValue::Finite(RC_Q3)));
}

#[test]
fn exact_agrees_with_brute_force_on_small_catalog() {
    let b = OracleBudget::default();
    for n in 1..=5 {
        for edges in connected_catalog(n) {
            let g = graph(n, &edges);
            let (value, witness) = rc_exact_with_witness(&g, b).unwrap();
            let expected = brute_rc(n, &edges).unwrap();
            assert_eq!(value, RcValue::Finite(expected), "{edges:?}");
            // the witness is rainbow under the independent checker
            let col = witness.unwrap();
            let colours: Vec<u8> = edges
                .iter()
                .map(|&(u, v)| col.colour(Pair::new(u, v)).unwrap())
                .collect();
            assert!(brute_rainbow_connected(n, &edges, &colours, expected));
        }
    }
}

#[test]
fn rainbow_check_agrees_with_brute_force() {
    // every 2- and 3-colouring of C5 and of K4 minus an edge
    let cases: Vec<(usize, Vec<(usize, usize)>)> = vec![
        (5, cycle(5)),
        (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]),
    ];
    for (n, edges) in cases {
        let g = graph(n, &edges);
        // graph edges come back in lexicographic order; align the edge list
        let sorted: Vec<(usize, usize)> = g.edges().map(|e| (e.lo(), e.hi())).collect();
        for k in 2..=3usize {
            let total = k.pow(sorted.len() as u32);
            for code in 0..total {
                let mut x = code;
                let colours: Vec<u8> = (0..sorted.len())
                    .map(|_| {
                        let c = (x % k) as u8;
                        x /= k;
                        c
                    })
                    .collect();
                let col = EdgeColoring::from_edge_colours(&g, k, &colours).unwrap();
                for max_len in 1..=4 {
                    assert_eq!(
                        is_rainbow_connected(&g, &col, max_len).unwrap(),
                        brute_rainbow_connected(n, &sorted, &colours, max_len),
                        "k={k} colours={colours:?} max_len={max_len}"
                    );
                }
            }
        }
    }
}

#[test]
fn at_most_two_on_cycles() {
    let b = OracleBudget::default();
    assert_eq!(rc_at_most_2(&graph(4, &cycle(4)), b).unwrap().as_bool(), Some(true));
    assert_eq!(rc_at_most_2(&graph(5, &cycle(5)), b).unwrap().as_bool(), Some(false));
    assert_eq!(rc_at_most_2(&Graph::complete(6), b).unwrap().as_bool(), Some(true));
}
