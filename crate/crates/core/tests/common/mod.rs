#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sinkopt::{Graph, NodeSet};

pub fn graph(edges: &[(u64, u64)]) -> Graph {
    Graph::from_edges(edges.iter().copied()).unwrap().graph
}

pub fn path(n: u64) -> Graph {
    graph(&(1..n).map(|i| (i, i + 1)).collect::<Vec<_>>())
}

pub fn cycle(n: u64) -> Graph {
    let mut e: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    e.push((n, 1));
    graph(&e)
}

pub fn complete(n: u64) -> Graph {
    let mut e = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            e.push((i, j));
        }
    }
    graph(&e)
}

/// Star with centre 0 and leaves `1..=leaves`.
pub fn star(leaves: u64) -> Graph {
    graph(&(1..=leaves).map(|i| (0, i)).collect::<Vec<_>>())
}

pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5u64 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((i + 5, (i + 2) % 5 + 5));
    }
    graph(&e)
}

/// Small named graphs used across the suites, all with at most 10 nodes.
pub fn fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("p3", path(3)),
        ("p4", path(4)),
        ("p5", path(5)),
        ("p6", path(6)),
        ("c4", cycle(4)),
        ("c5", cycle(5)),
        ("c6", cycle(6)),
        ("c7", cycle(7)),
        ("k4", complete(4)),
        ("k5", complete(5)),
        ("star3", star(3)),
        ("star5", star(5)),
        ("paw", graph(&[(1, 2), (2, 3), (3, 1), (3, 4)])),
        ("diamond", graph(&[(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])),
        ("bull", graph(&[(1, 2), (2, 3), (3, 1), (2, 4), (3, 5)])),
        ("house", graph(&[(1, 2), (2, 3), (3, 4), (4, 1), (3, 5), (4, 5)])),
        ("k23", graph(&[(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])),
        ("tree7", graph(&[(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)])),
        ("lollipop", graph(&[(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)])),
        ("spider", graph(&[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)])),
        ("wheel6", graph(&[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5), (5, 1)])),
        ("prism", graph(&[(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4), (1, 4), (2, 5), (3, 6)])),
        ("barbell", graph(&[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 6), (6, 4), (6, 7)])),
        ("cube", graph(&[
            (0, 1), (1, 3), (3, 2), (2, 0), (4, 5), (5, 7), (7, 6), (6, 4), (0, 4), (1, 5), (2, 6), (3, 7),
        ])),
        ("ladder8", graph(&[
            (1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8), (1, 5), (2, 6), (3, 7), (4, 8),
        ])),
        ("caterpillar9", graph(&[
            (1, 2), (2, 3), (3, 4), (4, 5), (1, 6), (2, 7), (3, 8), (5, 9),
        ])),
        ("petersen", petersen()),
        ("random9", random_connected(9, 0.3, 7)),
        ("random10", random_connected(10, 0.25, 11)),
    ]
}

pub fn small_fixtures(max_nodes: usize) -> Vec<(&'static str, Graph)> {
    fixtures().into_iter().filter(|(_, g)| g.node_count() <= max_nodes).collect()
}

/// Random spanning tree on `1..=n` plus each remaining pair with
/// probability `p`.
pub fn random_connected(n: u64, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 2..=n {
        edges.push((rng.random_range(1..v), v));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(edges).unwrap().graph
}

/// Hitting times by Gauss-Seidel sweeps on `h_i = 1 + mean of h over the
/// neighbours outside the target`, independent of the library's solver.
pub fn sweep_hitting_times(g: &Graph, a: &NodeSet) -> Vec<f64> {
    let n = g.node_count();
    let mut h = vec![0.0; n];
    for _ in 0..1_000_000 {
        let mut change: f64 = 0.0;
        for i in 0..n {
            if a.contains(i) {
                continue;
            }
            let nb = g.neighbors(i);
            let s: f64 = nb.iter().filter(|&&j| !a.contains(j)).map(|&j| h[j]).sum();
            let v = 1.0 + s / nb.len() as f64;
            change = change.max((v - h[i]).abs());
            h[i] = v;
        }
        if change < 1e-13 {
            break;
        }
    }
    h
}

pub fn sweep_objective(g: &Graph, a: &NodeSet) -> f64 {
    sweep_hitting_times(g, a).iter().sum()
}

/// Exhaustive minimum of the sweep objective over `k`-subsets, smallest
/// bitmask first among ties.
pub fn sweep_oracle(g: &Graph, k: usize) -> (NodeSet, f64) {
    let n = g.node_count();
    let mut best: Option<(NodeSet, f64)> = None;
    let mut subsets: Vec<NodeSet> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| NodeSet::from_indices((0..n).filter(|b| m >> b & 1 == 1)))
        .collect();
    subsets.sort();
    for s in subsets {
        let f = sweep_objective(g, &s);
        if best.as_ref().is_none_or(|b| f < b.1 - 1e-9) {
            best = Some((s, f));
        }
    }
    best.unwrap()
}

pub fn all_subsets(n: usize) -> Vec<NodeSet> {
    (0u32..1 << n)
        .map(|m| NodeSet::from_indices((0..n).filter(|b| m >> b & 1 == 1)))
        .collect()
}
