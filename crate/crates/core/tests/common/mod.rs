#![allow(dead_code)]

use std::collections::VecDeque;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sierpinski_metric::Graph;

/// Random connected graph: random spanning tree plus each other pair with
/// probability `p`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((order[i], order[j]));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// Random connected bipartite graph with both sides non-empty.
pub fn random_connected_bipartite(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    assert!(n >= 2);
    let side: Vec<bool> = loop {
        let s: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        if s.iter().any(|&b| b) && s.iter().any(|&b| !b) {
            break s;
        }
    };
    // Grow a spanning tree across the cut.
    let mut in_tree = vec![false; n];
    let first = (0..n).find(|&v| side[v]).unwrap();
    in_tree[first] = true;
    let mut edges = Vec::new();
    let mut pending: Vec<usize> = (0..n).filter(|&v| v != first).collect();
    pending.shuffle(rng);
    while !pending.is_empty() {
        let pos = pending
            .iter()
            .position(|&v| (0..n).any(|u| in_tree[u] && side[u] != side[v]))
            .unwrap();
        let v = pending.remove(pos);
        let choices: Vec<usize> = (0..n)
            .filter(|&u| in_tree[u] && side[u] != side[v])
            .collect();
        let u = *choices.choose(rng).unwrap();
        edges.push((u, v));
        in_tree[v] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deterministic corpus of connected graphs with 4 ≤ n ≤ 8.
pub fn connected_corpus(count: usize, seed: u64) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let n = 4 + i % 5;
            let p = [0.1, 0.25, 0.4, 0.6][i % 4];
            random_connected(&mut r, n, p)
        })
        .collect()
}

/// Deterministic corpus of connected bipartite graphs with 2 ≤ n ≤ 8.
pub fn bipartite_corpus(count: usize, seed: u64) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let n = 3 + i % 6;
            let p = [0.2, 0.4, 0.7][i % 3];
            random_connected_bipartite(&mut r, n, p)
        })
        .collect()
}

/// Proptest strategy: arbitrary graph on 1..=max_n vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |mask| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if mask[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, &edges).unwrap()
        })
    })
}

/// Proptest strategy: connected graph on 1..=max_n vertices.
pub fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(any::<prop::sample::Index>(), n.saturating_sub(1)),
            prop::collection::vec(prop::bool::weighted(0.3), pairs),
        )
            .prop_map(move |(parents, mask)| {
                let mut edges: Vec<(usize, usize)> = parents
                    .iter()
                    .enumerate()
                    .map(|(i, ix)| (i + 1, ix.index(i + 1)))
                    .collect();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if mask[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::new(n, &edges).unwrap()
            })
    })
}

/// Single-pair BFS over an explicit neighbour function.
pub fn bfs_pair<F>(start: usize, target: usize, n: usize, neighbors: F) -> Option<u32>
where
    F: Fn(usize) -> Vec<usize>,
{
    let mut dist = vec![None; n];
    dist[start] = Some(0u32);
    let mut q = VecDeque::from([start]);
    while let Some(u) = q.pop_front() {
        if u == target {
            return dist[u];
        }
        for v in neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(dist[u].unwrap() + 1);
                q.push_back(v);
            }
        }
    }
    None
}

/// Adjacency in `S_G^r` straight from the definition: some `t` with equal
/// digits above `t`, an edge of `G` at `t`, and swapped constants below.
/// Digits are least significant first here: `x[0] = x_1`.
pub fn sierpinski_adjacent(base: &Graph, x: &[usize], y: &[usize]) -> bool {
    let r = x.len();
    (0..r).any(|t| {
        (t + 1..r).all(|i| x[i] == y[i])
            && x[t] != y[t]
            && base.has_edge(x[t], y[t])
            && (0..t).all(|i| x[i] == y[t] && y[i] == x[t])
    })
}

/// Little-endian digits of `index` in base `n`.
pub fn digits_le(index: usize, n: usize, r: usize) -> Vec<usize> {
    let mut d = Vec::with_capacity(r);
    let mut rest = index;
    for _ in 0..r {
        d.push(rest % n);
        rest /= n;
    }
    d
}

/// Edge list of `S_G^r` by testing every pair against the definition.
pub fn sierpinski_by_definition(base: &Graph, r: usize) -> Vec<(usize, usize)> {
    let n = base.vertex_count();
    let total = n.pow(r as u32);
    let words: Vec<Vec<usize>> = (0..total).map(|i| digits_le(i, n, r)).collect();
    let mut edges = Vec::new();
    for u in 0..total {
        for v in u + 1..total {
            if sierpinski_adjacent(base, &words[u], &words[v]) {
                edges.push((u, v));
            }
        }
    }
    edges
}
