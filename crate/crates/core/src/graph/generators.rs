//! Small deterministic graph families and seeded random graphs for tests
//! and synthetic benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;

pub fn path(n: usize) -> Graph {
    assert!(n >= 2);
    Graph::from_edges(n, (1..n as u32).map(|v| (v - 1, v))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let n32 = n as u32;
    Graph::from_edges(n, (0..n32).map(|v| (v, (v + 1) % n32))).unwrap()
}

/// Center is node 0.
pub fn star(leaves: usize) -> Graph {
    assert!(leaves >= 1);
    Graph::from_edges(leaves + 1, (1..=leaves as u32).map(|v| (0, v))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    assert!(n >= 2);
    let n32 = n as u32;
    Graph::from_edges(n, (0..n32).flat_map(|u| (u + 1..n32).map(move |v| (u, v)))).unwrap()
}

/// Connected random graph: a random recursive tree plus `extra_edges`
/// uniformly drawn node pairs (self-loops and repeats are discarded).
pub fn random_connected(n: usize, extra_edges: usize, seed: u64) -> Graph {
    assert!(n >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n - 1 + extra_edges);
    for v in 1..n as u32 {
        edges.push((rng.gen_range(0..v), v));
    }
    for _ in 0..extra_edges {
        edges.push((rng.gen_range(0..n as u32), rng.gen_range(0..n as u32)));
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Barabási–Albert preferential attachment: each new node links to
/// `attach` distinct existing nodes chosen proportionally to degree.
/// Produces a connected graph with a heavy-tailed degree distribution.
pub fn preferential_attachment(n: usize, attach: usize, seed: u64) -> Graph {
    assert!(attach >= 1 && n > attach);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(n * attach);
    // every edge endpoint appears once per incident edge, so uniform draws
    // from this list are degree-proportional
    let mut endpoints: Vec<u32> = Vec::with_capacity(2 * n * attach);
    let core = attach + 1;
    for u in 0..core as u32 {
        for v in u + 1..core as u32 {
            edges.push((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut targets: Vec<u32> = Vec::with_capacity(attach);
    for v in core as u32..n as u32 {
        targets.clear();
        while targets.len() < attach {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, v));
            endpoints.push(t);
            endpoints.push(v);
        }
    }
    Graph::from_edges(n, edges).unwrap()
}
