//! Dense reference computations shared by the integration tests.
//!
//! Everything here goes through nalgebra matrices and never touches the
//! library's solvers, so agreement is a genuine cross-check.

#![allow(dead_code)]

use chebyprop::graph::generators;
use chebyprop::{Graph, NodeSet};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn adjacency(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let mut a = DMatrix::zeros(n, n);
    for u in 0..n as u32 {
        for &v in g.neighbors(u) {
            a[(u as usize, v as usize)] = 1.0;
        }
    }
    a
}

/// `P = A D^-1`.
pub fn walk_matrix(g: &Graph) -> DMatrix<f64> {
    let mut p = adjacency(g);
    for (j, &d) in g.degrees().iter().enumerate() {
        p.column_mut(j).scale_mut(1.0 / d as f64);
    }
    p
}

/// `D^-1/2 A D^-1/2`.
pub fn normalized_adjacency(g: &Graph) -> DMatrix<f64> {
    let a = adjacency(g);
    let s: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    DMatrix::from_fn(g.n(), g.n(), |i, j| s[i] * a[(i, j)] * s[j])
}

pub fn unit(n: usize, s: u32) -> DVector<f64> {
    let mut x = DVector::zeros(n);
    x[s as usize] = 1.0;
    x
}

/// `alpha (I - (1 - alpha) P)^-1 x` by LU.
pub fn ppr_solve(g: &Graph, alpha: f64, x: &DVector<f64>) -> DVector<f64> {
    let n = g.n();
    let m = DMatrix::identity(n, n) - walk_matrix(g) * (1.0 - alpha);
    m.lu().solve(&(x * alpha)).expect("nonsingular")
}

/// `f(S) x` for symmetric `S`, through its eigendecomposition.
pub fn symmetric_function_apply<F: Fn(f64) -> f64>(s: &DMatrix<f64>, f: F, x: &DVector<f64>) -> DVector<f64> {
    let eig = SymmetricEigen::new(s.clone());
    let q = &eig.eigenvectors;
    let mut coords = q.transpose() * x;
    for (c, &lam) in coords.iter_mut().zip(eig.eigenvalues.iter()) {
        *c *= f(lam.clamp(-1.0, 1.0));
    }
    q * coords
}

/// `f(P) x = D^1/2 f(D^-1/2 A D^-1/2) D^-1/2 x`.
pub fn walk_function_apply<F: Fn(f64) -> f64>(g: &Graph, f: F, x: &DVector<f64>) -> DVector<f64> {
    let sq: Vec<f64> = g.degrees().iter().map(|&d| (d as f64).sqrt()).collect();
    let scaled = DVector::from_fn(g.n(), |i, _| x[i] / sq[i]);
    let y = symmetric_function_apply(&normalized_adjacency(g), f, &scaled);
    DVector::from_fn(g.n(), |i, _| y[i] * sq[i])
}

/// `T_0(M) x ..= T_k(M) x` by the dense three-term recurrence.
pub fn chebyshev_vectors(m: &DMatrix<f64>, x: &DVector<f64>, k: usize) -> Vec<DVector<f64>> {
    let mut out = vec![x.clone()];
    if k >= 1 {
        out.push(m * x);
    }
    for j in 1..k {
        let next = (m * &out[j]) * 2.0 - &out[j - 1];
        out.push(next);
    }
    out
}

pub fn to_vec(v: &DVector<f64>) -> Vec<f64> {
    v.iter().copied().collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn l2_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Connected random graph with `n` nodes and roughly `density * n` extra edges.
pub fn random_graph(n: usize, density: f64, seed: u64) -> Graph {
    generators::random_connected(n, (density * n as f64) as usize, seed)
}

/// Random subset where each node is kept with probability `keep`.
pub fn random_subset(g: &Graph, keep: f64, rng: &mut ChaCha8Rng) -> NodeSet {
    let members: Vec<u32> = (0..g.n() as u32).filter(|_| rng.gen::<f64>() < keep).collect();
    NodeSet::new(g, members)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
