//! Bidirectional PPR estimation: a Chebyshev push phase followed by
//! α-random walks that correct for the residual it leaves behind.
//!
//! After the push phase, for every node `u`
//!
//! ```text
//! pi_s(u) = pi_hat(u) + sum_v r(v) pi_v(u),   r = e_s - (1/alpha) (I - (1 - alpha) P) pi_hat
//! ```
//!
//! and `pi_v(u)` is the probability that an α-walk from `v` stops at `u`.
//! Launching `ceil(|r(v)| W)` walks from each `v` and crediting
//! `r(v) / W_v` at every terminal gives an unbiased estimate of the sum.
//! Residuals here can be negative, so the credit carries the sign of `r(v)`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{param, Result};
use crate::graph::{Graph, NodeSet};
use crate::kernels::{chebyshev_truncation, Kernel};
use crate::solvers::{check_source, cheby_push, support, Algorithm, Estimate};

#[derive(Debug, Clone, PartialEq)]
pub struct RandomWalkConfig {
    pub alpha: f64,
    /// Total walk budget `W`.
    pub walks: u64,
    /// Push threshold `sqrt(alpha) / W`.
    pub r_max: f64,
    pub eps_r: f64,
    pub delta: f64,
    pub seed: u64,
}

impl RandomWalkConfig {
    /// `W = ceil(2 (2 eps_r / 3 + 2) ln n / (eps_r^2 delta))`, `r_max = sqrt(alpha) / W`.
    pub fn new(n: usize, alpha: f64, eps_r: f64, delta: f64, seed: u64) -> Result<Self> {
        check_open_unit("alpha", alpha)?;
        check_open_unit("eps_r", eps_r)?;
        check_open_unit("delta", delta)?;
        let raw = 2.0 * (2.0 * eps_r / 3.0 + 2.0) * (n as f64).ln() / (eps_r * eps_r * delta);
        let walks = (raw.ceil() as u64).max(1);
        Ok(RandomWalkConfig {
            alpha,
            walks,
            r_max: alpha.sqrt() / walks as f64,
            eps_r,
            delta,
            seed,
        })
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let expect = RandomWalkConfig::new(n, self.alpha, self.eps_r, self.delta, self.seed)?;
        if expect.walks != self.walks || (expect.r_max - self.r_max).abs() > 1e-15 * expect.r_max {
            return param(format!(
                "walk budget {} / r_max {} do not match eps_r, delta and n (expected {} / {})",
                self.walks, self.r_max, expect.walks, expect.r_max
            ));
        }
        Ok(())
    }
}

fn check_open_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        param(format!("{name} must lie in (0, 1), got {v}"))
    }
}

/// Sparse signed residual, sorted by node id.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResidualVector {
    pub entries: Vec<(u32, f64)>,
}

impl ResidualVector {
    /// `max_u |r(u)| / d_u`, zero for an empty residual.
    pub fn max_degree_normalized(&self, g: &Graph) -> f64 {
        self.entries
            .iter()
            .map(|&(u, r)| r.abs() / g.degree(u) as f64)
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self, n: usize) -> Vec<f64> {
        let mut out = vec![0.0; n];
        for &(u, r) in &self.entries {
            out[u as usize] = r;
        }
        out
    }
}

/// `r = e_s - (1/alpha)(pi_hat - (1 - alpha) P pi_hat)`; entries below 1e-16
/// in magnitude are dropped.
pub fn compute_residual(g: &Graph, alpha: f64, pi_hat: &[f64], s: u32) -> ResidualVector {
    assert_eq!(pi_hat.len(), g.n(), "estimate length must equal node count");
    let supp = NodeSet::new(g, support(pi_hat));
    let mut walked = vec![0.0; g.n()];
    g.apply_walk_from_subset(pi_hat, &supp, 1.0, &mut walked);

    let mut candidates: Vec<u32> = Vec::with_capacity(supp.vol() as usize + supp.len() + 1);
    candidates.push(s);
    for &u in supp.members() {
        candidates.push(u);
        candidates.extend_from_slice(g.neighbors(u));
    }
    candidates.sort_unstable();
    candidates.dedup();

    let entries = candidates
        .into_iter()
        .filter_map(|u| {
            let i = u as usize;
            let e = if u == s { 1.0 } else { 0.0 };
            let r = e - (pi_hat[i] - (1.0 - alpha) * walked[i]) / alpha;
            (r.abs() >= 1e-16).then_some((u, r))
        })
        .collect();
    ResidualVector { entries }
}

/// Terminal node and number of visited nodes (start included) of one α-walk:
/// at every node the walk stops with probability `alpha`, otherwise it
/// moves to a uniform neighbor.
pub fn alpha_random_walk_with_length<R: Rng + ?Sized>(g: &Graph, start: u32, alpha: f64, rng: &mut R) -> (u32, u64) {
    let mut u = start;
    let mut visited = 1u64;
    while rng.gen::<f64>() >= alpha {
        let adj = g.neighbors(u);
        u = adj[rng.gen_range(0..adj.len())];
        visited += 1;
    }
    (u, visited)
}

pub fn alpha_random_walk<R: Rng + ?Sized>(g: &Graph, start: u32, alpha: f64, rng: &mut R) -> u32 {
    alpha_random_walk_with_length(g, start, alpha, rng).0
}

/// Source of walk terminals for the correction phase.
pub trait WalkSampler: Sync {
    fn terminal(&self, g: &Graph, start: u32, alpha: f64, rng: &mut ChaCha8Rng) -> u32;
}

/// Plain α-random walks.
#[derive(Debug, Clone, Copy, Default)]
pub struct AlphaWalk;

impl WalkSampler for AlphaWalk {
    fn terminal(&self, g: &Graph, start: u32, alpha: f64, rng: &mut ChaCha8Rng) -> u32 {
        alpha_random_walk(g, start, alpha, rng)
    }
}

/// Generator for walks started at `v`: stream `v` of the query seed.
pub fn walk_rng(seed: u64, v: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(v as u64);
    rng
}

#[derive(Debug, Clone)]
pub struct PushPhase {
    pub estimate: Vec<f64>,
    pub residual: ResidualVector,
    pub k_steps: usize,
    pub push_work: u64,
}

/// Chebyshev push with threshold `r_max`; `k_steps` defaults to the
/// truncation step for tolerance `r_max`.
pub fn push_phase(g: &Graph, s: u32, cfg: &RandomWalkConfig, k_steps: Option<usize>) -> Result<PushPhase> {
    check_source(g, s)?;
    let kernel = Kernel::ppr(cfg.alpha)?;
    let k_steps = match k_steps {
        Some(k) => k,
        None => chebyshev_truncation(&kernel, cfg.r_max)?.0,
    };
    let est = cheby_push(g, &kernel, s, k_steps, cfg.r_max)?;
    let residual = compute_residual(g, cfg.alpha, &est.y_hat, s);
    Ok(PushPhase {
        estimate: est.y_hat,
        residual,
        k_steps,
        push_work: est.stats.push_work,
    })
}

#[derive(Debug, Clone)]
pub struct WalkCorrection {
    /// Estimate of `sum_v r(v) pi_v`.
    pub correction: Vec<f64>,
    pub walks: u64,
}

/// Launches `ceil(|r(v)| W)` walks from every residual node `v` and credits
/// `r(v) / W_v` at each terminal. Walks from different `v` run in parallel;
/// the result does not depend on the thread count.
pub fn walk_phase<S: WalkSampler>(g: &Graph, residual: &ResidualVector, cfg: &RandomWalkConfig, sampler: &S) -> WalkCorrection {
    let per_node: Vec<(f64, Vec<u32>)> = residual
        .entries
        .par_iter()
        .map(|&(v, r)| {
            let count = (r.abs() * cfg.walks as f64).ceil() as u64;
            let mut rng = walk_rng(cfg.seed, v);
            let terminals: Vec<u32> = (0..count).map(|_| sampler.terminal(g, v, cfg.alpha, &mut rng)).collect();
            let credit = if count == 0 { 0.0 } else { r / count as f64 };
            (credit, terminals)
        })
        .collect();
    let mut correction = vec![0.0; g.n()];
    let mut walks = 0u64;
    for (credit, terminals) in &per_node {
        walks += terminals.len() as u64;
        for &u in terminals {
            correction[u as usize] += credit;
        }
    }
    WalkCorrection { correction, walks }
}

/// Bidirectional estimate of the personalized PageRank vector of `s`.
pub fn cheby_push_rw(g: &Graph, s: u32, cfg: &RandomWalkConfig, k_steps: Option<usize>) -> Result<Estimate> {
    cheby_push_rw_with(g, s, cfg, k_steps, &AlphaWalk)
}

pub fn cheby_push_rw_with<S: WalkSampler>(
    g: &Graph,
    s: u32,
    cfg: &RandomWalkConfig,
    k_steps: Option<usize>,
    sampler: &S,
) -> Result<Estimate> {
    cfg.validate(g.n())?;
    let start = Instant::now();
    let phase = push_phase(g, s, cfg, k_steps)?;
    let walked = walk_phase(g, &phase.residual, cfg, sampler);
    let y_hat = phase
        .estimate
        .iter()
        .zip(&walked.correction)
        .map(|(a, b)| a + b)
        .collect();
    let kernel = Kernel::ppr(cfg.alpha)?;
    let mut stats = crate::QueryStats::new(Algorithm::ChebyPushRw, &kernel, Some(s))
        .with_param("K", phase.k_steps as f64)
        .with_param("eps_r", cfg.eps_r)
        .with_param("delta", cfg.delta)
        .with_param("r_max", cfg.r_max)
        .with_param("W", cfg.walks as f64);
    stats.iterations = phase.k_steps;
    stats.push_work = phase.push_work;
    stats.walks = walked.walks;
    stats.wall_time = start.elapsed().as_secs_f64();
    Ok(Estimate { y_hat, stats })
}
