//! Ground truth, error metrics and query-source selection.

mod cache;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use cache::{cache_dir_from_env, cache_path, load_or_compute, read_truth, write_truth, CACHE_ENV};

use crate::error::{param, Error, Result};
use crate::graph::Graph;
use crate::kernels::{taylor_truncation, Kernel};
use crate::solvers::{check_source, power_method_from, unit_vector};

/// Distances between a ground-truth vector and an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorReport {
    pub l1: f64,
    pub l2: f64,
    /// `max_u |y(u) - y_hat(u)| / d_u`.
    pub deg_norm_inf: f64,
    /// Node attaining `deg_norm_inf` (smallest id on ties).
    pub argmax_node: u32,
}

pub fn measure(truth: &[f64], estimate: &[f64], g: &Graph) -> ErrorReport {
    assert_eq!(truth.len(), estimate.len(), "vectors must have equal length");
    assert_eq!(truth.len(), g.n(), "vectors must have one entry per node");
    let mut l1 = 0.0;
    let mut sq = 0.0;
    let mut deg_norm_inf = 0.0;
    let mut argmax_node = 0u32;
    for (u, (a, b)) in truth.iter().zip(estimate).enumerate() {
        let diff = (a - b).abs();
        l1 += diff;
        sq += diff * diff;
        let scaled = diff / g.degree(u as u32) as f64;
        if scaled > deg_norm_inf {
            deg_norm_inf = scaled;
            argmax_node = u as u32;
        }
    }
    ErrorReport {
        l1,
        l2: sq.sqrt(),
        deg_norm_inf,
        argmax_node,
    }
}

/// A reference vector computed by power iteration far past the requested
/// accuracy.
#[derive(Debug, Clone)]
pub struct GroundTruth {
    pub vector: Vec<f64>,
    pub kernel: Kernel,
    pub source: u32,
    /// Taylor steps used.
    pub truncation: usize,
}

/// Power-iteration steps for a ground truth: `ceil(ln(1e20) / alpha)` for
/// PPR, `ceil(2 t ln(1e20))` for the heat kernel, and a Taylor tail below
/// 1e-18 for custom kernels.
pub fn ground_truth_steps(kernel: &Kernel) -> Result<usize> {
    let log_target = 1e20f64.ln();
    match kernel {
        Kernel::Ppr { alpha } => Ok((log_target / alpha).ceil() as usize),
        Kernel::Hkpr { t } => Ok((2.0 * t * log_target).ceil() as usize),
        Kernel::Custom(_) => Ok(taylor_truncation(kernel, 1e-18)?.0),
    }
}

pub fn ground_truth(g: &Graph, kernel: &Kernel, s: u32) -> Result<GroundTruth> {
    check_source(g, s)?;
    let truncation = ground_truth_steps(kernel)?;
    ground_truth_with_steps(g, kernel, s, truncation)
}

/// Ground truth with an explicit step count.
pub fn ground_truth_with_steps(g: &Graph, kernel: &Kernel, s: u32, truncation: usize) -> Result<GroundTruth> {
    check_source(g, s)?;
    if truncation == 0 {
        return param("ground truth needs at least one step");
    }
    let zeta = kernel.taylor_coeffs(truncation - 1);
    let vector = power_method_from(g, &zeta, &unit_vector(g.n(), s), |_| {});
    Ok(GroundTruth {
        vector,
        kernel: kernel.clone(),
        source: s,
        truncation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceStrategy {
    /// Sampled without replacement.
    Uniform,
    /// Highest degree first, smaller id on ties.
    TopDegree,
}

/// A strategy and a count, written `uniform:k` or `topdeg:k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSelection {
    pub strategy: SourceStrategy,
    pub count: usize,
}

impl FromStr for SourceSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, count) = s
            .split_once(':')
            .ok_or_else(|| Error::Parameter(format!("source selection {s:?} is not strategy:count")))?;
        let strategy = match name {
            "uniform" => SourceStrategy::Uniform,
            "topdeg" => SourceStrategy::TopDegree,
            other => return param(format!("unknown source strategy {other:?}")),
        };
        let count = count
            .parse()
            .map_err(|_| Error::Parameter(format!("source count {count:?} is not an integer")))?;
        Ok(SourceSelection { strategy, count })
    }
}

impl fmt::Display for SourceSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.strategy {
            SourceStrategy::Uniform => "uniform",
            SourceStrategy::TopDegree => "topdeg",
        };
        write!(f, "{name}:{}", self.count)
    }
}

pub fn select_sources(g: &Graph, strategy: SourceStrategy, count: usize, seed: u64) -> Result<Vec<u32>> {
    let n = g.n();
    if count > n {
        return param(format!("cannot select {count} sources from {n} nodes"));
    }
    Ok(match strategy {
        SourceStrategy::Uniform => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rand::seq::index::sample(&mut rng, n, count)
                .into_iter()
                .map(|u| u as u32)
                .collect()
        }
        SourceStrategy::TopDegree => {
            let mut ids: Vec<u32> = (0..n as u32).collect();
            ids.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
            ids.truncate(count);
            ids
        }
    })
}
