//! Chebyshev power iteration: `y_hat = sum_{k<=K} c_k T_k(P) x` through
//! `r_{k+1} = 2 P r_k - r_{k-1}` with three rotating buffers.

use std::time::Instant;

use super::{check_source, unit_vector, Algorithm, Estimate, QueryStats};
use crate::error::{param, Result};
use crate::graph::Graph;
use crate::kernels::Kernel;

/// State after folding in term `k`.
pub struct ChebyStep<'a> {
    pub k: usize,
    /// `T_k(P) x`.
    pub residual: &'a [f64],
    /// Partial sum through term `k`.
    pub estimate: &'a [f64],
}

pub fn cheby_power(g: &Graph, kernel: &Kernel, s: u32, k_steps: usize) -> Result<Estimate> {
    check_source(g, s)?;
    if k_steps == 0 {
        return param("Chebyshev power iteration needs K >= 1");
    }
    let start = Instant::now();
    let coeffs = kernel.cheby_coeffs(k_steps)?;
    let x = unit_vector(g.n(), s);
    let y_hat = cheby_power_from(g, &coeffs, &x, |_| {});
    let mut stats = QueryStats::new(Algorithm::ChebyPower, kernel, Some(s)).with_param("K", k_steps as f64);
    stats.iterations = k_steps;
    stats.push_work = k_steps as u64 * 2 * g.m() as u64;
    stats.wall_time = start.elapsed().as_secs_f64();
    Ok(Estimate { y_hat, stats })
}

/// Uses every entry of `coeffs` (`K = coeffs.len() - 1`), calling `on_step`
/// after each term.
pub fn cheby_power_from<F>(g: &Graph, coeffs: &[f64], x: &[f64], mut on_step: F) -> Vec<f64>
where
    F: FnMut(&ChebyStep<'_>),
{
    let n = g.n();
    let mut y_hat = vec![0.0; n];
    let mut prev = vec![0.0; n];
    let mut cur = x.to_vec();
    let mut next = vec![0.0; n];
    for (k, &c) in coeffs.iter().enumerate() {
        for (y, r) in y_hat.iter_mut().zip(&cur) {
            *y += c * r;
        }
        on_step(&ChebyStep {
            k,
            residual: &cur,
            estimate: &y_hat,
        });
        if k + 1 == coeffs.len() {
            break;
        }
        g.apply_walk_into(&cur, &mut next);
        if k > 0 {
            for (r, p) in next.iter_mut().zip(&prev) {
                *r = 2.0 * *r - p;
            }
        }
        // rotate prev <- cur <- next, recycling prev as the next scratch buffer
        std::mem::swap(&mut prev, &mut cur);
        std::mem::swap(&mut cur, &mut next);
    }
    y_hat
}
