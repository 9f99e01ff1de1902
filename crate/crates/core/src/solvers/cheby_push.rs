//! Local Chebyshev iteration with two residual buffers.
//!
//! Start from `y_hat = c_0 x`, `r_cur = P x`, `r_new = -x`. Iteration `k`
//! pushes every node `u` with `|r_cur(u)| > eps_k d_u`:
//!
//! ```text
//! y_hat(u) += c_k r_cur(u)
//! r_new(v) += 2 r_cur(u) / d_u    for v ~ u
//! r_cur(u)  = -r_cur(u)
//! ```
//!
//! and then swaps the buffers. Afterwards `r_cur` holds the next subset
//! Chebyshev vector and `r_new` holds the current one with the pushed
//! entries negated, which is exactly what the next iteration subtracts.
//! With every threshold at zero the result equals Chebyshev power iteration.

use std::time::Instant;

use super::{check_source, support, unit_vector, Algorithm, Estimate, QueryStats};
use crate::error::{param, Result};
use crate::graph::Graph;
use crate::kernels::Kernel;

/// State right after the buffer swap of iteration `k`.
pub struct PushStep<'a> {
    pub k: usize,
    /// Nodes pushed in this iteration, in scan order.
    pub pushed: &'a [u32],
    pub r_cur: &'a [f64],
    pub r_new: &'a [f64],
    pub estimate: &'a [f64],
}

#[derive(Debug, Clone)]
pub struct PushOutcome {
    pub y_hat: Vec<f64>,
    /// Sum over iterations of the volume of the pushed set.
    pub push_work: u64,
    /// Final buffers, mostly for residual-based refinement and tests.
    pub r_cur: Vec<f64>,
    pub r_new: Vec<f64>,
}

/// `eps_k = eps_a / (4K sum_{l=k}^K |c_l|)` for `k = 1..=K`, returned at index `k - 1`.
///
/// A zero tail sum (underflow for sharply decaying kernels) yields `+inf`.
pub fn cheby_push_thresholds(coeffs: &[f64], eps_a: f64) -> Vec<f64> {
    let k_steps = coeffs.len().saturating_sub(1);
    let mut out = vec![0.0; k_steps];
    let mut tail = 0.0;
    for k in (1..=k_steps).rev() {
        tail += coeffs[k].abs();
        out[k - 1] = if eps_a == 0.0 {
            0.0
        } else if tail == 0.0 {
            f64::INFINITY
        } else {
            eps_a / (4.0 * k_steps as f64 * tail)
        };
    }
    out
}

pub fn cheby_push(g: &Graph, kernel: &Kernel, s: u32, k_steps: usize, eps_a: f64) -> Result<Estimate> {
    check_source(g, s)?;
    let start = Instant::now();
    if k_steps == 0 {
        return param("Chebyshev push needs K >= 1");
    }
    let coeffs = kernel.cheby_coeffs(k_steps)?;
    let out = cheby_push_from(g, &coeffs, &unit_vector(g.n(), s), eps_a)?;
    let mut stats = QueryStats::new(Algorithm::ChebyPush, kernel, Some(s))
        .with_param("K", k_steps as f64)
        .with_param("eps_a", eps_a);
    stats.iterations = k_steps;
    stats.push_work = out.push_work;
    stats.wall_time = start.elapsed().as_secs_f64();
    Ok(Estimate {
        y_hat: out.y_hat,
        stats,
    })
}

pub fn cheby_push_from(g: &Graph, coeffs: &[f64], x: &[f64], eps_a: f64) -> Result<PushOutcome> {
    if eps_a.is_nan() || eps_a < 0.0 {
        return param(format!("eps_a must be nonnegative, got {eps_a}"));
    }
    let thresholds = cheby_push_thresholds(coeffs, eps_a);
    cheby_push_with_thresholds(g, coeffs, x, &thresholds, |_| {})
}

/// One residual buffer plus the list of nodes that may hold a nonzero entry.
struct Buffer {
    values: Vec<f64>,
    active: Vec<u32>,
    listed: Vec<bool>,
}

impl Buffer {
    fn new(n: usize) -> Self {
        Buffer {
            values: vec![0.0; n],
            active: Vec::new(),
            listed: vec![false; n],
        }
    }

    #[inline]
    fn add(&mut self, v: u32, amount: f64) {
        self.values[v as usize] += amount;
        if !self.listed[v as usize] {
            self.listed[v as usize] = true;
            self.active.push(v);
        }
    }
}

/// Runs the iteration with explicit thresholds: `thresholds[k - 1]` is used
/// in iteration `k`, for `k = 1..=K` where `K = coeffs.len() - 1`.
pub fn cheby_push_with_thresholds<F>(
    g: &Graph,
    coeffs: &[f64],
    x: &[f64],
    thresholds: &[f64],
    mut on_step: F,
) -> Result<PushOutcome>
where
    F: FnMut(&PushStep<'_>),
{
    let n = g.n();
    if x.len() != n {
        return param(format!("seed vector has length {}, graph has {n} nodes", x.len()));
    }
    if coeffs.len() < 2 {
        return param("Chebyshev push needs K >= 1");
    }
    let k_steps = coeffs.len() - 1;
    if thresholds.len() < k_steps {
        return param(format!("need {k_steps} thresholds, got {}", thresholds.len()));
    }
    if thresholds[..k_steps].iter().any(|e| e.is_nan() || *e < 0.0) {
        return param("thresholds must be nonnegative");
    }
    let degrees = g.degrees();

    let seed = support(x);
    let mut y_hat = vec![0.0; n];
    let mut cur = Buffer::new(n);
    let mut new = Buffer::new(n);
    for &u in &seed {
        let xu = x[u as usize];
        y_hat[u as usize] = coeffs[0] * xu;
        new.add(u, -xu);
    }
    let mut push_work = 0u64;
    for &u in &seed {
        let share = x[u as usize] / degrees[u as usize] as f64;
        for &v in g.neighbors(u) {
            cur.add(v, share);
        }
        push_work += degrees[u as usize] as u64;
    }

    let mut pushed: Vec<u32> = Vec::new();
    for k in 1..=k_steps {
        let eps = thresholds[k - 1];
        let c = coeffs[k];
        pushed.clear();
        for i in 0..cur.active.len() {
            let u = cur.active[i];
            let r = cur.values[u as usize];
            let d = degrees[u as usize];
            if r.abs() > eps * d as f64 {
                y_hat[u as usize] += c * r;
                let share = 2.0 * r / d as f64;
                for &v in g.neighbors(u) {
                    new.add(v, share);
                }
                cur.values[u as usize] = -r;
                push_work += d as u64;
                pushed.push(u);
            }
        }
        std::mem::swap(&mut cur, &mut new);
        on_step(&PushStep {
            k,
            pushed: &pushed,
            r_cur: &cur.values,
            r_new: &new.values,
            estimate: &y_hat,
        });
    }
    Ok(PushOutcome {
        y_hat,
        push_work,
        r_cur: cur.values,
        r_new: new.values,
    })
}
