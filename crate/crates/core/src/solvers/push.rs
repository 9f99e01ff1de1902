//! Taylor push: the power method restricted, at each step, to nodes whose
//! residual exceeds a degree-scaled threshold. Residual mass that fails the
//! test is dropped rather than carried forward.

use std::time::Instant;

use super::{check_source, support, unit_vector, Algorithm, Estimate, QueryStats};
use crate::error::{param, Result};
use crate::graph::Graph;
use crate::kernels::Kernel;

/// Thresholds `eps_k = eps_a / (2N sum_{j=k}^{N-1} zeta_j)` for `k < N`.
///
/// Each dropped residual at step `k` costs at most `eps_k d_u` times the
/// remaining Taylor mass, so the total degree-normalized loss stays below
/// `eps_a / 2`.
pub fn default_push_thresholds(zeta: &[f64], eps_a: f64) -> Vec<f64> {
    let n = zeta.len();
    let mut out = vec![0.0; n];
    let mut tail = 0.0;
    for k in (0..n).rev() {
        tail += zeta[k].abs();
        out[k] = if eps_a == 0.0 {
            0.0
        } else if tail == 0.0 {
            f64::INFINITY
        } else {
            eps_a / (2.0 * n as f64 * tail)
        };
    }
    out
}

/// `thresholds[k]` is used at step `k`; at least `n_steps` entries are required.
pub fn push(g: &Graph, kernel: &Kernel, s: u32, n_steps: usize, thresholds: &[f64]) -> Result<Estimate> {
    check_source(g, s)?;
    if n_steps == 0 {
        return param("push needs N >= 1");
    }
    let start = Instant::now();
    let zeta = kernel.taylor_coeffs(n_steps - 1);
    let x = unit_vector(g.n(), s);
    let (y_hat, work) = push_from(g, &zeta, &x, thresholds)?;
    let mut stats = QueryStats::new(Algorithm::Push, kernel, Some(s)).with_param("N", n_steps as f64);
    stats.iterations = n_steps;
    stats.push_work = work;
    stats.wall_time = start.elapsed().as_secs_f64();
    Ok(Estimate { y_hat, stats })
}

/// Returns the estimate and the total degree volume pushed.
pub fn push_from(g: &Graph, zeta: &[f64], x: &[f64], thresholds: &[f64]) -> Result<(Vec<f64>, u64)> {
    let steps = zeta.len();
    if thresholds.len() < steps {
        return param(format!("push needs {steps} thresholds, got {}", thresholds.len()));
    }
    if thresholds[..steps].iter().any(|e| e.is_nan() || *e < 0.0) {
        return param("push thresholds must be nonnegative");
    }
    let n = g.n();
    let degrees = g.degrees();
    let mut y_hat = vec![0.0; n];
    let mut cur = x.to_vec();
    let mut next = vec![0.0; n];
    let mut active = support(x);
    let mut next_active: Vec<u32> = Vec::new();
    let mut queued = vec![false; n];
    let mut work = 0u64;

    for k in 0..steps {
        let eps = thresholds[k];
        let last = k + 1 == steps;
        for &u in &active {
            let r = cur[u as usize];
            let d = degrees[u as usize];
            if r.abs() > eps * d as f64 {
                y_hat[u as usize] += zeta[k] * r;
                if !last {
                    let share = r / d as f64;
                    for &v in g.neighbors(u) {
                        next[v as usize] += share;
                        if !queued[v as usize] {
                            queued[v as usize] = true;
                            next_active.push(v);
                        }
                    }
                    work += d as u64;
                }
            }
            cur[u as usize] = 0.0;
        }
        for &v in &next_active {
            queued[v as usize] = false;
        }
        std::mem::swap(&mut cur, &mut next);
        std::mem::swap(&mut active, &mut next_active);
        next_active.clear();
    }
    Ok((y_hat, work))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;
    use crate::solvers::power_method;

    #[test]
    fn star_trace_by_hand() {
        // alpha = 0.5: zeta = [1/2, 1/4, 1/8]
        // step 0 pushes the center (1 > 0.3), each leaf gets 1/3
        // step 1 pushes every leaf (1/3 > 0.1), the center gets 1 back
        // step 2 folds the center in: 1/2 + 1/8
        let g = generators::star(3);
        let k = Kernel::ppr(0.5).unwrap();
        let est = push(&g, &k, 0, 3, &[0.1; 3]).unwrap();
        let want = [0.625, 1.0 / 12.0, 1.0 / 12.0, 1.0 / 12.0];
        for (a, b) in est.y_hat.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(est.stats.push_work, 6);
    }

    #[test]
    fn large_thresholds_prune_everything() {
        let g = generators::star(3);
        let k = Kernel::ppr(0.5).unwrap();
        let est = push(&g, &k, 0, 3, &[1.0; 3]).unwrap();
        assert!(est.y_hat.iter().all(|&v| v == 0.0));
        let est = push(&g, &k, 1, 3, &[1.0; 3]).unwrap();
        // leaf has degree 1 and residual 1, which is not > 1
        assert!(est.y_hat.iter().all(|&v| v == 0.0));
        let est = push(&g, &k, 1, 3, &[0.99, 1.0, 1.0]).unwrap();
        assert_eq!(est.y_hat, vec![0.0, 0.5, 0.0, 0.0]);
    }

    #[test]
    fn zero_thresholds_match_power_method() {
        let g = generators::random_connected(60, 90, 3);
        let k = Kernel::hkpr(5.0).unwrap();
        let a = push(&g, &k, 4, 30, &[0.0; 30]).unwrap();
        let b = power_method(&g, &k, 4, 30).unwrap();
        for (x, y) in a.y_hat.iter().zip(&b.y_hat) {
            assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn threshold_validation() {
        let g = generators::path(3);
        let k = Kernel::ppr(0.2).unwrap();
        assert!(push(&g, &k, 0, 3, &[0.0; 2]).is_err());
        assert!(push(&g, &k, 0, 3, &[0.0, -1.0, 0.0]).is_err());
    }

    #[test]
    fn default_thresholds_shape() {
        let t = default_push_thresholds(&[0.5, 0.25, 0.25], 1e-3);
        assert!((t[0] - 1e-3 / 6.0).abs() < 1e-18);
        assert!((t[2] - 1e-3 / 1.5).abs() < 1e-18);
        assert!(default_push_thresholds(&[0.5, 0.0], 1e-3)[1].is_infinite());
        assert_eq!(default_push_thresholds(&[0.5, 0.0], 0.0), vec![0.0, 0.0]);
    }
}
