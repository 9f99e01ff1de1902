//! Taylor power iteration: `y_hat = sum_{k<N} zeta_k P^k x`.

use std::time::Instant;

use super::{check_source, unit_vector, Algorithm, Estimate, QueryStats};
use crate::error::{param, Result};
use crate::graph::Graph;
use crate::kernels::Kernel;

/// State after folding in term `k`.
pub struct TaylorStep<'a> {
    pub k: usize,
    /// `P^k x`.
    pub residual: &'a [f64],
    /// Partial sum through term `k`.
    pub estimate: &'a [f64],
}

pub fn power_method(g: &Graph, kernel: &Kernel, s: u32, n_steps: usize) -> Result<Estimate> {
    check_source(g, s)?;
    if n_steps == 0 {
        return param("power method needs N >= 1");
    }
    let start = Instant::now();
    let zeta = kernel.taylor_coeffs(n_steps - 1);
    let x = unit_vector(g.n(), s);
    let y_hat = power_method_from(g, &zeta, &x, |_| {});
    let mut stats = QueryStats::new(Algorithm::PowerMethod, kernel, Some(s)).with_param("N", n_steps as f64);
    stats.iterations = n_steps;
    stats.push_work = (n_steps as u64 - 1) * 2 * g.m() as u64;
    stats.wall_time = start.elapsed().as_secs_f64();
    Ok(Estimate { y_hat, stats })
}

/// Runs one iteration per entry of `zeta`, calling `on_step` after each.
pub fn power_method_from<F>(g: &Graph, zeta: &[f64], x: &[f64], mut on_step: F) -> Vec<f64>
where
    F: FnMut(&TaylorStep<'_>),
{
    let n = g.n();
    let mut y_hat = vec![0.0; n];
    let mut r = x.to_vec();
    let mut next = vec![0.0; n];
    for (k, &z) in zeta.iter().enumerate() {
        for (y, rv) in y_hat.iter_mut().zip(&r) {
            *y += z * rv;
        }
        on_step(&TaylorStep {
            k,
            residual: &r,
            estimate: &y_hat,
        });
        if k + 1 < zeta.len() {
            g.apply_walk_into(&r, &mut next);
            std::mem::swap(&mut r, &mut next);
        }
    }
    y_hat
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    #[test]
    fn single_step_is_scaled_seed() {
        let g = generators::path(3);
        let k = Kernel::ppr(0.2).unwrap();
        let est = power_method(&g, &k, 1, 1).unwrap();
        assert_eq!(est.y_hat, vec![0.0, 0.2, 0.0]);
        assert_eq!(est.stats.iterations, 1);
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = generators::path(3);
        let k = Kernel::ppr(0.2).unwrap();
        assert!(power_method(&g, &k, 3, 5).is_err());
        assert!(power_method(&g, &k, 0, 0).is_err());
    }

    #[test]
    fn path_ppr_closed_form() {
        // pi_0 = 0.8 * pi_1 / 2 and pi_1 = 0.2 + 0.8 (pi_0 + pi_2)
        // give pi_1 = 0.2 / 0.36 = 5/9 and pi_0 = pi_2 = 2/9
        let g = generators::path(3);
        let est = power_method(&g, &Kernel::ppr(0.2).unwrap(), 1, 200).unwrap();
        let want = [2.0 / 9.0, 5.0 / 9.0, 2.0 / 9.0];
        let l1: f64 = est.y_hat.iter().zip(want).map(|(a, b)| (a - b).abs()).sum();
        assert!(l1 < 1e-10, "l1 = {l1}");
    }
}
