//! Dense evaluation of the subset Chebyshev recurrence, kept as a reference
//! for the local solver.
//!
//! With `S_0 = V`, `r_0 = x` and `r_1 = P x`:
//!
//! ```text
//! r_{k+1} = 2 P (r_k|S_k) - r_{k-1}|S_{k-1} + r_{k-1}|(V - S_{k-1})
//! ```
//!
//! The deviation `delta_k = r_k|(V - S_k)` is the mass left out at step `k`.
//! Relative to the exact `T_k(P) x` the recurrence drifts by
//! `2 sum_{l<k} T_{k-l}(P) delta_l`.

use crate::graph::{Graph, NodeSet};

#[derive(Debug, Clone)]
pub struct SubsetTrace {
    /// `r_0 ..= r_K`.
    pub r_hat: Vec<Vec<f64>>,
    /// `delta_1 ..= delta_K`, stored at index `k - 1`.
    pub deviations: Vec<Vec<f64>>,
}

/// `sets[k - 1]` is `S_k` for `k = 1..=K`; at least `k_steps` sets are required.
pub fn subset_recurrence_dense(g: &Graph, x: &[f64], sets: &[NodeSet], k_steps: usize) -> SubsetTrace {
    assert!(sets.len() >= k_steps, "need {k_steps} subsets, got {}", sets.len());
    assert_eq!(x.len(), g.n());
    let n = g.n();
    let masks: Vec<Vec<bool>> = sets[..k_steps].iter().map(|s| s.to_mask(n)).collect();
    let all = vec![true; n];
    let mask = |k: usize| -> &[bool] {
        if k == 0 {
            &all
        } else {
            &masks[k - 1]
        }
    };

    let mut r_hat = vec![x.to_vec()];
    if k_steps >= 1 {
        r_hat.push(g.apply_walk(x));
    }
    for k in 1..k_steps {
        let inside: Vec<f64> = r_hat[k].iter().zip(mask(k)).map(|(&r, &m)| if m { r } else { 0.0 }).collect();
        let walked = g.apply_walk(&inside);
        let prev = &r_hat[k - 1];
        let next: Vec<f64> = (0..n)
            .map(|u| {
                let carried = if mask(k - 1)[u] { -prev[u] } else { prev[u] };
                2.0 * walked[u] + carried
            })
            .collect();
        r_hat.push(next);
    }
    let deviations = (1..=k_steps)
        .map(|k| {
            r_hat[k]
                .iter()
                .zip(mask(k))
                .map(|(&r, &m)| if m { 0.0 } else { r })
                .collect()
        })
        .collect();
    SubsetTrace { r_hat, deviations }
}
