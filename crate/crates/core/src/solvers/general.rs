//! Generalized propagation `z = D^-a f(P) D^a x`.
//!
//! With `a = 1/2` this is `f(D^-1/2 A D^-1/2) x`, the symmetric form; with
//! `a = 0` it is the plain propagation vector on seed `x`.

use crate::error::{param, Result};
use crate::graph::Graph;
use crate::kernels::Kernel;

use super::{check_seed, cheby_power_from, cheby_push_from, power_method_from, push_from};

/// Solver and its truncation parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum SolverSpec {
    PowerMethod { n_steps: usize },
    Push { n_steps: usize, thresholds: Vec<f64> },
    ChebyPower { k_steps: usize },
    ChebyPush { k_steps: usize, eps_a: f64 },
}

/// `f(P) x` with the chosen solver.
pub fn propagate(g: &Graph, kernel: &Kernel, x: &[f64], spec: &SolverSpec) -> Result<Vec<f64>> {
    check_seed(g, x)?;
    match spec {
        SolverSpec::PowerMethod { n_steps } => {
            let zeta = taylor_prefix(kernel, *n_steps)?;
            Ok(power_method_from(g, &zeta, x, |_| {}))
        }
        SolverSpec::Push { n_steps, thresholds } => {
            let zeta = taylor_prefix(kernel, *n_steps)?;
            Ok(push_from(g, &zeta, x, thresholds)?.0)
        }
        SolverSpec::ChebyPower { k_steps } => {
            if *k_steps == 0 {
                return param("K must be at least 1");
            }
            Ok(cheby_power_from(g, &kernel.cheby_coeffs(*k_steps)?, x, |_| {}))
        }
        SolverSpec::ChebyPush { k_steps, eps_a } => {
            if *k_steps == 0 {
                return param("K must be at least 1");
            }
            Ok(cheby_push_from(g, &kernel.cheby_coeffs(*k_steps)?, x, *eps_a)?.y_hat)
        }
    }
}

fn taylor_prefix(kernel: &Kernel, n_steps: usize) -> Result<Vec<f64>> {
    if n_steps == 0 {
        return param("N must be at least 1");
    }
    Ok(kernel.taylor_coeffs(n_steps - 1))
}

/// `D^-a f(P) D^a x`.
pub fn general_gp_vector(g: &Graph, kernel: &Kernel, a: f64, x: &[f64], spec: &SolverSpec) -> Result<Vec<f64>> {
    check_seed(g, x)?;
    if !a.is_finite() {
        return param("exponent a must be finite");
    }
    let scale: Vec<f64> = g.degrees().iter().map(|&d| (d as f64).powf(a)).collect();
    let seeded: Vec<f64> = x.iter().zip(&scale).map(|(v, s)| v * s).collect();
    let y = propagate(g, kernel, &seeded, spec)?;
    Ok(y.iter().zip(&scale).map(|(v, s)| v / s).collect())
}

/// Column-wise [`general_gp_vector`].
pub fn general_gp_matrix(
    g: &Graph,
    kernel: &Kernel,
    a: f64,
    columns: &[Vec<f64>],
    spec: &SolverSpec,
) -> Result<Vec<Vec<f64>>> {
    columns
        .iter()
        .map(|x| general_gp_vector(g, kernel, a, x, spec))
        .collect()
}
