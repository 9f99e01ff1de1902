//! Approximate graph propagation on undirected graphs.
//!
//! A graph-propagation (GP) vector is `y = f(P) x` for a smooth kernel `f`
//! of the random-walk matrix `P = A D^-1`, most often with `x = e_s`.
//! Personalized PageRank and heat-kernel PageRank are the two built-in
//! kernels; custom kernels are given by their Taylor coefficients.
//!
//! Solvers come in two expansions: Taylor (`sum zeta_k P^k`) evaluated by
//! power iteration or by local push, and Chebyshev (`sum c_k T_k(P)`)
//! evaluated by the three-term recurrence globally or locally. The Chebyshev
//! variants need roughly the square root of the Taylor iteration count for
//! the same accuracy.

pub mod bidirectional;
pub mod error;
pub mod eval;
pub mod graph;
pub mod kernels;
pub mod solvers;

pub use error::{Error, Result};
pub use graph::{Graph, NodeSet};
pub use kernels::{plan_truncation, Kernel, TruncationPlan};
pub use solvers::{Algorithm, Estimate, QueryStats};
