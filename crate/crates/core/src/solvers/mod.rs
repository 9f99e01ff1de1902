//! Deterministic propagation solvers.
//!
//! | solver | expansion | evaluation |
//! |---|---|---|
//! | [`power_method`] | Taylor | dense iteration |
//! | [`push`] | Taylor | local push with per-step thresholds |
//! | [`cheby_power`] | Chebyshev | dense three-term recurrence |
//! | [`cheby_push`] | Chebyshev | local two-buffer recurrence |
//!
//! Every solver has a seed-vector form (`*_from`) used by the generalized
//! propagation wrapper in [`general`]; the single-source forms seed `e_s`.

mod cheby_power;
mod cheby_push;
pub mod general;
mod power;
mod push;
pub mod subset;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use cheby_power::{cheby_power, cheby_power_from, ChebyStep};
pub use cheby_push::{
    cheby_push, cheby_push_from, cheby_push_thresholds, cheby_push_with_thresholds, PushOutcome, PushStep,
};
pub use power::{power_method, power_method_from, TaylorStep};
pub use push::{default_push_thresholds, push, push_from};

use crate::error::{param, Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Algorithm {
    #[serde(rename = "pw")]
    PowerMethod,
    #[serde(rename = "push")]
    Push,
    #[serde(rename = "chebypower")]
    ChebyPower,
    #[serde(rename = "chebypush")]
    ChebyPush,
    #[serde(rename = "chebypush-rw")]
    ChebyPushRw,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::PowerMethod,
        Algorithm::Push,
        Algorithm::ChebyPower,
        Algorithm::ChebyPush,
        Algorithm::ChebyPushRw,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::PowerMethod => "pw",
            Algorithm::Push => "push",
            Algorithm::ChebyPower => "chebypower",
            Algorithm::ChebyPush => "chebypush",
            Algorithm::ChebyPushRw => "chebypush-rw",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.tag() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown algorithm {s:?}")))
    }
}

/// Per-query statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryStats {
    pub algorithm: Algorithm,
    pub kernel: String,
    pub source: Option<u32>,
    /// Taylor or Chebyshev steps executed.
    pub iterations: usize,
    /// Total degree volume of pushed (or propagated) nodes.
    pub push_work: u64,
    /// Random walks launched (bidirectional estimator only).
    pub walks: u64,
    /// Seconds spent in the solver, coefficient generation included.
    pub wall_time: f64,
    /// Numeric inputs echoed back, e.g. `eps_a` or `K`.
    pub params: BTreeMap<String, f64>,
}

impl QueryStats {
    pub(crate) fn new(algorithm: Algorithm, kernel: &crate::Kernel, source: Option<u32>) -> Self {
        QueryStats {
            algorithm,
            kernel: kernel.descriptor(),
            source,
            iterations: 0,
            push_work: 0,
            walks: 0,
            wall_time: 0.0,
            params: BTreeMap::new(),
        }
    }

    pub(crate) fn with_param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }
}

/// An approximate propagation vector plus how it was obtained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub y_hat: Vec<f64>,
    pub stats: QueryStats,
}

impl Estimate {
    /// The `k` largest entries, ties broken by smaller node id.
    pub fn top(&self, k: usize) -> Vec<(u32, f64)> {
        let mut idx: Vec<u32> = (0..self.y_hat.len() as u32).collect();
        idx.sort_by(|&a, &b| {
            self.y_hat[b as usize]
                .total_cmp(&self.y_hat[a as usize])
                .then(a.cmp(&b))
        });
        idx.truncate(k);
        idx.into_iter().map(|u| (u, self.y_hat[u as usize])).collect()
    }
}

pub(crate) fn check_source(g: &Graph, s: u32) -> Result<()> {
    if g.contains(s) {
        Ok(())
    } else {
        param(format!("source {s} is not a node (n = {})", g.n()))
    }
}

pub(crate) fn check_seed(g: &Graph, x: &[f64]) -> Result<()> {
    if x.len() != g.n() {
        return param(format!("seed vector has length {}, graph has {} nodes", x.len(), g.n()));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return param("seed vector has non-finite entries");
    }
    Ok(())
}

pub(crate) fn unit_vector(n: usize, s: u32) -> Vec<f64> {
    let mut x = vec![0.0; n];
    x[s as usize] = 1.0;
    x
}

/// Nodes with a nonzero entry, ascending.
pub(crate) fn support(x: &[f64]) -> Vec<u32> {
    x.iter()
        .enumerate()
        .filter(|(_, v)| **v != 0.0)
        .map(|(u, _)| u as u32)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_tags_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.tag().parse::<Algorithm>().unwrap(), a);
            assert_eq!(serde_json::to_string(&a).unwrap(), format!("\"{}\"", a.tag()));
        }
        assert!("nosuch".parse::<Algorithm>().is_err());
    }

    #[test]
    fn top_breaks_ties_by_id() {
        let kernel = crate::Kernel::ppr(0.2).unwrap();
        let est = Estimate {
            y_hat: vec![0.1, 0.3, 0.3, 0.0],
            stats: QueryStats::new(Algorithm::PowerMethod, &kernel, Some(0)),
        };
        assert_eq!(est.top(3), vec![(1, 0.3), (2, 0.3), (0, 0.1)]);
    }
}
