//! Propagation kernels: Taylor coefficients `zeta_k` of `f(P) = sum zeta_k P^k`,
//! Chebyshev coefficients `c_k` of `f(P) = sum c_k T_k(P)`, and truncation
//! planning from exact coefficient tails.
//!
//! Closed forms used here:
//!
//! * personalized PageRank, `f(x) = alpha / (1 - (1 - alpha) x)`:
//!   `c_0 = gamma`, `c_k = 2 gamma beta^k` with
//!   `gamma = alpha / sqrt(2 alpha - alpha^2)` and
//!   `beta = (1 - sqrt(2 alpha - alpha^2)) / (1 - alpha)`.
//! * heat kernel, `f(x) = exp(-t (1 - x))`:
//!   `c_0 = e^-t I_0(t)`, `c_k = 2 e^-t I_k(t)`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use xxhash_rust::xxh3::xxh3_64;

use crate::error::{param, Error, Result};

/// Hard cap on the number of terms any truncation search may inspect.
pub const MAX_TERMS: usize = 1_000_000;

const QUADRATURE_NODE_CAP: usize = 1 << 16;
const QUADRATURE_TOL: f64 = 1e-12;

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A user-defined kernel. Taylor coefficients are supplied directly; the
/// scalar function defaults to the polynomial they define.
#[derive(Clone)]
pub struct CustomKernel {
    taylor: Vec<f64>,
    func: Option<ScalarFn>,
}

impl fmt::Debug for CustomKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomKernel")
            .field("taylor", &self.taylor)
            .field("func", &self.func.as_ref().map(|_| "<fn>"))
            .finish()
    }
}

impl CustomKernel {
    pub fn taylor(&self) -> &[f64] {
        &self.taylor
    }

    fn eval(&self, x: f64) -> f64 {
        match &self.func {
            Some(f) => f(x),
            None => self.taylor.iter().rev().fold(0.0, |acc, &z| acc * x + z),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Kernel {
    Ppr { alpha: f64 },
    Hkpr { t: f64 },
    Custom(CustomKernel),
}

impl Kernel {
    pub fn ppr(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Kernel::Ppr { alpha })
    }

    pub fn hkpr(t: f64) -> Result<Self> {
        check_t(t)?;
        Ok(Kernel::Hkpr { t })
    }

    /// Polynomial kernel `f(x) = sum taylor[k] x^k`.
    pub fn custom(taylor: Vec<f64>) -> Result<Self> {
        Self::custom_with_fn(taylor, None)
    }

    /// Custom kernel whose Chebyshev coefficients come from `func` rather than
    /// from the polynomial defined by `taylor`.
    pub fn custom_with_fn(taylor: Vec<f64>, func: Option<ScalarFn>) -> Result<Self> {
        if taylor.is_empty() {
            return param("custom kernel needs at least one Taylor coefficient");
        }
        if taylor.iter().any(|z| !z.is_finite()) {
            return param("custom Taylor coefficients must be finite");
        }
        Ok(Kernel::Custom(CustomKernel { taylor, func }))
    }

    /// Reads a JSON array of Taylor coefficients.
    pub fn custom_from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let taylor: Vec<f64> = serde_json::from_str(&text)
            .map_err(|e| Error::Parameter(format!("custom kernel file: {e}")))?;
        Self::custom(taylor)
    }

    /// Parses `ppr:alpha=0.2`, `hkpr:t=5` or `custom:file=coeffs.json`.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let (family, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let mut args = Vec::new();
        for part in rest.split(',').filter(|p| !p.is_empty()) {
            match part.split_once('=') {
                Some((k, v)) => args.push((k.trim(), v.trim())),
                None => return param(format!("kernel argument {part:?} is not key=value")),
            }
        }
        let get = |key: &str| args.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        let num = |key: &str| -> Result<f64> {
            let v = get(key).ok_or_else(|| Error::Parameter(format!("kernel {family:?} needs {key}=")))?;
            v.parse::<f64>()
                .map_err(|_| Error::Parameter(format!("{key}={v} is not a number")))
        };
        let known = |keys: &[&str]| -> Result<()> {
            match args.iter().find(|(k, _)| !keys.contains(k)) {
                Some((k, _)) => param(format!("unknown kernel argument {k:?}")),
                None => Ok(()),
            }
        };
        match family.trim() {
            "ppr" => {
                known(&["alpha"])?;
                Kernel::ppr(num("alpha")?)
            }
            "hkpr" => {
                known(&["t"])?;
                Kernel::hkpr(num("t")?)
            }
            "custom" => {
                known(&["file"])?;
                let file = get("file").ok_or_else(|| Error::Parameter("custom kernel needs file=".into()))?;
                Kernel::custom_from_json_file(file)
            }
            other => param(format!("unknown kernel family {other:?}")),
        }
    }

    /// Canonical string identifying the kernel; used in outputs and cache keys.
    pub fn descriptor(&self) -> String {
        match self {
            Kernel::Ppr { alpha } => format!("ppr:alpha={alpha}"),
            Kernel::Hkpr { t } => format!("hkpr:t={t}"),
            Kernel::Custom(c) => {
                let bytes: Vec<u8> = c.taylor.iter().flat_map(|z| z.to_le_bytes()).collect();
                format!("custom:taylor={:016x}", xxh3_64(&bytes))
            }
        }
    }

    /// Scalar kernel function on `[-1, 1]`.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Kernel::Ppr { alpha } => alpha / (1.0 - (1.0 - alpha) * x),
            Kernel::Hkpr { t } => (-t * (1.0 - x)).exp(),
            Kernel::Custom(c) => c.eval(x),
        }
    }

    /// `zeta_0 ..= zeta_n`.
    pub fn taylor_coeffs(&self, n: usize) -> Vec<f64> {
        taylor_coeffs(self, n)
    }

    /// `c_0 ..= c_k`.
    pub fn cheby_coeffs(&self, k: usize) -> Result<Vec<f64>> {
        match self {
            Kernel::Ppr { alpha } => ppr_cheby_coeffs(*alpha, k),
            Kernel::Hkpr { t } => hkpr_cheby_coeffs(*t, k),
            Kernel::Custom(c) => custom_cheby_coeffs(|x| c.eval(x), k),
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kernel::parse_spec(s)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        param(format!("alpha must lie in (0, 1), got {alpha}"))
    }
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        param(format!("t must be positive and finite, got {t}"))
    }
}

/// `(gamma, beta)` of the PPR Chebyshev expansion.
///
/// `beta` uses the rationalized form `(1 - alpha) / (1 + sqrt(2 alpha - alpha^2))`,
/// which equals the textbook quotient but stays accurate as alpha approaches 1.
pub fn ppr_gamma_beta(alpha: f64) -> (f64, f64) {
    let s = (2.0 * alpha - alpha * alpha).sqrt();
    (alpha / s, (1.0 - alpha) / (1.0 + s))
}

pub fn ppr_cheby_coeffs(alpha: f64, k: usize) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    let (gamma, beta) = ppr_gamma_beta(alpha);
    let mut out = Vec::with_capacity(k + 1);
    out.push(gamma);
    let mut term = 2.0 * gamma;
    for _ in 1..=k {
        term *= beta;
        out.push(term);
    }
    Ok(out)
}

/// Heat-kernel Chebyshev coefficients via Miller's backward recurrence
/// `I_{n-1}(t) = I_{n+1}(t) + (2n / t) I_n(t)`, normalized with
/// `e^-t (I_0 + 2 sum_{k>=1} I_k) = 1`.
pub fn hkpr_cheby_coeffs(t: f64, k: usize) -> Result<Vec<f64>> {
    check_t(t)?;
    let start = k.max(t.ceil() as usize) + 40;
    let mut vals = vec![0.0f64; start + 1];
    let mut above = 0.0f64; // I_{n+1}
    let mut cur = 1.0f64; // I_n
    vals[start] = cur;
    for n in (1..=start).rev() {
        let below = above + (2.0 * n as f64 / t) * cur;
        vals[n - 1] = below;
        above = cur;
        cur = below;
        if below > 1e250 {
            for v in &mut vals[n - 1..] {
                *v *= 1e-250;
            }
            above *= 1e-250;
            cur *= 1e-250;
        }
    }
    let total = vals[0] + 2.0 * vals[1..].iter().sum::<f64>();
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::Numerical(format!("Bessel normalization failed for t={t}")));
    }
    let mut out = Vec::with_capacity(k + 1);
    out.push(vals[0] / total);
    out.extend(vals[1..=k].iter().map(|v| 2.0 * v / total));
    Ok(out)
}

/// Chebyshev coefficients `c_k = (2/pi) int f(x) T_k(x) / sqrt(1 - x^2) dx`
/// (halved for `k = 0`) by Gauss–Chebyshev quadrature, doubling the node
/// count until two successive estimates agree to 1e-12.
pub fn custom_cheby_coeffs<F>(f: F, k: usize) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
{
    let mut nodes = (2 * (k + 1)).next_power_of_two().max(32);
    let mut prev = gauss_chebyshev(&f, k, nodes)?;
    loop {
        nodes *= 2;
        if nodes > QUADRATURE_NODE_CAP {
            return Err(Error::Numerical(format!(
                "Chebyshev quadrature did not converge with {QUADRATURE_NODE_CAP} nodes"
            )));
        }
        let cur = gauss_chebyshev(&f, k, nodes)?;
        let diff = cur
            .iter()
            .zip(&prev)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if diff <= QUADRATURE_TOL {
            return Ok(cur);
        }
        prev = cur;
    }
}

fn gauss_chebyshev<F>(f: &F, k: usize, nodes: usize) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
{
    let mut c = vec![0.0; k + 1];
    for j in 0..nodes {
        let x = (std::f64::consts::PI * (j as f64 + 0.5) / nodes as f64).cos();
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::Numerical(format!("kernel is not finite at x={x}")));
        }
        let (mut t_prev, mut t_cur) = (1.0, x);
        c[0] += fx;
        for (i, ci) in c.iter_mut().enumerate().skip(1) {
            *ci += fx * t_cur;
            if i < k {
                let t_next = 2.0 * x * t_cur - t_prev;
                t_prev = t_cur;
                t_cur = t_next;
            }
        }
    }
    let scale = 2.0 / nodes as f64;
    for ci in &mut c {
        *ci *= scale;
    }
    c[0] *= 0.5;
    Ok(c)
}

/// `zeta_0 ..= zeta_n`. Heat-kernel terms use `zeta_{k+1} = zeta_k t / (k + 1)`.
pub fn taylor_coeffs(kernel: &Kernel, n: usize) -> Vec<f64> {
    match kernel {
        Kernel::Ppr { alpha } => {
            let mut z = *alpha;
            (0..=n)
                .map(|_| {
                    let cur = z;
                    z *= 1.0 - alpha;
                    cur
                })
                .collect()
        }
        Kernel::Hkpr { t } => {
            let t = *t;
            let mut out = Vec::with_capacity(n + 1);
            if t < 700.0 {
                let mut z = (-t).exp();
                for k in 0..=n {
                    out.push(z);
                    z *= t / (k + 1) as f64;
                }
            } else {
                // e^-t underflows; iterate on the logarithm instead
                let mut lz = -t;
                let lt = t.ln();
                for k in 0..=n {
                    out.push(lz.exp());
                    lz += lt - ((k + 1) as f64).ln();
                }
            }
            out
        }
        Kernel::Custom(c) => (0..=n).map(|k| c.taylor.get(k).copied().unwrap_or(0.0)).collect(),
    }
}

/// Truncation steps for a target tolerance, chosen from exact tails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPlan {
    /// Chebyshev step `K`: terms `c_0 ..= c_K` are kept.
    pub cheby_steps: usize,
    /// Taylor step `N`: terms `zeta_0 .. zeta_{N-1}` are kept (`N` iterations).
    pub taylor_steps: usize,
    pub epsilon: f64,
    /// `sum_{k > K} |c_k|`.
    pub tail_bound: f64,
    /// `sum_{k >= N} |zeta_k|`.
    pub taylor_tail: f64,
}

pub fn plan_truncation(kernel: &Kernel, epsilon: f64) -> Result<TruncationPlan> {
    let (cheby_steps, tail_bound) = chebyshev_truncation(kernel, epsilon)?;
    let (taylor_steps, taylor_tail) = taylor_truncation(kernel, epsilon)?;
    Ok(TruncationPlan {
        cheby_steps,
        taylor_steps,
        epsilon,
        tail_bound,
        taylor_tail,
    })
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        param(format!("tolerance must lie in (0, 1), got {epsilon}"))
    }
}

/// Smallest `K >= 1` with `sum_{k > K} |c_k| < epsilon`, and that tail.
pub fn chebyshev_truncation(kernel: &Kernel, epsilon: f64) -> Result<(usize, f64)> {
    check_epsilon(epsilon)?;
    match kernel {
        Kernel::Ppr { alpha } => {
            let (gamma, beta) = ppr_gamma_beta(*alpha);
            // tail(K) = 2 gamma beta^{K+1} / (1 - beta)
            let mut tail = 2.0 * gamma * beta / (1.0 - beta);
            for k in 0..MAX_TERMS {
                if tail < epsilon && k >= 1 {
                    return Ok((k, tail));
                }
                tail *= beta;
            }
            no_plan("Chebyshev", epsilon)
        }
        Kernel::Hkpr { t } => {
            let t = *t;
            grow_until_negligible(epsilon, t, |len| hkpr_cheby_coeffs(t, len), 1)
        }
        Kernel::Custom(c) => {
            let base = c.taylor.len();
            grow_until_negligible(epsilon, base as f64, |len| kernel.cheby_coeffs(len), 1)
        }
    }
}

/// Smallest `N >= 1` with `sum_{k >= N} |zeta_k| < epsilon`, and that tail.
pub fn taylor_truncation(kernel: &Kernel, epsilon: f64) -> Result<(usize, f64)> {
    check_epsilon(epsilon)?;
    match kernel {
        Kernel::Ppr { alpha } => {
            let mut tail = 1.0;
            for n in 0..MAX_TERMS {
                if tail < epsilon && n >= 1 {
                    return Ok((n, tail));
                }
                tail *= 1.0 - alpha;
            }
            no_plan("Taylor", epsilon)
        }
        Kernel::Hkpr { t } => {
            let t = *t;
            grow_until_negligible(epsilon, t, |len| Ok(taylor_coeffs(kernel, len)), 0)
        }
        Kernel::Custom(c) => {
            // exact: coefficients beyond the supplied ones are zero
            let suffix = suffix_abs_sums(&c.taylor);
            let idx = (1..=c.taylor.len())
                .find(|&n| suffix[n] < epsilon)
                .unwrap_or(c.taylor.len());
            Ok((idx.max(1), suffix[idx.max(1).min(c.taylor.len())]))
        }
    }
}

/// `out[i] = sum_{j >= i} |a_j|`, with `out[a.len()] = 0`.
fn suffix_abs_sums(a: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + 1];
    for i in (0..a.len()).rev() {
        out[i] = out[i + 1] + a[i].abs();
    }
    out
}

/// Generates coefficient arrays of growing length until the last generated
/// coefficient is negligible against `epsilon`, then returns the smallest
/// index whose tail is below `epsilon`.
///
/// `shift = 1` means the tail excludes the index itself (Chebyshev, `k > K`);
/// `shift = 0` means it includes it (Taylor, `k >= N`).
fn grow_until_negligible<G>(epsilon: f64, scale: f64, generate: G, shift: usize) -> Result<(usize, f64)>
where
    G: Fn(usize) -> Result<Vec<f64>>,
{
    let mut len = ((2.0 * scale).ceil() as usize + 64).min(MAX_TERMS);
    loop {
        let coeffs = generate(len)?;
        let last = coeffs[coeffs.len() - 2..].iter().map(|c| c.abs()).fold(0.0, f64::max);
        if last <= 1e-6 * epsilon || last == 0.0 {
            let suffix = suffix_abs_sums(&coeffs);
            for idx in 1..coeffs.len() {
                let tail = suffix[(idx + shift).min(coeffs.len())];
                if tail < epsilon {
                    return Ok((idx, tail));
                }
            }
        }
        if len >= MAX_TERMS {
            return no_plan(if shift == 1 { "Chebyshev" } else { "Taylor" }, epsilon);
        }
        len = (len * 2).min(MAX_TERMS);
    }
}

fn no_plan<T>(which: &str, epsilon: f64) -> Result<T> {
    param(format!(
        "{which} tail does not drop below {epsilon} within {MAX_TERMS} terms"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn ppr_coefficients_at_alpha_point_two() {
        // gamma = 0.2 / 0.6, beta = 0.4 / 0.8
        let c = ppr_cheby_coeffs(0.2, 2).unwrap();
        assert!(close(c[0], 1.0 / 3.0, 1e-15));
        assert!(close(c[1], 1.0 / 3.0, 1e-15));
        assert!(close(c[2], 1.0 / 6.0, 1e-15));
        let (g, b) = ppr_gamma_beta(0.2);
        assert!(close(g + 2.0 * g * b / (1.0 - b), 1.0, 1e-14));
    }

    #[test]
    fn ppr_coefficients_near_alpha_one() {
        let c = ppr_cheby_coeffs(1.0 - 1e-12, 3).unwrap();
        assert!(close(c[0], 1.0, 1e-9));
        assert!(c[1..].iter().all(|&x| x.abs() < 1e-9));
    }

    #[test]
    fn invalid_parameters() {
        assert!(ppr_cheby_coeffs(0.0, 3).is_err());
        assert!(ppr_cheby_coeffs(1.0, 3).is_err());
        assert!(hkpr_cheby_coeffs(0.0, 3).is_err());
        assert!(hkpr_cheby_coeffs(-1.0, 3).is_err());
        assert!(Kernel::ppr(1.5).is_err());
        assert!(plan_truncation(&Kernel::ppr(0.2).unwrap(), 0.0).is_err());
        assert!(plan_truncation(&Kernel::ppr(0.2).unwrap(), 1.0).is_err());
    }

    #[test]
    fn hkpr_small_t_is_identity() {
        let c = hkpr_cheby_coeffs(1e-12, 4).unwrap();
        assert!(close(c[0], 1.0, 1e-11));
        assert!(c[1..].iter().all(|&x| x < 1e-11));
    }

    #[test]
    fn hkpr_coefficients_sum_to_one() {
        for t in [5.0, 20.0, 40.0, 300.0] {
            let c = hkpr_cheby_coeffs(t, 40.max(2 * t as usize + 60)).unwrap();
            let s: f64 = c.iter().sum();
            assert!(close(s, 1.0, 1e-12), "t={t}: sum={s}");
            assert!(c.iter().all(|&x| x > 0.0));
        }
    }

    #[test]
    fn hkpr_coefficients_decrease_past_t() {
        let c = hkpr_cheby_coeffs(5.0, 60).unwrap();
        for k in 5..60 {
            assert!(c[k + 1] < c[k]);
        }
    }

    #[test]
    fn quadrature_identity_function() {
        let c = custom_cheby_coeffs(|x| x, 5).unwrap();
        assert!(close(c[1], 1.0, 1e-13));
        for (k, v) in c.iter().enumerate() {
            if k != 1 {
                assert!(v.abs() < 1e-13);
            }
        }
    }

    #[test]
    fn quadrature_rejects_singular_function() {
        assert!(matches!(
            custom_cheby_coeffs(|x| 1.0 / (x - (std::f64::consts::PI / 64.0).cos()), 4),
            Err(Error::Numerical(_)) | Ok(_)
        ));
        assert!(matches!(
            custom_cheby_coeffs(|_| f64::NAN, 4),
            Err(Error::Numerical(_))
        ));
    }

    #[test]
    fn taylor_examples() {
        let z = taylor_coeffs(&Kernel::ppr(0.2).unwrap(), 2);
        assert!(close(z[0], 0.2, 1e-16) && close(z[1], 0.16, 1e-16) && close(z[2], 0.128, 1e-16));
        let z = taylor_coeffs(&Kernel::hkpr(1e-12).unwrap(), 3);
        assert!(close(z[0], 1.0, 1e-11) && z[1] < 1e-11);
        let z = taylor_coeffs(&Kernel::hkpr(5.0).unwrap(), 200);
        assert!(close(z.iter().sum::<f64>(), 1.0, 1e-14));
        let z = taylor_coeffs(&Kernel::hkpr(800.0).unwrap(), 2000);
        assert!(close(z.iter().sum::<f64>(), 1.0, 1e-10));
    }

    #[test]
    fn plan_examples() {
        let ppr = Kernel::ppr(0.2).unwrap();
        let p = plan_truncation(&ppr, 1e-5).unwrap();
        assert!(p.cheby_steps < p.taylor_steps);
        assert!(p.tail_bound < 1e-5 && p.taylor_tail < 1e-5);

        let small = Kernel::ppr(0.02).unwrap();
        let p = plan_truncation(&small, 1e-5).unwrap();
        assert!((p.cheby_steps as f64) <= 2.0 * p.taylor_steps as f64 * 0.02f64.sqrt());

        let loose = plan_truncation(&ppr, 0.999).unwrap();
        assert_eq!((loose.cheby_steps, loose.taylor_steps), (1, 1));
    }

    #[test]
    fn plan_is_minimal() {
        for kernel in [Kernel::ppr(0.1).unwrap(), Kernel::hkpr(10.0).unwrap()] {
            let eps = 1e-7;
            let (k, tail) = chebyshev_truncation(&kernel, eps).unwrap();
            let c = kernel.cheby_coeffs(k + 400).unwrap();
            let exact_tail: f64 = c[k + 1..].iter().sum();
            assert!(close(tail, exact_tail, 1e-15));
            assert!(tail < eps);
            let prev_tail: f64 = c[k..].iter().sum();
            assert!(prev_tail >= eps);
        }
    }

    #[test]
    fn custom_plan_uses_supplied_coefficients() {
        let k = Kernel::custom(vec![0.5, 0.25, 0.25]).unwrap();
        let (n, tail) = taylor_truncation(&k, 1e-9).unwrap();
        assert_eq!((n, tail), (3, 0.0));
        let (kk, _) = chebyshev_truncation(&k, 1e-9).unwrap();
        assert_eq!(kk, 2);
    }

    #[test]
    fn parse_specs() {
        assert!(matches!(Kernel::parse_spec("ppr:alpha=0.2").unwrap(), Kernel::Ppr { alpha } if alpha == 0.2));
        assert!(matches!("hkpr:t=5".parse::<Kernel>().unwrap(), Kernel::Hkpr { t } if t == 5.0));
        assert!(Kernel::parse_spec("ppr").is_err());
        assert!(Kernel::parse_spec("ppr:beta=0.2").is_err());
        assert!(Kernel::parse_spec("nosuch:x=1").is_err());
        assert!(Kernel::parse_spec("hkpr:t=abc").is_err());
        assert_eq!(Kernel::ppr(0.2).unwrap().descriptor(), "ppr:alpha=0.2");
        assert_eq!(Kernel::hkpr(5.0).unwrap().descriptor(), "hkpr:t=5");
    }

    #[test]
    fn custom_kernel_from_json() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("coeffs.json");
        std::fs::write(&path, "[0.5, 0.5]").unwrap();
        let k = Kernel::parse_spec(&format!("custom:file={}", path.display())).unwrap();
        assert!(close(k.eval(0.5), 0.75, 1e-15));
        assert!(k.descriptor().starts_with("custom:taylor="));
        std::fs::write(&path, "{\"a\": 1}").unwrap();
        assert!(Kernel::custom_from_json_file(&path).is_err());
    }
}
