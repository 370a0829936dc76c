//! Closed-form eigenvalue densities: LUE joint density, transition density
//! and the multi-time joint density of the process.

use crate::error::{LupError, Result};
use crate::linalg::det_log;
use crate::logvalue::LogValue;
use crate::polybasis::{kappa, weight_gamma, WeightParams};
use crate::special::{ln_factorial, ln_gamma};
use serde::{Deserialize, Serialize};

/// Eigenvalues as an unordered tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenConfig(pub Vec<f64>);

impl EigenConfig {
    pub fn new(points: impl Into<Vec<f64>>) -> Self {
        EigenConfig(points.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for EigenConfig {
    fn from(v: Vec<f64>) -> Self {
        EigenConfig(v)
    }
}

/// `Δ(x) = ∏_{k<ℓ} (x_k − x_ℓ)`.
pub fn vandermonde(points: &EigenConfig) -> LogValue {
    let x = points.points();
    let mut acc = LogValue::ONE;
    for k in 0..x.len() {
        for l in k + 1..x.len() {
            let d = x[k] - x[l];
            if d == 0.0 {
                return LogValue::ZERO;
            }
            acc = acc * LogValue::from_f64(d);
        }
    }
    acc
}

/// `ln Z_{a,b}(N) = ln N! − N(N−1) ln b + Σⱼ [ln Γ(j) + ln Γ(a+j) − ln Γ(a+1)]`.
pub fn ln_normalisation(n: usize, a: f64, b: f64) -> f64 {
    let lg_a1 = ln_gamma(a + 1.0);
    let nf = n as f64;
    ln_factorial(n) - nf * (nf - 1.0) * b.ln()
        + (1..=n)
            .map(|j| ln_gamma(j as f64) + ln_gamma(a + j as f64) - lg_a1)
            .sum::<f64>()
}

fn check_len(cfg: &EigenConfig, n: usize) -> Result<()> {
    if cfg.len() != n {
        return Err(LupError::DimensionMismatch {
            expected: n,
            found: cfg.len(),
        });
    }
    Ok(())
}

/// LUE eigenvalue density `Δ(x)² ∏ w_{a,b}(xᵢ) / Z_{a,b}(N)`.
pub fn eig_jpdf(points: &EigenConfig, n: usize, a: f64, b: f64) -> Result<LogValue> {
    check_len(points, n)?;
    let p = WeightParams::new(a, b)?;
    let mut acc = LogValue::from_ln(-ln_normalisation(n, a, b));
    for &x in points.points() {
        acc = acc * weight_gamma(p, x);
        if acc.is_zero() {
            return Ok(acc);
        }
    }
    let v = vandermonde(points);
    Ok(acc * v * v)
}

fn kappa_det(y: &EigenConfig, x: &EigenConfig, step: usize, n: usize) -> Result<LogValue> {
    let mut m = Vec::with_capacity(n * n);
    for &yk in y.points() {
        for &xl in x.points() {
            m.push(kappa(step as f64, n, yk - xl)?);
        }
    }
    Ok(det_log(&m, n))
}

fn check_times(t: usize, s: usize) -> Result<()> {
    if s == 0 || t <= s {
        return Err(LupError::invalid(
            "t, s",
            format!("need integer times t > s ≥ 1, got t = {t}, s = {s}"),
        ));
    }
    Ok(())
}

/// Density of the eigenvalues `y` at time `t` given eigenvalues `x` at time
/// `s`: `(1/N!)·(Δ(y)/Δ(x))·det[κ_{t−s}(y_k − x_ℓ)]`.
///
/// `x` must have distinct points.
pub fn transition_density(
    y: &EigenConfig,
    x: &EigenConfig,
    t: usize,
    s: usize,
    n: usize,
) -> Result<LogValue> {
    check_times(t, s)?;
    check_len(y, n)?;
    check_len(x, n)?;
    let dx = vandermonde(x);
    if dx.is_zero() {
        return Err(LupError::invalid(
            "x",
            "conditioning configuration has coincident points",
        ));
    }
    let dy = vandermonde(y);
    if dy.is_zero() {
        return Ok(LogValue::ZERO);
    }
    let det = kappa_det(y, x, t - s, n)?;
    Ok(LogValue::from_ln(-ln_factorial(n)) * dy / dx * det)
}

/// Joint density of the eigenvalues at times `t₀ < t₁ < … < t_n`, with
/// `configs[m]` observed at `times[m]`.
pub fn spatiotemporal_jpdf(configs: &[EigenConfig], times: &[usize], n: usize) -> Result<LogValue> {
    if configs.is_empty() || configs.len() != times.len() {
        return Err(LupError::invalid(
            "configs",
            "need one configuration per time, at least one",
        ));
    }
    if times[0] == 0 || times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LupError::invalid(
            "times",
            "times must be strictly increasing positive integers",
        ));
    }
    for c in configs {
        check_len(c, n)?;
    }
    let steps = configs.len() - 1;
    let a0 = (n * (times[0] - 1)) as f64;
    let p = WeightParams::new(a0, 1.0)?;
    let mut acc =
        LogValue::from_ln(-(steps as f64) * ln_factorial(n) - ln_normalisation(n, a0, 1.0));
    acc = acc * vandermonde(&configs[0]) * vandermonde(&configs[steps]);
    for &x in configs[0].points() {
        acc = acc * weight_gamma(p, x);
    }
    for m in 1..=steps {
        if acc.is_zero() {
            return Ok(acc);
        }
        acc = acc * kappa_det(&configs[m], &configs[m - 1], times[m] - times[m - 1], n)?;
    }
    Ok(acc)
}
