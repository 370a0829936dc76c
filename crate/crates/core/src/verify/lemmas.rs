use super::VerificationReport;
use crate::error::{LupError, Result};
use crate::polybasis::{hermite_monic, laguerre_norm, weight_gamma, WeightParams};
use serde::{Deserialize, Serialize};
use std::time::Instant;

const MAX_A: f64 = 1e8;
const FINAL_TOL: f64 = 1e-2;
const SHIFTS: [f64; 3] = [0.0, 1.0, 2.5];

/// Which large-index limit to scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaKind {
    /// `(2a)^{−k/2} L̃ₖ^{a+b}(√(2a)x + a) → H̃ₖ(x)`.
    L2H,
    /// `r_k^{a+b} / a^k → k!`.
    Norm,
    /// `√a · w_{a+b,1}(√a·x + a) → e^{−x²/2}/√(2π)`.
    Weight,
}

impl std::str::FromStr for LemmaKind {
    type Err = LupError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l2h" | "L2H" => Ok(LemmaKind::L2H),
            "norm" => Ok(LemmaKind::Norm),
            "weight" => Ok(LemmaKind::Weight),
            other => Err(LupError::invalid(
                "kind",
                format!("unknown lemma `{other}`"),
            )),
        }
    }
}

/// `(2a)^{−k/2} L̃ₖ^{a+b}(√(2a)x + a)` for `k < count`.
///
/// The monic recurrence is run in the rescaled variable: with
/// `ℓₙ = (2a)^{−n/2} L̃ₙ`, it reads
/// `ℓₙ₊₁ = (x − (2n+b+1)/√(2a)) ℓₙ − (n/2)(1 + (n+b)/a) ℓₙ₋₁`,
/// which is the same polynomial without the cancellation of terms of size
/// `a` against each other.
fn scaled_laguerre(count: usize, a: f64, b: f64, x: f64) -> Vec<f64> {
    let r = (2.0 * a).sqrt();
    let mut out = Vec::with_capacity(count);
    let (mut prev, mut cur) = (0.0, 1.0);
    for n in 0..count {
        out.push(cur);
        let nf = n as f64;
        let next = (x - (2.0 * nf + b + 1.0) / r) * cur - 0.5 * nf * (1.0 + (nf + b) / a) * prev;
        prev = cur;
        cur = next;
    }
    out
}

fn error_at(kind: LemmaKind, a: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    match kind {
        LemmaKind::L2H => {
            for b in SHIFTS {
                for x in [-1.0, 0.0, 0.7] {
                    let l = scaled_laguerre(6, a, b, x);
                    for (k, v) in l.iter().enumerate() {
                        worst = worst.max((v - hermite_monic(k, x).to_f64()).abs());
                    }
                }
            }
        }
        LemmaKind::Norm => {
            for b in SHIFTS {
                for k in 0..=5usize {
                    let ratio = (laguerre_norm(k, a + b)
                        / crate::LogValue::from_f64(a).powi(k as i32))
                    .to_f64();
                    let fact: f64 = (1..=k).map(|j| j as f64).product();
                    worst = worst.max((ratio - fact).abs());
                }
            }
        }
        LemmaKind::Weight => {
            for b in SHIFTS {
                let p = WeightParams::new(a + b, 1.0)?;
                for i in 0..=60 {
                    let x = -3.0 + 0.1 * i as f64;
                    let v = a.sqrt() * weight_gamma(p, a.sqrt() * x + a).to_f64();
                    let g = (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
                    worst = worst.max((v - g).abs());
                }
            }
        }
    }
    Ok(worst)
}

/// Error of the chosen limit at each `a`.
pub fn lemma_errors(kind: LemmaKind, a_values: &[f64]) -> Result<Vec<f64>> {
    if a_values.is_empty() || a_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LupError::invalid(
            "a_values",
            "need a non-empty strictly ascending list",
        ));
    }
    if !(a_values[0] >= 1.0) || a_values[a_values.len() - 1] > MAX_A {
        return Err(LupError::invalid(
            "a_values",
            format!("values must lie in [1, {MAX_A:e}]"),
        ));
    }
    a_values.iter().map(|&a| error_at(kind, a)).collect()
}

/// Monotone decay of the limit error along `a_values`, with the final error
/// below 1e-2. The observed error is the final one.
pub fn check_lemma_limits(kind: LemmaKind, a_values: &[f64]) -> Result<VerificationReport> {
    let start = Instant::now();
    let e = lemma_errors(kind, a_values)?;
    let monotone = e.windows(2).all(|w| w[1] < w[0]);
    let list: Vec<String> = e.iter().map(|v| format!("{v:.3e}")).collect();
    let name = match kind {
        LemmaKind::L2H => "lemma_laguerre_to_hermite",
        LemmaKind::Norm => "lemma_norm_limit",
        LemmaKind::Weight => "lemma_weight_limit",
    };
    Ok(VerificationReport::new(name, *e.last().unwrap(), FINAL_TOL)
        .param("kind", serde_json::to_value(kind).unwrap_or_default())
        .param("a_values", a_values.to_vec())
        .effort(a_values.len())
        .note(format!("errors [{}]", list.join(", ")))
        .require(monotone, "errors decrease along a")
        .timed(start))
}
