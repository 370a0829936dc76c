use super::{gamma_rule, mc_chunks, McConfig, VerificationReport};
use crate::error::{LupError, Result};
use crate::special::ln_gamma;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Largest moment order accepted.
pub const MAX_ORDER: usize = 8;
/// Highest order used by the Monte Carlo oracle; beyond it the sample
/// variance of `(X+Z)^k X^ℓ` is dominated by rare draws and the standard
/// error itself becomes unreliable.
pub const MC_MAX_ORDER: usize = 3;
const QUADRATURE_NODES: usize = 160;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentMethod {
    Quadrature,
    MonteCarlo { draws: usize },
}

pub(crate) fn check_times(n: usize, t: usize, s: usize) -> Result<()> {
    if n == 0 {
        return Err(LupError::invalid("N", "must be a positive integer"));
    }
    if !(t > s && s >= 1) {
        return Err(LupError::invalid(
            "t, s",
            format!("need integers t > s ≥ 1, got t = {t}, s = {s}"),
        ));
    }
    Ok(())
}

/// `M_{k,ℓ} = Γ(a_s+ℓ+1) Γ(a_t+k+ℓ+1) / (Γ(a_s+1) Γ(a_t+ℓ+1))` with
/// `a_t = N(t−1)`, `a_s = N(s−1)`.
pub fn moment_closed_form(n: usize, t: usize, s: usize, k: usize, l: usize) -> f64 {
    let at = (n * (t - 1)) as f64;
    let as_ = (n * (s - 1)) as f64;
    let (k, l) = (k as f64, l as f64);
    (ln_gamma(as_ + l + 1.0) + ln_gamma(at + k + l + 1.0)
        - ln_gamma(as_ + 1.0)
        - ln_gamma(at + l + 1.0))
    .exp()
}

/// Compare the closed-form moments with `E[(X+Z)^k X^ℓ]` for independent
/// `X ~ Gamma(N(s−1)+1)` and `Z ~ Gamma(N(t−s))`, which is the defining
/// double integral after the substitution `y = x + z`.
///
/// Quadrature mode reports the largest relative discrepancy over
/// `k, ℓ ≤ k_max` (tolerance 1e-6); Monte Carlo mode reports the largest
/// z-score (tolerance 4) over `k, ℓ ≤ min(k_max, 3)`.
pub fn check_moments(
    n: usize,
    t: usize,
    s: usize,
    k_max: usize,
    method: MomentMethod,
    mc: &McConfig,
) -> Result<VerificationReport> {
    check_times(n, t, s)?;
    if k_max > MAX_ORDER {
        return Err(LupError::invalid(
            "k_max",
            format!("must be at most {MAX_ORDER}"),
        ));
    }
    let start = Instant::now();
    let shape_x = (n * (s - 1) + 1) as f64;
    let shape_z = (n * (t - s)) as f64;
    let base = VerificationReport::new("moments", 0.0, 0.0)
        .param("N", n)
        .param("t", t)
        .param("s", s)
        .param("k_max", k_max);
    match method {
        MomentMethod::Quadrature => {
            let rx = gamma_rule(shape_x, 2 * k_max, QUADRATURE_NODES)?;
            let rz = gamma_rule(shape_z, k_max, QUADRATURE_NODES)?;
            let mut worst: f64 = 0.0;
            for k in 0..=k_max {
                for l in 0..=k_max {
                    let mut acc = 0.0;
                    for &(x, wx) in &rx {
                        let xl = x.powi(l as i32);
                        acc += wx
                            * xl
                            * rz.iter()
                                .map(|&(z, wz)| wz * (x + z).powi(k as i32))
                                .sum::<f64>();
                    }
                    let cf = moment_closed_form(n, t, s, k, l);
                    worst = worst.max((acc - cf).abs() / cf);
                }
            }
            Ok(VerificationReport {
                observed_error: worst,
                ..base
            }
            .with_tolerance(1e-6)
            .param("method", "quadrature")
            .effort(rx.len() * rz.len())
            .timed(start))
        }
        MomentMethod::MonteCarlo { draws } => {
            if draws < 2 {
                return Err(LupError::invalid("draws", "need at least two draws"));
            }
            let order = k_max.min(MC_MAX_ORDER);
            let m = order + 1;
            let (sx, sz) = (shape_x as usize, shape_z as usize);
            let label = format!("moments/{n}/{t}/{s}");
            let chunks = mc_chunks(draws, mc, &label, |rng, _, count| {
                let mut sum = vec![0.0; m * m];
                let mut sq = vec![0.0; m * m];
                for _ in 0..count {
                    let x = rng.gamma_int(sx);
                    let y = x + rng.gamma_int(sz);
                    let mut yk = 1.0;
                    for k in 0..m {
                        let mut v = yk;
                        for l in 0..m {
                            sum[k * m + l] += v;
                            sq[k * m + l] += v * v;
                            v *= x;
                        }
                        yk *= y;
                    }
                }
                Ok((sum, sq))
            })?;
            let mut sum = vec![0.0; m * m];
            let mut sq = vec![0.0; m * m];
            for (s1, s2) in chunks {
                for i in 0..m * m {
                    sum[i] += s1[i];
                    sq[i] += s2[i];
                }
            }
            let nd = draws as f64;
            let mut worst: f64 = 0.0;
            for k in 0..m {
                for l in 0..m {
                    let i = k * m + l;
                    let mean = sum[i] / nd;
                    let var = ((sq[i] / nd - mean * mean) * nd / (nd - 1.0)).max(0.0);
                    let se = (var / nd).sqrt();
                    let diff = mean - moment_closed_form(n, t, s, k, l);
                    let z = if se > 0.0 {
                        diff.abs() / se
                    } else if diff.abs() < 1e-12 {
                        0.0
                    } else {
                        f64::INFINITY
                    };
                    worst = worst.max(z);
                }
            }
            let mut r = VerificationReport {
                observed_error: worst,
                ..base
            }
            .with_tolerance(4.0)
            .param("method", "monte_carlo")
            .param("orders", order)
            .effort(draws);
            if order < k_max {
                r = r.note(format!(
                    "Monte Carlo oracle limited to orders ≤ {MC_MAX_ORDER}"
                ));
            }
            Ok(r.timed(start))
        }
    }
}
