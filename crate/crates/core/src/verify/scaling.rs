use super::VerificationReport;
use crate::error::{LupError, Result};
use crate::kernels::{kernel_hermite, kernel_laguerre, SpaceTimePoint};
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Largest Laguerre index `N(γt − 1)` reached by a scan.
pub const MAX_SCALING_INDEX: f64 = 1e7;
/// Target rate exponent and the accepted half-width around it.
const RATE: f64 = -0.5;
const RATE_BAND: f64 = 0.2;

/// Hermite-kernel coordinates `(y, t | x, s)` of a test point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    pub y: f64,
    pub x: f64,
    pub t: f64,
    pub s: f64,
}

impl ScalingPoint {
    pub fn new(y: f64, x: f64, t: f64, s: f64) -> Self {
        ScalingPoint { y, x, t, s }
    }
}

/// One `(γ, test point, error)` record of a scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub gamma: f64,
    pub point: usize,
    pub error: f64,
}

fn integer_multiple(gamma: f64, t: f64) -> Result<f64> {
    let v = gamma * t;
    if (v - v.round()).abs() > 1e-9 * v.abs().max(1.0) || v.round() < 1.0 {
        return Err(LupError::invalid(
            "gamma",
            format!("γ·t must be a positive integer, got {gamma}·{t}"),
        ));
    }
    Ok(v.round())
}

/// `E(γ) = |√(Nγ) K^{Laguerre}(√(Nγ)y + Nγt, γt | √(Nγ)x + Nγs, γs) − K^{Hermite}(y,t | x,s)|`
/// for every `γ` and test point.
pub fn scaling_errors(n: usize, gammas: &[f64], points: &[ScalingPoint]) -> Result<Vec<ScanRow>> {
    if n == 0 {
        return Err(LupError::invalid("N", "must be a positive integer"));
    }
    if gammas.is_empty() {
        return Err(LupError::invalid("gamma", "need at least one value"));
    }
    if gammas.windows(2).any(|w| w[0] >= w[1]) || !(gammas[0] > 0.0) {
        return Err(LupError::invalid(
            "gamma",
            "values must be positive and strictly ascending",
        ));
    }
    let mut rows = Vec::with_capacity(gammas.len() * points.len());
    for &g in gammas {
        for (i, p) in points.iter().enumerate() {
            let (gt, gs) = (integer_multiple(g, p.t)?, integer_multiple(g, p.s)?);
            let index = n as f64 * (gt.max(gs) - 1.0);
            if index > MAX_SCALING_INDEX {
                return Err(LupError::Overflow {
                    index,
                    limit: MAX_SCALING_INDEX,
                });
            }
            let ng = n as f64 * g;
            let c = ng.sqrt();
            let lag = c * kernel_laguerre(
                SpaceTimePoint::new(c * p.y + ng * p.t, gt),
                SpaceTimePoint::new(c * p.x + ng * p.s, gs),
                n,
            )?;
            let her = kernel_hermite(
                SpaceTimePoint::new(p.y, p.t),
                SpaceTimePoint::new(p.x, p.s),
                n,
                1e-13,
            )?;
            rows.push(ScanRow {
                gamma: g,
                point: i,
                error: (lag - her).abs(),
            });
        }
    }
    Ok(rows)
}

/// Least-squares slope of `ln E` against `ln γ`.
pub(crate) fn log_slope(gammas: &[f64], errors: &[f64]) -> f64 {
    let xs: Vec<f64> = gammas.iter().map(|g| g.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Laguerre → Hermite scaling limit: at every test point the error must
/// decrease along `gammas` and the fitted log-log slope must lie within
/// `−1/2 ± 0.2`. The observed error is the largest `|slope + 1/2|`.
pub fn check_scaling_limit(
    n: usize,
    gammas: &[f64],
    points: &[ScalingPoint],
) -> Result<VerificationReport> {
    if gammas.len() < 2 || points.is_empty() {
        return Err(LupError::invalid(
            "gamma, points",
            "need at least two γ values and one test point",
        ));
    }
    let start = Instant::now();
    let rows = scaling_errors(n, gammas, points)?;
    let mut monotone = true;
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for i in 0..points.len() {
        let e: Vec<f64> = rows
            .iter()
            .filter(|r| r.point == i)
            .map(|r| r.error)
            .collect();
        monotone &= e.windows(2).all(|w| w[1] < w[0]);
        let slope = log_slope(gammas, &e);
        worst = worst.max((slope - RATE).abs());
        let list: Vec<String> = e.iter().map(|v| format!("{v:.3e}")).collect();
        notes.push(format!(
            "point {i}: errors [{}], slope {slope:.3}",
            list.join(", ")
        ));
    }
    let mut r = VerificationReport::new("scaling_limit", worst, RATE_BAND)
        .param("N", n)
        .param("gammas", gammas.to_vec())
        .param("points", serde_json::to_value(points).unwrap_or_default())
        .effort(rows.len());
    for note in notes {
        r = r.note(note);
    }
    Ok(
        r.require(monotone, "errors decrease along γ at every point")
            .timed(start),
    )
}

/// Test points covering `s = t`, `s < t` and `s > t`. The origin is avoided
/// because the leading correction vanishes there and the rate is `γ^{−1}`.
pub(crate) fn default_points() -> Vec<ScalingPoint> {
    vec![
        ScalingPoint::new(0.5, 0.5, 1.0, 1.0),
        ScalingPoint::new(0.5, -0.3, 1.0, 1.0),
        ScalingPoint::new(0.3, -0.4, 2.0, 1.0),
        ScalingPoint::new(0.2, -0.1, 1.0, 2.0),
    ]
}
