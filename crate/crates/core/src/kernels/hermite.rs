use super::SpaceTimePoint;
use crate::error::{LupError, Result};

/// Hard cap on the number of tail terms summed for `s > t`.
pub const MEHLER_TERM_CAP: usize = 2000;
/// Consecutive small increments required before the tail sum stops.
const QUIET_TERMS: usize = 5;

/// Hermite functions `ψₖ(x) = H̃ₖ(x) e^{−x²/2} / √mₖ` for `k < count`,
/// bounded by `π^{−1/4}` for every `k`.
fn hermite_functions(count: usize, x: f64) -> Vec<f64> {
    let mut h = Vec::with_capacity(count);
    if count == 0 {
        return h;
    }
    h.push(std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp());
    if count > 1 {
        h.push(std::f64::consts::SQRT_2 * x * h[0]);
    }
    for k in 1..count.saturating_sub(1) {
        let kf = k as f64;
        h.push(x * (2.0 / (kf + 1.0)).sqrt() * h[k] - (kf / (kf + 1.0)).sqrt() * h[k - 1]);
    }
    h
}

/// Gaussian heat factor `e^{−(y−x)²/2(s−t)} / √(2π(s−t))` for `s > t`.
pub fn heat_kernel(y: f64, x: f64, t: f64, s: f64) -> f64 {
    let d = s - t;
    (-(y - x).powi(2) / (2.0 * d)).exp() / (2.0 * std::f64::consts::PI * d).sqrt()
}

fn check_times(y: SpaceTimePoint, x: SpaceTimePoint) -> Result<()> {
    if !(y.t > 0.0 && x.t > 0.0 && y.t.is_finite() && x.t.is_finite()) {
        return Err(LupError::invalid(
            "t, s",
            format!(
                "Hermite kernel needs positive times, got {} and {}",
                y.t, x.t
            ),
        ));
    }
    Ok(())
}

/// Common prefactor and series variables: the kernel equals
/// `pref · Σ zᵏ ψₖ(Y) ψₖ(X)` with `z = √(t/s)`, `Y = y/√(2t)`, `X = x/√(2s)`.
fn series_setup(y: SpaceTimePoint, x: SpaceTimePoint) -> (f64, f64, f64, f64) {
    let (t, s) = (y.t, x.t);
    let yy = y.x / (2.0 * t).sqrt();
    let xx = x.x / (2.0 * s).sqrt();
    let pref = (0.5 * (yy * yy - xx * xx)).exp() / (2.0 * s).sqrt();
    (pref, (t / s).sqrt(), yy, xx)
}

/// Finite part, tail and the number of tail terms used, for `s > t`.
#[derive(Debug, Clone)]
pub struct MehlerParts {
    /// `Σ_{k<N}` of the series (with prefactor).
    pub finite: f64,
    /// `Σ_{k≥N}` of the series (with prefactor), truncated.
    pub tail: f64,
    /// Partial sums of the full series (with prefactor) after each term.
    pub partial_sums: Vec<f64>,
}

/// Sum the series in both ranges; the tail stops once the increment has
/// stayed below `tol·|tail|` for five consecutive terms and the geometric
/// remainder bound `z^{k+1}/(√π (1 − z))` is below the same threshold.
pub fn hermite_mehler_parts(
    y: SpaceTimePoint,
    x: SpaceTimePoint,
    n: usize,
    tol: f64,
) -> Result<MehlerParts> {
    check_times(y, x)?;
    if !(x.t > y.t) {
        return Err(LupError::invalid("t, s", "the tail series needs s > t"));
    }
    let (pref, z, yy, xx) = series_setup(y, x);
    let hy = hermite_functions(MEHLER_TERM_CAP, yy);
    let hx = hermite_functions(MEHLER_TERM_CAP, xx);
    let mut partial_sums = Vec::new();
    let mut acc = 0.0;
    let mut zk = 1.0;
    let mut finite = 0.0;
    let mut tail = 0.0;
    let mut quiet = 0;
    let bound = |zk: f64| pref * zk * z / (std::f64::consts::PI.sqrt() * (1.0 - z));
    for k in 0..MEHLER_TERM_CAP {
        let term = pref * zk * hy[k] * hx[k];
        acc += term;
        partial_sums.push(acc);
        if k < n {
            finite += term;
        } else {
            tail += term;
            let thresh = tol * tail.abs();
            quiet = if term.abs() < thresh { quiet + 1 } else { 0 };
            if quiet >= QUIET_TERMS && bound(zk) < thresh.max(tol * f64::MIN_POSITIVE) {
                return Ok(MehlerParts {
                    finite,
                    tail,
                    partial_sums,
                });
            }
        }
        zk *= z;
    }
    Err(LupError::ToleranceNotMet {
        tol,
        detail: format!(
            "Hermite tail series not converged after {MEHLER_TERM_CAP} terms (t/s = {})",
            z * z
        ),
    })
}

/// Extended Hermite kernel: the finite sum over `k < N` for `s ≤ t`, and
/// minus the tail over `k ≥ N` for `s > t`.
pub fn kernel_hermite(y: SpaceTimePoint, x: SpaceTimePoint, n: usize, tol: f64) -> Result<f64> {
    check_times(y, x)?;
    if n == 0 {
        return Err(LupError::invalid("N", "must be a positive integer"));
    }
    if x.t <= y.t {
        let (pref, z, yy, xx) = series_setup(y, x);
        let hy = hermite_functions(n, yy);
        let hx = hermite_functions(n, xx);
        let mut zk = 1.0;
        let mut acc = 0.0;
        for k in 0..n {
            acc += zk * hy[k] * hx[k];
            zk *= z;
        }
        return Ok(pref * acc);
    }
    Ok(-hermite_mehler_parts(y, x, n, tol)?.tail)
}
