use super::SpaceTimePoint;
use crate::error::{LupError, Result};
use crate::quadrature::integrate_adaptive;
use std::f64::consts::PI;

/// Extended sine kernel
/// `∫₀¹ e^{−π²u²(s−t)} cos(πu(y−x)) du` for `s ≤ t` and
/// `−∫₁^∞ (same) du` for `s > t`.
///
/// The infinite range is cut at the first `U` where the Gaussian tail bound
/// `e^{−cU²}/(2cU)` (with `c = π²(s−t)`) drops below `tol·10⁻³`.
pub fn kernel_sine(y: SpaceTimePoint, x: SpaceTimePoint, tol: f64) -> Result<f64> {
    if !(y.t.is_finite() && x.t.is_finite() && y.x.is_finite() && x.x.is_finite()) {
        return Err(LupError::invalid("point", "non-finite position or time"));
    }
    let d = y.x - x.x;
    let dt = x.t - y.t;
    let c = PI * PI * dt;
    let f = move |u: f64| (-c * u * u).exp() * (PI * u * d).cos();
    if dt <= 0.0 {
        return Ok(integrate_adaptive(f, 0.0, 1.0, tol * 1e-2, 0.0)?.value);
    }
    let cut = tol * 1e-3;
    let mut upper = 1.0f64;
    while (-c * upper * upper).exp() / (2.0 * c * upper) >= cut {
        upper *= 1.25;
        if upper > 1e6 {
            return Err(LupError::ToleranceNotMet {
                tol,
                detail: format!("sine kernel tail does not decay fast enough for s − t = {dt}"),
            });
        }
    }
    Ok(-integrate_adaptive(f, 1.0, upper, tol * 1e-2, 0.0)?.value)
}
