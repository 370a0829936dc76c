use super::SpaceTimePoint;
use crate::error::{LupError, Result};
use crate::quadrature::integrate_adaptive;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Arguments accepted by [`airy_ai_pair`].
pub const AIRY_RANGE: (f64, f64) = (-150.0, 100.0);

const AI0: f64 = 0.355_028_053_887_817_2;
const AIP0: f64 = -0.258_819_403_792_806_8;
/// Anchors tabulate `(Ai, Ai′)` on `[ANCHOR_LO, ANCHOR_HI]` every `STEP`.
const ANCHOR_LO: f64 = -10.0;
const ANCHOR_HI: f64 = 12.0;
const STEP: f64 = 0.5;

/// Taylor step of the Airy equation from `x0` by `h`, returning `(Ai, Ai′)`
/// at `x0 + h` given the values at `x0`.
fn taylor(x0: f64, ai: f64, aip: f64, h: f64) -> (f64, f64) {
    // (n+2)(n+1) c_{n+2} = x0 c_n + c_{n−1}
    let mut c = [ai, aip, 0.5 * x0 * ai];
    let (mut f, mut fp) = (ai + aip * h + c[2] * h * h, aip + 2.0 * c[2] * h);
    let mut hp = h * h;
    let mut small = 0;
    for n in 1..400 {
        let next = (x0 * c[1] + c[0]) / ((n + 2) as f64 * (n + 1) as f64);
        c = [c[1], c[2], next];
        let term_d = (n + 2) as f64 * next * hp;
        hp *= h;
        let term = next * hp;
        f += term;
        fp += term_d;
        if term.abs() <= 1e-18 * f.abs() && term_d.abs() <= 1e-18 * fp.abs() {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
    }
    (f, fp)
}

/// Coefficients `u_k`, `v_k` of the large-argument expansions.
fn asymptotic_coefficients() -> &'static [(f64, f64)] {
    static COEF: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    COEF.get_or_init(|| {
        let mut out = vec![(1.0, 1.0)];
        let mut u = 1.0;
        for k in 1..60usize {
            let kf = k as f64;
            u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
                / ((2.0 * kf - 1.0) * 216.0 * kf);
            out.push((u, -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u));
        }
        out
    })
}

/// Sums `Σ (−1)^k a_k / ζ^k` over the selected parity, stopping at the
/// smallest term.
fn asymptotic_sum(
    zeta: f64,
    pick: impl Fn(&(f64, f64)) -> f64,
    start: usize,
    stride: usize,
    alternate: bool,
) -> f64 {
    let coef = asymptotic_coefficients();
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    let mut sign = 1.0;
    let mut k = start;
    while k < coef.len() {
        let term = pick(&coef[k]) / zeta.powi(k as i32);
        if term.abs() > prev {
            break;
        }
        sum += sign * term;
        prev = term.abs();
        if prev < 1e-18 * sum.abs() {
            break;
        }
        if alternate {
            sign = -sign;
        }
        k += stride;
    }
    sum
}

fn asymptotic_positive(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let q = x.sqrt().sqrt();
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let su = asymptotic_sum(zeta, |c| c.0, 0, 1, true);
    let sv = asymptotic_sum(zeta, |c| c.1, 0, 1, true);
    (e / q * su, -e * q * sv)
}

fn asymptotic_negative(x: f64) -> (f64, f64) {
    let z = -x;
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let q = z.sqrt().sqrt();
    let phase = zeta - PI / 4.0;
    let (sn, cs) = phase.sin_cos();
    let ue = asymptotic_sum(zeta, |c| c.0, 0, 2, true);
    let uo = asymptotic_sum(zeta, |c| c.0, 1, 2, true);
    let ve = asymptotic_sum(zeta, |c| c.1, 0, 2, true);
    let vo = asymptotic_sum(zeta, |c| c.1, 1, 2, true);
    let ai = (cs * ue + sn * uo) / (PI.sqrt() * q);
    let aip = q / PI.sqrt() * (sn * ve - cs * vo);
    (ai, aip)
}

/// `(Ai, Ai′)` at `ANCHOR_LO + i·STEP`.
///
/// The decaying side is filled backwards from the asymptotic value at
/// `ANCHOR_HI` (stable for the recessive solution); the oscillatory side is
/// stepped forwards from the closed-form values at zero.
fn anchors() -> &'static [(f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let count = ((ANCHOR_HI - ANCHOR_LO) / STEP) as usize + 1;
        let zero = (-ANCHOR_LO / STEP) as usize;
        let mut t = vec![(0.0, 0.0); count];
        t[count - 1] = asymptotic_positive(ANCHOR_HI);
        for i in (zero + 1..count - 1).rev() {
            let x0 = ANCHOR_LO + (i + 1) as f64 * STEP;
            let (a, ap) = t[i + 1];
            t[i] = taylor(x0, a, ap, -STEP);
        }
        t[zero] = (AI0, AIP0);
        for i in (0..zero).rev() {
            let x0 = ANCHOR_LO + (i + 1) as f64 * STEP;
            let (a, ap) = t[i + 1];
            t[i] = taylor(x0, a, ap, -STEP);
        }
        t
    })
}

/// `(Ai(x), Ai′(x))`: Taylor expansion about the nearest anchor inside
/// `[−10, 12]`, large-argument expansions outside.
pub fn airy_ai_pair(x: f64) -> Result<(f64, f64)> {
    if !(x >= AIRY_RANGE.0 && x <= AIRY_RANGE.1) {
        return Err(LupError::OutOfRange {
            value: x,
            lo: AIRY_RANGE.0,
            hi: AIRY_RANGE.1,
        });
    }
    Ok(airy_unchecked(x))
}

fn airy_unchecked(x: f64) -> (f64, f64) {
    if x > ANCHOR_HI {
        return asymptotic_positive(x);
    }
    if x < ANCHOR_LO {
        return asymptotic_negative(x);
    }
    let i = ((x - ANCHOR_LO) / STEP).round() as usize;
    let x0 = ANCHOR_LO + i as f64 * STEP;
    let (a, ap) = anchors()[i];
    taylor(x0, a, ap, x - x0)
}

pub fn airy_ai(x: f64) -> Result<f64> {
    Ok(airy_ai_pair(x)?.0)
}

pub fn airy_ai_prime(x: f64) -> Result<f64> {
    Ok(airy_ai_pair(x)?.1)
}

/// Equal-time Airy kernel `(Ai(y)Ai′(x) − Ai′(y)Ai(x)) / (y − x)`, with
/// `Ai′(x)² − x Ai(x)²` on the diagonal.
pub fn airy_kernel_equal_time(y: f64, x: f64) -> Result<f64> {
    let (ay, apy) = airy_ai_pair(y)?;
    let (ax, apx) = airy_ai_pair(x)?;
    if y == x {
        return Ok(apx * apx - x * ax * ax);
    }
    Ok((ay * apx - apy * ax) / (y - x))
}

/// Ai beyond the upper end of the range is below 1e-290; treat it as zero
/// inside integrands.
fn ai_or_zero(z: f64) -> f64 {
    if z > AIRY_RANGE.1 {
        0.0
    } else {
        airy_unchecked(z).0
    }
}

/// Extended Airy kernel: `∫₀^∞ e^{u(s−t)/2} Ai(y+u) Ai(x+u) du` for `s ≤ t`
/// and `−∫_{−∞}^0 (same) du` for `s > t`.
///
/// The `s ≤ t` range is cut once both arguments pass 16, where the product
/// of Airy factors is below 1e-26. For `s > t` the lower cut `L` uses
/// `|Ai(z)|² ≤ 1/π` on the negative axis so that the dropped mass
/// `2e^{Lτ/2}/(πτ)` is below `tol·10⁻³`.
pub fn kernel_airy(y: SpaceTimePoint, x: SpaceTimePoint, tol: f64) -> Result<f64> {
    for v in [y.x, x.x] {
        if !(v >= AIRY_RANGE.0 && v <= AIRY_RANGE.1) {
            return Err(LupError::OutOfRange {
                value: v,
                lo: AIRY_RANGE.0,
                hi: AIRY_RANGE.1,
            });
        }
    }
    let tau = x.t - y.t;
    if !tau.is_finite() {
        return Err(LupError::invalid("t, s", "non-finite time"));
    }
    let f = |u: f64| (0.5 * u * tau).exp() * ai_or_zero(y.x + u) * ai_or_zero(x.x + u);
    let abs_tol = tol * 1e-2;
    if tau <= 0.0 {
        let upper = (16.0 - y.x.min(x.x)).max(8.0);
        return Ok(integrate_adaptive(f, 0.0, upper, abs_tol, 0.0)?.value);
    }
    let lower = (2.0 / tau) * (tol * 1e-3 * tau * PI / 2.0).ln();
    if y.x.min(x.x) + lower < AIRY_RANGE.0 {
        return Err(LupError::ToleranceNotMet {
            tol,
            detail: format!(
                "Airy tail down to u = {lower:.1} leaves the supported range; positions too negative for s − t = {tau}"
            ),
        });
    }
    Ok(-integrate_adaptive(f, lower, 0.0, abs_tol, 0.0)?.value)
}
