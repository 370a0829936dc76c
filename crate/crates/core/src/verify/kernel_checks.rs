use super::VerificationReport;
use crate::error::Result;
use crate::kernels::{
    airy_kernel_equal_time, heat_kernel, hermite_mehler_parts, kernel_airy, kernel_hermite,
    kernel_laguerre, kernel_laguerre_cd, kernel_sine, SpaceTimePoint,
};
use crate::quadrature::gauss_legendre;
use std::f64::consts::PI;
use std::time::Instant;

fn p(x: f64, t: f64) -> SpaceTimePoint {
    SpaceTimePoint::new(x, t)
}

/// Christoffel–Darboux form against the sum form of the equal-time
/// Laguerre kernel, relative error, for `N ≤ 6`, `t ≤ 4` on a point grid
/// including the diagonal. Points where the kernel is within `1e-6` of a
/// zero (relative to `√(K(y,y)K(x,x))`) are skipped because relative error
/// is meaningless there.
pub fn check_christoffel_darboux() -> Result<VerificationReport> {
    let start = Instant::now();
    let coords = [0.3, 1.0, 2.5, 5.0, 9.0, 14.0];
    let (mut worst, mut count, mut skipped) = (0.0f64, 0usize, 0usize);
    for n in 1..=6usize {
        for t in 1..=4usize {
            let tf = t as f64;
            let k = |y: f64, x: f64| kernel_laguerre(p(y, tf), p(x, tf), n);
            for &y in &coords {
                for &x in &coords {
                    let sum = k(y, x)?;
                    let scale = (k(y, y)? * k(x, x)?).sqrt();
                    if sum.abs() < 1e-6 * scale {
                        skipped += 1;
                        continue;
                    }
                    let cd = kernel_laguerre_cd(y, x, t, n)?;
                    worst = worst.max((cd - sum).abs() / sum.abs());
                    count += 1;
                }
            }
        }
    }
    Ok(VerificationReport::new("christoffel_darboux", worst, 1e-9)
        .effort(count)
        .note(format!("{skipped} near-zero kernel values skipped"))
        .timed(start))
}

/// Mehler: finite part plus tail of the Hermite series equals the Gaussian
/// heat factor for `s > t`.
pub fn check_mehler() -> Result<VerificationReport> {
    let start = Instant::now();
    let cases = [
        (0.3, -0.4, 1.0, 2.0),
        (1.2, 0.5, 0.5, 2.0),
        (-0.7, 0.9, 2.0, 2.5),
        (0.0, 0.0, 1.0, 4.0),
    ];
    let mut worst: f64 = 0.0;
    let mut terms = 0;
    for &(y, x, t, s) in &cases {
        for n in [1usize, 2, 5, 10] {
            let parts = hermite_mehler_parts(p(y, t), p(x, s), n, 1e-14)?;
            terms += parts.partial_sums.len();
            worst = worst.max((parts.finite + parts.tail - heat_kernel(y, x, t, s)).abs());
        }
    }
    Ok(VerificationReport::new("mehler_formula", worst, 1e-10)
        .effort(terms)
        .timed(start))
}

/// Equal-time reductions: the sine kernel integral equals `sin(πd)/(πd)`
/// and the Airy kernel integral equals the Christoffel–Darboux form in
/// Airy functions.
pub fn check_equal_time_reductions() -> Result<VerificationReport> {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for i in 0..=24 {
        let d = -3.0 + 0.25 * i as f64;
        let want = if d == 0.0 {
            1.0
        } else {
            (PI * d).sin() / (PI * d)
        };
        worst = worst.max((kernel_sine(p(0.2 + d, 1.5), p(0.2, 1.5), 1e-12)? - want).abs());
        count += 1;
    }
    for &(y, x) in &[
        (0.5, -0.3),
        (0.0, 0.0),
        (-2.0, 1.0),
        (-6.0, -5.5),
        (3.0, 2.0),
        (1.0, 1.0),
    ] {
        let k = kernel_airy(p(y, 1.0), p(x, 1.0), 1e-12)?;
        worst = worst.max((k - airy_kernel_equal_time(y, x)?).abs());
        count += 1;
    }
    Ok(
        VerificationReport::new("equal_time_reductions", worst, 1e-8)
            .effort(count)
            .timed(start),
    )
}

/// `∫ K(x,t|x,t) dx = N` for the Laguerre kernel (`N ∈ {2, 3}`,
/// `t ∈ {1, 2}`) and the Hermite kernel (`N ∈ {2, 5}`).
pub fn check_projection_trace() -> Result<VerificationReport> {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let lag = gauss_legendre(256, (0.0, 120.0))?;
    let her = gauss_legendre(256, (-30.0, 30.0))?;
    for n in [2usize, 3] {
        for t in [1.0, 2.0] {
            let mut err = None;
            let tr = lag.integrate(|x| {
                kernel_laguerre(p(x, t), p(x, t), n).unwrap_or_else(|e| {
                    err = Some(e);
                    0.0
                })
            });
            if let Some(e) = err {
                return Err(e);
            }
            worst = worst.max((tr - n as f64).abs());
        }
    }
    for n in [2usize, 5] {
        let tr =
            her.integrate(|x| kernel_hermite(p(x, 1.5), p(x, 1.5), n, 1e-12).unwrap_or(f64::NAN));
        worst = worst.max((tr - n as f64).abs());
    }
    Ok(VerificationReport::new("projection_trace", worst, 1e-8)
        .effort(4 * lag.len() + 2 * her.len())
        .timed(start))
}

/// Bulk universality at finite `N`: the equal-time Hermite kernel at time
/// `T = N/π²` (where the bulk density at the origin is one), in the
/// symmetric gauge `e^{(x²−y²)/4T}`, against `sin(π(y−x))/(π(y−x))` at five
/// points. Advisory: finite-`N` corrections are not controlled.
pub fn check_universality(n: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let big_t = n as f64 / (PI * PI);
    let points = [(0.0, 0.0), (0.5, 0.0), (1.0, 0.0), (0.3, -0.4), (1.5, 0.25)];
    let mut worst: f64 = 0.0;
    for &(y, x) in &points {
        let k = kernel_hermite(p(y, big_t), p(x, big_t), n, 1e-12)?
            * ((x * x - y * y) / (4.0 * big_t)).exp();
        let d = y - x;
        let sinc = if d == 0.0 {
            1.0
        } else {
            (PI * d).sin() / (PI * d)
        };
        worst = worst.max((k - sinc).abs());
    }
    Ok(VerificationReport::new("bulk_universality", worst, 2e-2)
        .param("N", n)
        .param("time", big_t)
        .effort(points.len())
        .advisory()
        .timed(start))
}
