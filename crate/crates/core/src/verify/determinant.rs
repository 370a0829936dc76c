use super::moments::check_times;
use super::{moment_closed_form, VerificationReport};
use crate::error::{LupError, Result};
use crate::linalg::det;
use crate::polybasis::laguerre_norm;
use crate::special::ln_gamma;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::time::Instant;

/// Largest determinant order accepted.
pub const MAX_DET_ORDER: usize = 6;

/// `(lo+1)(lo+2)…hi` as an exact integer.
fn rising(lo: usize, hi: usize) -> BigInt {
    (lo + 1..=hi).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// The moments are integers: `(a_s+ℓ)!/a_s! · (a_t+k+ℓ)!/(a_t+ℓ)!`.
fn moment_exact(n: usize, t: usize, s: usize, k: usize, l: usize) -> BigInt {
    let at = n * (t - 1);
    let as_ = n * (s - 1);
    rising(as_, as_ + l) * rising(at + l, at + k + l)
}

/// Fraction-free Gaussian elimination (Bareiss); every division is exact.
fn bareiss(mut a: Vec<BigInt>, m: usize) -> BigInt {
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..m.saturating_sub(1) {
        if a[k * m + k].is_zero() {
            match (k + 1..m).find(|&i| !a[i * m + k].is_zero()) {
                Some(p) => {
                    for j in 0..m {
                        a.swap(k * m + j, p * m + j);
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let v = &a[i * m + j] * &a[k * m + k] - &a[i * m + k] * &a[k * m + j];
                a[i * m + j] = v / &prev;
            }
        }
        prev = a[k * m + k].clone();
    }
    sign * a[m * m - 1].clone()
}

/// Exact determinant `D_n` of the `(n+1) × (n+1)` moment matrix.
pub fn moment_determinant_exact(n: usize, t: usize, s: usize, order: usize) -> BigInt {
    let m = order + 1;
    let entries = (0..m * m)
        .map(|i| moment_exact(n, t, s, i / m, i % m))
        .collect();
    bareiss(entries, m)
}

/// `D_n = ∏_{k≤n} Γ(a_s+k+1) Γ(k+1) / Γ(a_s+1)`, in floating point.
pub fn moment_determinant_closed(n: usize, s: usize, order: usize) -> f64 {
    let as_ = (n * (s - 1)) as f64;
    (0..=order)
        .map(|k| {
            let k = k as f64;
            ln_gamma(as_ + k + 1.0) + ln_gamma(k + 1.0) - ln_gamma(as_ + 1.0)
        })
        .sum::<f64>()
        .exp()
}

/// Compare the moment determinants and the constants `h_ℓ = D_ℓ/D_{ℓ−1}`
/// against their closed forms for every order up to `n_max`.
///
/// The direct determinant is computed exactly (integer moments, Bareiss
/// elimination); the observed error is the largest relative deviation of
/// `D_n` or `h_ℓ` from the closed forms. Positivity of every `D_n` is
/// required. The floating-point LU determinant is recorded as a note.
pub fn check_moment_determinant(
    n: usize,
    t: usize,
    s: usize,
    n_max: usize,
) -> Result<VerificationReport> {
    check_times(n, t, s)?;
    if n_max > MAX_DET_ORDER {
        return Err(LupError::invalid(
            "n_max",
            format!("must be at most {MAX_DET_ORDER}"),
        ));
    }
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut positive = true;
    let mut lu_worst: f64 = 0.0;
    let mut prev: Option<BigInt> = None;
    let as_ = (n * (s - 1)) as f64;
    for order in 0..=n_max {
        let d = moment_determinant_exact(n, t, s, order);
        positive &= d.is_positive();
        let cf = moment_determinant_closed(n, s, order);
        let df = d.to_f64().unwrap_or(f64::INFINITY);
        worst = worst.max((df - cf).abs() / cf);
        if let Some(p) = prev {
            let h = ratio(&d, &p);
            let want = laguerre_norm(order, as_).to_f64();
            worst = worst.max((h - want).abs() / want);
        }
        let m = order + 1;
        let lu = det(
            (0..m * m)
                .map(|i| moment_closed_form(n, t, s, i / m, i % m))
                .collect(),
            m,
        );
        lu_worst = lu_worst.max((lu - cf).abs() / cf);
        prev = Some(d);
    }
    Ok(VerificationReport::new("moment_determinant", worst, 1e-8)
        .param("N", n)
        .param("t", t)
        .param("s", s)
        .param("n_max", n_max)
        .effort((n_max + 1) * (n_max + 2) * (2 * n_max + 3) / 6)
        .note(format!(
            "floating-point LU determinant: max relative error {lu_worst:.3e}"
        ))
        .require(positive, "all moment determinants positive")
        .timed(start))
}

fn ratio(a: &BigInt, b: &BigInt) -> f64 {
    let q = a / b;
    let r = a - &q * b;
    q.to_f64().unwrap_or(f64::INFINITY)
        + r.to_f64().unwrap_or(0.0) / b.to_f64().unwrap_or(f64::INFINITY)
}
