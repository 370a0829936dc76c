use super::moments::check_times;
use super::{gamma_rule, VerificationReport};
use crate::error::{LupError, Result};
use crate::polybasis::{
    kappa, laguerre_monic, laguerre_monic_table, laguerre_norm, weight_gamma, WeightParams,
};
use crate::quadrature::gauss_legendre;
use std::time::Instant;

const NODES: usize = 200;
const DIAG_TOL: f64 = 1e-7;
const OFFDIAG_TOL: f64 = 1e-8;

fn index(n: usize, t: usize) -> f64 {
    (n * (t - 1)) as f64
}

fn table(count: usize, a: f64, x: f64) -> Vec<f64> {
    laguerre_monic_table(count, a, x)
        .into_iter()
        .map(|v| v.to_f64())
        .collect()
}

/// `P_k(z) = L̃ₖ^{N(u−1)}(z)`.
pub fn transform_p_closed(n: usize, u: usize, k: usize, z: f64) -> f64 {
    laguerre_monic(k, index(n, u), z).to_f64()
}

/// `P_k(z) = ∫ L̃ₖ^{N(t−1)}(y) κ_{t−u}(y − z) dy`, by quadrature; returns
/// the value and the integral of the absolute integrand.
pub fn transform_p_integral(n: usize, t: usize, u: usize, k: usize, z: f64) -> Result<(f64, f64)> {
    let at = index(n, t);
    if t == u {
        let v = laguerre_monic(k, at, z).to_f64();
        return Ok((v, v.abs()));
    }
    let rule = gamma_rule((n * (t - u)) as f64, k, NODES)?;
    let (mut v, mut a) = (0.0, 0.0);
    for &(g, w) in &rule {
        let p = laguerre_monic(k, at, z + g).to_f64();
        v += w * p;
        a += w * p.abs();
    }
    Ok((v, a))
}

/// `Q_ℓ(z) = (r_ℓ^{N(s−1)} / r_ℓ^{N(u−1)}) L̃ₗ^{N(u−1)}(z) w_{N(u−1),1}(z)`.
pub fn transform_q_closed(n: usize, u: usize, s: usize, l: usize, z: f64) -> Result<f64> {
    let (au, as_) = (index(n, u), index(n, s));
    let ratio = laguerre_norm(l, as_) / laguerre_norm(l, au);
    let w = weight_gamma(WeightParams::new(au, 1.0)?, z);
    Ok((ratio * laguerre_monic(l, au, z) * w).to_f64())
}

/// `Q_ℓ(z) = ∫ κ_{u−s}(z − x) L̃ₗ^{N(s−1)}(x) w_{N(s−1),1}(x) dx`, by
/// quadrature on `[0, z]` (the integrand is a polynomial times `e^{−z}`);
/// returns the value and the integral of the absolute integrand.
pub fn transform_q_integral(n: usize, u: usize, s: usize, l: usize, z: f64) -> Result<(f64, f64)> {
    let as_ = index(n, s);
    let ws = WeightParams::new(as_, 1.0)?;
    if u == s {
        let v = (laguerre_monic(l, as_, z) * weight_gamma(ws, z)).to_f64();
        return Ok((v, v.abs()));
    }
    if z <= 0.0 {
        return Ok((0.0, 0.0));
    }
    let degree = l + n * (s - 1) + n * (u - s);
    let rule = gauss_legendre(degree / 2 + 24, (0.0, z))?;
    let (mut v, mut a) = (0.0, 0.0);
    for &(x, w) in rule.nodes() {
        let f =
            (kappa((u - s) as f64, n, z - x)? * laguerre_monic(l, as_, x) * weight_gamma(ws, x))
                .to_f64();
        v += w * f;
        a += w * f.abs();
    }
    Ok((v, a))
}

/// Bi-orthogonality of the monic Laguerre families under the transition
/// kernel:
/// `∫∫ L̃ₖ^{N(t−1)}(y) κ_{t−s}(y−x) L̃ₗ^{N(s−1)}(x) w_{N(s−1),1}(x) dx dy = h_ℓ δ_{kℓ}`
/// with `h_ℓ = r_ℓ^{N(s−1)}`, for all `k, ℓ ≤ k_max`.
///
/// With an intermediate time `u`, additionally checks the closed forms of
/// the transforms `P_k`, `Q_ℓ` against their integral definitions and the
/// pairing `∫ P_k Q_ℓ = h_ℓ δ_{kℓ}`.
///
/// The observed error is normalised: diagonal relative errors are divided
/// by 1e-7, off-diagonal errors by `1e-8·h_max`, and transform errors
/// (relative to the absolute integrand mass) by 1e-7; the check passes when
/// the largest ratio is at most 1.
pub fn check_biorthogonality(
    n: usize,
    t: usize,
    s: usize,
    k_max: usize,
    u: Option<usize>,
) -> Result<VerificationReport> {
    check_times(n, t, s)?;
    if k_max > 8 {
        return Err(LupError::invalid("k_max", "must be at most 8"));
    }
    if let Some(u) = u {
        if !(s <= u && u <= t) {
            return Err(LupError::invalid(
                "u",
                format!("need s ≤ u ≤ t, got u = {u}"),
            ));
        }
    }
    let start = Instant::now();
    let (at, as_) = (index(n, t), index(n, s));
    let m = k_max + 1;
    let h: Vec<f64> = (0..m).map(|l| laguerre_norm(l, as_).to_f64()).collect();
    let h_max = h.iter().copied().fold(0.0, f64::max);

    let rx = gamma_rule(as_ + 1.0, 2 * k_max, NODES)?;
    let rz = gamma_rule((n * (t - s)) as f64, k_max, NODES)?;
    let mut base = vec![0.0; m * m];
    for &(x, wx) in &rx {
        let px = table(m, as_, x);
        for &(z, wz) in &rz {
            let py = table(m, at, x + z);
            let w = wx * wz;
            for k in 0..m {
                for l in 0..m {
                    base[k * m + l] += w * py[k] * px[l];
                }
            }
        }
    }
    let mut effort = rx.len() * rz.len();
    let (mut diag, mut off, mut transform) = (0.0f64, 0.0f64, 0.0f64);
    let score = |mat: &[f64], diag: &mut f64, off: &mut f64| {
        for k in 0..m {
            for l in 0..m {
                if k == l {
                    *diag = diag.max((mat[k * m + l] - h[l]).abs() / h[l]);
                } else {
                    *off = off.max(mat[k * m + l].abs() / h_max);
                }
            }
        }
    };
    score(&base, &mut diag, &mut off);

    let mut report = VerificationReport::new("biorthogonality", 0.0, 1.0)
        .param("N", n)
        .param("t", t)
        .param("s", s)
        .param("k_max", k_max);
    if let Some(u) = u {
        let au = index(n, u);
        let ru = gamma_rule(au + 1.0, 2 * k_max, NODES)?;
        let mut pair = vec![0.0; m * m];
        for &(z, w) in &ru {
            let p = table(m, au, z);
            for k in 0..m {
                for l in 0..m {
                    let scale = (laguerre_norm(l, as_) / laguerre_norm(l, au)).to_f64();
                    pair[k * m + l] += w * p[k] * scale * p[l];
                }
            }
        }
        score(&pair, &mut diag, &mut off);
        effort += ru.len();
        for frac in [0.3, 1.0, 2.0, 3.5] {
            let z = frac * (au + 1.0);
            for k in 0..m {
                let (v, mass) = transform_p_integral(n, t, u, k, z)?;
                transform = transform
                    .max((v - transform_p_closed(n, u, k, z)).abs() / mass.max(f64::MIN_POSITIVE));
                let (v, mass) = transform_q_integral(n, u, s, k, z)?;
                transform = transform.max(
                    (v - transform_q_closed(n, u, s, k, z)?).abs() / mass.max(f64::MIN_POSITIVE),
                );
            }
        }
        report = report.param("u", u);
    }
    let observed = (diag / DIAG_TOL)
        .max(off / OFFDIAG_TOL)
        .max(transform / DIAG_TOL);
    report.observed_error = observed;
    Ok(report
        .with_tolerance(1.0)
        .effort(effort)
        .note(format!(
            "diagonal rel {diag:.3e} (tol {DIAG_TOL:e}); off-diagonal / h_max {off:.3e} (tol {OFFDIAG_TOL:e}); transforms {transform:.3e}"
        ))
        .timed(start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeroth_entry_is_a_probability() {
        let r = check_biorthogonality(1, 2, 1, 0, None).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn examples() {
        for &(n, t, s, k) in &[(2usize, 3usize, 2usize, 2usize), (1, 3, 1, 8), (3, 4, 2, 8)] {
            let r = check_biorthogonality(n, t, s, k, None).unwrap();
            assert!(r.passed, "{r:?}");
        }
        // h₁ = 3 for N = 2, s = 2.
        assert!((laguerre_norm(1, 2.0).to_f64() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn intermediate_time_including_endpoints() {
        for u in [2usize, 3, 4] {
            let r = check_biorthogonality(2, 4, 2, 8, Some(u)).unwrap();
            assert!(r.passed, "u={u}: {r:?}");
        }
        assert!(check_biorthogonality(2, 4, 2, 3, Some(5)).is_err());
    }

    #[test]
    fn transforms_match_closed_forms() {
        let (n, t, u, s) = (2usize, 4usize, 3usize, 2usize);
        for k in 0..5 {
            for z in [0.7, 4.0, 9.5] {
                let (v, _) = transform_p_integral(n, t, u, k, z).unwrap();
                let cf = transform_p_closed(n, u, k, z);
                assert!(
                    (v - cf).abs() < 1e-9 * (1.0 + cf.abs()),
                    "P k={k} z={z}: {v} vs {cf}"
                );
                let (v, _) = transform_q_integral(n, u, s, k, z).unwrap();
                let cf = transform_q_closed(n, u, s, k, z).unwrap();
                assert!(
                    (v - cf).abs() < 1e-10 * (1.0 + cf.abs()),
                    "Q k={k} z={z}: {v} vs {cf}"
                );
            }
        }
    }
}
