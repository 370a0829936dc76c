use super::SpaceTimePoint;
use crate::error::{LupError, Result};
use crate::logvalue::LogValue;
use crate::polybasis::{kappa, laguerre_monic_table, laguerre_norm, weight_gamma, WeightParams};

/// Largest Laguerre index `N(t − 1)` accepted; beyond it the log-gamma and
/// recurrence arithmetic is not validated.
pub(crate) const MAX_INDEX: f64 = 1e8;

pub(crate) fn integer_time(t: f64) -> Result<usize> {
    if !(t >= 1.0 && t.fract() == 0.0 && t < 1e15) {
        return Err(LupError::invalid(
            "t",
            format!("Laguerre kernel needs integer times ≥ 1, got {t}"),
        ));
    }
    Ok(t as usize)
}

fn index(n: usize, t: usize) -> Result<f64> {
    let a = (n * (t - 1)) as f64;
    if a > MAX_INDEX {
        return Err(LupError::Overflow {
            index: a,
            limit: MAX_INDEX,
        });
    }
    Ok(a)
}

/// Extended Laguerre kernel
/// `Σ_{k<N} L̃ₖ^{N(t−1)}(y) L̃ₖ^{N(s−1)}(x) w_{N(s−1),1}(x) / r_k^{N(s−1)} − 𝟙_{s>t} κ_{s−t}(x − y)`.
///
/// Each summand is formed in log space and the sum is taken after factoring
/// out the largest term.
pub fn kernel_laguerre(y: SpaceTimePoint, x: SpaceTimePoint, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(LupError::invalid("N", "must be a positive integer"));
    }
    let t = integer_time(y.t)?;
    let s = integer_time(x.t)?;
    let (at, as_) = (index(n, t)?, index(n, s)?);
    let mut value = 0.0;
    if x.x > 0.0 {
        let w = weight_gamma(WeightParams::new(as_, 1.0)?, x.x);
        let py = laguerre_monic_table(n, at, y.x);
        let px = if at == as_ && y.x == x.x {
            py.clone()
        } else {
            laguerre_monic_table(n, as_, x.x)
        };
        let terms = (0..n).map(|k| py[k] * px[k] * w / laguerre_norm(k, as_));
        value = LogValue::sum(terms).to_f64();
    }
    if s > t {
        value -= kappa((s - t) as f64, n, x.x - y.x)?.to_f64();
    }
    Ok(value)
}

/// Equal-time kernel in Christoffel–Darboux form,
/// `[L̃_N(y) L̃_{N−1}(x) − L̃_{N−1}(y) L̃_N(x)] / (y − x) · w(x) / r_{N−1}`,
/// with the derivative form on the diagonal.
pub fn kernel_laguerre_cd(y: f64, x: f64, t: usize, n: usize) -> Result<f64> {
    if n == 0 || t == 0 {
        return Err(LupError::invalid("N, t", "need N ≥ 1 and t ≥ 1"));
    }
    let a = index(n, t)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    let w = weight_gamma(WeightParams::new(a, 1.0)?, x);
    let scale = w / laguerre_norm(n - 1, a);
    let px = laguerre_monic_table(n + 1, a, x);
    if y == x {
        // d/dx L̃ₖᵃ = k L̃ₖ₋₁^{a+1}
        let d = laguerre_monic_table(n, a + 1.0, x);
        let dn = LogValue::from_f64(n as f64) * d[n - 1];
        let dn1 = if n >= 2 {
            LogValue::from_f64((n - 1) as f64) * d[n - 2]
        } else {
            LogValue::ZERO
        };
        let num = LogValue::sum([dn * px[n - 1], -(dn1 * px[n])]);
        return Ok((num * scale).to_f64());
    }
    let py = laguerre_monic_table(n + 1, a, y);
    let num = LogValue::sum([py[n] * px[n - 1], -(py[n - 1] * px[n])]);
    Ok((num / LogValue::from_f64(y - x) * scale).to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_legendre;

    fn p(x: f64, t: f64) -> SpaceTimePoint {
        SpaceTimePoint::new(x, t)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn single_particle_examples() {
        for x in [0.3, 1.0, 4.0] {
            let k = kernel_laguerre(p(x, 1.0), p(x, 1.0), 1).unwrap();
            assert!(rel(k, (-x).exp()) < 1e-15);
        }
        // s > t: w_{1,1}(2)·1 − κ₁(1) = 2e^{−2} − e^{−1}.
        let k = kernel_laguerre(p(1.0, 1.0), p(2.0, 2.0), 1).unwrap();
        assert!((k - (2.0 * (-2f64).exp() - (-1f64).exp())).abs() < 1e-15);
        // κ vanishes at zero separation when s > t.
        let k = kernel_laguerre(p(1.0, 1.0), p(1.0, 2.0), 1).unwrap();
        assert!((k - (-1f64).exp()).abs() < 1e-15);
        assert_eq!(kernel_laguerre(p(1.0, 1.0), p(-1.0, 1.0), 2).unwrap(), 0.0);
    }

    #[test]
    fn rejects_non_integer_time() {
        assert!(kernel_laguerre(p(1.0, 1.5), p(1.0, 1.0), 2).is_err());
        assert!(kernel_laguerre(p(1.0, 0.0), p(1.0, 1.0), 2).is_err());
        assert!(matches!(
            kernel_laguerre(p(1.0, 1e9), p(1.0, 1.0), 2),
            Err(LupError::Overflow { .. })
        ));
    }

    #[test]
    fn equal_time_has_no_kappa_term() {
        let (n, t, y, x) = (3, 2usize, 2.5, 4.0);
        let a = (n * (t - 1)) as f64;
        let w = weight_gamma(WeightParams::new(a, 1.0).unwrap(), x).to_f64();
        let sum: f64 = (0..n)
            .map(|k| {
                crate::polybasis::laguerre_monic(k, a, y).to_f64()
                    * crate::polybasis::laguerre_monic(k, a, x).to_f64()
                    / laguerre_norm(k, a).to_f64()
            })
            .sum::<f64>()
            * w;
        let k = kernel_laguerre(p(y, t as f64), p(x, t as f64), n).unwrap();
        assert!(rel(k, sum) < 1e-13);
    }

    #[test]
    fn christoffel_darboux_matches_sum() {
        assert!(
            rel(
                kernel_laguerre_cd(1.0, 1.0, 1, 2).unwrap(),
                kernel_laguerre(p(1.0, 1.0), p(1.0, 1.0), 2).unwrap()
            ) < 1e-10
        );
        // At (5, 2) with N = 3, t = 2 the sum is exactly 1 − 1/2 − 1/2 = 0.
        assert_eq!(kernel_laguerre(p(5.0, 2.0), p(2.0, 2.0), 3).unwrap(), 0.0);
        assert!(kernel_laguerre_cd(5.0, 2.0, 2, 3).unwrap().abs() < 1e-15);
        let w = weight_gamma(WeightParams::new(2.0, 1.0).unwrap(), 1.3).to_f64();
        assert!(rel(kernel_laguerre_cd(1.3, 1.3, 3, 1).unwrap(), w) < 1e-14);
        for n in 1..=6usize {
            for t in 1..=4usize {
                for &(y, x) in &[(0.5, 0.5), (3.0, 7.5), (10.0, 9.999), (20.0, 1.0)] {
                    let cd = kernel_laguerre_cd(y, x, t, n).unwrap();
                    let sum = kernel_laguerre(p(y, t as f64), p(x, t as f64), n).unwrap();
                    // |K(y,x)| ≤ √(K(y,y)K(x,x)) sets the scale where the sum cancels to ~0.
                    let diag = |z: f64| kernel_laguerre(p(z, t as f64), p(z, t as f64), n).unwrap();
                    let floor = 1e-13 * (diag(y) * diag(x)).sqrt();
                    assert!(
                        (cd - sum).abs() <= (1e-9 * sum.abs()).max(floor),
                        "N={n} t={t} ({y},{x}): {cd} vs {sum}"
                    );
                }
            }
        }
    }

    #[test]
    fn projection_trace_and_reproducing_property() {
        let rule = gauss_legendre(256, (0.0, 120.0)).unwrap();
        for n in [2usize, 3] {
            for t in [1.0, 2.0] {
                let k = |a: f64, b: f64| kernel_laguerre(p(a, t), p(b, t), n).unwrap();
                let tr = rule.integrate(|z| k(z, z));
                assert!((tr - n as f64).abs() < 1e-8, "N={n} t={t}: trace {tr}");
                for &a in &[0.5, 2.0, 6.0] {
                    for &b in &[1.0, 3.0, 8.0] {
                        let conv = rule.integrate(|z| k(a, z) * k(z, b));
                        assert!((conv - k(a, b)).abs() < 1e-7, "N={n} t={t} ({a},{b})");
                    }
                }
            }
        }
    }

    #[test]
    fn large_indices_stay_finite() {
        // a = N(t − 1) ≈ 2·10⁴: individual factors overflow f64, the kernel does not.
        let (n, t) = (2usize, 10_001.0);
        let centre = n as f64 * t;
        let k = kernel_laguerre(p(centre, t), p(centre, t), n).unwrap();
        assert!(k.is_finite() && k > 0.0);
        let cd = kernel_laguerre_cd(centre, centre, t as usize, n).unwrap();
        assert!(rel(cd, k) < 1e-9);
    }
}
