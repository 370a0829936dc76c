use super::{CMatrix, HermitianMatrix};
use crate::error::{LupError, Result};
use crate::rng::RngStream;

/// `rows × cols` matrix of i.i.d. centred complex Gaussians with
/// `E|g|² = variance` (real and imaginary parts each `variance/2`).
pub fn sample_ginibre(
    rows: usize,
    cols: usize,
    variance: f64,
    rng: &mut RngStream,
) -> Result<CMatrix> {
    if !(variance > 0.0 && variance.is_finite()) {
        return Err(LupError::invalid(
            "variance",
            format!("must be positive, got {variance}"),
        ));
    }
    Ok(CMatrix::from_fn(rows, cols, |_, _| {
        rng.complex_normal(variance)
    }))
}

/// LUE matrix `G·G*` with `G` of size `N × (N + a)` and entry variance `1/b`.
///
/// Only integer `a ≥ 0` is supported by this construction.
pub fn sample_lue(n: usize, a: f64, b: f64, rng: &mut RngStream) -> Result<HermitianMatrix> {
    if n == 0 {
        return Err(LupError::invalid("N", "dimension must be positive"));
    }
    if !(a >= 0.0 && a.fract() == 0.0 && a < 1e6) {
        return Err(LupError::invalid(
            "a",
            format!("sampler needs a nonnegative integer, got {a}"),
        ));
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(LupError::invalid("b", format!("must be positive, got {b}")));
    }
    let g = sample_ginibre(n, n + a as usize, 1.0 / b, rng)?;
    Ok(g.gram())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixcore::{eigen_decomposition, eigenvalues_hermitian, DEFAULT_TOL};
    use crate::stats::{
        ks_critical_one, ks_critical_two, ks_one_sample, ks_two_sample, mean_se, ALPHA,
    };
    use statrs::distribution::{ContinuousCDF, Gamma};

    #[test]
    fn ginibre_moments() {
        let mut rng = RngStream::new(21, 0);
        let g = sample_ginibre(100, 1000, 1.0, &mut rng).unwrap();
        let n = g.as_slice().len() as f64;
        let re: Vec<f64> = g.as_slice().iter().map(|z| z.re).collect();
        let im: Vec<f64> = g.as_slice().iter().map(|z| z.im).collect();
        let abs2: Vec<f64> = g.as_slice().iter().map(|z| z.norm_sqr()).collect();
        let sq_re: Vec<f64> = g.as_slice().iter().map(|z| (z * z).re).collect();
        let sq_im: Vec<f64> = g.as_slice().iter().map(|z| (z * z).im).collect();
        for v in [&re, &im, &sq_re, &sq_im] {
            let (m, se) = mean_se(v);
            assert!(m.abs() < 4.0 * se, "{m} ± {se}");
        }
        let (m, se) = mean_se(&abs2);
        assert!((m - 1.0).abs() < 4.0 * se);
        assert!(n == 1e5);
    }

    #[test]
    fn rejects_non_integer_index() {
        let mut rng = RngStream::new(0, 0);
        assert!(sample_lue(2, 0.5, 1.0, &mut rng).is_err());
        assert!(sample_lue(2, -1.0, 1.0, &mut rng).is_err());
        assert!(sample_lue(2, 1.0, 0.0, &mut rng).is_err());
        assert!(sample_ginibre(2, 2, 0.0, &mut rng).is_err());
    }

    #[test]
    fn scalar_lue_is_exponential() {
        let n = 100_000;
        let xs: Vec<f64> = (0..n)
            .map(|i| {
                let mut rng = RngStream::new(5, i);
                sample_lue(1, 0.0, 1.0, &mut rng).unwrap().trace()
            })
            .collect();
        let d = ks_one_sample(&xs, |x| 1.0 - (-x).exp());
        assert!(d < 0.006, "KS distance {d}");
    }

    #[test]
    fn two_by_two_trace_mean() {
        let n = 100_000;
        let mut rng = RngStream::new(6, 0);
        let tr: Vec<f64> = (0..n)
            .map(|_| sample_lue(2, 0.0, 1.0, &mut rng).unwrap().trace())
            .collect();
        let (m, se) = mean_se(&tr);
        assert!((m - 4.0).abs() < 4.0 * se, "{m} ± {se}");
    }

    #[test]
    fn determinant_mean() {
        // E det(GG*) = b^{−N} ∏_{j<N} (N + a − j) = 5·4·3/8 for N=3, a=2, b=2.
        let n = 100_000;
        let mut rng = RngStream::new(7, 0);
        let dets: Vec<f64> = (0..n)
            .map(|_| {
                let h = sample_lue(3, 2.0, 2.0, &mut rng).unwrap();
                eigenvalues_hermitian(&h, DEFAULT_TOL)
                    .unwrap()
                    .iter()
                    .product()
            })
            .collect();
        let (m, se) = mean_se(&dets);
        assert!((m - 7.5).abs() < 4.0 * se, "{m} ± {se}");
    }

    #[test]
    fn trace_law_is_gamma() {
        for &(n, a, b) in &[(2usize, 0.0, 1.0), (3, 1.0, 2.0)] {
            let draws = 100_000;
            let mut rng = RngStream::new(8, n as u64);
            let tr: Vec<f64> = (0..draws)
                .map(|_| sample_lue(n, a, b, &mut rng).unwrap().trace())
                .collect();
            let law = Gamma::new(n as f64 * (n as f64 + a), b).unwrap();
            let d = ks_one_sample(&tr, |x| law.cdf(x));
            assert!(d < ks_critical_one(draws, ALPHA), "N={n}: {d}");
        }
    }

    #[test]
    fn positive_definite_draws() {
        let mut rng = RngStream::new(9, 0);
        for i in 0..10_000 {
            let n = 1 + i % 8;
            let h = sample_lue(n, (i % 3) as f64, 1.0, &mut rng).unwrap();
            let e = eigenvalues_hermitian(&h, DEFAULT_TOL).unwrap();
            assert!(e[0] > 0.0, "draw {i}: λ_min = {}", e[0]);
        }
    }

    #[test]
    fn unitary_invariance() {
        let n = 3;
        let mut rng = RngStream::new(10, 0);
        let seed = sample_ginibre(n, n, 1.0, &mut rng).unwrap();
        let herm = HermitianMatrix::new(CMatrix::from_fn(n, n, |i, j| {
            0.5 * (seed[(i, j)] + seed[(j, i)].conj())
        }))
        .unwrap();
        let u = eigen_decomposition(&herm, DEFAULT_TOL).unwrap().vectors;
        let draws = 10_000;
        let mut orig = Vec::with_capacity(draws);
        let mut rot = Vec::with_capacity(draws);
        for _ in 0..draws {
            let l = sample_lue(n, 1.0, 1.0, &mut rng).unwrap();
            let c = l.conjugate_by(&u).unwrap();
            let e1 = eigenvalues_hermitian(&l, DEFAULT_TOL).unwrap();
            let e2 = eigenvalues_hermitian(&c, DEFAULT_TOL).unwrap();
            for (a, b) in e1.iter().zip(&e2) {
                assert!((a - b).abs() < 1e-10 * (1.0 + a.abs()));
            }
            orig.push(l.get(0, 0).re);
            rot.push(c.get(0, 0).re);
        }
        // Same draws on both sides, so use an independent half for each.
        let half = draws / 2;
        let d = ks_two_sample(&orig[..half], &rot[half..]);
        assert!(d < ks_critical_two(half, draws - half, ALPHA), "{d}");
    }
}
