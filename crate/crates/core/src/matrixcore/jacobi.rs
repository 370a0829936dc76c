//! Cyclic complex Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `h_pq` and then applies
//! the classical real rotation; together the 2×2 unitary
//! `J = [[c, s], [−s·e^{−iφ}, c·e^{−iφ}]]` zeroes `h_pq` exactly.

use super::{CMatrix, HermitianMatrix};
use crate::error::{LupError, Result};
use num_complex::Complex64;

/// Convergence target: off-diagonal Frobenius norm relative to `‖H‖_F`.
pub const DEFAULT_TOL: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 60;

/// Eigenvalues (ascending) and the matching unit eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
    pub sweeps: usize,
}

impl EigenDecomposition {
    /// `‖H − VΛV*‖_F`.
    pub fn residual(&self, h: &HermitianMatrix) -> f64 {
        let n = h.dim();
        let mut r = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    s += self.vectors[(i, k)] * self.values[k] * self.vectors[(j, k)].conj();
                }
                r += (h.get(i, j) - s).norm_sqr();
            }
        }
        r.sqrt()
    }
}

fn off_norm(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(h: &HermitianMatrix, tol: f64, want_vectors: bool) -> Result<EigenDecomposition> {
    if !(tol > 0.0) {
        return Err(LupError::invalid(
            "tol",
            format!("must be positive, got {tol}"),
        ));
    }
    let n = h.dim();
    let mut a = h.as_matrix().clone();
    let mut v = if want_vectors {
        CMatrix::identity(n)
    } else {
        CMatrix::zeros(0, 0)
    };
    let target = tol * h.frobenius();
    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(LupError::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let phase = apq / g; // e^{iφ}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let ep = phase.conj(); // e^{−iφ}
                let (jpp, jpq, jqp, jqq) = (
                    Complex64::new(c, 0.0),
                    Complex64::new(s, 0.0),
                    -s * ep,
                    c * ep,
                );
                // A ← A·J
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * jpp + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * jqq;
                }
                // A ← J*·A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(app - t * g, 0.0);
                a[(q, q)] = Complex64::new(aqq + t * g, 0.0);
                if want_vectors {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * jpp + vkq * jqp;
                        v[(k, q)] = vkp * jpq + vkq * jqq;
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = if want_vectors {
        CMatrix::from_fn(n, n, |i, j| v[(i, order[j])])
    } else {
        v
    };
    Ok(EigenDecomposition {
        values,
        vectors,
        sweeps,
    })
}

/// All eigenvalues in ascending order.
///
/// Iterates until the off-diagonal Frobenius norm is at most `tol·‖H‖_F`;
/// fails after [`MAX_SWEEPS`] sweeps.
pub fn eigenvalues_hermitian(h: &HermitianMatrix, tol: f64) -> Result<Vec<f64>> {
    if h.dim() == 1 {
        return Ok(vec![h.get(0, 0).re]);
    }
    if h.dim() == 2 {
        // Closed form; identical to what one rotation produces, but cheaper.
        let (a, d) = (h.get(0, 0).re, h.get(1, 1).re);
        let b = h.get(0, 1).norm();
        let m = 0.5 * (a + d);
        let r = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        // Take the larger-magnitude root directly and recover the other from
        // the determinant, keeping relative accuracy for nearly singular input.
        let big = if m >= 0.0 { m + r } else { m - r };
        let small = if big != 0.0 {
            (a * d - b * b) / big
        } else {
            0.0
        };
        return Ok(vec![small.min(big), small.max(big)]);
    }
    Ok(jacobi(h, tol, false)?.values)
}

/// Eigenvalues and eigenvectors.
pub fn eigen_decomposition(h: &HermitianMatrix, tol: f64) -> Result<EigenDecomposition> {
    jacobi(h, tol, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixcore::sample_ginibre;
    use crate::rng::RngStream;

    fn random_hermitian(n: usize, seed: u64) -> HermitianMatrix {
        let mut rng = RngStream::new(seed, 0);
        let g = sample_ginibre(n, n, 1.0, &mut rng).unwrap();
        let m = CMatrix::from_fn(n, n, |i, j| 0.5 * (g[(i, j)] + g[(j, i)].conj()));
        HermitianMatrix::new(m).unwrap()
    }

    #[test]
    fn diagonal_and_two_by_two() {
        let d = HermitianMatrix::diagonal(&[3.0, 1.0, 2.0]);
        assert_eq!(
            eigenvalues_hermitian(&d, DEFAULT_TOL).unwrap(),
            vec![1.0, 2.0, 3.0]
        );
        let h = HermitianMatrix::from_real_symmetric(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let e = eigenvalues_hermitian(&h, DEFAULT_TOL).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-15 && (e[1] - 3.0).abs() < 1e-15);
        let e = eigen_decomposition(&h, DEFAULT_TOL).unwrap().values;
        assert!((e[0] - 1.0).abs() < 1e-14 && (e[1] - 3.0).abs() < 1e-14);
    }

    /// Characteristic polynomial by Faddeev–LeVerrier, coefficients of
    /// `det(λI − H) = Σ c_k λ^k`.
    fn char_poly(h: &HermitianMatrix) -> Vec<f64> {
        let n = h.dim();
        let a = h.as_matrix();
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0;
        let mut m = CMatrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A·M_{k−1} + c_{n−k+1} I
            let mut next = a.matmul(&m).unwrap();
            for i in 0..n {
                next[(i, i)] += c[n - k + 1];
            }
            m = next;
            let am = a.matmul(&m).unwrap();
            let tr: f64 = (0..n).map(|i| am[(i, i)].re).sum();
            c[n - k] = -tr / k as f64;
        }
        c
    }

    fn horner(c: &[f64], x: f64) -> f64 {
        c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck)
    }

    #[test]
    fn six_by_six_matches_characteristic_polynomial_roots() {
        for seed in 0..5 {
            let h = random_hermitian(6, 100 + seed);
            let c = char_poly(&h);
            let bound = h.frobenius() + 1.0;
            let steps = 20_000;
            let mut roots = Vec::new();
            let mut x0 = -bound;
            let mut f0 = horner(&c, x0);
            for i in 1..=steps {
                let x1 = -bound + 2.0 * bound * i as f64 / steps as f64;
                let f1 = horner(&c, x1);
                if f0 == 0.0 || f0.signum() != f1.signum() {
                    let (mut lo, mut hi) = (x0, x1);
                    for _ in 0..200 {
                        let mid = 0.5 * (lo + hi);
                        if horner(&c, lo).signum() == horner(&c, mid).signum() {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    roots.push(0.5 * (lo + hi));
                }
                x0 = x1;
                f0 = f1;
            }
            assert_eq!(
                roots.len(),
                6,
                "seed {seed}: spectrum not separated on the grid"
            );
            let e = eigenvalues_hermitian(&h, DEFAULT_TOL).unwrap();
            for (r, v) in roots.iter().zip(&e) {
                assert!((r - v).abs() < 1e-10, "seed {seed}: {r} vs {v}");
            }
        }
    }

    #[test]
    fn reconstruction_residual() {
        for n in [3usize, 8, 20, 64] {
            let h = random_hermitian(n, n as u64);
            let d = eigen_decomposition(&h, DEFAULT_TOL).unwrap();
            assert!(
                d.residual(&h) <= 1e-12 * h.frobenius(),
                "n={n}: {}",
                d.residual(&h)
            );
            let fast = eigenvalues_hermitian(&h, DEFAULT_TOL).unwrap();
            for (a, b) in fast.iter().zip(&d.values) {
                assert!((a - b).abs() < 1e-12 * h.frobenius());
            }
            assert!(d.sweeps <= MAX_SWEEPS);
        }
    }

    #[test]
    fn trace_equals_eigenvalue_sum() {
        let h = random_hermitian(10, 77);
        let e = eigenvalues_hermitian(&h, DEFAULT_TOL).unwrap();
        assert!((e.iter().sum::<f64>() - h.trace()).abs() < 1e-12 * h.frobenius());
    }

    #[test]
    fn rejects_bad_tolerance() {
        let h = random_hermitian(3, 1);
        assert!(eigenvalues_hermitian(&h, 0.0).is_err());
    }
}
