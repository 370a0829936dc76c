use super::VerificationReport;
use crate::error::{LupError, Result};
use crate::polybasis::kappa;
use crate::quadrature::gauss_legendre;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Separations `d = y − x` at which the semigroup identity is checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvolutionGrid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Default for ConvolutionGrid {
    fn default() -> Self {
        ConvolutionGrid {
            lo: 0.1,
            hi: 30.0,
            points: 300,
        }
    }
}

impl ConvolutionGrid {
    fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.lo];
        }
        (0..self.points)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.points - 1) as f64)
            .collect()
    }
}

/// Semigroup of the transition factor:
/// `∫ κ_{t−u}(y−z) κ_{u−s}(z−x) dz = κ_{t−s}(y−x)`, sup-norm over the grid
/// and every `(t, u, s)` triple. With `w = z − x` the integrand on `[0, d]`
/// is a polynomial times `e^{−d}`, so Gauss–Legendre with enough nodes is
/// exact up to rounding.
pub fn check_convolution(
    n: usize,
    triples: &[(usize, usize, usize)],
    grid: &ConvolutionGrid,
) -> Result<VerificationReport> {
    if n == 0 {
        return Err(LupError::invalid("N", "must be a positive integer"));
    }
    if grid.points == 0 || !(grid.lo > 0.0 && grid.hi >= grid.lo) {
        return Err(LupError::invalid(
            "grid",
            "need 0 < lo ≤ hi and at least one point",
        ));
    }
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut effort = 0;
    for &(t, u, s) in triples {
        if !(t > u && u > s) {
            return Err(LupError::invalid(
                "(t, u, s)",
                format!("need t > u > s, got ({t}, {u}, {s})"),
            ));
        }
        let degree = n * (t - s);
        let rule = gauss_legendre(degree / 2 + 16, (0.0, 1.0))?;
        for d in grid.values() {
            let mut acc = 0.0;
            for &(v, w) in rule.nodes() {
                let x = v * d;
                acc += w
                    * d
                    * (kappa((t - u) as f64, n, d - x)? * kappa((u - s) as f64, n, x)?).to_f64();
            }
            let want = kappa((t - s) as f64, n, d)?.to_f64();
            worst = worst.max((acc - want).abs());
            effort += rule.len();
        }
    }
    Ok(VerificationReport::new("kappa_convolution", worst, 1e-9)
        .param("N", n)
        .param("triples", serde_json::to_value(triples).unwrap_or_default())
        .param("grid", serde_json::to_value(grid).unwrap_or_default())
        .effort(effort)
        .timed(start))
}
