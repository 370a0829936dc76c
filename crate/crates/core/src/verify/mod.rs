//! Numerical verification harness: quadrature and Monte Carlo oracles for the
//! identities satisfied by the process, its densities and its kernels.
//!
//! Every check returns a [`VerificationReport`]. Monte Carlo checks derive one
//! random stream per fixed-size chunk of samples, so reports are identical for
//! any worker count.

mod biortho;
mod convolution;
mod correlations;
mod determinant;
mod kernel_checks;
mod lemmas;
mod moments;
mod report;
mod scaling;
mod suite;
mod sum;

pub use crate::quadrature::{gauss_nodes, QuadratureKind, QuadratureRule};
pub use biortho::{
    check_biorthogonality, transform_p_closed, transform_p_integral, transform_q_closed,
    transform_q_integral,
};
pub use convolution::{check_convolution, ConvolutionGrid};
pub use correlations::{
    check_cross_time_intensity, check_one_point_intensity, check_pair_intensity,
    estimate_correlations_mc, Rectangle,
};
pub use determinant::{
    check_moment_determinant, moment_determinant_closed, moment_determinant_exact,
};
pub use kernel_checks::{
    check_christoffel_darboux, check_equal_time_reductions, check_mehler, check_projection_trace,
    check_universality,
};
pub use lemmas::{check_lemma_limits, lemma_errors, LemmaKind};
pub use moments::{check_moments, moment_closed_form, MomentMethod};
pub use report::VerificationReport;
pub use scaling::{check_scaling_limit, scaling_errors, ScalingPoint, ScanRow};
pub use suite::{run_suite, Suite, SuiteConfig};
pub use sum::check_sum_property;

/// Test points of the default scaling scan, covering `s = t`, `s < t` and
/// `s > t`.
pub fn default_scaling_points() -> Vec<ScalingPoint> {
    scaling::default_points()
}

use crate::error::Result;
use crate::polybasis::{weight_gamma, WeightParams};
use crate::process::par_map_indexed;
use crate::quadrature::gauss_legendre;
use crate::rng::RngStream;
use serde::{Deserialize, Serialize};

/// Seed and parallelism for Monte Carlo checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub seed: u64,
    /// `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl McConfig {
    pub fn new(seed: u64, workers: Option<usize>) -> Self {
        McConfig { seed, workers }
    }
}

/// Samples per random stream; fixed so that chunking never depends on the
/// worker count.
pub(crate) const CHUNK: usize = 2000;

/// FNV-1a hash of a label, used as the stream tag of a check.
pub(crate) fn tag(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Run `f(stream, first_index, count)` over `total` samples split into
/// chunks of [`CHUNK`], returning the per-chunk results in chunk order.
pub(crate) fn mc_chunks<T, F>(total: usize, mc: &McConfig, label: &str, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut RngStream, usize, usize) -> Result<T> + Sync + Send,
{
    let chunks = total.div_ceil(CHUNK);
    let t = tag(label);
    par_map_indexed(chunks, mc.workers, |c| {
        let start = c * CHUNK;
        let count = CHUNK.min(total - start);
        let mut rng = RngStream::derive(mc.seed, t, c as u64);
        f(&mut rng, start, count)
    })?
    .into_iter()
    .collect()
}

/// Nodes `(x, weight · density)` integrating against the Gamma(shape, 1)
/// law, via `x = v²` on `[0, √hi]` with `hi` far in the tail for integrands
/// of polynomial degree up to `degree`.
pub(crate) fn gamma_rule(shape: f64, degree: usize, nodes: usize) -> Result<Vec<(f64, f64)>> {
    let m = shape + degree as f64;
    let hi = m + 45.0 * m.sqrt() + 45.0;
    let rule = gauss_legendre(nodes, (0.0, hi.sqrt()))?;
    let p = WeightParams::new(shape - 1.0, 1.0)?;
    Ok(rule
        .nodes()
        .iter()
        .map(|&(v, w)| {
            let x = v * v;
            (x, w * 2.0 * v * weight_gamma(p, x).to_f64())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_rule_reproduces_moments() {
        for &(shape, k) in &[(1.0, 6usize), (3.0, 8), (13.0, 12)] {
            let r = gamma_rule(shape, k, 160).unwrap();
            let m: f64 = r.iter().map(|&(x, w)| w * x.powi(k as i32)).sum();
            let want = (crate::special::ln_gamma(shape + k as f64)
                - crate::special::ln_gamma(shape))
            .exp();
            assert!(
                (m / want - 1.0).abs() < 1e-12,
                "shape {shape} k {k}: {m} vs {want}"
            );
        }
    }

    #[test]
    fn chunking_is_worker_independent() {
        let run = |w| {
            mc_chunks(
                5 * CHUNK + 17,
                &McConfig::new(9, Some(w)),
                "t",
                |rng, _, n| Ok((0..n).map(|_| rng.uniform()).sum::<f64>()),
            )
            .unwrap()
        };
        assert_eq!(run(1), run(4));
        assert_eq!(run(1).len(), 6);
        assert_ne!(tag("a"), tag("b"));
    }
}
