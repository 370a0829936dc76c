//! Extended correlation kernels and correlation determinants.

mod airy;
mod hermite;
mod laguerre;
mod sine;

pub use airy::{
    airy_ai, airy_ai_pair, airy_ai_prime, airy_kernel_equal_time, kernel_airy, AIRY_RANGE,
};
pub use hermite::{
    heat_kernel, hermite_mehler_parts, kernel_hermite, MehlerParts, MEHLER_TERM_CAP,
};
pub use laguerre::{kernel_laguerre, kernel_laguerre_cd};
pub use sine::kernel_sine;

use crate::error::{LupError, Result};
use crate::linalg::det;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// A position together with a time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimePoint {
    pub x: f64,
    pub t: f64,
}

impl SpaceTimePoint {
    pub fn new(x: f64, t: f64) -> Self {
        SpaceTimePoint { x, t }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelFamily {
    LaguerreExtended,
    HermiteExtended,
    SineExtended,
    AiryExtended,
}

impl std::str::FromStr for KernelFamily {
    type Err = LupError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laguerre" | "laguerre_extended" => Ok(KernelFamily::LaguerreExtended),
            "hermite" | "hermite_extended" => Ok(KernelFamily::HermiteExtended),
            "sine" | "sine_extended" => Ok(KernelFamily::SineExtended),
            "airy" | "airy_extended" => Ok(KernelFamily::AiryExtended),
            other => Err(LupError::invalid(
                "family",
                format!("unknown kernel family `{other}`"),
            )),
        }
    }
}

/// Which kernel to evaluate, for how many particles, and how accurately.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub family: KernelFamily,
    pub n: usize,
    pub tolerance: f64,
}

impl KernelSpec {
    pub const DEFAULT_TOLERANCE: f64 = 1e-10;

    pub fn new(family: KernelFamily, n: usize, tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0 && tolerance <= 1e-3) {
            return Err(LupError::invalid(
                "tolerance",
                format!("must lie in (0, 1e-3], got {tolerance}"),
            ));
        }
        if n == 0
            && matches!(
                family,
                KernelFamily::LaguerreExtended | KernelFamily::HermiteExtended
            )
        {
            return Err(LupError::invalid("N", "must be a positive integer"));
        }
        Ok(KernelSpec {
            family,
            n,
            tolerance,
        })
    }

    /// `K(y | x)` for this family.
    pub fn evaluate(&self, y: SpaceTimePoint, x: SpaceTimePoint) -> Result<f64> {
        match self.family {
            KernelFamily::LaguerreExtended => kernel_laguerre(y, x, self.n),
            KernelFamily::HermiteExtended => kernel_hermite(y, x, self.n, self.tolerance),
            KernelFamily::SineExtended => kernel_sine(y, x, self.tolerance),
            KernelFamily::AiryExtended => kernel_airy(y, x, self.tolerance),
        }
    }
}

/// Largest number of points accepted by [`correlation_det`].
pub const MAX_CORRELATION_POINTS: usize = 8;

/// `det[K(pᵢ | pⱼ)]`; entries are computed in parallel and assembled in
/// index order.
pub fn correlation_det(points: &[SpaceTimePoint], spec: &KernelSpec) -> Result<f64> {
    let k = points.len();
    if k == 0 || k > MAX_CORRELATION_POINTS {
        return Err(LupError::invalid(
            "points",
            format!("need 1..={MAX_CORRELATION_POINTS} points, got {k}"),
        ));
    }
    let entries = (0..k * k)
        .into_par_iter()
        .map(|ij| spec.evaluate(points[ij / k], points[ij % k]))
        .collect::<Result<Vec<f64>>>()?;
    Ok(det(entries, k))
}
