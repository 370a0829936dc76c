//! Gauss–Legendre rules and adaptive Gauss–Kronrod integration.

use crate::error::{LupError, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub const MAX_NODES: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureKind {
    GaussLegendre,
    GaussKronrod,
}

/// A fixed rule on a finite interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    kind: QuadratureKind,
    nodes: Vec<(f64, f64)>,
    interval: (f64, f64),
}

impl QuadratureRule {
    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    /// `(abscissa, weight)` pairs, already mapped to the interval.
    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().map(|&(x, w)| w * f(x)).sum()
    }

    /// Same rule on another interval.
    pub fn remap(&self, interval: (f64, f64)) -> QuadratureRule {
        let (a, b) = self.interval;
        let (c, d) = interval;
        let scale = (d - c) / (b - a);
        QuadratureRule {
            kind: self.kind,
            nodes: self
                .nodes
                .iter()
                .map(|&(x, w)| (c + (x - a) * scale, w * scale))
                .collect(),
            interval,
        }
    }
}

/// Reference Gauss–Legendre nodes on [−1, 1], by Newton iteration on the
/// Legendre three-term recurrence.
fn legendre_reference(n: usize) -> Arc<Vec<(f64, f64)>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<(f64, f64)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("quadrature cache poisoned").get(&n) {
        return Arc::clone(hit);
    }
    let nf = n as f64;
    let mut nodes = vec![(0.0, 0.0); n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = (-x, w);
        nodes[n - 1 - i] = (x, w);
    }
    if n % 2 == 1 {
        nodes[n / 2].0 = 0.0;
    }
    let arc = Arc::new(nodes);
    cache
        .lock()
        .expect("quadrature cache poisoned")
        .insert(n, Arc::clone(&arc));
    arc
}

pub fn gauss_legendre(n: usize, interval: (f64, f64)) -> Result<QuadratureRule> {
    gauss_nodes(QuadratureKind::GaussLegendre, n, interval)
}

/// Nodes and weights for the requested rule.
///
/// For `GaussKronrod`, `n` is the embedded Gauss order; only the 7/15 pair is
/// tabulated.
pub fn gauss_nodes(kind: QuadratureKind, n: usize, interval: (f64, f64)) -> Result<QuadratureRule> {
    if n == 0 || n > MAX_NODES {
        return Err(LupError::invalid(
            "n",
            format!("node count must be in 1..={MAX_NODES}, got {n}"),
        ));
    }
    let (a, b) = interval;
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(LupError::invalid(
            "interval",
            format!("need finite lo < hi, got ({a}, {b})"),
        ));
    }
    let reference: Vec<(f64, f64)> = match kind {
        QuadratureKind::GaussLegendre => legendre_reference(n).as_ref().clone(),
        QuadratureKind::GaussKronrod => {
            if n != 7 {
                return Err(LupError::invalid(
                    "n",
                    "Gauss-Kronrod is available for n = 7 (15 nodes) only",
                ));
            }
            let mut v = Vec::with_capacity(15);
            for i in 0..7 {
                v.push((-XGK[i], WGK[i]));
            }
            v.push((0.0, WGK[7]));
            for i in (0..7).rev() {
                v.push((XGK[i], WGK[i]));
            }
            v
        }
    };
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    Ok(QuadratureRule {
        kind,
        nodes: reference
            .into_iter()
            .map(|(x, w)| (mid + half * x, half * w))
            .collect(),
        interval,
    })
}

// Kronrod abscissae (positive, descending) and weights for the 7/15 pair.
const XGK: [f64; 7] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the embedded 7-point rule at XGK[1], XGK[3], XGK[5] and 0.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One G7/K15 panel: `(kronrod, |kronrod − gauss|)`.
fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f(mid);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let s = f(mid - dx) + f(mid + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * half, ((k - g) * half).abs())
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Globally adaptive G7/K15 bisection on `[a, b]` until the summed error
/// estimate is below `max(abs_tol, rel_tol·|value|)`.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Integral> {
    const MAX_PANELS: usize = 4000;
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let mut panels: Vec<(f64, f64, f64, f64)> = Vec::new();
    let (v, e) = gk15(&mut f, a, b);
    panels.push((a, b, v, e));
    let mut evaluations = 15;
    loop {
        let value: f64 = panels.iter().map(|p| p.2).sum();
        let error: f64 = panels.iter().map(|p| p.3).sum();
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(Integral {
                value,
                error,
                evaluations,
            });
        }
        if panels.len() >= MAX_PANELS {
            return Err(LupError::ToleranceNotMet {
                tol: abs_tol.max(rel_tol * value.abs()),
                detail: format!("adaptive quadrature on [{a}, {b}] stalled at error {error:e}"),
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("non-empty panel list");
        let (lo, hi, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        evaluations += 30;
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
}

/// Composite Gauss–Legendre over consecutive panels split at `breaks`.
pub fn integrate_panels<F: FnMut(f64) -> f64>(
    mut f: F,
    breaks: &[f64],
    nodes_per_panel: usize,
) -> Result<f64> {
    let rule = gauss_legendre(nodes_per_panel, (-1.0, 1.0))?;
    let mut total = 0.0;
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi <= lo {
            continue;
        }
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        total += half
            * rule
                .nodes()
                .iter()
                .map(|&(x, wt)| wt * f(mid + half * x))
                .sum::<f64>();
    }
    Ok(total)
}
