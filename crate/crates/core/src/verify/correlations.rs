use super::{mc_chunks, McConfig, VerificationReport};
use crate::error::{LupError, Result};
use crate::kernels::{kernel_laguerre, SpaceTimePoint};
use crate::process::simulate_lup;
use crate::quadrature::gauss_legendre;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Below this many trajectories a report carries an "insufficient samples"
/// note.
pub const MIN_TRAJECTORIES: usize = 10_000;
const Z_TOL: f64 = 4.0;
const MAX_N: usize = 4;

/// Axis-aligned rectangle `A × B`: `a` for the later time, `b` for the
/// earlier one (or the first and second particle at equal times).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub a: (f64, f64),
    pub b: (f64, f64),
}

fn point(x: f64, t: usize) -> SpaceTimePoint {
    SpaceTimePoint::new(x, t as f64)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(LupError::invalid(
            "N",
            format!("Monte Carlo correlation checks support 1 ≤ N ≤ {MAX_N}"),
        ));
    }
    Ok(())
}

/// Per-bin means and standard errors of per-trajectory counts.
struct CountStats {
    mean: Vec<f64>,
    se: Vec<f64>,
}

/// Simulate `n_traj` trajectories recorded at `times` and accumulate, for
/// every bin, the sum and sum of squares of `count(eigenvalues, bin)`.
fn simulate_counts<F>(
    n: usize,
    times: &[usize],
    n_traj: usize,
    bins: usize,
    mc: &McConfig,
    label: &str,
    count: F,
) -> Result<CountStats>
where
    F: Fn(&[Vec<f64>], &mut [f64]) + Sync + Send,
{
    let t_max = *times.last().unwrap();
    let chunks = mc_chunks(n_traj, mc, label, |rng, _, m| {
        let mut s1 = vec![0.0; bins];
        let mut s2 = vec![0.0; bins];
        let mut c = vec![0.0; bins];
        for _ in 0..m {
            let traj = simulate_lup(n, t_max, times, rng)?;
            c.iter_mut().for_each(|v| *v = 0.0);
            count(traj.eigenvalues(), &mut c);
            for b in 0..bins {
                s1[b] += c[b];
                s2[b] += c[b] * c[b];
            }
        }
        Ok((s1, s2))
    })?;
    let mut s1 = vec![0.0; bins];
    let mut s2 = vec![0.0; bins];
    for (a, b) in chunks {
        for i in 0..bins {
            s1[i] += a[i];
            s2[i] += b[i];
        }
    }
    let nt = n_traj as f64;
    let mean: Vec<f64> = s1.iter().map(|v| v / nt).collect();
    let se = (0..bins)
        .map(|i| {
            let var = ((s2[i] / nt - mean[i] * mean[i]) * nt / (nt - 1.0)).max(0.0);
            (var / nt).sqrt()
        })
        .collect();
    Ok(CountStats { mean, se })
}

fn z_scores(stats: &CountStats, expected: &[f64], n_traj: usize) -> Vec<f64> {
    expected
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            // A bin that was never hit still has a resolution of one count.
            let se = stats.se[i].max(1.0 / n_traj as f64);
            (stats.mean[i] - e) / se
        })
        .collect()
}

fn finish(mut r: VerificationReport, z: &[f64], n_traj: usize) -> VerificationReport {
    let worst = z.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    r.observed_error = worst;
    r = r.with_tolerance(Z_TOL).effort(n_traj).note(format!(
        "{} cells; per-cell z-score limit {Z_TOL}, no multiplicity correction",
        z.len()
    ));
    if n_traj < MIN_TRAJECTORIES {
        r = r.note(format!(
            "insufficient samples: {n_traj} < {MIN_TRAJECTORIES} trajectories"
        ));
    }
    r
}

/// `∫_lo^hi f` by Gauss–Legendre on `panels` equal sub-intervals.
fn integrate(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize, nodes: usize) -> Result<f64> {
    let rule = gauss_legendre(nodes, (0.0, 1.0))?;
    let h = (hi - lo) / panels as f64;
    Ok((0..panels)
        .map(|p| {
            let a = lo + p as f64 * h;
            rule.nodes()
                .iter()
                .map(|&(v, w)| w * h * f(a + v * h))
                .sum::<f64>()
        })
        .sum())
}

fn integrate_2d(
    f: impl Fn(f64, f64) -> f64,
    a: (f64, f64),
    b: (f64, f64),
    nodes: usize,
) -> Result<f64> {
    let ra = gauss_legendre(nodes, a)?;
    let rb = gauss_legendre(nodes, b)?;
    Ok(ra
        .nodes()
        .iter()
        .map(|&(y, wy)| wy * rb.nodes().iter().map(|&(x, wx)| wx * f(y, x)).sum::<f64>())
        .sum())
}

/// Bin edges: `bins` equal bins spanning the central 99.5% of the one-point
/// mass `K(x,t|x,t)/N`.
fn one_point_edges(n: usize, t: usize, bins: usize) -> Result<Vec<f64>> {
    let nt = (n * t) as f64;
    let hi = 4.0 * nt + 30.0 * nt.sqrt() + 30.0;
    let cells = 4000;
    let h = hi / cells as f64;
    let rule = gauss_legendre(6, (0.0, 1.0))?;
    let mut cdf = vec![0.0; cells + 1];
    for c in 0..cells {
        let mut acc = 0.0;
        for &(v, w) in rule.nodes() {
            let x = (c as f64 + v) * h;
            acc += w * h * kernel_laguerre(point(x, t), point(x, t), n)?;
        }
        cdf[c + 1] = cdf[c] + acc / n as f64;
    }
    let density =
        |x: f64| -> Result<f64> { Ok(kernel_laguerre(point(x, t), point(x, t), n)? / n as f64) };
    // Linear interpolation inside the cell, then Newton on the exact CDF.
    let quantile = |p: f64| -> Result<f64> {
        let i = cdf.partition_point(|&v| v < p).clamp(1, cells);
        let (c0, c1) = (cdf[i - 1], cdf[i]);
        let left = (i - 1) as f64 * h;
        let frac = if c1 > c0 { (p - c0) / (c1 - c0) } else { 0.0 };
        let mut x = left + frac * h;
        for _ in 0..4 {
            let mut mass = c0;
            for &(v, w) in rule.nodes() {
                mass += w * (x - left) * density(left + v * (x - left))?;
            }
            let f = density(x)?;
            if f <= 0.0 {
                break;
            }
            x = (x - (mass - p) / f).clamp(left, left + h);
        }
        Ok(x)
    };
    let (lo, up) = (quantile(0.0025)?, quantile(0.9975)?);
    Ok((0..=bins)
        .map(|i| lo + (up - lo) * i as f64 / bins as f64)
        .collect())
}

/// One-point intensity at time `t`: per-bin eigenvalue counts against
/// `∫_bin K(x,t|x,t) dx`.
pub fn check_one_point_intensity(
    n: usize,
    t: usize,
    n_traj: usize,
    bins: usize,
    mc: &McConfig,
) -> Result<VerificationReport> {
    check_n(n)?;
    if t == 0 || bins == 0 || n_traj < 2 {
        return Err(LupError::invalid(
            "t, bins, n_traj",
            "need t ≥ 1, bins ≥ 1 and at least two trajectories",
        ));
    }
    let start = Instant::now();
    let edges = one_point_edges(n, t, bins)?;
    let expected = (0..bins)
        .map(|b| {
            integrate(
                |x| kernel_laguerre(point(x, t), point(x, t), n).unwrap_or(f64::NAN),
                edges[b],
                edges[b + 1],
                1,
                16,
            )
        })
        .collect::<Result<Vec<f64>>>()?;
    let stats = simulate_counts(
        n,
        &[t],
        n_traj,
        bins,
        mc,
        &format!("one_point/{n}/{t}"),
        |eigs, c| {
            for &x in &eigs[0] {
                if x >= edges[0] && x < edges[bins] {
                    let b = (edges.partition_point(|&e| e <= x) - 1).min(bins - 1);
                    c[b] += 1.0;
                }
            }
        },
    )?;
    let z = z_scores(&stats, &expected, n_traj);
    let r = VerificationReport::new("one_point_intensity", 0.0, Z_TOL)
        .param("N", n)
        .param("t", t)
        .param("bins", bins)
        .param("range", vec![edges[0], edges[bins]]);
    Ok(finish(r, &z, n_traj).timed(start))
}

fn pair_density(n: usize, t: usize, y: f64, x: f64) -> f64 {
    let k = |a: f64, b: f64| kernel_laguerre(point(a, t), point(b, t), n).unwrap_or(f64::NAN);
    k(y, y) * k(x, x) - k(y, x) * k(x, y)
}

/// Equal-time pair intensity: counts of ordered pairs `i ≠ j` with
/// `λᵢ ∈ A`, `λⱼ ∈ B` on a grid of cells, against the integral of the
/// 2 × 2 kernel determinant. For `N = 2`, `t = 1` the determinant is
/// `(x₁ − x₂)² e^{−x₁−x₂}`, which is integrated instead.
pub fn check_pair_intensity(
    n: usize,
    t: usize,
    edges: &[f64],
    n_traj: usize,
    mc: &McConfig,
) -> Result<VerificationReport> {
    check_n(n)?;
    if n < 2 || t == 0 || edges.len() < 2 || edges.windows(2).any(|w| w[0] >= w[1]) || n_traj < 2 {
        return Err(LupError::invalid(
            "N, t, edges",
            "need N ≥ 2, t ≥ 1, increasing edges and at least two trajectories",
        ));
    }
    let start = Instant::now();
    let g = edges.len() - 1;
    let closed = n == 2 && t == 1;
    let expected = (0..g * g)
        .map(|c| {
            let (i, j) = (c / g, c % g);
            let a = (edges[i], edges[i + 1]);
            let b = (edges[j], edges[j + 1]);
            if closed {
                integrate_2d(|y, x| (y - x).powi(2) * (-(y + x)).exp(), a, b, 16)
            } else {
                integrate_2d(|y, x| pair_density(n, t, y, x), a, b, 16)
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let cell = |x: f64| {
        if x < edges[0] || x >= edges[g] {
            None
        } else {
            Some((edges.partition_point(|&e| e <= x) - 1).min(g - 1))
        }
    };
    let stats = simulate_counts(
        n,
        &[t],
        n_traj,
        g * g,
        mc,
        &format!("pair/{n}/{t}"),
        |eigs, c| {
            let e = &eigs[0];
            for (i, &y) in e.iter().enumerate() {
                for (j, &x) in e.iter().enumerate() {
                    if i != j {
                        if let (Some(a), Some(b)) = (cell(y), cell(x)) {
                            c[a * g + b] += 1.0;
                        }
                    }
                }
            }
        },
    )?;
    let z = z_scores(&stats, &expected, n_traj);
    let r = VerificationReport::new("pair_intensity", 0.0, Z_TOL)
        .param("N", n)
        .param("t", t)
        .param("edges", edges.to_vec())
        .param(
            "oracle",
            if closed {
                "closed_form"
            } else {
                "kernel_determinant"
            },
        );
    Ok(finish(r, &z, n_traj).timed(start))
}

/// Cross-time pair intensity for `t > s`:
/// `E Σᵢⱼ 𝟙(λᵢ(t) ∈ A) 𝟙(λⱼ(s) ∈ B)` against
/// `∫_A ∫_B det[[K(y,t|y,t), K(y,t|x,s)], [K(x,s|y,t), K(x,s|x,s)]]`,
/// which is invariant under any gauge of the extended kernel.
pub fn check_cross_time_intensity(
    n: usize,
    s: usize,
    t: usize,
    rects: &[Rectangle],
    n_traj: usize,
    mc: &McConfig,
) -> Result<VerificationReport> {
    check_n(n)?;
    if !(t > s && s >= 1) || rects.is_empty() || n_traj < 2 {
        return Err(LupError::invalid(
            "s, t, rects",
            "need t > s ≥ 1, at least one rectangle and two trajectories",
        ));
    }
    let start = Instant::now();
    let k = |y: f64, ty: usize, x: f64, tx: usize| {
        kernel_laguerre(point(y, ty), point(x, tx), n).unwrap_or(f64::NAN)
    };
    let expected = rects
        .iter()
        .map(|r| {
            integrate_2d(
                |y, x| k(y, t, y, t) * k(x, s, x, s) - k(y, t, x, s) * k(x, s, y, t),
                r.a,
                r.b,
                24,
            )
        })
        .collect::<Result<Vec<f64>>>()?;
    let inside = |v: f64, iv: (f64, f64)| v >= iv.0 && v < iv.1;
    let stats = simulate_counts(
        n,
        &[s, t],
        n_traj,
        rects.len(),
        mc,
        &format!("cross/{n}/{s}/{t}"),
        |eigs, c| {
            let (es, et) = (&eigs[0], &eigs[1]);
            for (i, r) in rects.iter().enumerate() {
                let ca = et.iter().filter(|&&v| inside(v, r.a)).count();
                let cb = es.iter().filter(|&&v| inside(v, r.b)).count();
                c[i] = (ca * cb) as f64;
            }
        },
    )?;
    let z = z_scores(&stats, &expected, n_traj);
    let rep = VerificationReport::new("cross_time_intensity", 0.0, Z_TOL)
        .param("N", n)
        .param("s", s)
        .param("t", t)
        .param(
            "rectangles",
            serde_json::to_value(rects).unwrap_or_default(),
        );
    Ok(finish(rep, &z, n_traj).timed(start))
}

/// Default rectangles for the cross-time check.
pub(crate) fn default_rectangles() -> Vec<Rectangle> {
    vec![
        Rectangle {
            a: (1.0, 2.0),
            b: (0.5, 1.5),
        },
        Rectangle {
            a: (2.0, 4.0),
            b: (0.0, 1.0),
        },
        Rectangle {
            a: (0.5, 1.5),
            b: (1.0, 3.0),
        },
        Rectangle {
            a: (3.0, 6.0),
            b: (2.0, 4.0),
        },
    ]
}

/// Default equal-time pair grid.
pub(crate) fn default_pair_edges() -> Vec<f64> {
    vec![0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.5]
}

/// Monte Carlo estimate of the correlation functions at one time (one-point
/// histogram, and the pair intensity for `N ≥ 2`) or at two times (cross-time
/// pair intensity on the default rectangles).
pub fn estimate_correlations_mc(
    n: usize,
    times: &[usize],
    n_traj: usize,
    bins: usize,
    mc: &McConfig,
) -> Result<Vec<VerificationReport>> {
    match *times {
        [t] => {
            let mut out = vec![check_one_point_intensity(n, t, n_traj, bins, mc)?];
            if n >= 2 {
                out.push(check_pair_intensity(
                    n,
                    t,
                    &default_pair_edges(),
                    n_traj,
                    mc,
                )?);
            }
            Ok(out)
        }
        [s, t] => Ok(vec![check_cross_time_intensity(
            n,
            s,
            t,
            &default_rectangles(),
            n_traj,
            mc,
        )?]),
        _ => Err(LupError::invalid("times", "give one or two times")),
    }
}
