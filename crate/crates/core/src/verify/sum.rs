use super::{mc_chunks, McConfig, VerificationReport};
use crate::error::{LupError, Result};
use crate::matrixcore::{eigenvalues_hermitian, CMatrix, HermitianMatrix, DEFAULT_TOL};
use crate::process::{characteristic_function_lue, sample_sum_pair};
use crate::rng::RngStream;
use crate::stats::{ks_critical_two, ks_two_sample, ALPHA};
use num_complex::Complex64;
use std::time::Instant;

const CF_POINTS: usize = 5;
const Z_TOL: f64 = 4.0;

/// Random Hermitian test matrices whose characteristic-function values are
/// of order 0.3, where the Monte Carlo comparison has good power.
fn test_matrices(
    n: usize,
    shape: f64,
    b: f64,
    rng: &mut RngStream,
) -> Result<Vec<HermitianMatrix>> {
    let sd = 0.6 * b / (shape * n as f64).sqrt();
    (0..CF_POINTS)
        .map(|_| {
            let g = CMatrix::from_fn(n, n, |_, _| rng.complex_normal(sd * sd));
            HermitianMatrix::new(CMatrix::from_fn(n, n, |i, j| {
                (g[(i, j)] + g[(j, i)].conj()) * 0.5
            }))
        })
        .collect()
}

struct PairStats {
    sum: [Vec<f64>; 3],
    reference: [Vec<f64>; 3],
    phases: Vec<Vec<Complex64>>,
}

/// Addition theorem: for independent `X ~ LUE(a, b)` and `Y ~ LUE(a′, b)`,
/// `X + Y ~ LUE(a + a′ + N, b)`.
///
/// Two-sample KS tests at α = 0.001 compare the sum with fresh reference
/// draws on the trace, the largest and the smallest eigenvalue; the mean of
/// `exp(i tr((X+Y)T))` at five random Hermitian `T` is compared with the
/// closed-form characteristic function. The observed error is
/// `max(D/D_crit, z/4)` and the check passes when it is at most 1.
pub fn check_sum_property(
    n: usize,
    a: usize,
    a2: usize,
    b: f64,
    n_pairs: usize,
    mc: &McConfig,
) -> Result<VerificationReport> {
    if n == 0 || !(b > 0.0) || n_pairs < 2 {
        return Err(LupError::invalid(
            "N, b, n_pairs",
            "need N ≥ 1, b > 0 and at least two pairs",
        ));
    }
    let start = Instant::now();
    let label = format!("sum/{n}/{a}/{a2}/{b}");
    let shape = (a + a2 + 2 * n) as f64;
    let mut trng = RngStream::derive(mc.seed, super::tag(&label), u64::MAX);
    let ts = test_matrices(n, shape, b, &mut trng)?;
    let chunks = mc_chunks(n_pairs, mc, &label, |rng, _, count| {
        let mut st = PairStats {
            sum: Default::default(),
            reference: Default::default(),
            phases: (0..CF_POINTS).map(|_| Vec::with_capacity(count)).collect(),
        };
        for _ in 0..count {
            let (s, r) = sample_sum_pair(n, a, a2, b, rng)?;
            for (m, out) in [(&s, &mut st.sum), (&r, &mut st.reference)] {
                let e = eigenvalues_hermitian(m, DEFAULT_TOL)?;
                out[0].push(m.trace());
                out[1].push(e[e.len() - 1]);
                out[2].push(e[0]);
            }
            for (j, t) in ts.iter().enumerate() {
                st.phases[j].push(Complex64::from_polar(1.0, s.trace_product(t)?));
            }
        }
        Ok(st)
    })?;
    let mut sum: [Vec<f64>; 3] = Default::default();
    let mut reference: [Vec<f64>; 3] = Default::default();
    let mut phases: Vec<Vec<Complex64>> = (0..CF_POINTS)
        .map(|_| Vec::with_capacity(n_pairs))
        .collect();
    for c in chunks {
        for i in 0..3 {
            sum[i].extend_from_slice(&c.sum[i]);
            reference[i].extend_from_slice(&c.reference[i]);
        }
        for j in 0..CF_POINTS {
            phases[j].extend_from_slice(&c.phases[j]);
        }
    }
    let crit = ks_critical_two(n_pairs, n_pairs, ALPHA);
    let names = ["trace", "largest", "smallest"];
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for i in 0..3 {
        let d = ks_two_sample(&sum[i], &reference[i]);
        worst = worst.max(d / crit);
        notes.push(format!("KS {}: D = {d:.4} (critical {crit:.4})", names[i]));
    }
    for (j, t) in ts.iter().enumerate() {
        let eigs = eigenvalues_hermitian(t, DEFAULT_TOL)?;
        let cf = characteristic_function_lue(&eigs, n, (a + a2 + n) as f64, b)?;
        let emp = crate::process::summarise_phases(&phases[j]);
        let z = (emp.value - cf).norm() / emp.se().max(f64::MIN_POSITIVE);
        worst = worst.max(z / Z_TOL);
        notes.push(format!(
            "CF at T{j}: |Δ| = {:.3e}, z = {z:.2} (closed form {:.4}{:+.4}i)",
            (emp.value - cf).norm(),
            cf.re,
            cf.im
        ));
    }
    let mut r = VerificationReport::new("addition_theorem", worst, 1.0)
        .param("N", n)
        .param("a", a)
        .param("a_prime", a2)
        .param("b", b)
        .effort(n_pairs);
    for note in notes {
        r = r.note(note);
    }
    Ok(r.timed(start))
}
