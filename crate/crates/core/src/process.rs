//! The Laguerre unitary process `L(t) = L(t−1) + X(t)` with i.i.d.
//! `LUE(a = 0, b = 1)` increments, and the LUE characteristic function.

use crate::error::{LupError, Result};
use crate::matrixcore::{eigenvalues_hermitian, sample_lue, HermitianMatrix, DEFAULT_TOL};
use crate::rng::RngStream;
use num_complex::Complex64;
use rayon::prelude::*;

/// States of one sample path at the recorded integer times.
#[derive(Debug, Clone)]
pub struct Trajectory {
    n: usize,
    times: Vec<usize>,
    states: Vec<HermitianMatrix>,
    eigen_cache: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn times(&self) -> &[usize] {
        &self.times
    }

    pub fn states(&self) -> &[HermitianMatrix] {
        &self.states
    }

    /// Ascending eigenvalues at each recorded time.
    pub fn eigenvalues(&self) -> &[Vec<f64>] {
        &self.eigen_cache
    }

    pub fn state_at(&self, t: usize) -> Option<&HermitianMatrix> {
        self.times
            .iter()
            .position(|&s| s == t)
            .map(|k| &self.states[k])
    }

    pub fn eigenvalues_at(&self, t: usize) -> Option<&[f64]> {
        self.times
            .iter()
            .position(|&s| s == t)
            .map(|k| self.eigen_cache[k].as_slice())
    }
}

fn check_times(t_max: usize, record_times: &[usize]) -> Result<()> {
    if t_max == 0 {
        return Err(LupError::invalid("t_max", "must be a positive integer"));
    }
    if record_times.is_empty() {
        return Err(LupError::invalid(
            "record_times",
            "at least one time must be recorded",
        ));
    }
    if record_times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LupError::invalid(
            "record_times",
            "times must be strictly increasing",
        ));
    }
    if record_times[0] == 0 || *record_times.last().unwrap() > t_max {
        return Err(LupError::invalid(
            "record_times",
            format!("times must lie in 1..={t_max}"),
        ));
    }
    Ok(())
}

/// Run the process from `L(0) = 0` up to `t_max`, storing only `record_times`.
pub fn simulate_lup(
    n: usize,
    t_max: usize,
    record_times: &[usize],
    rng: &mut RngStream,
) -> Result<Trajectory> {
    check_times(t_max, record_times)?;
    let mut state = HermitianMatrix::zeros(n);
    let mut traj = Trajectory {
        n,
        times: Vec::with_capacity(record_times.len()),
        states: Vec::with_capacity(record_times.len()),
        eigen_cache: Vec::with_capacity(record_times.len()),
    };
    let mut next = record_times.iter().peekable();
    let last = *record_times.last().unwrap();
    for t in 1..=last {
        let x = sample_lue(n, 0.0, 1.0, rng)?;
        state = if t == 1 { x } else { state.add(&x)? };
        if next.peek() == Some(&&t) {
            next.next();
            traj.eigen_cache
                .push(eigenvalues_hermitian(&state, DEFAULT_TOL)?);
            traj.times.push(t);
            traj.states.push(state.clone());
        }
    }
    Ok(traj)
}

/// `E exp(i tr XT)` for `X ~ LUE(N, a, b)`, from the eigenvalues of `T`:
/// `∏ⱼ (1 − i tⱼ/b)^{−(N+a)}`.
pub fn characteristic_function_lue(eigs_t: &[f64], n: usize, a: f64, b: f64) -> Result<Complex64> {
    if eigs_t.len() != n {
        return Err(LupError::DimensionMismatch {
            expected: n,
            found: eigs_t.len(),
        });
    }
    if !(a > -1.0) || !(b > 0.0) {
        return Err(LupError::invalid(
            "a, b",
            format!("need a > −1 and b > 0, got a = {a}, b = {b}"),
        ));
    }
    let p = n as f64 + a;
    let (mut ln_r, mut arg) = (0.0, 0.0);
    for &t in eigs_t {
        let u = t / b;
        ln_r += 0.5 * u.mul_add(u, 1.0).ln();
        arg += (-u).atan();
    }
    Ok(Complex64::from_polar((-p * ln_r).exp(), -p * arg))
}

/// Sample mean of `exp(i tr XT)` with its standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalCf {
    pub value: Complex64,
    pub se_re: f64,
    pub se_im: f64,
}

impl EmpiricalCf {
    /// Standard error of the complex mean, `√(se_re² + se_im²)`.
    pub fn se(&self) -> f64 {
        self.se_re.hypot(self.se_im)
    }
}

pub fn empirical_characteristic(
    samples: &[HermitianMatrix],
    t: &HermitianMatrix,
) -> Result<EmpiricalCf> {
    if samples.is_empty() {
        return Err(LupError::invalid("samples", "need at least one sample"));
    }
    let phases = samples
        .iter()
        .map(|x| x.trace_product(t).map(|s| Complex64::from_polar(1.0, s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarise_phases(&phases))
}

pub(crate) fn summarise_phases(phases: &[Complex64]) -> EmpiricalCf {
    let n = phases.len() as f64;
    let mean: Complex64 = phases.iter().sum::<Complex64>() / n;
    if phases.len() < 2 {
        return EmpiricalCf {
            value: mean,
            se_re: 0.0,
            se_im: 0.0,
        };
    }
    let (vr, vi) = phases.iter().fold((0.0, 0.0), |(vr, vi), z| {
        (vr + (z.re - mean.re).powi(2), vi + (z.im - mean.im).powi(2))
    });
    EmpiricalCf {
        value: mean,
        se_re: (vr / (n - 1.0) / n).sqrt(),
        se_im: (vi / (n - 1.0) / n).sqrt(),
    }
}

/// `(X + Y, Z)` with independent `X ~ LUE(a, b)`, `Y ~ LUE(a′, b)` and a
/// fresh reference `Z ~ LUE(a + a′ + N, b)`.
pub fn sample_sum_pair(
    n: usize,
    a: usize,
    a2: usize,
    b: f64,
    rng: &mut RngStream,
) -> Result<(HermitianMatrix, HermitianMatrix)> {
    let x = sample_lue(n, a as f64, b, rng)?;
    let y = sample_lue(n, a2 as f64, b, rng)?;
    let z = sample_lue(n, (a + a2 + n) as f64, b, rng)?;
    Ok((x.add(&y)?, z))
}

/// `f(0), …, f(count − 1)` evaluated in parallel and returned in index order.
///
/// With `workers = None` the global rayon pool is used. The result never
/// depends on the worker count as long as `f` derives its randomness from
/// the index alone.
pub fn par_map_indexed<T, F>(count: usize, workers: Option<usize>, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match workers {
        None => Ok((0..count).into_par_iter().map(f).collect()),
        Some(w) => {
            if w == 0 {
                return Err(LupError::invalid(
                    "workers",
                    "worker count must be positive",
                ));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| LupError::invalid("workers", e.to_string()))?;
            Ok(pool.install(|| (0..count).into_par_iter().map(f).collect()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixcore::{sample_ginibre, CMatrix};
    use crate::stats::{
        correlation, ks_critical_one, ks_critical_two, ks_one_sample, ks_two_sample, ALPHA,
    };
    use statrs::distribution::{ContinuousCDF, Gamma};

    fn paths(n: usize, t_max: usize, times: &[usize], count: usize, seed: u64) -> Vec<Trajectory> {
        par_map_indexed(count, None, |i| {
            let mut rng = RngStream::derive(seed, 0, i as u64);
            simulate_lup(n, t_max, times, &mut rng).unwrap()
        })
        .unwrap()
    }

    #[test]
    fn rejects_bad_times() {
        let mut rng = RngStream::new(0, 0);
        assert!(simulate_lup(2, 3, &[], &mut rng).is_err());
        assert!(simulate_lup(2, 3, &[0, 1], &mut rng).is_err());
        assert!(simulate_lup(2, 3, &[2, 4], &mut rng).is_err());
        assert!(simulate_lup(2, 3, &[2, 1], &mut rng).is_err());
    }

    #[test]
    fn first_state_is_first_increment() {
        let mut a = RngStream::new(42, 3);
        let mut b = RngStream::new(42, 3);
        let traj = simulate_lup(3, 2, &[1, 2], &mut a).unwrap();
        let x = sample_lue(3, 0.0, 1.0, &mut b).unwrap();
        assert_eq!(traj.state_at(1).unwrap(), &x);
        assert_eq!(traj.times(), &[1, 2]);
    }

    #[test]
    fn recorded_increments_are_positive_definite() {
        let mut rng = RngStream::new(1, 1);
        let traj = simulate_lup(4, 6, &[1, 3, 6], &mut rng).unwrap();
        for w in traj.states().windows(2) {
            let d = w[1].sub(&w[0]).unwrap();
            assert!(eigenvalues_hermitian(&d, DEFAULT_TOL).unwrap()[0] > 0.0);
        }
        for (s, e) in traj.states().iter().zip(traj.eigenvalues()) {
            assert_eq!(&eigenvalues_hermitian(s, DEFAULT_TOL).unwrap(), e);
        }
    }

    #[test]
    fn scalar_path_is_gamma() {
        let count = 100_000;
        let v: Vec<f64> = paths(1, 3, &[3], count, 11)
            .iter()
            .map(|p| p.eigenvalues()[0][0])
            .collect();
        let law = Gamma::new(3.0, 1.0).unwrap();
        assert!(ks_one_sample(&v, |x| law.cdf(x)) < ks_critical_one(count, ALPHA));
    }

    #[test]
    fn trace_at_time_two_is_gamma_eight() {
        let count = 100_000;
        let v: Vec<f64> = paths(2, 2, &[2], count, 12)
            .iter()
            .map(|p| p.states()[0].trace())
            .collect();
        let law = Gamma::new(8.0, 1.0).unwrap();
        assert!(ks_one_sample(&v, |x| law.cdf(x)) < ks_critical_one(count, ALPHA));
    }

    #[test]
    fn independent_and_stationary_increments() {
        let count = 100_000;
        let ps = paths(2, 3, &[1, 2, 3], count, 13);
        let t1: Vec<f64> = ps.iter().map(|p| p.states()[0].trace()).collect();
        let d21: Vec<f64> = ps
            .iter()
            .map(|p| p.states()[1].trace() - p.states()[0].trace())
            .collect();
        let d32: Vec<f64> = ps
            .iter()
            .map(|p| p.states()[2].trace() - p.states()[1].trace())
            .collect();
        let (r, se) = correlation(&d21, &t1);
        assert!(r.abs() < 4.0 * se, "corr {r} ± {se}");
        let d = ks_two_sample(&d32, &t1);
        assert!(d < ks_critical_two(count, count, ALPHA));
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let f = |i: usize| {
            let mut rng = RngStream::derive(5, 1, i as u64);
            simulate_lup(2, 2, &[2], &mut rng).unwrap().eigenvalues()[0].clone()
        };
        let one = par_map_indexed(500, Some(1), f).unwrap();
        let many = par_map_indexed(500, Some(8), f).unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn characteristic_function_examples() {
        assert_eq!(
            characteristic_function_lue(&[0.0, 0.0], 2, 1.0, 2.0).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let v = characteristic_function_lue(&[1.0], 1, 0.0, 1.0).unwrap();
        assert!((v - Complex64::new(0.5, 0.5)).norm() < 1e-15);
        // Direct complex power for a non-trivial case.
        let direct: Complex64 = [0.5, -0.3]
            .iter()
            .map(|&t| (Complex64::new(1.0, -t / 2.0)).powf(-3.0))
            .product();
        let v = characteristic_function_lue(&[0.5, -0.3], 2, 1.0, 2.0).unwrap();
        assert!((v - direct).norm() < 1e-14);
        assert!(characteristic_function_lue(&[0.5], 2, 1.0, 2.0).is_err());
    }

    #[test]
    fn empirical_cf_single_sample_at_zero() {
        let mut rng = RngStream::new(2, 2);
        let x = sample_lue(2, 0.0, 1.0, &mut rng).unwrap();
        let cf = empirical_characteristic(&[x], &HermitianMatrix::zeros(2)).unwrap();
        assert_eq!(cf.value, Complex64::new(1.0, 0.0));
        assert!(empirical_characteristic(&[], &HermitianMatrix::zeros(2)).is_err());
        let mut rng = RngStream::new(2, 3);
        let y = sample_lue(3, 0.0, 1.0, &mut rng).unwrap();
        assert!(empirical_characteristic(&[y], &HermitianMatrix::zeros(2)).is_err());
    }

    #[test]
    fn empirical_cf_matches_closed_form() {
        let t = HermitianMatrix::diagonal(&[0.5, -0.3]);
        let samples = par_map_indexed(1_000_000, None, |i| {
            let mut rng = RngStream::derive(14, 2, i as u64);
            sample_lue(2, 1.0, 2.0, &mut rng).unwrap()
        })
        .unwrap();
        let cf = empirical_characteristic(&samples, &t).unwrap();
        let want = characteristic_function_lue(&[0.5, -0.3], 2, 1.0, 2.0).unwrap();
        assert!(
            (cf.value - want).norm() < 4.0 * cf.se(),
            "{} vs {want}",
            cf.value
        );
    }

    #[test]
    fn cf_of_sum_factorises() {
        let n = 2;
        let count = 200_000;
        let pairs = par_map_indexed(count, None, |i| {
            let mut rng = RngStream::derive(15, 3, i as u64);
            (
                sample_lue(n, 0.0, 1.0, &mut rng).unwrap(),
                sample_lue(n, 0.0, 1.0, &mut rng).unwrap(),
            )
        })
        .unwrap();
        let xs: Vec<_> = pairs.iter().map(|p| p.0.clone()).collect();
        let ys: Vec<_> = pairs.iter().map(|p| p.1.clone()).collect();
        let sums: Vec<_> = pairs.iter().map(|p| p.0.add(&p.1).unwrap()).collect();
        let mut rng = RngStream::new(16, 0);
        for _ in 0..5 {
            let g = sample_ginibre(n, n, 0.1, &mut rng).unwrap();
            let t =
                HermitianMatrix::new(CMatrix::from_fn(n, n, |i, j| g[(i, j)] + g[(j, i)].conj()))
                    .unwrap();
            let fs = empirical_characteristic(&sums, &t).unwrap();
            let fx = empirical_characteristic(&xs, &t).unwrap();
            let fy = empirical_characteristic(&ys, &t).unwrap();
            let prod = fx.value * fy.value;
            let se = fs
                .se()
                .hypot(fx.se() * fy.value.norm())
                .hypot(fy.se() * fx.value.norm());
            assert!((fs.value - prod).norm() < 4.0 * se);
            // And the closed form with a = N for the sum.
            let e = eigenvalues_hermitian(&t, DEFAULT_TOL).unwrap();
            let want = characteristic_function_lue(&e, n, n as f64, 1.0).unwrap();
            assert!((fs.value - want).norm() < 4.0 * fs.se());
        }
    }

    #[test]
    fn scalar_sum_pair_is_gamma_two() {
        let count = 100_000;
        let v = par_map_indexed(count, None, |i| {
            let mut rng = RngStream::derive(17, 4, i as u64);
            let (s, r) = sample_sum_pair(1, 0, 0, 1.0, &mut rng).unwrap();
            (s.trace(), r.trace())
        })
        .unwrap();
        let s: Vec<f64> = v.iter().map(|p| p.0).collect();
        let r: Vec<f64> = v.iter().map(|p| p.1).collect();
        assert!(ks_two_sample(&s, &r) < ks_critical_two(count, count, ALPHA));
        let law = Gamma::new(2.0, 1.0).unwrap();
        assert!(ks_one_sample(&s, |x| law.cdf(x)) < ks_critical_one(count, ALPHA));
    }
}
