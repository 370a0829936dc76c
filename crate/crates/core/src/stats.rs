//! Kolmogorov–Smirnov statistics and simple sample summaries.

/// Significance level used by every statistical check in the crate.
pub const ALPHA: f64 = 1e-3;

/// Asymptotic Kolmogorov quantile `c(α) = √(−½ ln(α/2))`.
pub fn kolmogorov_c(alpha: f64) -> f64 {
    (-0.5 * (0.5 * alpha).ln()).sqrt()
}

/// One-sample critical distance at level `alpha`.
pub fn ks_critical_one(n: usize, alpha: f64) -> f64 {
    kolmogorov_c(alpha) / (n as f64).sqrt()
}

/// Two-sample critical distance at level `alpha`.
pub fn ks_critical_two(n: usize, m: usize, alpha: f64) -> f64 {
    let (n, m) = (n as f64, m as f64);
    kolmogorov_c(alpha) * ((n + m) / (n * m)).sqrt()
}

fn sorted(xs: &[f64]) -> Vec<f64> {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// `sup |F_n − F|` for a sample against a continuous CDF.
pub fn ks_one_sample(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let v = sorted(samples);
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// `sup |F_n − G_m|` between two samples.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let (a, b) = (sorted(a), sorted(b));
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// Sample mean and its standard error.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}

/// Pearson correlation with its large-sample standard error `1/√n`.
pub fn correlation(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let (mx, _) = mean_se(xs);
    let (my, _) = mean_se(ys);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx).powi(2);
        syy += (y - my).powi(2);
    }
    (sxy / (sxx * syy).sqrt(), 1.0 / n.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn critical_value_at_one_permille() {
        assert!((kolmogorov_c(ALPHA) - 1.9495).abs() < 1e-4);
        assert!((ks_critical_one(100_000, ALPHA) - 0.006_165).abs() < 1e-5);
    }

    #[test]
    fn one_sample_distance_of_tiny_sample() {
        // Uniform CDF, sample {0.25, 0.75}: gaps are 0.25 everywhere.
        let d = ks_one_sample(&[0.75, 0.25], |x| x);
        assert!((d - 0.25).abs() < 1e-15);
    }

    #[test]
    fn two_sample_distance_by_hand() {
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[3.0, 4.0]), 1.0);
        assert!((ks_two_sample(&[1.0, 3.0], &[2.0, 4.0]) - 0.5).abs() < 1e-15);
        assert_eq!(ks_two_sample(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]), 0.0);
    }

    #[test]
    fn mean_and_error() {
        let (m, se) = mean_se(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((se - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
    }
}
