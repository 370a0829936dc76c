use lup::densities::{eig_jpdf, transition_density, EigenConfig};
use lup::process::simulate_lup;
use lup::quadrature::{gauss_legendre, integrate_panels};
use lup::rng::RngStream;
use lup::stats::{ks_critical_one, ks_one_sample, ALPHA};
use statrs::distribution::{ContinuousCDF, Gamma};

#[test]
fn trace_at_time_t_is_gamma_distributed() {
    // tr L(t) is a sum of N²t unit-mean exponentials.
    let (n, t) = (2usize, 3usize);
    let traces: Vec<f64> = (0..4000)
        .map(|i| {
            let mut rng = RngStream::derive(17, 3, i);
            let tr = simulate_lup(n, t, &[t], &mut rng).unwrap();
            tr.eigenvalues()[0].iter().sum()
        })
        .collect();
    let law = Gamma::new((n * n * t) as f64, 1.0).unwrap();
    let d = ks_one_sample(&traces, |x| law.cdf(x));
    assert!(d < ks_critical_one(traces.len(), ALPHA), "D = {d}");
}

#[test]
fn eigenvalues_are_ascending_and_grow() {
    let mut rng = RngStream::new(5, 0);
    let tr = simulate_lup(3, 6, &[2, 4, 6], &mut rng).unwrap();
    assert_eq!(tr.times(), &[2, 4, 6]);
    for e in tr.eigenvalues() {
        assert!(e.windows(2).all(|w| w[0] <= w[1]) && e[0] > 0.0);
    }
    // L(t) − L(s) is positive definite, so every ordered eigenvalue increases.
    for w in tr.eigenvalues().windows(2) {
        assert!(w[0].iter().zip(&w[1]).all(|(a, b)| a < b));
    }
}

fn config(v: &[f64]) -> EigenConfig {
    EigenConfig::new(v.to_vec())
}

#[test]
fn two_particle_densities_are_normalised() {
    let rule = gauss_legendre(120, (0.0, 60.0)).unwrap();
    let total: f64 = rule
        .nodes()
        .iter()
        .map(|&(y1, w1)| {
            w1 * rule.integrate(|y2| eig_jpdf(&config(&[y1, y2]), 2, 1.0, 1.0).unwrap().to_f64())
        })
        .sum();
    assert!((total - 1.0).abs() < 1e-10, "{total}");
    // Transition from x at time 1 to time 3 integrates to one over y. The
    // density is only finitely smooth at y = xₗ, so panels break there.
    let x = [0.7, 2.2];
    let breaks = [0.0, 0.7, 2.2, 10.0, 30.0, 80.0];
    let inner = |y1: f64| {
        integrate_panels(
            |y2| {
                transition_density(&config(&[y1, y2]), &config(&x), 3, 1, 2)
                    .unwrap()
                    .to_f64()
            },
            &breaks,
            40,
        )
        .unwrap()
    };
    let total = integrate_panels(inner, &breaks, 40).unwrap();
    assert!((total - 1.0).abs() < 1e-10, "{total}");
}
