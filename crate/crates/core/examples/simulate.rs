//! Sample one path of the process and print its eigenvalues at each time.

use lup::process::simulate_lup;
use lup::rng::RngStream;

fn main() -> lup::Result<()> {
    let (n, t_max) = (3, 6);
    let times: Vec<usize> = (1..=t_max).collect();
    let mut rng = RngStream::new(42, 0);
    let path = simulate_lup(n, t_max, &times, &mut rng)?;
    for (t, eigs) in path.times().iter().zip(path.eigenvalues()) {
        let shown: Vec<String> = eigs.iter().map(|v| format!("{v:8.3}")).collect();
        println!("t = {t}: {}", shown.join(" "));
    }
    // E tr L(t) = N²t
    let trace: f64 = path.eigenvalues()[t_max - 1].iter().sum();
    println!("trace at t = {t_max}: {trace:.3} (mean {})", n * n * t_max);
    Ok(())
}
