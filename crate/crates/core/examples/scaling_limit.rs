//! Laguerre kernel converging to the Hermite kernel as gamma grows.

use lup::verify::{check_scaling_limit, default_scaling_points, scaling_errors};

fn main() -> lup::Result<()> {
    let gammas = [1e2, 1e3, 1e4, 1e5];
    let points = default_scaling_points();
    for row in scaling_errors(1, &gammas, &points)? {
        println!(
            "gamma {:>8.0e}  point {}  error {:.3e}",
            row.gamma, row.point, row.error
        );
    }
    let r = check_scaling_limit(2, &gammas[..3], &points)?;
    println!("N = 2: {}", r.notes.join("\n       "));
    Ok(())
}
