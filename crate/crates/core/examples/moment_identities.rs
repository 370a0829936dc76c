//! Moments, moment determinants and bi-orthogonality against their
//! quadrature oracles.

use lup::verify::{
    check_biorthogonality, check_moment_determinant, check_moments, moment_closed_form, McConfig,
    MomentMethod,
};

fn main() -> lup::Result<()> {
    let (n, t, s) = (2, 3, 1);
    println!("M_(1,1) = {}", moment_closed_form(n, t, s, 1, 1));
    let mc = McConfig::new(7, None);
    for r in [
        check_moments(n, t, s, 6, MomentMethod::Quadrature, &mc)?,
        check_moments(n, t, s, 3, MomentMethod::MonteCarlo { draws: 200_000 }, &mc)?,
        check_moment_determinant(n, t, s, 6)?,
        check_biorthogonality(n, t, s, 8, Some(2))?,
    ] {
        println!(
            "{:<22} observed {:.3e}  tol {:.1e}  {}",
            r.identity,
            r.observed_error,
            r.tolerance,
            if r.passed { "pass" } else { "FAIL" }
        );
    }
    Ok(())
}
