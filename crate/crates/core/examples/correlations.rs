//! Monte Carlo correlation functions against the kernel predictions.

use lup::verify::{estimate_correlations_mc, McConfig};

fn main() -> lup::Result<()> {
    let mc = McConfig::new(11, None);
    let mut reports = estimate_correlations_mc(2, &[2], 50_000, 40, &mc)?;
    reports.extend(estimate_correlations_mc(2, &[1, 2], 50_000, 0, &mc)?);
    for r in reports {
        println!(
            "{:<22} max |z| = {:.2} (limit {})  {}",
            r.identity,
            r.observed_error,
            r.tolerance,
            r.notes.join("; ")
        );
    }
    Ok(())
}
