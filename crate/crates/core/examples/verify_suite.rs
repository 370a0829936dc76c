//! Run verification suites and print the JSON reports.

use lup::verify::{run_suite, Suite, SuiteConfig};

fn main() -> lup::Result<()> {
    let cfg = SuiteConfig {
        trajectories: Some(20_000),
        ..SuiteConfig::default()
    };
    let reports = run_suite(&[Suite::Kernels, Suite::Lemmas, Suite::Universality], &cfg)?;
    for r in &reports {
        println!("{}", serde_json::to_string(r).unwrap());
    }
    let failed = reports.iter().filter(|r| r.is_blocking_failure()).count();
    println!("{} checks, {failed} blocking failures", reports.len());
    Ok(())
}
