//! Sum of independent LUE matrices: Monte Carlo against LUE(a + a' + N).

use lup::verify::{check_sum_property, McConfig};

fn main() -> lup::Result<()> {
    let r = check_sum_property(3, 1, 2, 1.0, 20_000, &McConfig::new(3, None))?;
    println!(
        "passed: {}  (normalised error {:.3})",
        r.passed, r.observed_error
    );
    for note in &r.notes {
        println!("  {note}");
    }
    Ok(())
}
