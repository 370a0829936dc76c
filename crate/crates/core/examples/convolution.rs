//! The transition kernels form a convolution semigroup.

use lup::verify::{check_convolution, ConvolutionGrid};

fn main() -> lup::Result<()> {
    for n in 1..=3 {
        let r = check_convolution(
            n,
            &[(3, 2, 1), (5, 4, 1), (4, 2, 1)],
            &ConvolutionGrid::default(),
        )?;
        println!(
            "N = {n}: sup error {:.2e} over {} evaluations",
            r.observed_error, r.effort
        );
    }
    Ok(())
}
