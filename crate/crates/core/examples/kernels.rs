//! The four extended kernels and a space-time correlation function.

use lup::kernels::{airy_ai, correlation_det, KernelFamily, KernelSpec, SpaceTimePoint};

fn main() -> lup::Result<()> {
    let p = SpaceTimePoint::new;
    for family in [
        KernelFamily::LaguerreExtended,
        KernelFamily::HermiteExtended,
        KernelFamily::SineExtended,
        KernelFamily::AiryExtended,
    ] {
        let spec = KernelSpec::new(family, 3, KernelSpec::DEFAULT_TOLERANCE)?;
        let (y, x) = if family == KernelFamily::LaguerreExtended {
            (2.0, 1.0)
        } else {
            (0.4, -0.1)
        };
        let same = spec.evaluate(p(y, 2.0), p(x, 2.0))?;
        let before = spec.evaluate(p(y, 2.0), p(x, 1.0))?;
        let after = spec.evaluate(p(y, 1.0), p(x, 2.0))?;
        println!("{family:?}: s = t {same:+.6}  s < t {before:+.6}  s > t {after:+.6}");
    }
    // two-point correlation of the Laguerre process at times 1 and 2
    let spec = KernelSpec::new(
        KernelFamily::LaguerreExtended,
        3,
        KernelSpec::DEFAULT_TOLERANCE,
    )?;
    let rho = correlation_det(&[p(1.0, 1.0), p(2.5, 2.0)], &spec)?;
    println!("rho_2((1.0, t=1), (2.5, t=2)) = {rho:.6}");
    println!(
        "Ai(-2.338107410459767) = {:.3e}",
        airy_ai(-2.338107410459767)?
    );
    Ok(())
}
