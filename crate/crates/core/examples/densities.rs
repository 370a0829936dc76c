//! Evaluate the eigenvalue density at one time, the transition density and
//! the joint density across times.

use lup::densities::{eig_jpdf, spatiotemporal_jpdf, transition_density, EigenConfig};

fn main() -> lup::Result<()> {
    let n = 2;
    let x = EigenConfig::new(vec![0.8, 2.5]);
    let y = EigenConfig::new(vec![2.0, 5.5]);
    // marginal at time 1 is LUE(N, 0, 1)
    println!(
        "p_1(x)          = {:.6e}",
        eig_jpdf(&x, n, 0.0, 1.0)?.to_f64()
    );
    println!(
        "p_(3,1)(y | x)  = {:.6e}",
        transition_density(&y, &x, 3, 1, n)?.to_f64()
    );
    let joint = spatiotemporal_jpdf(&[x.clone(), y.clone()], &[1, 3], n)?;
    println!("p(x at 1, y at 3) = {:.6e}", joint.to_f64());
    // values far in the tail stay representable
    let far = EigenConfig::new(vec![400.0, 650.0]);
    println!(
        "log p_1(far)    = {:.3}",
        eig_jpdf(&far, n, 0.0, 1.0)?.logmag()
    );
    Ok(())
}
