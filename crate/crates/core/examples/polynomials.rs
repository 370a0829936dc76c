//! Monic Laguerre and Hermite polynomials, their norms and the Gamma weight.

use lup::polybasis::{
    hermite_monic, hermite_norm, laguerre_monic, laguerre_norm, weight_gamma, WeightParams,
};

fn main() -> lup::Result<()> {
    let a = 2.0;
    for k in 0..5 {
        println!(
            "k = {k}: L~(a=2, x=1.5) = {:>10.4}   r_k = {:>8.1}   H~(0.7) = {:>8.4}   m_k = {:.4}",
            laguerre_monic(k, a, 1.5).to_f64(),
            laguerre_norm(k, a).to_f64(),
            hermite_monic(k, 0.7).to_f64(),
            hermite_norm(k).to_f64()
        );
    }
    // large degree and parameter: kept in log space
    let big = laguerre_monic(200, 1e5, 1e5 + 50.0);
    println!(
        "L~_200^(1e5): sign {} log|.| {:.2}",
        big.sign(),
        big.logmag()
    );
    let w = weight_gamma(WeightParams::new(3.0, 1.0)?, 2.0);
    println!("w_(3,1)(2) = {:.6}", w.to_f64());
    Ok(())
}
