//! Large-index limits of the Laguerre polynomials, norms and weight.

use lup::verify::{lemma_errors, LemmaKind};

fn main() -> lup::Result<()> {
    let a = [1e3, 1e4, 1e5, 1e6, 1e7];
    for kind in [LemmaKind::L2H, LemmaKind::Norm, LemmaKind::Weight] {
        let e: Vec<String> = lemma_errors(kind, &a)?
            .iter()
            .map(|v| format!("{v:.2e}"))
            .collect();
        println!("{kind:?}: {}", e.join("  "));
    }
    Ok(())
}
