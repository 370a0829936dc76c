//! Log-gamma and related scalar helpers.

use std::f64::consts::PI;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Above this argument the Stirling series is used instead of Lanczos.
const STIRLING_CUTOFF: f64 = 15.0;

/// `ln Γ(x)` for `x > 0` (reflection handles `0 < x < 0.5`).
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    if x >= STIRLING_CUTOFF {
        return (x - 0.5) * x.ln() - x + HALF_LN_2PI + stirling_series(x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_2PI + (z + 0.5) * t.ln() - t + acc.ln()
}

fn stirling_series(x: f64) -> f64 {
    let r = 1.0 / x;
    let r2 = r * r;
    r * (1.0 / 12.0
        - r2 * (1.0 / 360.0
            - r2 * (1.0 / 1260.0
                - r2 * (1.0 / 1680.0 - r2 * (1.0 / 1188.0 - r2 * 691.0 / 360_360.0)))))
}

/// `ln Γ(x) − [(x − ½) ln x − x + ½ ln 2π]`, accurate for large `x`.
pub fn stirling_correction(x: f64) -> f64 {
    if x >= STIRLING_CUTOFF {
        stirling_series(x)
    } else {
        ln_gamma(x) - ((x - 0.5) * x.ln() - x + HALF_LN_2PI)
    }
}

/// `ln(Γ(x + k) / Γ(x))` as a sum of logs; exact in the sense of avoiding
/// the cancellation between two large log-gamma values.
pub fn ln_rising(x: f64, k: usize) -> f64 {
    (0..k).map(|j| (x + j as f64).ln()).sum()
}

/// `ln k!`.
pub fn ln_factorial(k: usize) -> f64 {
    if k < 32 {
        ln_rising(1.0, k)
    } else {
        ln_gamma(k as f64 + 1.0)
    }
}
