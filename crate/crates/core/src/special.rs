//! Log-gamma and digamma on the positive real axis.
//!
//! Every probability in the crate is assembled from differences of
//! `ln Γ`, so these need to stay accurate from the head of the
//! distribution (`x ≈ 1`) out to visitor counts in the billions.

use std::f64::consts::PI;

use crate::error::{domain, Result};

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Lanczos coefficients for g = 7, n = 9.
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

/// Above this point the Stirling series is used.
const STIRLING_MIN: f64 = 10.0;

/// Stirling correction `ln Γ(x) - [(x - 1/2) ln x - x + ln √(2π)]`.
fn stirling_tail(x: f64) -> f64 {
    let r = 1.0 / x;
    let r2 = r * r;
    r * (1.0 / 12.0
        - r2 * (1.0 / 360.0
            - r2 * (1.0 / 1260.0
                - r2 * (1.0 / 1680.0
                    - r2 * (1.0 / 1188.0 - r2 * (691.0 / 360_360.0 - r2 / 156.0))))))
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut sum = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (z + 0.5) * t.ln() - t + sum.ln()
}

fn ln_gamma_unchecked(x: f64) -> f64 {
    if x >= STIRLING_MIN {
        (x - 0.5) * x.ln() - x + HALF_LN_TWO_PI + stirling_tail(x)
    } else if x >= 0.5 {
        lanczos(x)
    } else {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx), with 0 < x < 1/2
        (PI / (PI * x).sin()).ln() - lanczos(1.0 - x)
    }
}

/// Natural log of the gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("log_gamma requires a finite x > 0, got {x}"));
    }
    Ok(ln_gamma_unchecked(x))
}

/// `ln Γ(x + a) - ln Γ(x)` without the cancellation of subtracting two
/// large log-gammas. Requires `x > 0` and `x + a > 0`.
pub(crate) fn ln_gamma_ratio(x: f64, a: f64) -> f64 {
    debug_assert!(x > 0.0 && x + a > 0.0);
    let y = x + a;
    if x >= STIRLING_MIN && y >= STIRLING_MIN {
        (x - 0.5) * (a / x).ln_1p() + a * y.ln() - a + (stirling_tail(y) - stirling_tail(x))
    } else {
        ln_gamma_unchecked(y) - ln_gamma_unchecked(x)
    }
}

/// Digamma `ψ(x) = d/dx ln Γ(x)` for `x > 0`.
pub(crate) fn digamma(mut x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let r = 1.0 / x;
    let r2 = r * r;
    let series = r2
        * (1.0 / 12.0
            - r2 * (1.0 / 120.0
                - r2 * (1.0 / 252.0
                    - r2 * (1.0 / 240.0
                        - r2 * (1.0 / 132.0 - r2 * (691.0 / 32_760.0 - r2 / 12.0))))));
    acc + x.ln() - 0.5 * r - series
}

pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    ln_gamma_unchecked(x)
}
