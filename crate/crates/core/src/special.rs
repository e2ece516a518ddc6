//! Logarithm of the complementary error function over the whole real line.

use std::f64::consts::{LN_2, PI};

use statrs::function::erf::erfc;

/// Beyond this `|x|` the asymptotic series replaces direct evaluation.
pub const ASYMPTOTIC_THRESHOLD: f64 = 25.0;

/// `ln erfc(x)`, finite for every finite `x`.
pub fn ln_erfc(x: f64) -> f64 {
    if x > ASYMPTOTIC_THRESHOLD {
        ln_erfc_asymptotic(x)
    } else if x < -ASYMPTOTIC_THRESHOLD {
        // erfc(x) = 2 - erfc(-x)
        LN_2 + (-0.5 * ln_erfc_asymptotic(-x).exp()).ln_1p()
    } else {
        erfc(x).ln()
    }
}

/// `ln erfc(x)` for large positive `x` from
/// `erfc(x) ~ e^{-x^2} / (x sqrt(pi)) sum_k (-1)^k (2k-1)!! / (2x^2)^k`,
/// truncated at the smallest term.
pub fn ln_erfc_asymptotic(x: f64) -> f64 {
    let inv = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let next = -term * (2 * k - 1) as f64 * inv;
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 {
            break;
        }
    }
    -x * x - (x * PI.sqrt()).ln() + sum.ln()
}
