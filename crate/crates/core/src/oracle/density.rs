//! Diagonal of the global thermal state in the product basis, in the limit
//! of a Gaussian `w_a(E)` cut off at the ground-state energy.

use std::f64::consts::{LN_2, SQRT_2};

use crate::error::{domain, Result};
use crate::special::ln_erfc;

/// `ln` of `exp(-beta y + beta^2 sigma^2 / 2) erfc((E0 - y + beta sigma^2) / (sqrt2 sigma)) / 2`.
pub fn ln_rho_diagonal(y_a: f64, sigma_a: f64, beta: f64, e0: f64) -> Result<f64> {
    if !(sigma_a > 0.0) {
        return Err(domain(format!("sigma_a must be positive, got {sigma_a}")));
    }
    if !(beta > 0.0) {
        return Err(domain(format!("beta must be positive, got {beta}")));
    }
    let s2 = sigma_a * sigma_a;
    let x = (e0 - y_a + beta * s2) / (SQRT_2 * sigma_a);
    Ok(-beta * y_a + 0.5 * beta * beta * s2 + ln_erfc(x) - LN_2)
}

/// Unnormalized `<a|rho|a>`; divide by the partition sum to normalize.
pub fn rho_diagonal(y_a: f64, sigma_a: f64, beta: f64, e0: f64) -> Result<f64> {
    Ok(ln_rho_diagonal(y_a, sigma_a, beta, e0)?.exp())
}
