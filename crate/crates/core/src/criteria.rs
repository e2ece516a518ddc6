//! Existence conditions for a local temperature.
//!
//! Two conditions decide whether the product-basis diagonal of the global
//! thermal state factorises into canonical group states:
//!
//! 1. the erfc argument of the diagonal element, scaled by `1/sqrt(N_G)`,
//!    must stay positive: `(E_a + eps_a - E0 - beta sigma_a^2) / (sqrt2 sigma_a sqrt(N_G)) > 0`;
//! 2. `-eps_a + beta sigma_a^2 / 2` must be (approximately) linear in `E_a`.
//!
//! For the harmonic chain in the Debye approximation both turn into lower
//! bounds on the group size `n` that depend only on `T / Theta`, the window
//! width `alpha` and the accuracy `delta`.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{argument, domain, Result};

/// Moments of one product state entering condition 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralConditionInput {
    pub e_a: f64,
    pub eps_a: f64,
    pub sigma2_a: f64,
    pub beta: f64,
    pub e0: f64,
    pub n_groups: usize,
}

impl GeneralConditionInput {
    /// `y_a = E_a + eps_a`, the centre of the state's energy distribution.
    pub fn y_a(&self) -> f64 {
        self.e_a + self.eps_a
    }
}

/// Left-hand side of condition 1. Positive means the condition holds.
pub fn cond1_margin(inp: &GeneralConditionInput) -> Result<f64> {
    if !(inp.sigma2_a > 0.0) {
        return Err(domain(format!("sigma_a^2 must be positive, got {}", inp.sigma2_a)));
    }
    if inp.n_groups < 2 {
        return Err(argument("condition 1 needs at least 2 groups"));
    }
    let numerator = inp.y_a() - inp.e0 - inp.beta * inp.sigma2_a;
    Ok(numerator / (SQRT_2 * inp.sigma2_a.sqrt() * (inp.n_groups as f64).sqrt()))
}

/// One product state's contribution to the linearity test of condition 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSample {
    pub e_a: f64,
    pub eps_a: f64,
    pub sigma2_a: f64,
}

/// Least-squares line through `(E_a, -eps_a + beta sigma_a^2 / 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearityFit {
    /// Slope; `beta_loc = beta (1 + c1)` up to the fit residual.
    pub c1: f64,
    pub c2: f64,
    /// Largest absolute deviation of a sample from the fitted line.
    pub max_residual: f64,
}

pub fn cond2_linearity(samples: &[MomentSample], beta: f64) -> Result<LinearityFit> {
    if samples.len() < 3 {
        return Err(argument(format!("need at least 3 samples, got {}", samples.len())));
    }
    let points: Vec<(f64, f64)> = samples.iter().map(|s| (s.e_a, -s.eps_a + 0.5 * beta * s.sigma2_a)).collect();
    let count = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / count;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let scale = points.iter().map(|p| p.0.abs()).fold(0.0, f64::max);
    if sxx <= (1e-12 * scale).powi(2) * count {
        return Err(argument("samples do not span distinct E_a"));
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let c1 = sxy / sxx;
    let c2 = mean_y - c1 * mean_x;
    let max_residual = points.iter().map(|p| (p.1 - (c1 * p.0 + c2)).abs()).fold(0.0, f64::max);
    Ok(LinearityFit { c1, c2, max_residual })
}

/// Outcome of the harmonic-chain form of condition 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Bound1 {
    /// `n` must exceed this value.
    Applicable(f64),
    /// Thermal energy at or above the ground-state energy; condition 2 is
    /// stronger. The formula value is kept for plotting.
    Inapplicable { raw: f64 },
}

impl Bound1 {
    pub fn value(&self) -> Option<f64> {
        match *self {
            Bound1::Applicable(v) => Some(v),
            Bound1::Inapplicable { .. } => None,
        }
    }

    pub fn raw(&self) -> f64 {
        match *self {
            Bound1::Applicable(v) | Bound1::Inapplicable { raw: v } => v,
        }
    }

    pub fn is_applicable(&self) -> bool {
        matches!(self, Bound1::Applicable(_))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha >= 1.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(argument(format!("alpha must be >= 1, got {alpha}")))
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(argument(format!("delta must lie in (0, 1), got {delta}")))
    }
}

fn check_t_ratio(t_ratio: f64) -> Result<()> {
    if t_ratio > 0.0 && t_ratio.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("T/Theta must be positive, got {t_ratio}")))
    }
}

/// `n > 4 (Theta/T) (alpha/ebar) (ebar/alpha + 1/4)^2`, the condition-1 bound
/// with every group at the bottom of the energy window. Inapplicable once
/// `ebar >= 1/4`.
pub fn harm_bound_cond1(t_ratio: f64, alpha: f64, ebar: f64) -> Result<Bound1> {
    check_t_ratio(t_ratio)?;
    check_alpha(alpha)?;
    if !(ebar > 0.0) {
        return Err(domain(format!("ebar must be positive, got {ebar}")));
    }
    let raw = 4.0 / t_ratio * (alpha / ebar) * (ebar / alpha + 0.25).powi(2);
    Ok(if ebar >= 0.25 { Bound1::Inapplicable { raw } } else { Bound1::Applicable(raw) })
}

/// `n > (2 alpha / delta) (Theta/T) ebar`, the condition-2 bound with both
/// neighbours at the top of the energy window.
pub fn harm_bound_cond2(t_ratio: f64, alpha: f64, delta: f64, ebar: f64) -> Result<f64> {
    check_t_ratio(t_ratio)?;
    check_alpha(alpha)?;
    check_delta(delta)?;
    if !(ebar > 0.0) {
        return Err(domain(format!("ebar must be positive, got {ebar}")));
    }
    Ok(2.0 * alpha / delta / t_ratio * ebar)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Intensivity {
    /// `(2 beta / n^2) E0 / N_G`, the energy-independent slope.
    pub value: f64,
    /// `sqrt(delta) / (sqrt2 alpha) - delta / alpha^2`.
    pub threshold: f64,
    pub passes: bool,
}

pub fn intensivity_threshold(alpha: f64, delta: f64) -> f64 {
    delta.sqrt() / (SQRT_2 * alpha) - delta / (alpha * alpha)
}

/// Size of the constant part of the condition-2 slope, compared with the
/// bound it is guaranteed to respect once `n` exceeds both harmonic bounds.
pub fn intensivity_constant(n: u64, beta: f64, e0_per_group: f64, alpha: f64, delta: f64) -> Result<Intensivity> {
    if n < 1 {
        return Err(argument("n must be at least 1"));
    }
    if !(beta > 0.0) {
        return Err(domain(format!("beta must be positive, got {beta}")));
    }
    check_alpha(alpha)?;
    check_delta(delta)?;
    let n = n as f64;
    let value = 2.0 * beta / (n * n) * e0_per_group;
    let threshold = intensivity_threshold(alpha, delta);
    Ok(Intensivity { value, threshold, passes: value < threshold })
}

/// Smallest integer strictly above `bound`.
pub fn strict_ceiling(bound: f64) -> u64 {
    bound.floor() as u64 + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Binding {
    Cond1,
    Cond2,
}

/// Both harmonic bounds at one temperature and the group size they imply.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub bound_cond1: Bound1,
    pub bound_cond2: f64,
    pub intensivity_const: f64,
    pub binding: Binding,
    pub n_min: u64,
    pub beta_loc_equals_beta: bool,
}

/// Evaluates both bounds for a chain at `T / Theta` with reduced energy `ebar`.
///
/// The intensivity check uses Debye units: `beta = 1 / (T/Theta)` and
/// `E0 / N_G = n / 4`.
pub fn evaluate(t_ratio: f64, alpha: f64, delta: f64, ebar: f64) -> Result<CriterionReport> {
    let bound_cond1 = harm_bound_cond1(t_ratio, alpha, ebar)?;
    let bound_cond2 = harm_bound_cond2(t_ratio, alpha, delta, ebar)?;
    let (binding, max_bound) = match bound_cond1.value() {
        Some(b1) if b1 > bound_cond2 => (Binding::Cond1, b1),
        _ => (Binding::Cond2, bound_cond2),
    };
    let n_min = strict_ceiling(max_bound);
    let intensivity = intensivity_constant(n_min, 1.0 / t_ratio, n_min as f64 / 4.0, alpha, delta)?;
    Ok(CriterionReport {
        bound_cond1,
        bound_cond2,
        intensivity_const: intensivity.value,
        binding,
        n_min,
        beta_loc_equals_beta: intensivity.passes,
    })
}
