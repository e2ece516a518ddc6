//! `n_min(T)` curves and the minimal length `l_min = n_min a0`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::criteria::{self, Binding, Bound1};
use crate::debye::ebar;
use crate::error::{argument, domain, Result};
use crate::material::Material;

/// Smallest group size ever reported.
pub const MIN_GROUP_SIZE: u64 = 2;
/// Group sizes below this are outside the continuum approximation.
pub const DEBYE_VALID_FROM: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NminPoint {
    pub t_ratio: f64,
    pub n_min: u64,
    pub bound1: Bound1,
    pub bound2: f64,
    pub binding: Binding,
    /// `n_min a0` in metres, when a material is attached.
    pub l_min: Option<f64>,
    pub debye_valid: bool,
}

impl NminPoint {
    /// Attaches a lattice constant (metres).
    pub fn with_lattice_constant(mut self, a0_m: f64) -> Self {
        self.l_min = Some(self.n_min as f64 * a0_m);
        self
    }
}

/// Minimal group size at `T / Theta`: strict ceiling of the larger applicable
/// bound, floored at [`MIN_GROUP_SIZE`].
pub fn nmin_at(t_ratio: f64, alpha: f64, delta: f64) -> Result<NminPoint> {
    let e = ebar(t_ratio)?;
    let report = criteria::evaluate(t_ratio, alpha, delta, e)?;
    let n_min = report.n_min.max(MIN_GROUP_SIZE);
    Ok(NminPoint {
        t_ratio,
        n_min,
        bound1: report.bound_cond1,
        bound2: report.bound_cond2,
        binding: report.binding,
        l_min: None,
        debye_valid: n_min >= DEBYE_VALID_FROM,
    })
}

/// `2 alpha / delta` above the Debye temperature, `(3 alpha / 2 pi^2) (Theta/T)^3` below.
pub fn nmin_asymptotic(t_ratio: f64, alpha: f64, delta: f64) -> f64 {
    if t_ratio > 1.0 {
        2.0 * alpha / delta
    } else {
        3.0 * alpha / (2.0 * PI * PI) / t_ratio.powi(3)
    }
}

/// [`nmin_at`] over a sorted grid of positive `T / Theta` values.
pub fn nmin_curve(t_grid: &[f64], alpha: f64, delta: f64, material: Option<&Material>) -> Result<Vec<NminPoint>> {
    if t_grid.is_empty() {
        return Err(argument("temperature grid is empty"));
    }
    if t_grid.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
        return Err(domain("temperature grid values must be positive and finite"));
    }
    if t_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(argument("temperature grid must be sorted ascending"));
    }
    t_grid
        .iter()
        .map(|&t| {
            let p = nmin_at(t, alpha, delta)?;
            Ok(match material {
                Some(m) => p.with_lattice_constant(m.a0_m()),
                None => p,
            })
        })
        .collect()
}

/// `T / Theta` where the two bound curves intersect; `n_min` is smallest there.
pub fn bound_intersection(alpha: f64, delta: f64) -> Result<f64> {
    let gap = |t: f64| -> Result<f64> {
        let p = nmin_at(t, alpha, delta)?;
        Ok(p.bound1.raw() - p.bound2)
    };
    let (mut lo, mut hi) = (1e-6, crate::debye::quarter_point());
    if gap(lo)? <= 0.0 || gap(hi)? >= 0.0 {
        return Err(argument("bound curves do not intersect below the ebar = 1/4 point"));
    }
    while hi / lo - 1.0 > 1e-13 {
        let mid = (lo * hi).sqrt();
        if gap(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo * hi).sqrt())
}

/// `count` log-spaced points from `t_min` to `t_max` inclusive.
pub fn log_grid(t_min: f64, t_max: f64, count: usize) -> Result<Vec<f64>> {
    if !(t_min > 0.0 && t_max >= t_min && t_max.is_finite()) {
        return Err(domain(format!("need 0 < tmin <= tmax, got [{t_min}, {t_max}]")));
    }
    match count {
        0 => Err(argument("grid needs at least one point")),
        1 => Ok(vec![t_min]),
        _ => {
            let (lo, hi) = (t_min.ln(), t_max.ln());
            let step = (hi - lo) / (count - 1) as f64;
            let mut grid: Vec<f64> = (0..count).map(|i| (lo + step * i as f64).exp()).collect();
            grid[0] = t_min;
            grid[count - 1] = t_max;
            Ok(grid)
        }
    }
}

/// Minimal group size and length for a material at `kelvin`.
pub fn lmin_point(material: &Material, kelvin: f64, alpha: f64, delta: f64) -> Result<NminPoint> {
    if !(kelvin > 0.0) {
        return Err(domain(format!("temperature must be positive, got {kelvin} K")));
    }
    Ok(nmin_at(material.t_ratio(kelvin), alpha, delta)?.with_lattice_constant(material.a0_m()))
}

/// `l_min` in metres.
pub fn lmin(material: &Material, kelvin: f64, alpha: f64, delta: f64) -> Result<f64> {
    Ok(lmin_point(material, kelvin, alpha, delta)?.l_min.expect("lattice constant attached"))
}
