//! Debye-approximation thermodynamics of the chain.
//!
//! The mean thermal energy above the ground state is
//! `E = n N_G Theta (T/Theta)^2 int_0^{Theta/T} x / (e^x - 1) dx`;
//! the reduced form `ebar = E / (n N_G Theta)` depends on `T / Theta` only.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::chain::{ground_state_energy, ChainParams, GroundStateMode};
use crate::error::{argument, domain, Result};
use crate::quadrature::GaussLegendre;

/// `int_0^inf x / (e^x - 1) dx`.
pub const BOSE_INTEGRAL_INF: f64 = PI * PI / 6.0;

/// Below this point the integral is summed from its power series.
const SERIES_CUTOFF: f64 = 1e-2;
/// Above this point the integral is closed with an analytic tail.
const TAIL_START: f64 = 40.0;
const QUADRATURE_ORDER: usize = 15;
const QUADRATURE_TOL: f64 = 1e-14;

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(QUADRATURE_ORDER))
}

fn bose_integrand(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x / x.exp_m1()
    }
}

/// `int_0^u` of the integrand's Bernoulli series
/// `x / (e^x - 1) = 1 - x/2 + x^2/12 - x^4/720 + x^6/30240 - ...`.
fn series_integral(u: f64) -> f64 {
    let u2 = u * u;
    u * (1.0 + u * (-0.25 + u * (1.0 / 36.0 + u2 * (-1.0 / 3600.0 + u2 * (1.0 / 211_680.0 - u2 / 10_886_400.0)))))
}

/// `int_c^inf x / (e^x - 1) dx = sum_j e^{-j c} (c / j + 1 / j^2)`.
fn tail_integral(c: f64) -> f64 {
    if c.is_infinite() {
        return 0.0;
    }
    let mut sum = 0.0;
    for j in 1..200 {
        let j = j as f64;
        let term = (-j * c).exp() * (c / j + 1.0 / (j * j));
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// `int_0^u x / (e^x - 1) dx` for `u >= 0`, `u = inf` included.
pub fn bose_integral(u: f64) -> Result<f64> {
    bose_integral_with(u, rule())
}

/// [`bose_integral`] with an explicit panel rule, for convergence studies.
pub fn bose_integral_with(u: f64, rule: &GaussLegendre) -> Result<f64> {
    if u.is_nan() || u < 0.0 {
        return Err(domain(format!("Bose integral upper limit must be >= 0, got {u}")));
    }
    if u <= SERIES_CUTOFF {
        return Ok(series_integral(u));
    }
    let head = series_integral(SERIES_CUTOFF);
    let body_end = u.min(TAIL_START);
    let body = rule.integrate_adaptive(&bose_integrand, SERIES_CUTOFF, body_end, QUADRATURE_TOL);
    let tail = if u > TAIL_START { tail_integral(TAIL_START) - tail_integral(u) } else { 0.0 };
    Ok(head + body + tail)
}

/// Reduced thermal energy per site, `(T/Theta)^2 int_0^{Theta/T} x/(e^x-1) dx`.
pub fn ebar(t_ratio: f64) -> Result<f64> {
    if !(t_ratio > 0.0) {
        return Err(domain(format!("T/Theta must be positive, got {t_ratio}")));
    }
    Ok(t_ratio * t_ratio * bose_integral(1.0 / t_ratio)?)
}

/// The `T / Theta` at which `ebar = 1/4`, i.e. where the thermal energy
/// equals the Debye ground-state energy. Located by bisection.
pub fn quarter_point() -> f64 {
    static POINT: OnceLock<f64> = OnceLock::new();
    *POINT.get_or_init(|| {
        let (mut lo, mut hi) = (0.1, 2.0);
        while hi - lo > 1e-14 {
            let mid = 0.5 * (lo + hi);
            if ebar(mid).expect("positive temperature") < 0.25 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    })
}

/// A temperature expressed relative to the Debye temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalPoint {
    t_ratio: f64,
    ebar: f64,
    beta: f64,
}

impl ThermalPoint {
    /// `beta` is taken in units where the Debye energy equals `theta`.
    pub fn new(t_ratio: f64, theta: f64) -> Result<Self> {
        if !(theta > 0.0) {
            return Err(domain(format!("Debye energy must be positive, got {theta}")));
        }
        let ebar = ebar(t_ratio)?;
        Ok(Self { t_ratio, ebar, beta: 1.0 / (t_ratio * theta) })
    }

    /// Thermal point for a chain, with `Theta = pi w0`.
    pub fn for_chain(t_ratio: f64, params: &ChainParams) -> Result<Self> {
        Self::new(t_ratio, params.debye_energy())
    }

    pub fn t_ratio(&self) -> f64 {
        self.t_ratio
    }

    pub fn ebar(&self) -> f64 {
        self.ebar
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Admissible per-group energy window centred on the thermal peak.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyRange {
    pub e_min: f64,
    pub e_max: f64,
    pub alpha: f64,
}

impl EnergyRange {
    pub fn contains(&self, e: f64) -> bool {
        self.e_min <= e && e <= self.e_max
    }
}

/// `E/(alpha N_G) + E0/N_G <= E_mu <= alpha E/N_G + E0/N_G` with the Debye
/// ground-state energy `E0`.
pub fn energy_range(tp: &ThermalPoint, params: &ChainParams, alpha: f64) -> Result<EnergyRange> {
    if !(alpha >= 1.0) {
        return Err(argument(format!("alpha must be >= 1, got {alpha}")));
    }
    let theta = params.debye_energy();
    if ((tp.beta * tp.t_ratio * theta) - 1.0).abs() > 1e-12 {
        return Err(argument("thermal point was built for a different Debye energy"));
    }
    let groups = params.n_groups() as f64;
    let thermal = tp.ebar * params.n_sites() as f64 * theta / groups;
    let ground = ground_state_energy(params, GroundStateMode::Debye) / groups;
    Ok(EnergyRange { e_min: thermal / alpha + ground, e_max: alpha * thermal + ground, alpha })
}
