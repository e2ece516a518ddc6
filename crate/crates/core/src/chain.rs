//! The partitioned harmonic chain.
//!
//! Sites interact through `U(q) = m w0^2 q^2` and `V(q, q') = -m w0^2 q q'`,
//! so the full potential is `(m w0^2 / 2) sum (q_i - q_{i+1})^2` on a ring.
//! Removing the coupling between the last site of group `mu` and the first
//! site of group `mu + 1` leaves `N_G` open chains of `n` sites, each with
//! standing-wave modes `k = pi l / (a0 (n + 1))`, `l = 1..n`, and frequencies
//! `w_k = 2 w0 sin(k a0 / 2)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{argument, domain, Result};

/// Physical description of a chain partitioned into equal groups.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainParams {
    mass: f64,
    omega0: f64,
    a0: f64,
    n: usize,
    n_groups: usize,
}

impl ChainParams {
    pub fn new(mass: f64, omega0: f64, a0: f64, n: usize, n_groups: usize) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(argument(format!("mass must be positive, got {mass}")));
        }
        if !(omega0 > 0.0 && omega0.is_finite()) {
            return Err(argument(format!("omega0 must be positive, got {omega0}")));
        }
        if !(a0 > 0.0 && a0.is_finite()) {
            return Err(argument(format!("lattice constant must be positive, got {a0}")));
        }
        if n < 1 {
            return Err(argument("group size n must be at least 1"));
        }
        if n_groups < 2 {
            return Err(argument(format!("need at least 2 groups, got {n_groups}")));
        }
        Ok(Self { mass, omega0, a0, n, n_groups })
    }

    /// Chain with `m = w0 = a0 = 1`.
    pub fn natural(n: usize, n_groups: usize) -> Result<Self> {
        Self::new(1.0, 1.0, 1.0, n, n_groups)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    /// Particles per group.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_groups(&self) -> usize {
        self.n_groups
    }

    pub fn n_sites(&self) -> usize {
        self.n * self.n_groups
    }

    /// Sound velocity `v = w0 a0` of the long-wavelength branch.
    pub fn sound_velocity(&self) -> f64 {
        self.omega0 * self.a0
    }

    /// Debye energy `k_B Theta = v k_D` with `k_D = pi / a0`, i.e. `pi w0`.
    pub fn debye_energy(&self) -> f64 {
        PI * self.omega0
    }
}

/// Angular frequency `2 w0 |sin(k a0 / 2)|` of the chain's phonon branch.
///
/// Accepts `0 < k a0 <= pi`; the band edge itself is included.
pub fn dispersion(params: &ChainParams, k: f64) -> Result<f64> {
    let phase = k * params.a0;
    if !(phase > 0.0 && phase <= PI) {
        return Err(domain(format!("k a0 = {phase} outside (0, pi]")));
    }
    Ok(2.0 * params.omega0 * (0.5 * phase).sin().abs())
}

/// Normal modes of one isolated group of `n` sites with open ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSpectrum {
    wavenumbers: Vec<f64>,
    frequencies: Vec<f64>,
}

impl GroupSpectrum {
    pub fn new(params: &ChainParams) -> Self {
        let n = params.n;
        let (wavenumbers, frequencies) = (1..=n)
            .map(|l| {
                let theta = PI * l as f64 / (n + 1) as f64;
                // Direct sine evaluation keeps large-n spectra accurate.
                (theta / params.a0, 2.0 * params.omega0 * (0.5 * theta).sin())
            })
            .unzip();
        Self { wavenumbers, frequencies }
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    /// Orthonormal mode amplitude on `site` (1-based) for `mode` (1-based):
    /// `sqrt(2 / (n + 1)) sin(pi site mode / (n + 1))`.
    pub fn amplitude(&self, site: usize, mode: usize) -> f64 {
        let n1 = (self.len() + 1) as f64;
        (2.0 / n1).sqrt() * (PI * (site * mode) as f64 / n1).sin()
    }

    /// Zero-point energy `sum_k w_k / 2` of one group.
    pub fn zero_point_energy(&self) -> f64 {
        0.5 * self.frequencies.iter().sum::<f64>()
    }
}

pub fn group_spectrum(params: &ChainParams) -> GroupSpectrum {
    GroupSpectrum::new(params)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroundStateMode {
    /// `N_G sum_k w_k / 2` over the exact group spectra.
    Exact,
    /// `n N_G Theta / 4` with `k_B Theta = pi w0`.
    Debye,
}

/// Ground-state energy of the decoupled groups.
pub fn ground_state_energy(params: &ChainParams, mode: GroundStateMode) -> f64 {
    match mode {
        GroundStateMode::Exact => params.n_groups as f64 * GroupSpectrum::new(params).zero_point_energy(),
        GroundStateMode::Debye => params.n_sites() as f64 * params.debye_energy() / 4.0,
    }
}

/// A product of group eigenstates, labelled by per-mode occupations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OccupationState {
    occupations: Vec<Vec<u32>>,
    group_energies: Vec<f64>,
    total_energy: f64,
}

impl OccupationState {
    /// Occupations indexed `[group][mode]`, modes in ascending frequency.
    pub fn occupations(&self) -> &[Vec<u32>] {
        &self.occupations
    }

    /// `E_mu = sum_k w_k (nu_k + 1/2)` for each group.
    pub fn group_energies(&self) -> &[f64] {
        &self.group_energies
    }

    /// `E_a = sum_mu E_mu`.
    pub fn total_energy(&self) -> f64 {
        self.total_energy
    }

    /// Occupations flattened group-major: index `mu * n + k`.
    pub fn flat_occupations(&self) -> Vec<u32> {
        self.occupations.iter().flatten().copied().collect()
    }
}

/// Energies of the product state with the given occupations.
pub fn state_energy(params: &ChainParams, occupations: Vec<Vec<u32>>) -> Result<OccupationState> {
    if occupations.len() != params.n_groups {
        return Err(argument(format!("expected {} groups of occupations, got {}", params.n_groups, occupations.len())));
    }
    if let Some((mu, occ)) = occupations.iter().enumerate().find(|(_, o)| o.len() != params.n) {
        return Err(argument(format!("group {mu} has {} occupations, expected {}", occ.len(), params.n)));
    }
    let spectrum = GroupSpectrum::new(params);
    let group_energies: Vec<f64> = occupations
        .iter()
        .map(|occ| occ.iter().zip(spectrum.frequencies()).map(|(&nu, &w)| w * (nu as f64 + 0.5)).sum())
        .collect();
    let total_energy = group_energies.iter().sum();
    Ok(OccupationState { occupations, group_energies, total_energy })
}
