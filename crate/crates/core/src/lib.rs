//! Minimal group sizes and length scales on which a local temperature exists
//! in a quantum harmonic chain.
//!
//! The chain of `n * N_G` particles is cut into `N_G` groups of `n` adjacent
//! sites. A group carries the global temperature only if the thermal state of
//! the whole chain, written in the product basis of isolated groups, is
//! approximately a product of canonical states. Two conditions on the energy
//! moments of product states decide this; for the harmonic chain in the Debye
//! approximation they turn into closed-form lower bounds on `n`.
//!
//! Units: `hbar = k_B = 1` throughout the library. Temperatures enter mostly
//! as the ratio `T / Theta` with the Debye temperature `Theta`; conversions to
//! kelvin and metres happen only where a [`Material`] is involved.
//!
//! Module map:
//! - [`chain`]: dispersion, group spectra, product-state energies.
//! - [`debye`]: Bose integral, reduced internal energy, criterion energy window.
//! - [`criteria`]: the general conditions and their harmonic-chain bounds.
//! - [`solver`]: `n_min(T)` curves, asymptotics, `l_min` for materials.
//! - [`oracle`]: exact small-system checks in a truncated Fock space.

// `!(x > 0.0)` guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chain;
pub mod criteria;
pub mod debye;
mod error;
pub mod material;
pub mod oracle;
pub mod quadrature;
pub mod solver;
pub mod special;

pub use chain::{ChainParams, GroundStateMode, GroupSpectrum, OccupationState};
pub use criteria::{Bound1, CriterionReport, GeneralConditionInput};
pub use debye::{EnergyRange, ThermalPoint};
pub use error::{Error, Result};
pub use material::Material;
pub use solver::NminPoint;
