//! Exact checks on small chains.
//!
//! Everything here works in the number basis of the isolated groups' normal
//! modes, where the free Hamiltonian is diagonal and the boundary couplings
//! are products of two position operators. Expectation values in single
//! product states ([`moments`]) are computed with ladder algebra and need no
//! truncation. Quantities that involve eigenstates of the full chain
//! ([`spectral`]) use a dense Hamiltonian restricted to a truncated basis of
//! at most `d - 1` quanta per mode.

mod basis;
pub mod density;
pub mod ladder;
pub mod moments;
pub mod spectral;

pub use basis::{TruncatedBasis, DEFAULT_DIMENSION_CAP};
pub use density::{ln_rho_diagonal, rho_diagonal};
pub use moments::{moments, sigma_debye_check, MomentSet, SigmaDebyeCheck};
pub use spectral::{offdiag_scan, w_distribution, Diagonalized, OffDiagonalReport, WDistribution};
