use crate::chain::{ChainParams, OccupationState};
use crate::error::{argument, Error, Result};

/// Largest number of product states a basis may hold unless configured otherwise.
pub const DEFAULT_DIMENSION_CAP: usize = 20_000;

/// Product states with at most `local_dim - 1` quanta in every group mode.
///
/// States are enumerated in mixed radix, mode 0 of group 0 varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedBasis {
    params: ChainParams,
    local_dim: usize,
    dim: usize,
}

impl TruncatedBasis {
    pub fn new(params: &ChainParams, local_dim: usize) -> Result<Self> {
        Self::with_cap(params, local_dim, DEFAULT_DIMENSION_CAP)
    }

    pub fn with_cap(params: &ChainParams, local_dim: usize, cap: usize) -> Result<Self> {
        if local_dim < 2 {
            return Err(argument(format!("local dimension must be at least 2, got {local_dim}")));
        }
        let modes = params.n_sites() as u32;
        let dim = (local_dim as u128).checked_pow(modes).unwrap_or(u128::MAX);
        if dim > cap as u128 {
            return Err(Error::DimensionCap { dim, cap });
        }
        Ok(Self { params: *params, local_dim, dim: dim as usize })
    }

    pub fn params(&self) -> &ChainParams {
        &self.params
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_modes(&self) -> usize {
        self.params.n_sites()
    }

    /// Whether every occupation is below the local dimension.
    pub fn contains(&self, occ: &[u32]) -> bool {
        occ.len() == self.n_modes() && occ.iter().all(|&nu| (nu as usize) < self.local_dim)
    }

    pub fn index_of(&self, occ: &[u32]) -> Option<usize> {
        if !self.contains(occ) {
            return None;
        }
        Some(occ.iter().rev().fold(0, |acc, &nu| acc * self.local_dim + nu as usize))
    }

    pub fn occupations_at(&self, mut index: usize) -> Vec<u32> {
        (0..self.n_modes())
            .map(|_| {
                let nu = index % self.local_dim;
                index /= self.local_dim;
                nu as u32
            })
            .collect()
    }

    pub fn states(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.dim).map(|i| self.occupations_at(i))
    }

    /// Checks that `state` belongs to this chain and lies inside the truncation.
    pub fn check_state(&self, state: &OccupationState) -> Result<Vec<u32>> {
        let occ = state.flat_occupations();
        if state.occupations().len() != self.params.n_groups() || occ.len() != self.n_modes() {
            return Err(argument("occupation state does not match the basis chain"));
        }
        if !self.contains(&occ) {
            return Err(argument(format!(
                "state {:?} exceeds the truncation of {} levels per mode",
                state.occupations(),
                self.local_dim
            )));
        }
        Ok(occ)
    }
}
