//! Dense diagonalization of the truncated chain Hamiltonian.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::basis::TruncatedBasis;
use super::ladder::{basis_ket, ChainOperators};
use super::moments::moments;
use crate::chain::OccupationState;
use crate::error::{domain, Result};

/// Weights below this are treated as outside the support of `w_a(E)`.
const SUPPORT_FLOOR: f64 = 1e-14;
const MAX_BINS: usize = 10_000;

/// Eigen-decomposition of `P H P` for a truncated basis.
#[derive(Debug, Clone)]
pub struct Diagonalized {
    basis: TruncatedBasis,
    /// `P H P` in the product basis.
    hamiltonian: DMatrix<f64>,
    /// Ascending.
    eigenvalues: DVector<f64>,
    /// Columns are eigenvectors, in the order of `eigenvalues`.
    eigenvectors: DMatrix<f64>,
}

impl Diagonalized {
    pub fn new(basis: &TruncatedBasis) -> Self {
        let hamiltonian = hamiltonian_matrix(basis);
        let eig = SymmetricEigen::new(hamiltonian.clone());
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let eigenvalues = DVector::from_iterator(order.len(), order.iter().map(|&i| eig.eigenvalues[i]));
        let eigenvectors = DMatrix::from_fn(order.len(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
        Self { basis: basis.clone(), hamiltonian, eigenvalues, eigenvectors }
    }

    pub fn basis(&self) -> &TruncatedBasis {
        &self.basis
    }

    pub fn hamiltonian(&self) -> &DMatrix<f64> {
        &self.hamiltonian
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// `|<a|phi>|^2` for every eigenstate `phi`, `a` given by its basis index.
    pub fn overlaps(&self, index: usize) -> Vec<f64> {
        self.eigenvectors.row(index).iter().map(|v| v * v).collect()
    }

    pub fn w_distribution(&self, state: &OccupationState) -> Result<WDistribution> {
        let occ = self.basis.check_state(state)?;
        let index = self.basis.index_of(&occ).expect("state checked against basis");
        let weights = self.overlaps(index);
        let energies = self.eigenvalues.as_slice();

        let total_weight: f64 = weights.iter().sum();
        let mean = dot(&weights, energies) / total_weight;
        let central = |p: i32| -> f64 {
            weights.iter().zip(energies).map(|(w, e)| w * (e - mean).powi(p)).sum::<f64>() / total_weight
        };
        let variance = central(2);
        let skewness = central(3) / variance.powf(1.5);
        let (bin_edges, bin_weights) = histogram(energies, &weights);
        let leakage = moments(&self.basis, state)?.leakage;
        Ok(WDistribution { bin_edges, bin_weights, mean, variance, skewness, total_weight, leakage })
    }

    /// Largest product-basis coherence of `exp(-beta P H P) / Z` between
    /// energetically separated product states.
    pub fn offdiag_scan(&self, beta: f64) -> Result<OffDiagonalReport> {
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(domain(format!("beta must be finite and >= 0, got {beta}")));
        }
        let dim = self.basis.dim();
        let e_min = self.eigenvalues[0];
        let boltzmann = self.eigenvalues.map(|e| (-beta * (e - e_min)).exp());
        let z = boltzmann.sum();
        let scaled = DMatrix::from_fn(dim, dim, |r, c| self.eigenvectors[(r, c)] * boltzmann[c] / z);
        let rho = scaled * self.eigenvectors.transpose();

        let ops = ChainOperators::new(self.basis.params());
        let states: Vec<Vec<u32>> = self.basis.states().collect();
        let free: Vec<f64> = states.iter().map(|o| ops.free_energy(o)).collect();
        // widths within the truncated space: (PH^2P)_aa - (PHP)_aa^2
        let sigma: Vec<f64> = (0..dim)
            .map(|a| {
                let col = self.hamiltonian.column(a);
                (col.norm_squared() - col[a] * col[a]).max(0.0).sqrt()
            })
            .collect();

        let mut report = OffDiagonalReport {
            max_offdiag: 0.0,
            min_diagonal: f64::INFINITY,
            ratio: 0.0,
            pairs_considered: 0,
            pairs_excluded: 0,
        };
        for a in 0..dim {
            for b in a + 1..dim {
                if (free[a] - free[b]).abs() <= sigma[a] + sigma[b] {
                    report.pairs_excluded += 1;
                    continue;
                }
                report.pairs_considered += 1;
                report.max_offdiag = report.max_offdiag.max(rho[(a, b)].abs());
                report.min_diagonal = report.min_diagonal.min(rho[(a, a)]).min(rho[(b, b)]);
            }
        }
        report.ratio = if report.pairs_considered > 0 { report.max_offdiag / report.min_diagonal } else { 0.0 };
        Ok(report)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `P H P` assembled column by column from ladder-operator images.
pub fn hamiltonian_matrix(basis: &TruncatedBasis) -> DMatrix<f64> {
    let ops = ChainOperators::new(basis.params());
    let dim = basis.dim();
    let mut h = DMatrix::zeros(dim, dim);
    for (col, occ) in basis.states().enumerate() {
        for (target, amp) in ops.apply_hamiltonian(&basis_ket(occ)) {
            if let Some(row) = basis.index_of(&target) {
                h[(row, col)] += amp;
            }
        }
    }
    // exact symmetry up to rounding in the ladder coefficients
    let t = h.transpose();
    (h + t) * 0.5
}

/// `w_a(E)` of one product state over the eigenvalues of the truncated chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WDistribution {
    pub bin_edges: Vec<f64>,
    /// Weight per bin; `bin_weights.len() == bin_edges.len() - 1`.
    pub bin_weights: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    /// `sum_phi |<a|phi>|^2`; one up to rounding.
    pub total_weight: f64,
    /// Part of `<a|H^2|a>` lost to the truncation, relative.
    pub leakage: f64,
}

/// Freedman-Diaconis bins over the support of a weighted sample, using
/// weighted quartiles and the Kish effective sample size. `values` ascending.
fn histogram(values: &[f64], weights: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let support: Vec<(f64, f64)> =
        values.iter().zip(weights).filter(|(_, &w)| w > SUPPORT_FLOOR).map(|(&v, &w)| (v, w)).collect();
    let total: f64 = support.iter().map(|p| p.1).sum();
    let lo = support.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = support.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);

    let quantile = |q: f64| {
        let mut acc = 0.0;
        for &(v, w) in &support {
            acc += w / total;
            if acc >= q {
                return v;
            }
        }
        hi
    };
    let iqr = quantile(0.75) - quantile(0.25);
    let effective = total * total / support.iter().map(|p| p.1 * p.1).sum::<f64>();
    let width = 2.0 * iqr / effective.cbrt();

    let bins = if hi > lo && width > 0.0 { (((hi - lo) / width).ceil() as usize).clamp(1, MAX_BINS) } else { 1 };
    let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 0.5, hi + 0.5) };
    let step = (hi - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|i| lo + step * i as f64).collect();
    let mut counts = vec![0.0; bins];
    for &(v, w) in &support {
        let i = (((v - lo) / step) as usize).min(bins - 1);
        counts[i] += w;
    }
    (edges, counts)
}

/// Diagonalizes `basis` and returns `w_a(E)` for `state`.
pub fn w_distribution(basis: &TruncatedBasis, state: &OccupationState) -> Result<WDistribution> {
    Diagonalized::new(basis).w_distribution(state)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OffDiagonalReport {
    /// `max |<a|rho|b>|` over pairs with `|E_a - E_b| > sigma_a + sigma_b`.
    pub max_offdiag: f64,
    /// Smallest diagonal element among states in those pairs.
    pub min_diagonal: f64,
    pub ratio: f64,
    pub pairs_considered: usize,
    pub pairs_excluded: usize,
}

pub fn offdiag_scan(basis: &TruncatedBasis, beta: f64) -> Result<OffDiagonalReport> {
    Diagonalized::new(basis).offdiag_scan(beta)
}
