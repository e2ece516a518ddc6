//! Sparse kets in the group normal-mode number basis and the chain operators
//! acting on them.
//!
//! Modes are indexed group-major: global mode `mu * n + k` is mode `k`
//! (0-based, ascending frequency) of group `mu`. Kets are unbounded in the
//! occupation numbers; truncation is applied only by the callers.

use std::collections::BTreeMap;

use crate::chain::{ChainParams, GroupSpectrum};

/// A real superposition of product number states.
pub type Ket = BTreeMap<Vec<u32>, f64>;

pub fn basis_ket(occupations: Vec<u32>) -> Ket {
    let mut k = Ket::new();
    k.insert(occupations, 1.0);
    k
}

pub fn inner(a: &Ket, b: &Ket) -> f64 {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small.iter().filter_map(|(occ, amp)| large.get(occ).map(|other| amp * other)).sum()
}

pub fn norm_sqr(a: &Ket) -> f64 {
    a.values().map(|v| v * v).sum()
}

fn add_into(target: &mut Ket, occ: Vec<u32>, amp: f64) {
    *target.entry(occ).or_insert(0.0) += amp;
}

pub fn add(a: &Ket, b: &Ket) -> Ket {
    let mut out = a.clone();
    for (occ, amp) in b {
        add_into(&mut out, occ.clone(), *amp);
    }
    out
}

/// Operators of one partitioned harmonic chain.
#[derive(Debug, Clone)]
pub struct ChainOperators {
    params: ChainParams,
    spectrum: GroupSpectrum,
}

impl ChainOperators {
    pub fn new(params: &ChainParams) -> Self {
        Self { params: *params, spectrum: GroupSpectrum::new(params) }
    }

    pub fn params(&self) -> &ChainParams {
        &self.params
    }

    pub fn spectrum(&self) -> &GroupSpectrum {
        &self.spectrum
    }

    pub fn n_modes(&self) -> usize {
        self.params.n_sites()
    }

    fn group_after(&self, mu: usize) -> usize {
        (mu + 1) % self.params.n_groups()
    }

    /// Energy of group `mu` without its coupling: `sum_k w_k (nu_k + 1/2)`.
    pub fn group_energy(&self, occ: &[u32], mu: usize) -> f64 {
        let n = self.params.n();
        occ[mu * n..(mu + 1) * n].iter().zip(self.spectrum.frequencies()).map(|(&nu, &w)| w * (nu as f64 + 0.5)).sum()
    }

    /// `H0 = sum_mu (H_mu - V_mu)`, diagonal in this basis.
    pub fn free_energy(&self, occ: &[u32]) -> f64 {
        (0..self.params.n_groups()).map(|mu| self.group_energy(occ, mu)).sum()
    }

    /// `q` of `site` (1-based) in group `mu`:
    /// `sum_k c_{site,k} (a_k + a_k^dag) / sqrt(2 m w_k)`.
    pub fn apply_position(&self, ket: &Ket, mu: usize, site: usize) -> Ket {
        let n = self.params.n();
        let mass = self.params.mass();
        let coeffs: Vec<f64> = (0..n)
            .map(|k| self.spectrum.amplitude(site, k + 1) / (2.0 * mass * self.spectrum.frequencies()[k]).sqrt())
            .collect();
        let mut out = Ket::new();
        for (occ, &amp) in ket {
            for (k, &c) in coeffs.iter().enumerate() {
                if c == 0.0 {
                    continue;
                }
                let g = mu * n + k;
                let nu = occ[g];
                if nu > 0 {
                    let mut lowered = occ.clone();
                    lowered[g] = nu - 1;
                    add_into(&mut out, lowered, amp * c * (nu as f64).sqrt());
                }
                let mut raised = occ.clone();
                raised[g] = nu + 1;
                add_into(&mut out, raised, amp * c * (nu as f64 + 1.0).sqrt());
            }
        }
        out
    }

    /// Boundary coupling `V_mu = -m w0^2 q_{mu, n} q_{mu+1, 1}`.
    pub fn apply_coupling(&self, ket: &Ket, mu: usize) -> Ket {
        let strength = -self.params.mass() * self.params.omega0().powi(2);
        let first = self.apply_position(ket, self.group_after(mu), 1);
        let mut out = self.apply_position(&first, mu, self.params.n());
        for amp in out.values_mut() {
            *amp *= strength;
        }
        out
    }

    /// Free group energy of group `mu`, applied diagonally.
    pub fn apply_group_energy(&self, ket: &Ket, mu: usize) -> Ket {
        ket.iter().map(|(occ, amp)| (occ.clone(), amp * self.group_energy(occ, mu))).collect()
    }

    /// Group Hamiltonian including its coupling to the next group,
    /// `H_mu = (H_mu - V_mu) + V_mu`.
    pub fn apply_group_hamiltonian(&self, ket: &Ket, mu: usize) -> Ket {
        add(&self.apply_group_energy(ket, mu), &self.apply_coupling(ket, mu))
    }

    /// Full chain Hamiltonian `H = sum_mu H_mu`.
    pub fn apply_hamiltonian(&self, ket: &Ket) -> Ket {
        (0..self.params.n_groups()).fold(Ket::new(), |acc, mu| add(&acc, &self.apply_group_hamiltonian(ket, mu)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ops(n: usize, groups: usize) -> ChainOperators {
        ChainOperators::new(&ChainParams::natural(n, groups).unwrap())
    }

    #[test]
    fn position_squared_in_vacuum() {
        // <0|q^2|0> = sum_k c_k^2 / (2 m w_k)
        let o = ops(3, 2);
        let vac = basis_ket(vec![0; 6]);
        let q = o.apply_position(&vac, 0, 2);
        let expected: f64 =
            (1..=3).map(|k| o.spectrum().amplitude(2, k).powi(2) / (2.0 * o.spectrum().frequencies()[k - 1])).sum();
        assert!((norm_sqr(&q) - expected).abs() < 1e-14);
    }

    #[test]
    fn hamiltonian_is_symmetric_on_basis_states() {
        let o = ops(2, 3);
        let a = vec![1, 0, 0, 2, 1, 0];
        let b = vec![0, 0, 1, 2, 1, 0];
        let ha = o.apply_hamiltonian(&basis_ket(a.clone()));
        let hb = o.apply_hamiltonian(&basis_ket(b.clone()));
        let hab = ha.get(&b).copied().unwrap_or(0.0);
        let hba = hb.get(&a).copied().unwrap_or(0.0);
        assert!(hab.abs() > 1e-3);
        assert!((hab - hba).abs() < 1e-14);
    }

    #[test]
    fn diagonal_of_hamiltonian_is_free_energy() {
        let o = ops(2, 3);
        let occ = vec![2, 0, 1, 0, 0, 3];
        let h = o.apply_hamiltonian(&basis_ket(occ.clone()));
        assert!((h[&occ] - o.free_energy(&occ)).abs() < 1e-14);
    }
}
