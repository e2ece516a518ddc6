//! Energy moments of single product states.

use serde::{Deserialize, Serialize};

use super::basis::TruncatedBasis;
use super::ladder::{add, basis_ket, inner, norm_sqr, ChainOperators, Ket};
use crate::chain::{ChainParams, GroupSpectrum, OccupationState};
use crate::error::{argument, Result};

/// Relative leakage above which a [`MomentSet`] is flagged.
pub const LEAKAGE_TOLERANCE: f64 = 1e-12;

/// First and second moments of the full Hamiltonian in a product state `|a>`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentSet {
    pub e_a: f64,
    /// `<a|H|a> - <a|H0|a>`.
    pub eps_a: f64,
    /// `<a|H^2|a> - <a|H|a>^2`.
    pub sigma2_a: f64,
    /// `<a|V_mu|a>` per boundary.
    pub eps_mu: Vec<f64>,
    /// Variance of each group Hamiltonian `H_mu` (coupling to the next group included).
    pub sigma2_mu: Vec<f64>,
    /// `sum_{nu=mu-1}^{mu+1} <{H_{nu-1}, H_nu}> - 2 <H_{nu-1}><H_nu>`.
    pub sigma2_tilde_mu: Vec<f64>,
    pub y_a: f64,
    /// Weight of `H|a>` outside the truncated basis, relative to `<a|H^2|a>`.
    pub leakage: f64,
}

impl MomentSet {
    pub fn flagged(&self) -> bool {
        self.leakage > LEAKAGE_TOLERANCE
    }
}

/// Moments of `state` by ladder algebra. Exact; the basis only decides how
/// much of `H|a>` leaks out of the truncation, which is reported.
pub fn moments(basis: &TruncatedBasis, state: &OccupationState) -> Result<MomentSet> {
    let occ = basis.check_state(state)?;
    let ops = ChainOperators::new(basis.params());
    let groups = basis.params().n_groups();
    let ket = basis_ket(occ.clone());

    let images: Vec<Ket> = (0..groups).map(|mu| ops.apply_group_hamiltonian(&ket, mu)).collect();
    let means: Vec<f64> = images.iter().map(|g| inner(&ket, g)).collect();
    let cov = |mu: usize, nu: usize| inner(&images[mu], &images[nu]) - means[mu] * means[nu];

    let eps_mu: Vec<f64> = (0..groups).map(|mu| means[mu] - ops.group_energy(&occ, mu)).collect();
    let sigma2_mu: Vec<f64> = (0..groups).map(|mu| cov(mu, mu)).collect();
    let prev = |mu: usize| (mu + groups - 1) % groups;
    let sigma2_tilde_mu: Vec<f64> = (0..groups)
        .map(|mu| [prev(mu), mu, (mu + 1) % groups].iter().map(|&nu| 2.0 * cov(prev(nu), nu)).sum())
        .collect();

    let h_ket = images.iter().fold(Ket::new(), |acc, g| add(&acc, g));
    let mean_h = inner(&ket, &h_ket);
    let second = norm_sqr(&h_ket);
    let outside: f64 = h_ket.iter().filter(|(o, _)| !basis.contains(o)).map(|(_, a)| a * a).sum();

    let e_a = state.total_energy();
    let eps_a = mean_h - e_a;
    Ok(MomentSet {
        e_a,
        eps_a,
        sigma2_a: second - mean_h * mean_h,
        eps_mu,
        sigma2_mu,
        sigma2_tilde_mu,
        y_a: e_a + eps_a,
        leakage: outside / second,
    })
}

/// Exact boundary variances next to the continuum estimate `4 n^-2 E_mu E_mu+1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaDebyeCheck {
    /// `Var(H_mu)` from closed-form normal-mode sums.
    pub exact: Vec<f64>,
    /// Continuum estimate with `E_mu` the full group eigenvalue (zero point included).
    pub debye_total: Vec<f64>,
    /// Continuum estimate with `E_mu` counted from the group's zero point.
    pub debye_excitation: Vec<f64>,
}

impl SigmaDebyeCheck {
    /// `|exact - debye| / exact` for the zero-point-inclusive convention.
    pub fn deviation_total(&self) -> Vec<f64> {
        relative_deviation(&self.exact, &self.debye_total)
    }

    pub fn deviation_excitation(&self) -> Vec<f64> {
        relative_deviation(&self.exact, &self.debye_excitation)
    }
}

fn relative_deviation(exact: &[f64], approx: &[f64]) -> Vec<f64> {
    exact.iter().zip(approx).map(|(e, a)| (e - a).abs() / e).collect()
}

/// `<q_site^2>` of one group in its number state.
fn position_variance(spectrum: &GroupSpectrum, mass: f64, occ: &[u32], site: usize) -> f64 {
    occ.iter()
        .zip(spectrum.frequencies())
        .enumerate()
        .map(|(k, (&nu, &w))| spectrum.amplitude(site, k + 1).powi(2) * (2.0 * nu as f64 + 1.0) / (2.0 * mass * w))
        .sum()
}

/// For a product number state `Var(H_mu) = (m w0^2)^2 <q_{mu,n}^2> <q_{mu+1,1}^2>`,
/// since the free part is diagonal and `<q> = 0` in every factor.
pub fn sigma_debye_check(params: &ChainParams, state: &OccupationState) -> Result<SigmaDebyeCheck> {
    let groups = params.n_groups();
    if state.occupations().len() != groups || state.occupations().iter().any(|o| o.len() != params.n()) {
        return Err(argument("occupation state does not match the chain"));
    }
    let spectrum = GroupSpectrum::new(params);
    let coupling = params.mass() * params.omega0().powi(2);
    let n = params.n();
    let zero_point = spectrum.zero_point_energy();
    let occ = state.occupations();
    let energies = state.group_energies();

    let mut check = SigmaDebyeCheck { exact: vec![], debye_total: vec![], debye_excitation: vec![] };
    for mu in 0..groups {
        let next = (mu + 1) % groups;
        let last = position_variance(&spectrum, params.mass(), &occ[mu], n);
        let first = position_variance(&spectrum, params.mass(), &occ[next], 1);
        let scale = 4.0 / (n * n) as f64;
        check.exact.push(coupling * coupling * last * first);
        check.debye_total.push(scale * energies[mu] * energies[next]);
        check.debye_excitation.push(scale * (energies[mu] - zero_point) * (energies[next] - zero_point));
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::state_energy;
    use std::f64::consts::PI;

    fn state(p: &ChainParams, occ: Vec<Vec<u32>>) -> OccupationState {
        state_energy(p, occ).unwrap()
    }

    #[test]
    fn harmonic_identities_on_number_states() {
        let p = ChainParams::natural(2, 4).unwrap();
        let b = TruncatedBasis::with_cap(&p, 4, 1 << 16).unwrap();
        let s = state(&p, vec![vec![1, 0], vec![0, 2], vec![1, 1], vec![0, 0]]);
        let m = moments(&b, &s).unwrap();
        assert!(m.eps_a.abs() < 1e-12);
        assert!(m.eps_mu.iter().all(|e| e.abs() < 1e-12));
        assert!(m.sigma2_tilde_mu.iter().all(|e| e.abs() < 1e-12));
        let sum: f64 = m.sigma2_mu.iter().sum();
        assert!((m.sigma2_a - sum).abs() < 1e-12 * sum);
        assert!(!m.flagged());
    }

    #[test]
    fn ladder_variance_matches_closed_form() {
        let p = ChainParams::new(1.7, 0.8, 1.0, 3, 3).unwrap();
        let b = TruncatedBasis::with_cap(&p, 4, 1 << 20).unwrap();
        let s = state(&p, vec![vec![0, 1, 2], vec![3, 0, 0], vec![1, 1, 1]]);
        let m = moments(&b, &s).unwrap();
        let c = sigma_debye_check(&p, &s).unwrap();
        for (a, e) in m.sigma2_mu.iter().zip(&c.exact) {
            assert!((a - e).abs() < 1e-12 * e);
        }
    }

    #[test]
    fn leakage_is_reported_at_the_truncation_edge() {
        let p = ChainParams::natural(1, 3).unwrap();
        let b = TruncatedBasis::new(&p, 3).unwrap();
        let inside = moments(&b, &state(&p, vec![vec![1], vec![0], vec![1]])).unwrap();
        assert!(!inside.flagged());
        let edge = moments(&b, &state(&p, vec![vec![2], vec![0], vec![0]])).unwrap();
        assert!(edge.flagged());
        // the moments themselves do not depend on the truncation
        let wide = TruncatedBasis::new(&p, 6).unwrap();
        let same = moments(&wide, &state(&p, vec![vec![2], vec![0], vec![0]])).unwrap();
        assert!(!same.flagged());
        assert!((same.sigma2_a - edge.sigma2_a).abs() < 1e-14);
    }

    #[test]
    fn states_outside_truncation_are_rejected() {
        let p = ChainParams::natural(1, 2).unwrap();
        let b = TruncatedBasis::new(&p, 3).unwrap();
        assert!(moments(&b, &state(&p, vec![vec![3], vec![0]])).is_err());
    }

    #[test]
    fn vacuum_boundary_variance_floor() {
        // n-independent floor (4 w0 / 3 pi)^2, approached from below
        let floor = (4.0 / (3.0 * PI)).powi(2);
        let mut prev = 0.0;
        for n in [8, 16, 32, 64, 256] {
            let p = ChainParams::natural(n, 3).unwrap();
            let c = sigma_debye_check(&p, &state(&p, vec![vec![0; n]; 3])).unwrap();
            let s = c.exact[0];
            assert!(s > prev && s < floor);
            assert!(s > floor * 0.98);
            if n >= 16 {
                assert!(s > floor * 0.99);
            }
            prev = s;
        }
    }

    #[test]
    fn vacuum_ratio_to_continuum_formula() {
        // exact / continuum -> (16 / 9 pi^2) / (16 / pi^2) = 1/9
        let p = ChainParams::natural(1024, 2).unwrap();
        let c = sigma_debye_check(&p, &state(&p, vec![vec![0; 1024]; 2])).unwrap();
        assert!((c.exact[0] / c.debye_total[0] * 9.0 - 1.0).abs() < 0.01);
        assert_eq!(c.debye_excitation[0], 0.0);
    }

    /// Occupations of a classical thermal state, `nu_k = round(T / w_k)`.
    fn hot_state(p: &ChainParams, temperature: f64) -> OccupationState {
        let spectrum = GroupSpectrum::new(p);
        let occ: Vec<u32> =
            spectrum.frequencies().iter().map(|w| (1.0 / (w / temperature).exp_m1()).round() as u32).collect();
        state(p, vec![occ; p.n_groups()])
    }

    #[test]
    fn hot_ratio_to_continuum_formula() {
        // equipartition gives <q_edge^2> = E_mu / (n m w0^2): a quarter of the continuum value
        let ratios: Vec<f64> = [8, 16, 32, 64, 256]
            .iter()
            .map(|&n| {
                let p = ChainParams::natural(n, 2).unwrap();
                let c = sigma_debye_check(&p, &hot_state(&p, 50.0)).unwrap();
                c.exact[0] / c.debye_total[0]
            })
            .collect();
        assert!(ratios.windows(2).all(|r| r[0] < r[1]));
        assert!((ratios[4] * 4.0 - 1.0).abs() < 0.02, "{ratios:?}");
    }
}
