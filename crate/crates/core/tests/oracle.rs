//! Cross-checks between the ladder-algebra moments and exact diagonalization.

use nanotemp_core::chain::state_energy;
use nanotemp_core::oracle::{moments, offdiag_scan, sigma_debye_check, Diagonalized, TruncatedBasis};
use nanotemp_core::{ChainParams, Error, OccupationState};
use proptest::prelude::*;

fn single_mode_state(p: &ChainParams, occ: &[u32]) -> OccupationState {
    state_energy(p, occ.iter().map(|&o| vec![o]).collect()).unwrap()
}

fn vacuum(p: &ChainParams) -> OccupationState {
    state_energy(p, vec![vec![0; p.n()]; p.n_groups()]).unwrap()
}

#[test]
fn spectral_and_ladder_moments_agree() {
    let configs = [(1, 2, 6), (1, 3, 5), (1, 4, 4), (2, 2, 4), (2, 3, 3)];
    for (n, groups, d) in configs {
        let p = ChainParams::natural(n, groups).unwrap();
        let b = TruncatedBasis::new(&p, d).unwrap();
        let diag = Diagonalized::new(&b);
        let mut states = vec![vacuum(&p)];
        let mut excited = vec![vec![0; n]; groups];
        excited[0][0] = 1;
        states.push(state_energy(&p, excited).unwrap());
        for s in states {
            let m = moments(&b, &s).unwrap();
            assert!(!m.flagged());
            let w = diag.w_distribution(&s).unwrap();
            assert!((w.total_weight - 1.0).abs() < 1e-9);
            assert!(w.bin_weights.iter().all(|&x| x >= 0.0));
            assert!((w.bin_weights.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            assert!((w.mean - m.y_a).abs() < 1e-8 * m.y_a.abs(), "({n}, {groups}, {d})");
            assert!((w.variance - m.sigma2_a).abs() < 1e-8 * m.sigma2_a, "({n}, {groups}, {d})");
        }
    }
}

#[test]
fn weights_are_complete_for_every_basis_state() {
    let p = ChainParams::natural(1, 3).unwrap();
    let b = TruncatedBasis::new(&p, 4).unwrap();
    let diag = Diagonalized::new(&b);
    for i in 0..b.dim() {
        let total: f64 = diag.overlaps(i).iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
    }
}

#[test]
fn moments_are_stable_under_truncation_growth() {
    let p = ChainParams::natural(1, 3).unwrap();
    let s = single_mode_state(&p, &[1, 0, 1]);
    let mut previous: Option<(f64, f64, f64)> = None;
    for d in 3..=6 {
        let b = TruncatedBasis::new(&p, d).unwrap();
        let w = Diagonalized::new(&b).w_distribution(&s).unwrap();
        if let Some((mean, var, _)) = previous {
            assert!((w.mean / mean - 1.0).abs() < 1e-6);
            assert!((w.variance / var - 1.0).abs() < 1e-6);
        }
        previous = Some((w.mean, w.variance, w.skewness));
        let m = moments(&b, &s).unwrap();
        assert!(!m.flagged(), "d = {d}");
    }
}

#[test]
fn vacuum_skewness_falls_as_one_over_root_group_count() {
    // for rings of four or more groups no coupling triangle closes: skew = 8 / sqrt(N_G)
    let mut last = f64::INFINITY;
    for groups in [4, 5] {
        let p = ChainParams::natural(1, groups).unwrap();
        let b = TruncatedBasis::new(&p, 4).unwrap();
        let w = Diagonalized::new(&b).w_distribution(&vacuum(&p)).unwrap();
        assert!((w.skewness - 8.0 / (groups as f64).sqrt()).abs() < 1e-8, "{groups}: {}", w.skewness);
        assert!(w.skewness < last);
        last = w.skewness;
    }
}

#[test]
fn offdiagonal_coherences_are_suppressed() {
    let p = ChainParams::natural(1, 3).unwrap();
    let b = TruncatedBasis::new(&p, 4).unwrap();
    let hot = offdiag_scan(&b, 0.0).unwrap();
    assert!(hot.max_offdiag < 1e-14);
    assert!(hot.pairs_considered > 0 && hot.pairs_excluded > 0);
    let moderate = offdiag_scan(&b, 0.1).unwrap();
    assert!(moderate.ratio < 1.0, "{moderate:?}");
    assert!(offdiag_scan(&b, -1.0).is_err());
}

#[test]
fn dense_diagonalization_respects_the_cap() {
    let p = ChainParams::natural(2, 4).unwrap();
    match TruncatedBasis::new(&p, 4) {
        Err(Error::DimensionCap { dim, cap }) => {
            assert_eq!(dim, 65536);
            assert_eq!(cap, 20_000);
        }
        other => panic!("expected a cap error, got {other:?}"),
    }
}

#[test]
fn closed_form_boundary_variance_matches_ladder_moments() {
    let p = ChainParams::natural(3, 4).unwrap();
    let b = TruncatedBasis::with_cap(&p, 5, usize::MAX).unwrap();
    let s = state_energy(&p, vec![vec![0, 1, 3], vec![2, 0, 0], vec![1, 1, 1], vec![0, 0, 4]]).unwrap();
    let m = moments(&b, &s).unwrap();
    let c = sigma_debye_check(&p, &s).unwrap();
    for (a, e) in m.sigma2_mu.iter().zip(&c.exact) {
        assert!((a / e - 1.0).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn variance_grows_at_least_linearly_in_group_count(
        occ in (2usize..=5).prop_flat_map(|g| prop::collection::vec(1u32..=17, g)),
    ) {
        let groups = occ.len();
        let p = ChainParams::natural(1, groups).unwrap();
        // one quantum of headroom keeps H|a> inside the basis
        let b = TruncatedBasis::with_cap(&p, 19, usize::MAX).unwrap();
        let s = single_mode_state(&p, &occ);
        let m = moments(&b, &s).unwrap();
        prop_assert!(!m.flagged());
        // per-boundary vacuum variance for n = 1 is (1 / 2 sqrt2)^2 = 1/8
        prop_assert!(m.sigma2_a / groups as f64 >= 0.125);
        prop_assert!(m.eps_mu.iter().all(|e| e.abs() < 1e-10));
    }

    #[test]
    fn harmonic_identities_hold_beyond_two_groups(
        occ in (3usize..=5).prop_flat_map(|g| prop::collection::vec(prop::collection::vec(0u32..6, 2), g)),
    ) {
        let p = ChainParams::natural(2, occ.len()).unwrap();
        let b = TruncatedBasis::with_cap(&p, 8, usize::MAX).unwrap();
        let s = state_energy(&p, occ).unwrap();
        let m = moments(&b, &s).unwrap();
        prop_assert!(m.eps_a.abs() < 1e-10);
        prop_assert!(m.sigma2_tilde_mu.iter().all(|x| x.abs() < 1e-10));
        let sum: f64 = m.sigma2_mu.iter().sum();
        prop_assert!((m.sigma2_a - sum).abs() < 1e-10 * sum);
    }
}
