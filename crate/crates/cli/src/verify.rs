//! Exact small-chain property suite behind `nanotemp verify`.

use std::fmt;

use nanotemp_core::chain::state_energy;
use nanotemp_core::oracle::{moments, sigma_debye_check, Diagonalized, TruncatedBasis};
use nanotemp_core::{ChainParams, OccupationState};

const IDENTITY_TOL: f64 = 1e-10;
const AGREEMENT_TOL: f64 = 1e-8;
const COMPLETENESS_TOL: f64 = 1e-9;
const TRUNCATION_TOL: f64 = 1e-6;
const MODERATE_BETA: f64 = 0.1;

#[derive(Debug, Clone)]
pub struct Config {
    pub sizes: Vec<usize>,
    pub groups: Vec<usize>,
    pub local_dim: usize,
    /// Largest basis diagonalized densely.
    pub max_dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

fn check(name: String, ok: bool, detail: String) -> Check {
    Check { name, status: if ok { Status::Pass } else { Status::Fail }, detail }
}

fn skip(name: String, detail: String) -> Check {
    Check { name, status: Status::Skip, detail }
}

/// Vacuum, one quantum in the lowest mode of group 0, and one quantum in the
/// highest mode of every other group.
fn probe_states(p: &ChainParams) -> Vec<OccupationState> {
    let (n, g) = (p.n(), p.n_groups());
    let vacuum = vec![vec![0; n]; g];
    let mut single = vacuum.clone();
    single[0][0] = 1;
    let mut alternating = vacuum.clone();
    for occ in alternating.iter_mut().step_by(2) {
        occ[n - 1] = 1;
    }
    [vacuum, single, alternating]
        .into_iter()
        .map(|o| state_energy(p, o).expect("occupations match the chain"))
        .collect()
}

fn dense_dim(p: &ChainParams, d: usize) -> u128 {
    (d as u128).saturating_pow(p.n_sites() as u32)
}

pub fn run(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    for &n in &cfg.sizes {
        for &g in &cfg.groups {
            let p = match ChainParams::natural(n, g) {
                Ok(p) => p,
                Err(e) => {
                    out.push(check(format!("chain n={n} N_G={g}"), false, e.to_string()));
                    continue;
                }
            };
            out.push(identities(&p, cfg.local_dim));
            out.push(variance_growth(&p, cfg.local_dim));
            out.extend(spectral(&p, cfg.local_dim, cfg.max_dim));
        }
        out.push(gaussianization(n, &cfg.groups, cfg.local_dim, cfg.max_dim));
    }
    out
}

fn identities(p: &ChainParams, d: usize) -> Check {
    let name = format!("moment identities n={} N_G={} d={d}", p.n(), p.n_groups());
    let basis = TruncatedBasis::with_cap(p, d, usize::MAX).expect("local dimension validated");
    let (mut eps, mut tilde, mut additivity) = (0.0f64, 0.0f64, 0.0f64);
    for s in probe_states(p) {
        let m = moments(&basis, &s).expect("probe states fit the basis");
        eps = m.eps_mu.iter().fold(eps, |a, x| a.max(x.abs()));
        tilde = m.sigma2_tilde_mu.iter().fold(tilde, |a, x| a.max(x.abs()));
        let sum: f64 = m.sigma2_mu.iter().sum();
        additivity = additivity.max((m.sigma2_a - sum).abs() / m.sigma2_a);
    }
    let ok = eps < IDENTITY_TOL && tilde < IDENTITY_TOL && additivity < IDENTITY_TOL;
    check(name, ok, format!("max|eps_mu|={eps:.3e} max|sigma~_mu^2|={tilde:.3e} additivity={additivity:.3e}"))
}

fn variance_growth(p: &ChainParams, d: usize) -> Check {
    let name = format!("variance growth n={} N_G={}", p.n(), p.n_groups());
    let basis = TruncatedBasis::with_cap(p, d, usize::MAX).expect("local dimension validated");
    let states = probe_states(p);
    // no boundary variance drops below its vacuum value
    let floor = sigma_debye_check(p, &states[0])
        .expect("vacuum matches the chain")
        .exact
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let lowest = states
        .iter()
        .map(|s| moments(&basis, s).expect("probe states fit the basis").sigma2_a / p.n_groups() as f64)
        .fold(f64::INFINITY, f64::min);
    check(name, lowest >= floor * (1.0 - 1e-12), format!("min sigma_a^2/N_G={lowest:.6} floor={floor:.6}"))
}

fn spectral(p: &ChainParams, d: usize, max_dim: usize) -> Vec<Check> {
    let tag = format!("n={} N_G={} d={d}", p.n(), p.n_groups());
    let dim = dense_dim(p, d);
    if dim > max_dim as u128 {
        let why = format!("{dim} states exceed --max-dim {max_dim}");
        return vec![
            skip(format!("spectral agreement {tag}"), why.clone()),
            skip(format!("off-diagonal suppression {tag}"), why),
        ];
    }
    let basis = TruncatedBasis::with_cap(p, d, max_dim).expect("dimension checked");
    let diag = Diagonalized::new(&basis);
    let (mut weight, mut mean, mut var) = (0.0f64, 0.0f64, 0.0f64);
    for s in probe_states(p) {
        let w = diag.w_distribution(&s).expect("probe states fit the basis");
        let m = moments(&basis, &s).expect("probe states fit the basis");
        weight = weight.max((w.total_weight - 1.0).abs());
        mean = mean.max((w.mean - m.y_a).abs() / m.y_a.abs());
        var = var.max((w.variance - m.sigma2_a).abs() / m.sigma2_a);
    }
    let mut out = vec![check(
        format!("spectral agreement {tag}"),
        weight < COMPLETENESS_TOL && mean < AGREEMENT_TOL && var < AGREEMENT_TOL,
        format!("weight={weight:.3e} mean={mean:.3e} variance={var:.3e}"),
    )];

    let hot = diag.offdiag_scan(0.0).expect("beta is valid");
    let moderate = diag.offdiag_scan(MODERATE_BETA).expect("beta is valid");
    out.push(check(
        format!("off-diagonal suppression {tag}"),
        hot.max_offdiag < 1e-12 && moderate.ratio < 1.0,
        format!("beta=0 max={:.3e}; beta={MODERATE_BETA} ratio={:.4}", hot.max_offdiag, moderate.ratio),
    ));

    let wider = dense_dim(p, d + 1);
    if wider > max_dim as u128 {
        out.push(skip(format!("truncation stability {tag}"), format!("{wider} states at d+1 exceed --max-dim")));
        return out;
    }
    let next = Diagonalized::new(&TruncatedBasis::with_cap(p, d + 1, max_dim).expect("dimension checked"));
    let mut change = 0.0f64;
    for s in probe_states(p) {
        let a = diag.w_distribution(&s).expect("probe states fit the basis");
        let b = next.w_distribution(&s).expect("probe states fit the basis");
        change = change.max((a.mean / b.mean - 1.0).abs()).max((a.variance / b.variance - 1.0).abs());
    }
    out.push(check(
        format!("truncation stability {tag}->{}", d + 1),
        change < TRUNCATION_TOL,
        format!("max relative change={change:.3e}"),
    ));
    out
}

fn gaussianization(n: usize, groups: &[usize], d: usize, max_dim: usize) -> Check {
    let mut sorted = groups.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let name = format!("skewness decreasing in N_G n={n} d={d} N_G={sorted:?}");
    if sorted.len() < 2 {
        return skip(name, "needs at least two group counts".into());
    }
    let mut rows: Vec<[f64; 2]> = Vec::new();
    for &g in &sorted {
        let Ok(p) = ChainParams::natural(n, g) else {
            return skip(name, format!("no chain with n={n} N_G={g}"));
        };
        if dense_dim(&p, d) > max_dim as u128 {
            return skip(name, format!("N_G={g} exceeds --max-dim {max_dim}"));
        }
        let diag = Diagonalized::new(&TruncatedBasis::with_cap(&p, d, max_dim).expect("dimension checked"));
        let states = probe_states(&p);
        let skew = |s: &OccupationState| diag.w_distribution(s).expect("probe states fit the basis").skewness.abs();
        rows.push([skew(&states[0]), skew(&states[1])]);
    }
    let decreasing = (0..2).all(|i| rows.windows(2).all(|w| w[1][i] < w[0][i]));
    let fmt = |i: usize| rows.iter().map(|r| format!("{:.4}", r[i])).collect::<Vec<_>>().join(" -> ");
    check(name, decreasing, format!("vacuum {}; one quantum {}", fmt(0), fmt(1)))
}
