//! Truncated-Fock diagonalization used as an independent check.

mod eigen;
pub mod fock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{BargmannIndex, Model, ModelParams};

pub use eigen::symmetric_eigenvalues;

/// Fock sub-space kept in the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sector {
    Full,
    Even,
    Odd,
}

impl Sector {
    pub fn of(q: BargmannIndex) -> Self {
        match q {
            BargmannIndex::Quarter => Sector::Even,
            BargmannIndex::ThreeQuarters => Sector::Odd,
        }
    }

    fn admits(self, k: usize) -> bool {
        match self {
            Sector::Full => true,
            Sector::Even => k % 2 == 0,
            Sector::Odd => k % 2 == 1,
        }
    }
}

/// Dense Hamiltonian on `|σ⟩ ⊗ |k⟩`, row-major, basis index `2j + σ` where `j`
/// counts the retained Fock numbers `k ≤ n_max` in ascending order.
///
/// One-photon matrices use the original spin basis; two-photon matrices the
/// rotated frame where `σx` coupling is diagonal in spin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedHamiltonian {
    pub model: Model,
    pub sector: Sector,
    pub params: ModelParams,
    pub n_max: usize,
    pub dim: usize,
    pub entries: Vec<f64>,
}

impl TruncatedHamiltonian {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    /// Fock numbers of the retained oscillator states.
    pub fn fock_numbers(&self) -> Vec<usize> {
        (0..=self.n_max).filter(|k| self.sector.admits(*k)).collect()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim;
        (0..n).map(|i| self.entries[i * n..(i + 1) * n].iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `max |H − Hᵀ|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    fn rebuilt(&self, n_max: usize) -> Result<Self> {
        match self.model {
            Model::OnePhoton => build_1p(&self.params, n_max),
            Model::TwoPhoton => build_2p_sector(&self.params, n_max, self.sector),
        }
    }
}

struct Builder {
    dim: usize,
    entries: Vec<f64>,
}

impl Builder {
    fn new(dim: usize) -> Self {
        Builder { dim, entries: vec![0.0; dim * dim] }
    }

    fn set_pair(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.dim + j] += v;
        if i != j {
            self.entries[j * self.dim + i] += v;
        }
    }
}

/// `Δ/2 σz + ε/2 σx + ω a†a + g(a† + a)σx` with `k ≤ n_max`; dimension `2(n_max + 1)`.
pub fn build_1p(params: &ModelParams, n_max: usize) -> Result<TruncatedHamiltonian> {
    params.validate()?;
    if n_max < 2 {
        return Err(Error::domain("n_max must be at least 2"));
    }
    let dim = 2 * (n_max + 1);
    let mut b = Builder::new(dim);
    let (w, d, e, g) = (params.omega, params.delta, params.epsilon, params.g);
    let up = |k: usize| 2 * k;
    let down = |k: usize| 2 * k + 1;
    for k in 0..=n_max {
        let kf = k as f64;
        b.set_pair(up(k), up(k), kf * w + 0.5 * d);
        b.set_pair(down(k), down(k), kf * w - 0.5 * d);
        b.set_pair(up(k), down(k), 0.5 * e);
        if k < n_max {
            let c = g * ((k + 1) as f64).sqrt();
            b.set_pair(up(k), down(k + 1), c);
            b.set_pair(up(k + 1), down(k), c);
        }
    }
    Ok(TruncatedHamiltonian { model: Model::OnePhoton, sector: Sector::Full, params: *params, n_max, dim, entries: b.entries })
}

/// Rotated two-photon Hamiltonian restricted to the parity sector of `q`.
pub fn build_2p(params: &ModelParams, n_max: usize, q: BargmannIndex) -> Result<TruncatedHamiltonian> {
    build_2p_sector(params, n_max, Sector::of(q))
}

/// Rotated two-photon Hamiltonian on any sector, including the full space.
pub fn build_2p_sector(params: &ModelParams, n_max: usize, sector: Sector) -> Result<TruncatedHamiltonian> {
    params.validate()?;
    if n_max < 3 {
        return Err(Error::domain("n_max must be at least 3"));
    }
    let ks: Vec<usize> = (0..=n_max).filter(|k| sector.admits(*k)).collect();
    let dim = 2 * ks.len();
    let mut b = Builder::new(dim);
    let (w, d, e, g) = (params.omega, params.delta, params.epsilon, params.g);
    let pos = |k: usize| ks.binary_search(&k).ok();
    for (j, &k) in ks.iter().enumerate() {
        let kf = k as f64;
        b.set_pair(2 * j, 2 * j, kf * w + 0.5 * e);
        b.set_pair(2 * j + 1, 2 * j + 1, kf * w - 0.5 * e);
        b.set_pair(2 * j, 2 * j + 1, -0.5 * d);
        if let Some(j2) = pos(k + 2) {
            let c = g * (((k + 1) * (k + 2)) as f64).sqrt();
            b.set_pair(2 * j, 2 * j2, c);
            b.set_pair(2 * j + 1, 2 * j2 + 1, -c);
        }
    }
    Ok(TruncatedHamiltonian { model: Model::TwoPhoton, sector, params: *params, n_max, dim, entries: b.entries })
}

/// Lowest eigenvalues plus the energy below which they are cutoff-stable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub eigenvalues: Vec<f64>,
    pub n_max: usize,
    pub converged_below: f64,
}

/// Eigenvalue shift tolerated between cutoffs `n_max` and `2·n_max`.
pub const CUTOFF_STABILITY: f64 = 1e-8;

/// The lowest `count` eigenvalues of `h`, with `converged_below` set by
/// re-solving at twice the cutoff.
pub fn eigenvalues(h: &TruncatedHamiltonian, count: usize) -> Result<OracleResult> {
    if count > h.dim {
        return Err(Error::domain(format!("asked for {count} eigenvalues of a {}-dimensional matrix", h.dim)));
    }
    let mut ev = symmetric_eigenvalues(&h.entries, h.dim)?;
    let doubled = h.rebuilt(2 * h.n_max)?;
    let ev2 = symmetric_eigenvalues(&doubled.entries, doubled.dim)?;
    ev.truncate(count);
    let mut converged_below = f64::INFINITY;
    for (a, b) in ev.iter().zip(&ev2) {
        if (a - b).abs() >= CUTOFF_STABILITY * h.params.omega.max(1.0) {
            converged_below = *a;
            break;
        }
    }
    Ok(OracleResult { eigenvalues: ev, n_max: h.n_max, converged_below })
}

/// Outcome of matching G-function zeros against oracle levels.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MatchReport {
    /// `(zero, level, |ΔE|)`, ascending in the zero.
    pub matched: Vec<(f64, f64, f64)>,
    pub unmatched_zeros: Vec<f64>,
    pub unmatched_levels: Vec<f64>,
    pub worst: f64,
    pub success: bool,
}

/// Greedy nearest matching of `zeros` against oracle levels within `window`
/// (and below the oracle's converged bound).
pub fn verify_zeros_in_window(zeros: &[f64], result: &OracleResult, tol: f64, window: (f64, f64)) -> MatchReport {
    let inside = |x: f64| x >= window.0 && x <= window.1 && x < result.converged_below;
    let zs: Vec<f64> = zeros.iter().copied().filter(|z| inside(*z)).collect();
    let ls: Vec<f64> = result.eigenvalues.iter().copied().filter(|l| inside(*l)).collect();
    let mut cand: Vec<(f64, usize, usize)> = Vec::new();
    for (i, z) in zs.iter().enumerate() {
        for (j, l) in ls.iter().enumerate() {
            let d = (z - l).abs();
            if d <= tol {
                cand.push((d, i, j));
            }
        }
    }
    cand.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut used_z = vec![false; zs.len()];
    let mut used_l = vec![false; ls.len()];
    let mut matched = Vec::new();
    for (d, i, j) in cand {
        if !used_z[i] && !used_l[j] {
            used_z[i] = true;
            used_l[j] = true;
            matched.push((zs[i], ls[j], d));
        }
    }
    matched.sort_by(|a, b| a.0.total_cmp(&b.0));
    let unmatched_zeros: Vec<f64> = zs.iter().zip(&used_z).filter(|(_, u)| !**u).map(|(z, _)| *z).collect();
    let unmatched_levels: Vec<f64> = ls.iter().zip(&used_l).filter(|(_, u)| !**u).map(|(l, _)| *l).collect();
    let worst = matched.iter().fold(0.0f64, |a, m| a.max(m.2));
    let success = unmatched_zeros.is_empty() && unmatched_levels.is_empty();
    MatchReport { matched, unmatched_zeros, unmatched_levels, worst, success }
}

/// [`verify_zeros_in_window`] over everything below the converged bound.
pub fn verify_zeros(zeros: &[f64], result: &OracleResult, tol: f64) -> MatchReport {
    verify_zeros_in_window(zeros, result, tol, (f64::NEG_INFINITY, f64::INFINITY))
}

/// Default spacing under which two levels count as a candidate degeneracy.
pub const DEGENERACY_THRESHOLD: f64 = 1e-7;

/// Adjacent level pairs closer than `threshold·ω`, as `(lower, upper)`.
pub fn degenerate_pairs(result: &OracleResult, omega: f64, threshold: f64) -> Vec<(f64, f64)> {
    result
        .eigenvalues
        .windows(2)
        .filter(|w| w[1] - w[0] < threshold * omega && w[1] < result.converged_below)
        .map(|w| (w[0], w[1]))
        .collect()
}

/// Number of levels within `tol` of `energy`.
pub fn levels_near(result: &OracleResult, energy: f64, tol: f64) -> usize {
    result.eigenvalues.iter().filter(|l| (*l - energy).abs() < tol).count()
}
