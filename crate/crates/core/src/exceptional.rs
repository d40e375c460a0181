//! Non-degenerate exceptional G-functions of both models.
//!
//! At a pinned pole energy the diverging term of one frame is removed either by
//! cutting the series after it (kinds `1A`/`1B`, terminating choice of `e_N` or
//! `d_M`) or by restarting the series at it (kinds `2A`/`2B`, `e_N = 1` or
//! `d_M = 1`). `Merged` restarts both frames on overlapped lines. Zeros in `g`
//! are exceptional points.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::SideMode;
use crate::params::{self, BargmannIndex, Model, ModelParams, PoleKind, PoleLine};
use crate::roots::{bracket_roots, RootSearchConfig};
use crate::{one_photon, two_photon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExceptionalKind {
    Kind1A(usize),
    Kind2A(usize),
    Kind1B(usize),
    Kind2B(usize),
    /// Both frames restarted on the overlapped `N`-th A and `M`-th B lines.
    Merged { n: usize, m: usize },
}

impl fmt::Display for ExceptionalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExceptionalKind::Kind1A(n) => write!(f, "1A(N={n})"),
            ExceptionalKind::Kind2A(n) => write!(f, "2A(N={n})"),
            ExceptionalKind::Kind1B(m) => write!(f, "1B(M={m})"),
            ExceptionalKind::Kind2B(m) => write!(f, "2B(M={m})"),
            ExceptionalKind::Merged { n, m } => write!(f, "merged(N={n},M={m})"),
        }
    }
}

impl ExceptionalKind {
    /// Pole family and index the energy is pinned to.
    pub fn pinned(self) -> (PoleKind, usize) {
        match self {
            ExceptionalKind::Kind1A(n) | ExceptionalKind::Kind2A(n) => (PoleKind::A, n),
            ExceptionalKind::Merged { n, .. } => (PoleKind::A, n),
            ExceptionalKind::Kind1B(m) | ExceptionalKind::Kind2B(m) => (PoleKind::B, m),
        }
    }

    fn modes(self) -> Result<(SideMode, SideMode)> {
        Ok(match self {
            ExceptionalKind::Kind1A(n) => {
                if n == 0 {
                    return Err(Error::domain("kind 1A needs N >= 1"));
                }
                (SideMode::Terminated(n), SideMode::Regular)
            }
            ExceptionalKind::Kind2A(n) => (SideMode::Restarted(n), SideMode::Regular),
            ExceptionalKind::Kind1B(m) => {
                if m == 0 {
                    return Err(Error::domain("kind 1B needs M >= 1"));
                }
                (SideMode::Regular, SideMode::Terminated(m))
            }
            ExceptionalKind::Kind2B(m) => (SideMode::Regular, SideMode::Restarted(m)),
            ExceptionalKind::Merged { n, m } => {
                if m <= n {
                    return Err(Error::domain("merged kind needs M > N"));
                }
                (SideMode::Restarted(n), SideMode::Restarted(m))
            }
        })
    }

    pub fn line(self, model: Model, q: Option<BargmannIndex>) -> Result<PoleLine> {
        let (kind, index) = self.pinned();
        match model {
            Model::OnePhoton => Ok(PoleLine::one_photon(kind, index)),
            Model::TwoPhoton => {
                let q = q.ok_or_else(|| Error::domain("two-photon exceptional functions need q"))?;
                Ok(PoleLine::two_photon(kind, index, q))
            }
        }
    }
}

/// Bias that puts the `N`-th A and `M`-th B lines on top of each other.
pub fn overlap_epsilon(model: Model, n: usize, m: usize, params: &ModelParams) -> Result<f64> {
    let steps = m as f64 - n as f64;
    match model {
        Model::OnePhoton => Ok(steps * params.omega),
        Model::TwoPhoton => Ok(2.0 * params::beta(params)? * steps),
    }
}

/// Value of the exceptional G-function at the pinned pole energy.
pub fn exceptional_g(model: Model, q: Option<BargmannIndex>, kind: ExceptionalKind, params: &ModelParams) -> Result<f64> {
    let (mode_a, mode_b) = kind.modes()?;
    if let ExceptionalKind::Merged { n, m } = kind {
        let want = overlap_epsilon(model, n, m, params)?;
        if (params.epsilon - want).abs() > 1e-9 * params.omega {
            return Err(Error::domain(format!(
                "merged kind needs epsilon = {want} for N = {n}, M = {m}, got {}",
                params.epsilon
            )));
        }
    }
    let line = kind.line(model, q)?;
    let energy = params::pole_energy(line, params)?;
    match model {
        Model::OnePhoton => {
            one_photon::g1p_modes(params, energy, mode_a, mode_b, &one_photon::eval_config())
        }
        Model::TwoPhoton => {
            let q = line.q.expect("two-photon line carries q");
            two_photon::g2p_modes(q, params, energy, mode_a, mode_b, &two_photon::eval_config())
        }
    }
}

/// One zero of an exceptional G-function (or of a pole coefficient).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalPoint {
    pub kind: ExceptionalKind,
    pub line: PoleLine,
    pub g: f64,
    pub epsilon: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalScan {
    pub points: Vec<ExceptionalPoint>,
    pub unresolved: Vec<(f64, f64)>,
}

/// Default coupling range for exceptional scans: `(10⁻³ω, 2ω)` one-photon,
/// `(10⁻³ω, 0.4995ω)` two-photon.
pub fn default_exceptional_search(model: Model, omega: f64) -> Result<RootSearchConfig> {
    let hi = match model {
        Model::OnePhoton => 2.0 * omega,
        Model::TwoPhoton => two_photon::scan_g_max(omega),
    };
    RootSearchConfig::with_unit(1e-3 * omega, hi, omega)
}

/// Couplings at which a regular frame of the pinned function meets one of its
/// own poles. Only the two-photon lines move relative to each other with `g`.
fn g_poles(model: Model, kind: ExceptionalKind, epsilon: f64, omega: f64) -> Vec<f64> {
    if model == Model::OnePhoton || matches!(kind, ExceptionalKind::Merged { .. }) {
        return Vec::new();
    }
    let (family, pin) = kind.pinned();
    let mut out = Vec::new();
    // the regular frame's pole n coincides with the pinned line when β = s·ε/(2(n−pin))
    let s = match family {
        PoleKind::A => 1.0,
        PoleKind::B => -1.0,
    };
    for n in 0..pin + 400 {
        if n == pin {
            continue;
        }
        let beta = s * epsilon / (2.0 * (n as f64 - pin as f64));
        if beta > 0.0 && beta < omega {
            out.push(0.5 * (omega * omega - beta * beta).sqrt());
        }
    }
    out
}

fn params_at(model: Model, kind: ExceptionalKind, base: &ModelParams, g: f64) -> Result<ModelParams> {
    let p = base.with_g(g);
    match kind {
        ExceptionalKind::Merged { n, m } => Ok(p.with_epsilon(overlap_epsilon(model, n, m, &p)?)),
        _ => Ok(p),
    }
}

fn collect(
    model: Model,
    q: Option<BargmannIndex>,
    kind: ExceptionalKind,
    base: &ModelParams,
    roots: Vec<f64>,
    e_window: Option<(f64, f64)>,
) -> Result<Vec<ExceptionalPoint>> {
    let line = kind.line(model, q)?;
    let mut out = Vec::new();
    for g in roots {
        let p = params_at(model, kind, base, g)?;
        let energy = params::pole_energy(line, &p)?;
        if let Some((lo, hi)) = e_window {
            if energy < lo || energy > hi {
                continue;
            }
        }
        out.push(ExceptionalPoint { kind, line, g, epsilon: p.epsilon, energy });
    }
    Ok(out)
}

/// Zeros in `g` of an exceptional G-function over `cfg`'s coupling interval.
///
/// `base` supplies `ω, Δ, ε` (its `g` is ignored; for `Merged` the bias follows
/// the overlap condition at every `g`). Points whose pinned energy falls outside
/// `e_window` are dropped.
pub fn find_exceptional(
    model: Model,
    q: Option<BargmannIndex>,
    kind: ExceptionalKind,
    base: &ModelParams,
    cfg: &RootSearchConfig,
    e_window: Option<(f64, f64)>,
) -> Result<ExceptionalScan> {
    base.validate()?;
    kind.modes()?;
    let poles = g_poles(model, kind, base.epsilon, base.omega);
    let f = |g: f64| exceptional_g(model, q, kind, &params_at(model, kind, base, g)?);
    let mut scan = bracket_roots(f, cfg, &poles)?;
    // the truncated head also vanishes where the pinned coefficient does not; those are not states
    if let ExceptionalKind::Kind1A(index) | ExceptionalKind::Kind1B(index) = kind {
        let (family, _) = kind.pinned();
        let mut kept = Vec::with_capacity(scan.roots.len());
        for g in scan.roots {
            let c = pinned_coefficient(model, q, family, index, &base.with_g(g))?;
            if c.abs() <= KIND1_COEFFICIENT_TOL {
                kept.push(g);
            }
        }
        scan.roots = kept;
    }
    Ok(ExceptionalScan {
        points: collect(model, q, kind, base, scan.roots, e_window)?,
        unresolved: scan.unresolved,
    })
}

/// Largest `|f_N|` (or `|c_M|`) accepted at a kind-1 zero.
pub const KIND1_COEFFICIENT_TOL: f64 = 1e-7;

fn pinned_coefficient(
    model: Model,
    q: Option<BargmannIndex>,
    family: PoleKind,
    index: usize,
    p: &ModelParams,
) -> Result<f64> {
    match model {
        Model::OnePhoton => one_photon::pole_coefficient(family, index, p),
        Model::TwoPhoton => {
            let q = q.ok_or_else(|| Error::domain("two-photon coefficients need q"))?;
            two_photon::pole_coefficient_2p(q, family, index, p)
        }
    }
}

/// Zeros in `g` of the pole coefficient `f_N` (family A) or `c_M` (family B) at
/// fixed bias: the simpler route to the kind-1 exceptional points.
pub fn coefficient_zeros(
    model: Model,
    q: Option<BargmannIndex>,
    family: PoleKind,
    index: usize,
    base: &ModelParams,
    cfg: &RootSearchConfig,
    e_window: Option<(f64, f64)>,
) -> Result<ExceptionalScan> {
    if index == 0 {
        return Err(Error::domain("the zeroth coefficient is fixed to 1"));
    }
    base.validate()?;
    let f = |g: f64| pinned_coefficient(model, q, family, index, &base.with_g(g));
    let scan = bracket_roots(f, cfg, &[])?;
    let kind = match family {
        PoleKind::A => ExceptionalKind::Kind1A(index),
        PoleKind::B => ExceptionalKind::Kind1B(index),
    };
    Ok(ExceptionalScan {
        points: collect(model, q, kind, base, scan.roots, e_window)?,
        unresolved: scan.unresolved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_1a_zeros_are_coefficient_zeros() {
        // non-integer bias, where the terminated function is valid
        let base = ModelParams::new(1.0, 1.5, 0.63, 0.0).unwrap();
        let cfg = RootSearchConfig::new(0.01, 2.0).unwrap();
        for n in 1..4 {
            let a = find_exceptional(Model::OnePhoton, None, ExceptionalKind::Kind1A(n), &base, &cfg, None).unwrap();
            let b = coefficient_zeros(Model::OnePhoton, None, PoleKind::A, n, &base, &cfg, None).unwrap();
            let ga: Vec<f64> = a.points.iter().map(|p| p.g).collect();
            let gb: Vec<f64> = b.points.iter().map(|p| p.g).collect();
            assert_eq!(ga.len(), gb.len(), "N={n}: {ga:?} vs {gb:?}");
            for (x, y) in a.points.iter().zip(&b.points) {
                assert!((x.g - y.g).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn merged_needs_overlap() {
        let p = ModelParams::new(1.0, 1.5, 0.9, 0.4).unwrap();
        let k = ExceptionalKind::Merged { n: 1, m: 2 };
        assert!(exceptional_g(Model::OnePhoton, None, k, &p).is_err());
        assert!(exceptional_g(Model::OnePhoton, None, k, &p.with_epsilon(1.0)).is_ok());
    }

    #[test]
    fn two_photon_g_poles() {
        // kind 2A on N = 0 at ε = 1: B-frame pole n meets it when β = 1/(2n)
        let poles = g_poles(Model::TwoPhoton, ExceptionalKind::Kind2A(0), 1.0, 1.0);
        assert!((poles[0] - 0.5 * (1.0f64 - 0.25).sqrt()).abs() < 1e-15);
        assert!(g_poles(Model::OnePhoton, ExceptionalKind::Kind2A(0), 1.0, 1.0).is_empty());
    }
}
