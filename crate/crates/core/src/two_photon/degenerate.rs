//! Doubly degenerate two-photon crossings at `ε = 2β(M−N)`.

use serde::{Deserialize, Serialize};

use super::closed_form::closed_form_2p;
use super::{c_m_pole_2p, check_pair, f_n_pole_2p, pinned_poly_exact, pinned_poly_value};
use crate::error::{Error, Result};
use crate::params::{BargmannIndex, ModelParams};
use crate::pinned::{self, DEGENERATE_ABS_TOL, SHARED_ROOT_TOL};
use crate::poly;
use crate::roots::RootSearchConfig;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegeneratePoint2p {
    pub q: BargmannIndex,
    pub n: usize,
    pub m: usize,
    pub omega: f64,
    pub delta: f64,
    pub g: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub energy: f64,
    pub residual_f: f64,
    pub residual_c: f64,
}

impl DegeneratePoint2p {
    pub fn params(&self) -> ModelParams {
        ModelParams { omega: self.omega, delta: self.delta, epsilon: self.epsilon, g: self.g }
    }
}

/// Default search over `g ∈ (0, ω/2)`.
pub fn default_search_2p(omega: f64) -> Result<RootSearchConfig> {
    Ok(RootSearchConfig::with_unit(0.0, 0.5 * omega, omega)?.with_abs_tol(DEGENERATE_ABS_TOL * omega))
}

/// Exact number of distinct roots of `f_N` (or `c_M` when `which_c`) for `g ∈ [lo, hi)`.
pub fn constraint_root_count_2p(
    q: BargmannIndex,
    n: usize,
    m: usize,
    delta: f64,
    omega: f64,
    lo: f64,
    hi: f64,
    which_c: bool,
) -> Result<usize> {
    check_pair(n, m)?;
    let (t, o) = if which_c { (m, n) } else { (n, m) };
    let p = pinned_poly_exact(q, t, o, delta, omega)?;
    let y = |g: f64| {
        let s = (g.clamp(0.0, 0.5 * omega) / omega).powi(2);
        poly::exact(1.0 - 4.0 * s)
    };
    // y decreases with g
    Ok(p.count_roots(&y(hi)?, &y(lo)?))
}

/// Roots in `g` of `f_N^(q)` and of `c_M^(q)`, found independently.
pub fn constraint_roots_2p(
    q: BargmannIndex,
    n: usize,
    m: usize,
    delta: f64,
    omega: f64,
    cfg: Option<&RootSearchConfig>,
) -> Result<(Vec<f64>, Vec<f64>)> {
    check_pair(n, m)?;
    if !(omega > 0.0) || !(delta >= 0.0) {
        return Err(Error::domain("need omega > 0 and delta >= 0"));
    }
    let cfg = match cfg {
        Some(c) => *c,
        None => default_search_2p(omega)?,
    };
    cfg.validate()?;
    if cfg.hi > 0.5 * omega {
        return Err(Error::domain("two-photon search interval must lie within g <= omega/2"));
    }
    let y = |g: f64| 1.0 - 4.0 * (g / omega).powi(2);
    let count_f = constraint_root_count_2p(q, n, m, delta, omega, cfg.lo, cfg.hi, false)?;
    let count_c = constraint_root_count_2p(q, n, m, delta, omega, cfg.lo, cfg.hi, true)?;
    let keep = |v: Vec<f64>| v.into_iter().filter(|g| *g < 0.5 * omega).collect::<Vec<_>>();
    // exact variable y = β²/ω², decreasing with g
    let y_exact = |g: f64| poly::exact(1.0 - 4.0 * (g.clamp(0.0, 0.5 * omega) / omega).powi(2));
    let to_g = |y: f64| 0.5 * omega * (1.0 - y).clamp(0.0, 1.0).sqrt();
    let exact = |t, o| move || Ok((pinned_poly_exact(q, t, o, delta, omega)?, y_exact(cfg.hi)?, y_exact(cfg.lo)?));
    let f = keep(pinned::pinned_roots(|g| pinned_poly_value(q, n, m, delta, omega, y(g)), count_f, &cfg, exact(n, m), to_g)?);
    let c = keep(pinned::pinned_roots(|g| pinned_poly_value(q, m, n, delta, omega, y(g)), count_c, &cfg, exact(m, n), to_g)?);
    Ok((f, c))
}

/// All crossings of sector `q` on the overlapped `N`-th A and `M`-th B pole lines.
pub fn find_degenerate_2p(
    q: BargmannIndex,
    n: usize,
    m: usize,
    delta: f64,
    omega: f64,
    cfg: Option<&RootSearchConfig>,
) -> Result<Vec<DegeneratePoint2p>> {
    let cfg = match cfg {
        Some(c) => *c,
        None => default_search_2p(omega)?,
    };
    let (f_roots, c_roots) = constraint_roots_2p(q, n, m, delta, omega, Some(&cfg))?;
    let residual = |g: f64| {
        (
            f_n_pole_2p(q, n, m, delta, omega, g).map(f64::abs).unwrap_or(f64::NAN),
            c_m_pole_2p(q, n, m, delta, omega, g).map(f64::abs).unwrap_or(f64::NAN),
        )
    };
    let pairs = pinned::pair_roots(&f_roots, &c_roots, SHARED_ROOT_TOL * omega, n, m, residual)?;
    if n == 1 || (n, m) == (2, 3) {
        let closed: Vec<f64> = closed_form_2p(q, n, m, delta, omega)?
            .into_iter()
            .map(|(g, _)| g)
            .filter(|g| *g > cfg.lo && *g <= cfg.hi)
            .collect();
        pinned::check_closed_form(&f_roots, &closed, 1e-9 * omega, n, m, residual)?;
    }
    pairs
        .into_iter()
        .map(|(g, _)| {
            let beta = omega * (1.0 - 4.0 * (g / omega).powi(2)).sqrt();
            let (residual_f, residual_c) = residual(g);
            Ok(DegeneratePoint2p {
                q,
                n,
                m,
                omega,
                delta,
                g,
                beta,
                epsilon: 2.0 * beta * (m - n) as f64,
                energy: (m as f64 + n as f64 + 2.0 * q.value()) * beta - 0.5 * omega,
                residual_f,
                residual_c,
            })
        })
        .collect()
}
