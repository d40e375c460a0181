//! Doubly degenerate crossings on overlapped one-photon pole lines.

use serde::{Deserialize, Serialize};

use super::closed_form::closed_form_1p;
use super::{c_m_pole, check_pair, f_n_pole, pinned_poly_exact, pinned_poly_value};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::pinned::{self, DEGENERATE_ABS_TOL, SHARED_ROOT_TOL};
use crate::poly;
use crate::roots::RootSearchConfig;

/// A crossing at `ε = (M−N)ω`, `E = (M+N)ω/2 − g²/ω`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegeneratePoint1p {
    pub n: usize,
    pub m: usize,
    pub omega: f64,
    pub delta: f64,
    pub g: f64,
    pub epsilon: f64,
    pub energy: f64,
    pub residual_f: f64,
    pub residual_c: f64,
}

impl DegeneratePoint1p {
    pub fn params(&self) -> ModelParams {
        ModelParams { omega: self.omega, delta: self.delta, epsilon: self.epsilon, g: self.g }
    }
}

/// Default search over `g ∈ (0, max(2, √M)·ω)`.
pub fn default_search_1p(m: usize, omega: f64) -> Result<RootSearchConfig> {
    let hi = 2f64.max((m as f64).sqrt()) * omega;
    Ok(RootSearchConfig::with_unit(0.0, hi, omega)?.with_abs_tol(DEGENERATE_ABS_TOL * omega))
}

/// Exact number of distinct positive roots of `f_N` (`which_c = false`) or `c_M`
/// inside `(lo, hi]` in `g`.
pub fn constraint_root_count_1p(
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
    let p = pinned_poly_exact(t, o, delta, omega)?;
    let x = |g: f64| poly::exact(4.0 * (g.max(0.0) / omega).powi(2));
    Ok(p.count_roots(&x(lo)?, &x(hi)?))
}

/// Positive roots of `f_N` and of `c_M` over the search interval, each found independently.
pub fn constraint_roots_1p(
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
        None => default_search_1p(m, omega)?,
    };
    cfg.validate()?;
    let count_f = constraint_root_count_1p(n, m, delta, omega, cfg.lo, cfg.hi, false)?;
    let count_c = constraint_root_count_1p(n, m, delta, omega, cfg.lo, cfg.hi, true)?;
    // exact variable u = 4g²/ω², increasing with g
    let u = |g: f64| poly::exact(4.0 * (g.max(0.0) / omega).powi(2));
    let to_g = |u: f64| 0.5 * omega * u.max(0.0).sqrt();
    let exact = |t, o| move || Ok((pinned_poly_exact(t, o, delta, omega)?, u(cfg.lo)?, u(cfg.hi)?));
    let f = pinned::pinned_roots(|g| pinned_poly_value(n, m, delta, omega, 4.0 * g * g), count_f, &cfg, exact(n, m), to_g)?;
    let c = pinned::pinned_roots(|g| pinned_poly_value(m, n, delta, omega, 4.0 * g * g), count_c, &cfg, exact(m, n), to_g)?;
    Ok((f, c))
}

/// All crossings on the overlapped `N`-th A and `M`-th B pole lines, ascending in `g`.
///
/// Roots of `f_N` must coincide with roots of `c_M` within `1e-8·ω`; otherwise the
/// call fails with [`Error::Inconsistent`]. Low orders are also checked against
/// the closed forms.
pub fn find_degenerate_1p(
    n: usize,
    m: usize,
    delta: f64,
    omega: f64,
    cfg: Option<&RootSearchConfig>,
) -> Result<Vec<DegeneratePoint1p>> {
    let cfg = match cfg {
        Some(c) => *c,
        None => default_search_1p(m, omega)?,
    };
    let (f_roots, c_roots) = constraint_roots_1p(n, m, delta, omega, Some(&cfg))?;
    let residual = |g: f64| {
        (
            f_n_pole(n, m, delta, omega, g).map(f64::abs).unwrap_or(f64::NAN),
            c_m_pole(n, m, delta, omega, g).map(f64::abs).unwrap_or(f64::NAN),
        )
    };
    let pairs = pinned::pair_roots(&f_roots, &c_roots, SHARED_ROOT_TOL * omega, n, m, residual)?;
    if n <= 2 {
        let closed: Vec<f64> = closed_form_1p(n, m, delta, omega)?
            .into_iter()
            .filter(|g| *g > cfg.lo && *g <= cfg.hi)
            .collect();
        pinned::check_closed_form(&f_roots, &closed, 1e-9 * omega, n, m, residual)?;
    }
    let eps = (m - n) as f64 * omega;
    pairs
        .into_iter()
        .map(|(g, _)| {
            let (residual_f, residual_c) = residual(g);
            Ok(DegeneratePoint1p {
                n,
                m,
                omega,
                delta,
                g,
                epsilon: eps,
                energy: 0.5 * (m + n) as f64 * omega - g * g / omega,
                residual_f,
                residual_c,
            })
        })
        .collect()
}
