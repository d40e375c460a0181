//! Bracketed root finding on pole-punctured intervals.
//!
//! G-functions jump from `+∞` to `−∞` across their poles, so a naive sign-change
//! scan reports a spurious root at every pole. The scan here first removes a
//! `pole_margin` neighbourhood around each listed pole, then brackets sign changes
//! on the remaining segments and refines them by bisection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Grid density used when a config is derived from an interval alone.
pub const DEFAULT_POINTS_PER_UNIT: f64 = 2000.0;
pub const DEFAULT_ABS_TOL: f64 = 1e-10;
pub const DEFAULT_POLE_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootSearchConfig {
    pub lo: f64,
    pub hi: f64,
    pub grid_points: usize,
    pub abs_tol: f64,
    pub pole_margin: f64,
}

impl RootSearchConfig {
    /// Defaults scaled by `unit` (normally `ω`): 2000 grid points per unit,
    /// `abs_tol = 1e-10·unit`, `pole_margin = 1e-6·unit`.
    pub fn with_unit(lo: f64, hi: f64, unit: f64) -> Result<Self> {
        let span = (hi - lo) / unit;
        let grid_points = ((DEFAULT_POINTS_PER_UNIT * span).ceil() as usize).max(2);
        let cfg = RootSearchConfig {
            lo,
            hi,
            grid_points,
            abs_tol: DEFAULT_ABS_TOL * unit,
            pole_margin: DEFAULT_POLE_MARGIN * unit,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        Self::with_unit(lo, hi, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::domain(format!("invalid interval ({}, {})", self.lo, self.hi)));
        }
        if self.grid_points < 2 {
            return Err(Error::domain("grid_points must be at least 2"));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::domain("abs_tol must be positive"));
        }
        if !(self.pole_margin > 0.0) {
            return Err(Error::domain("pole_margin must be positive"));
        }
        Ok(())
    }

    pub fn with_abs_tol(self, abs_tol: f64) -> Self {
        RootSearchConfig { abs_tol, ..self }
    }

    pub fn with_grid_points(self, grid_points: usize) -> Self {
        RootSearchConfig { grid_points, ..self }
    }

    pub fn with_interval(self, lo: f64, hi: f64) -> Self {
        RootSearchConfig { lo, hi, ..self }
    }

    fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.grid_points - 1) as f64
    }
}

/// Result of a scan: refined roots plus the stretches where evaluation failed.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RootScan {
    pub roots: Vec<f64>,
    pub unresolved: Vec<(f64, f64)>,
}

impl RootScan {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// Splits `[lo, hi]` into pole-free segments.
pub fn pole_free_segments(lo: f64, hi: f64, poles: &[f64], margin: f64) -> Vec<(f64, f64)> {
    let mut inside: Vec<f64> = poles
        .iter()
        .copied()
        .filter(|p| p.is_finite() && *p > lo - margin && *p < hi + margin)
        .collect();
    inside.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(inside.len() + 1);
    let mut start = lo;
    for p in inside {
        let end = p - margin;
        if end > start {
            out.push((start, end));
        }
        start = start.max(p + margin);
    }
    if hi > start {
        out.push((start, hi));
    }
    out
}

/// Finds every sign change of `f` on `cfg`'s interval away from `poles`.
///
/// Roots come back sorted ascending. Evaluation failures do not abort the scan:
/// the stretch between the neighbouring good samples is reported as unresolved.
pub fn bracket_roots<F>(f: F, cfg: &RootSearchConfig, poles: &[f64]) -> Result<RootScan>
where
    F: Fn(f64) -> Result<f64>,
{
    cfg.validate()?;
    let h = cfg.step();
    let mut scan = RootScan::default();
    for (a, b) in pole_free_segments(cfg.lo, cfg.hi, poles, cfg.pole_margin) {
        scan_segment(&f, a, b, h, cfg.abs_tol, &mut scan);
    }
    scan.roots.sort_by(f64::total_cmp);
    scan.roots.dedup_by(|x, y| (*x - *y).abs() <= cfg.abs_tol);
    Ok(scan)
}

fn scan_segment<F>(f: &F, a: f64, b: f64, h: f64, tol: f64, scan: &mut RootScan)
where
    F: Fn(f64) -> Result<f64>,
{
    // grid points strictly inside (a, b) plus both ends
    let first = (a / h).floor() as i64 + 1;
    let mut xs = vec![a];
    let mut k = first;
    loop {
        let x = k as f64 * h;
        if x >= b {
            break;
        }
        if x > a {
            xs.push(x);
        }
        k += 1;
    }
    xs.push(b);

    let mut prev: Option<(f64, f64)> = None;
    let mut failed_from: Option<f64> = None;
    for &x in &xs {
        match f(x) {
            Ok(v) if v.is_finite() => {
                if let Some(start) = failed_from.take() {
                    scan.unresolved.push((start, x));
                    prev = None;
                }
                if v == 0.0 {
                    scan.roots.push(x);
                    prev = None;
                    continue;
                }
                if let Some((px, pv)) = prev {
                    if pv.signum() != v.signum() {
                        match bisect(f, px, x, pv, tol) {
                            Ok(r) => scan.roots.push(r),
                            Err(_) => scan.unresolved.push((px, x)),
                        }
                    }
                }
                prev = Some((x, v));
            }
            _ => {
                if failed_from.is_none() {
                    failed_from = Some(prev.map(|p| p.0).unwrap_or(a));
                }
            }
        }
    }
    if let Some(start) = failed_from {
        scan.unresolved.push((start, b));
    }
}

/// Bisection on a bracket `[a, b]` with `f(a) = fa` of opposite sign to `f(b)`.
///
/// Stops when the bracket is narrower than `tol` or can no longer be split in
/// floating point.
pub fn bisect<F>(f: &F, mut a: f64, mut b: f64, mut fa: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    while b - a > tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m)?;
        if !fm.is_finite() {
            return Err(Error::domain(format!("non-finite value at {m} during bisection")));
        }
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sqrt_two() {
        let cfg = RootSearchConfig::new(0.0, 2.0).unwrap();
        let scan = bracket_roots(|x| Ok(x * x - 2.0), &cfg, &[]).unwrap();
        assert_eq!(scan.roots.len(), 1);
        assert!((scan.roots[0] - 2f64.sqrt()).abs() < cfg.abs_tol);
        assert!(scan.is_complete());
    }

    #[test]
    fn simple_pole_is_not_a_root() {
        let cfg = RootSearchConfig::new(0.0, 2.0).unwrap();
        let f = |x: f64| Ok(1.0 / (x - 1.0));
        let scan = bracket_roots(f, &cfg, &[1.0]).unwrap();
        assert!(scan.roots.is_empty());
        // without the pole list the jump is bisected into; it must not pass silently
        let naive = bracket_roots(f, &cfg.with_grid_points(1000), &[]).unwrap();
        assert_eq!(naive.roots.len() + naive.unresolved.len(), 1);
    }

    #[test]
    fn pole_adjacent_root_survives() {
        // root at 1 + 1e-4, pole at 1
        let cfg = RootSearchConfig::new(0.0, 2.0).unwrap();
        let f = |x: f64| Ok((x - 1.0 - 1e-4) / (x - 1.0));
        let scan = bracket_roots(f, &cfg, &[1.0]).unwrap();
        assert_eq!(scan.roots.len(), 1);
        assert!((scan.roots[0] - 1.0001).abs() < 1e-9);
    }

    #[test]
    fn failures_are_reported_not_fatal() {
        let cfg = RootSearchConfig::new(0.0, 4.0).unwrap();
        let f = |x: f64| {
            if (1.5..2.0).contains(&x) {
                Err(Error::Unconverged { terms: 0 })
            } else {
                Ok((x - 0.5) * (x - 3.0))
            }
        };
        let scan = bracket_roots(f, &cfg, &[]).unwrap();
        assert_eq!(scan.roots.len(), 2);
        assert_eq!(scan.unresolved.len(), 1);
        let (a, b) = scan.unresolved[0];
        assert!(a < 1.5 && b >= 2.0);
    }

    #[test]
    fn segments_skip_margins() {
        let segs = pole_free_segments(0.0, 3.0, &[1.0, 2.0, 5.0], 0.1);
        assert_eq!(segs, vec![(0.0, 0.9), (1.1, 1.9), (2.1, 3.0)]);
        let segs = pole_free_segments(0.0, 1.0, &[0.0], 0.1);
        assert_eq!(segs, vec![(0.1, 1.0)]);
    }

    #[test]
    fn rejects_bad_config() {
        assert!(RootSearchConfig::new(1.0, 0.0).is_err());
        let cfg = RootSearchConfig::new(0.0, 1.0).unwrap();
        assert!(cfg.with_grid_points(1).validate().is_err());
        assert!(cfg.with_abs_tol(0.0).validate().is_err());
    }

    proptest! {
        #[test]
        fn finds_every_polynomial_root(mut roots in proptest::collection::vec(-4.0f64..4.0, 1..7)) {
            roots.sort_by(f64::total_cmp);
            // keep roots apart by more than a grid cell so each is a simple sign change
            roots.dedup_by(|a, b| (*a - *b).abs() < 0.01);
            let cfg = RootSearchConfig::new(-5.0, 5.0).unwrap();
            let rs = roots.clone();
            let f = move |x: f64| Ok(rs.iter().map(|r| x - r).product::<f64>());
            let scan = bracket_roots(f, &cfg, &[]).unwrap();
            prop_assert_eq!(scan.roots.len(), roots.len());
            for (found, want) in scan.roots.iter().zip(&roots) {
                prop_assert!((found - want).abs() < 1e-9);
            }
            for w in scan.roots.windows(2) {
                prop_assert!(w[1] - w[0] > 2.0 * cfg.abs_tol);
            }
        }
    }
}
