//! Root search for the constraint functions on overlapped pole lines.
//!
//! Both constraints are (up to a positive factor) polynomials in a squared
//! coupling variable, so an exact Sturm count of their real roots is available.
//! The floating-point scan is refined until it accounts for every counted root.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::roots::{bracket_roots, RootSearchConfig};

/// Tolerance on `g` within which the two constraint routes must agree.
pub(crate) const SHARED_ROOT_TOL: f64 = 1e-8;

/// Bisection tolerance used by the default degenerate-point configs.
pub(crate) const DEGENERATE_ABS_TOL: f64 = 1e-14;

/// Positive roots of `f` on `cfg`'s interval.
///
/// A grid scan goes first. When it brackets fewer than the `expected` (exactly
/// counted) roots, typically because roots bunch up near an interval end, the
/// roots come from exact isolation of `exact` instead: `exact()` returns the
/// constraint polynomial with the variable interval matching `(lo, hi]`, and
/// `to_g` maps a root of the variable back to the coupling.
pub(crate) fn pinned_roots<F, X, G>(f: F, expected: usize, cfg: &RootSearchConfig, exact: X, to_g: G) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
    X: FnOnce() -> Result<(Poly, BigRational, BigRational)>,
    G: Fn(f64) -> f64,
{
    let scan = bracket_roots(|g| Ok(f(g)), cfg, &[])?;
    let roots: Vec<f64> = scan.roots.into_iter().filter(|g| *g > 0.0).collect();
    if roots.len() == expected {
        return Ok(roots);
    }
    let (p, lo, hi) = exact()?;
    let mut out: Vec<f64> = p.real_roots(&lo, &hi).into_iter().map(to_g).filter(|g| *g > 0.0).collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Pairs the two root sets in order; fails unless they match one-to-one within `tol`.
pub(crate) fn pair_roots(
    f_roots: &[f64],
    c_roots: &[f64],
    tol: f64,
    n: usize,
    m: usize,
    residual: impl Fn(f64) -> (f64, f64),
) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(f_roots.len());
    for (i, &gf) in f_roots.iter().enumerate() {
        match c_roots.get(i) {
            Some(&gc) if (gf - gc).abs() < tol => out.push((gf, gc)),
            _ => {
                let (rf, rc) = residual(gf);
                return Err(Error::Inconsistent { n, m, g: gf, residual_f: rf, residual_c: rc });
            }
        }
    }
    if c_roots.len() > f_roots.len() {
        let g = c_roots[f_roots.len()];
        let (rf, rc) = residual(g);
        return Err(Error::Inconsistent { n, m, g, residual_f: rf, residual_c: rc });
    }
    Ok(out)
}

/// Checks that every closed-form root is present among the solver roots.
pub(crate) fn check_closed_form(
    solver: &[f64],
    closed: &[f64],
    tol: f64,
    n: usize,
    m: usize,
    residual: impl Fn(f64) -> (f64, f64),
) -> Result<()> {
    if solver.len() != closed.len() {
        let g = closed.first().or(solver.first()).copied().unwrap_or(f64::NAN);
        let (rf, rc) = residual(g);
        return Err(Error::Inconsistent { n, m, g, residual_f: rf, residual_c: rc });
    }
    for (&a, &b) in solver.iter().zip(closed) {
        if (a - b).abs() > tol {
            let (rf, rc) = residual(b);
            return Err(Error::Inconsistent { n, m, g: b, residual_f: rf, residual_c: rc });
        }
    }
    Ok(())
}
