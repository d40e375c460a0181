//! Closed-form crossing couplings for the lowest overlapped pole lines.

use crate::error::{Error, Result};

/// Positive crossing couplings `g` for `(N, M)` with `N = 1` (any `M`) or `N = 2`
/// (any `M`, with the dedicated radical for `M = 3`), ascending.
pub fn closed_form_1p(n: usize, m: usize, delta: f64, omega: f64) -> Result<Vec<f64>> {
    if !(omega > 0.0) || !(delta >= 0.0) {
        return Err(Error::domain("need omega > 0 and delta >= 0"));
    }
    if m <= n || n == 0 {
        return Err(Error::domain(format!("need 1 <= N < M, got N = {n}, M = {m}")));
    }
    let d = delta / omega;
    let mf = m as f64;
    let mut out = match n {
        1 if m == 3 => {
            let s = 12.0 - d * d;
            if s > 0.0 {
                vec![0.25 * s.sqrt()]
            } else {
                vec![]
            }
        }
        1 => {
            let s = mf - 0.25 * d * d;
            if s > 0.0 {
                vec![0.5 * s.sqrt()]
            } else {
                vec![]
            }
        }
        2 if m == 3 => {
            let u = d * d - 16.0;
            let r = (u * u + 512.0).sqrt();
            [-3.0 * u - r, -3.0 * u + r]
                .into_iter()
                .filter(|v| *v > 0.0)
                .map(|v| v.sqrt() / 8.0)
                .collect()
        }
        2 => {
            let c = mf - 3.0 * d * d / 16.0;
            let s = d * d / 16.0 - 1.0;
            let r = (s * s + mf - 1.0).sqrt();
            [c - r, c + r].into_iter().filter(|x| *x > 0.0).map(|x| 0.5 * x.sqrt()).collect()
        }
        _ => return Err(Error::Unsupported(format!("no closed form for N = {n}"))),
    };
    for g in &mut out {
        *g *= omega;
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}
