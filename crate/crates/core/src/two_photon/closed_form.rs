//! Closed-form two-photon crossings for `N = 1` and for `(N, M) = (2, 3)`.

use crate::error::{Error, Result};
use crate::params::BargmannIndex;

/// `(g, ε)` pairs ascending in `g`.
pub fn closed_form_2p(q: BargmannIndex, n: usize, m: usize, delta: f64, omega: f64) -> Result<Vec<(f64, f64)>> {
    if !(omega > 0.0) || !(delta >= 0.0) {
        return Err(Error::domain("need omega > 0 and delta >= 0"));
    }
    let d = delta / omega;
    let d2 = d * d;
    let qv = q.value();
    // β²/ω² values
    let ys: Vec<f64> = match (n, m) {
        (1, m) if m > 1 => {
            if d >= 4.0 * (m as f64).sqrt() {
                vec![]
            } else {
                vec![(2.0 * qv + d2 / 16.0) / (m as f64 + 2.0 * qv)]
            }
        }
        (2, 3) => {
            // 4g²/ω² = 1 − β²/ω²
            let xs = match q {
                BargmannIndex::Quarter => {
                    let c = 2.0 / 3.0 - 23.0 * d2 / 2016.0;
                    let r = (25.0 * d2 * d2 + 2688.0 * d2 + 258048.0).sqrt() / 2016.0;
                    [c - r, c + r]
                }
                BargmannIndex::ThreeQuarters => {
                    let c = 6.0 / 11.0 - 29.0 * d2 / 3168.0;
                    let r = (49.0 * d2 * d2 + 1152.0 * d2 + 552960.0).sqrt() / 3168.0;
                    [c - r, c + r]
                }
            };
            xs.into_iter().map(|x| 1.0 - x).collect()
        }
        _ => return Err(Error::Unsupported(format!("no closed form for (N, M) = ({n}, {m})"))),
    };
    let mut out: Vec<(f64, f64)> = ys
        .into_iter()
        .filter(|y| *y > 0.0 && *y < 1.0)
        .map(|y| {
            let g = 0.5 * omega * (1.0 - y).sqrt();
            let beta = omega * y.sqrt();
            (g, 2.0 * beta * (m - n) as f64)
        })
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(out)
}
