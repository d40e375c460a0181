//! Terminated (quasi-exact) states at a one-photon crossing.

use serde::{Deserialize, Serialize};

use super::degenerate::DegeneratePoint1p;
use crate::error::{Error, Result};
use crate::params::PoleKind;

/// A finite expansion over the displaced basis `|n⟩_frame`.
///
/// `upper[n]` and `lower[n]` multiply `|n⟩_frame` on the two spin components of
/// the rotated Hamiltonian. The frame vacuum is the coherent state with amplitude
/// `displacement` (`−g/ω` for A, `+g/ω` for B).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisplacedState {
    pub frame: PoleKind,
    pub displacement: f64,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
}

/// Both terminated states of a crossing plus their termination residuals
/// `|f_{N+1}| / max|f|` and `|c_{M+1}| / max|c|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TerminatedPair1p {
    pub point: DegeneratePoint1p,
    pub a: DisplacedState,
    pub b: DisplacedState,
    pub tail_a: f64,
    pub tail_b: f64,
}

struct Side {
    e: Vec<f64>,
    f: Vec<f64>,
    tail: f64,
}

/// One frame at the pinned energy. `sign = +1` builds `(e, f)` up to the pole `pin`;
/// `sign = −1` builds `(d, c)`.
fn terminated_side(point: &DegeneratePoint1p, pin: usize, sign: f64) -> Side {
    let (w, delta, g, e) = (point.omega, point.delta, point.g, point.energy);
    let eps = sign * point.epsilon;
    let denom = |n: usize| n as f64 * w - g * g / w + 0.5 * eps - e;
    let bracket = |n: usize| n as f64 * w + 3.0 * g * g / w - 0.5 * eps - e;
    let mut f = vec![1.0];
    let mut ev = Vec::new();
    for n in 0..pin {
        let d = denom(n);
        ev.push(0.5 * delta * f[n] / d);
        let prev = if n == 0 { 0.0 } else { f[n - 1] };
        let next = ((bracket(n) - delta * delta / (4.0 * d)) * f[n] / (2.0 * g) - prev) / (n + 1) as f64;
        f.push(next);
    }
    // f[pin] is the constraint residual; the terminating choice of e_pin follows
    let e_pin = -4.0 * g / delta * f[pin - 1];
    ev.push(e_pin);
    let f_next = ((bracket(pin) * f[pin] - 0.5 * delta * e_pin) / (2.0 * g) - f[pin - 1]) / (pin + 1) as f64;
    let fmax = f.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    f.truncate(pin);
    Side { e: ev, f, tail: f_next.abs() / fmax }
}

fn sqrt_factorials(len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut acc = 1.0f64;
    for n in 0..len {
        if n > 0 {
            acc *= (n as f64).sqrt();
        }
        out.push(acc);
    }
    out
}

/// The two terminated states at `point`: the A-frame state ends at `e_N`, the
/// B-frame state at `d_M`.
pub fn degenerate_states_1p(point: &DegeneratePoint1p) -> Result<TerminatedPair1p> {
    if point.n == 0 || point.m <= point.n || !(point.g > 0.0) || !(point.delta > 0.0) {
        return Err(Error::domain("a terminated pair needs 1 <= N < M, g > 0 and delta > 0"));
    }
    let a = terminated_side(point, point.n, 1.0);
    let b = terminated_side(point, point.m, -1.0);
    let sf = sqrt_factorials(point.m + 1);
    let mut a_upper: Vec<f64> = a.e.iter().enumerate().map(|(n, v)| sf[n] * v).collect();
    let mut a_lower: Vec<f64> = a.f.iter().enumerate().map(|(n, v)| sf[n] * v).collect();
    a_lower.resize(a_upper.len(), 0.0);
    let alt = |n: usize| if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut b_upper: Vec<f64> = b.f.iter().enumerate().map(|(n, v)| alt(n) * sf[n] * v).collect();
    let b_lower: Vec<f64> = b.e.iter().enumerate().map(|(n, v)| alt(n) * sf[n] * v).collect();
    b_upper.resize(b_lower.len(), 0.0);
    a_upper.shrink_to_fit();
    let ratio = point.g / point.omega;
    Ok(TerminatedPair1p {
        point: *point,
        a: DisplacedState { frame: PoleKind::A, displacement: -ratio, upper: a_upper, lower: a_lower },
        b: DisplacedState { frame: PoleKind::B, displacement: ratio, upper: b_upper, lower: b_lower },
        tail_a: a.tail,
        tail_b: b.tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::one_photon::find_degenerate_1p;

    #[test]
    fn states_terminate() {
        for (n, m, delta) in [(1, 2, 1.5), (2, 3, 1.5), (3, 5, 2.0)] {
            for p in find_degenerate_1p(n, m, delta, 1.0, None).unwrap() {
                let pair = degenerate_states_1p(&p).unwrap();
                assert!(pair.tail_a < 1e-12, "{n} {m}: {}", pair.tail_a);
                assert!(pair.tail_b < 1e-12, "{n} {m}: {}", pair.tail_b);
                assert_eq!(pair.a.upper.len(), n + 1);
                assert_eq!(pair.b.lower.len(), m + 1);
                assert_eq!(pair.a.lower[n], 0.0);
                assert_eq!(pair.b.upper[m], 0.0);
            }
        }
    }
}
