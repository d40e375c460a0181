//! Terminated states at a two-photon crossing.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use super::degenerate::DegeneratePoint2p;
use super::{k_factor, SqueezeFrame};
use crate::error::{Error, Result};
use crate::params::{BargmannIndex, PoleKind};

/// A finite expansion over the squeezed sector basis `|q, m⟩_frame`, which is
/// the Fock state `|2m + offset⟩` acted on by the frame's squeeze operator.
///
/// `squeeze` is the signed squeeze amount `ρ` of the frame: the frame basis is
/// `exp((ρ/2)(a² − a†²))|k⟩`, with `ρ = −r` for A and `ρ = r` for B.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SqueezedState {
    pub frame: PoleKind,
    pub q: BargmannIndex,
    pub squeeze: f64,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TerminatedPair2p {
    pub point: DegeneratePoint2p,
    pub a: SqueezedState,
    pub b: SqueezedState,
    pub tail_a: f64,
    pub tail_b: f64,
}

struct Side {
    e: Vec<f64>,
    f: Vec<f64>,
    tail: f64,
}

fn terminated_side(point: &DegeneratePoint2p, pin: usize, sign: f64) -> Side {
    let (w, delta, g, e, b) = (point.omega, point.delta, point.g, point.energy, point.beta);
    let q = point.q;
    let eps = sign * point.epsilon;
    let qv = q.value();
    let denom = |n: usize| 2.0 * b * (n as f64 + qv) - e + 0.5 * (eps - w);
    let x = |n: usize| 2.0 * (2.0 * w * w - b * b) * (n as f64 + qv) - b * (e + 0.5 * (eps + w));
    // f_{n+1} from f_n, e_n, f_{n−1}
    let step = |n: usize, fn_: f64, en: f64, fp: f64| {
        let k = k_factor(q, n);
        (x(n) * fn_ - 0.5 * delta * b * en) / (8.0 * g * w * k) - fp / (4.0 * k)
    };
    let mut f = vec![1.0];
    let mut ev = Vec::new();
    for n in 0..pin {
        let en = 0.5 * delta * f[n] / denom(n);
        ev.push(en);
        let prev = if n == 0 { 0.0 } else { f[n - 1] };
        f.push(step(n, f[n], en, prev));
    }
    let e_pin = -4.0 * g * w / (delta * b) * f[pin - 1];
    ev.push(e_pin);
    let f_next = step(pin, f[pin], e_pin, f[pin - 1]);
    let fmax = f.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    f.truncate(pin);
    Side { e: ev, f, tail: f_next.abs() / fmax }
}

/// `√[2(m+q−1/4)]!` for `m = 0..len`.
fn sqrt_factorials(q: BargmannIndex, len: usize) -> Vec<f64> {
    (0..len)
        .map(|m| (0.5 * ln_gamma(2.0 * m as f64 + 2.0 * q.value() + 0.5)).exp())
        .collect()
}

pub fn degenerate_states_2p(point: &DegeneratePoint2p) -> Result<TerminatedPair2p> {
    if point.n == 0 || point.m <= point.n || !(point.delta > 0.0) {
        return Err(Error::domain("a terminated pair needs 1 <= N < M and delta > 0"));
    }
    let frame = SqueezeFrame::new(&point.params())?;
    if !(point.g > 0.0) {
        return Err(Error::domain("a terminated pair needs g > 0"));
    }
    let a = terminated_side(point, point.n, 1.0);
    let b = terminated_side(point, point.m, -1.0);
    let sf = sqrt_factorials(point.q, point.m + 1);
    let alt = |n: usize| if n % 2 == 0 { 1.0 } else { -1.0 };
    let a_upper: Vec<f64> = a.e.iter().enumerate().map(|(n, v)| sf[n] * v).collect();
    let mut a_lower: Vec<f64> = a.f.iter().enumerate().map(|(n, v)| sf[n] * v).collect();
    a_lower.resize(a_upper.len(), 0.0);
    let mut b_upper: Vec<f64> = b.f.iter().enumerate().map(|(n, v)| alt(n) * sf[n] * v).collect();
    let b_lower: Vec<f64> = b.e.iter().enumerate().map(|(n, v)| alt(n) * sf[n] * v).collect();
    b_upper.resize(b_lower.len(), 0.0);
    let rho = -frame.r;
    Ok(TerminatedPair2p {
        point: *point,
        a: SqueezedState { frame: PoleKind::A, q: point.q, squeeze: rho, upper: a_upper, lower: a_lower },
        b: SqueezedState { frame: PoleKind::B, q: point.q, squeeze: -rho, upper: b_upper, lower: b_lower },
        tail_a: a.tail,
        tail_b: b.tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::two_photon::find_degenerate_2p;

    #[test]
    fn states_terminate() {
        for q in BargmannIndex::ALL {
            for (n, m) in [(1, 2), (2, 3), (3, 6)] {
                for p in find_degenerate_2p(q, n, m, 2.0, 1.0, None).unwrap() {
                    let pair = degenerate_states_2p(&p).unwrap();
                    assert!(pair.tail_a < 1e-12, "{q} {n} {m}: {}", pair.tail_a);
                    assert!(pair.tail_b < 1e-12, "{q} {n} {m}: {}", pair.tail_b);
                }
            }
        }
    }
}
