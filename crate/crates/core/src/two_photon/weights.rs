//! Squeezed-vacuum projections `Ω_m` of the two-photon frames.
//!
//! `Ω_m = (−tanh r)^m / √cosh r · [2(m+q−1/4)]! / (2^m m!)`. The factorial
//! overflows a double near `m ≈ 85`, so magnitudes are held as logarithms with
//! the sign kept apart.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use super::SqueezeFrame;
use crate::error::Result;
use crate::params::{BargmannIndex, ModelParams};

/// How a [`WeightTable`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightConstruction {
    RatioRecurrence,
    LogGamma,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightTable {
    pub q: BargmannIndex,
    /// `ln |Ω_m|`; `−∞` where `Ω_m = 0`.
    pub ln_abs: Vec<f64>,
    /// Sign of `Ω_m` (`0` where it vanishes).
    pub signs: Vec<i8>,
    pub built_by: WeightConstruction,
}

impl WeightTable {
    pub fn value(&self, m: usize) -> f64 {
        f64::from(self.signs[m]) * self.ln_abs[m].exp()
    }

    pub fn len(&self) -> usize {
        self.ln_abs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ln_abs.is_empty()
    }
}

/// `ln(Ω_{m+1}/Ω_m) − ln tanh ρ`, the factorial part of the ratio law.
pub(crate) fn ln_ratio_factor(q: BargmannIndex, m: usize) -> f64 {
    let a = 2.0 * m as f64 + 2.0 * q.value();
    ((a + 1.5) * (a + 0.5) / (2.0 * (m + 1) as f64)).ln()
}

/// `Ω_0 … Ω_{n_max}` from the ratio law.
pub fn weights(q: BargmannIndex, params: &ModelParams, n_max: usize) -> Result<WeightTable> {
    let frame = SqueezeFrame::new(params)?;
    let mut ln_abs = Vec::with_capacity(n_max + 1);
    let mut signs = Vec::with_capacity(n_max + 1);
    let mut ln = frame.ln_weight0();
    ln_abs.push(ln);
    signs.push(1);
    let ln_t = frame.tanh_rho.ln();
    for m in 0..n_max {
        if frame.tanh_rho == 0.0 {
            ln_abs.push(f64::NEG_INFINITY);
            signs.push(0);
            continue;
        }
        ln += ln_t + ln_ratio_factor(q, m);
        ln_abs.push(ln);
        signs.push(1);
    }
    Ok(WeightTable { q, ln_abs, signs, built_by: WeightConstruction::RatioRecurrence })
}

/// Independent construction from `ln Γ` of the factorials.
pub fn weights_log_gamma(q: BargmannIndex, params: &ModelParams, n_max: usize) -> Result<WeightTable> {
    let frame = SqueezeFrame::new(params)?;
    let mut ln_abs = Vec::with_capacity(n_max + 1);
    let mut signs = Vec::with_capacity(n_max + 1);
    let ln_t = frame.tanh_rho.ln();
    for m in 0..=n_max {
        if m > 0 && frame.tanh_rho == 0.0 {
            ln_abs.push(f64::NEG_INFINITY);
            signs.push(0);
            continue;
        }
        let mf = m as f64;
        // [2(m+q−1/4)]! = Γ(2m + 2q + 1/2)
        let fact = ln_gamma(2.0 * mf + 2.0 * q.value() + 0.5);
        let tail = if m == 0 { 0.0 } else { mf * ln_t };
        ln_abs.push(frame.ln_weight0() + tail + fact - mf * std::f64::consts::LN_2 - ln_gamma(mf + 1.0));
        signs.push(1);
    }
    Ok(WeightTable { q, ln_abs, signs, built_by: WeightConstruction::LogGamma })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(g: f64) -> ModelParams {
        ModelParams::new(1.0, 2.0, 0.5, g).unwrap()
    }

    fn factorial(n: u64) -> f64 {
        (1..=n).map(|k| k as f64).product()
    }

    #[test]
    fn zero_coupling() {
        for q in BargmannIndex::ALL {
            let w = weights(q, &p(0.0), 5).unwrap();
            assert_eq!(w.value(0), 1.0);
            for m in 1..=5 {
                assert_eq!(w.value(m), 0.0);
            }
        }
    }

    #[test]
    fn matches_direct_factorials() {
        let params = p(0.3);
        // independent route through r
        let r = 0.25 * ((1.0 - 0.6f64) / 1.6).ln();
        for q in BargmannIndex::ALL {
            let w = weights(q, &params, 20).unwrap();
            for m in 0..=20u64 {
                let k = 2 * m + q.fock_offset() as u64;
                let direct = (-r.tanh()).powi(m as i32) / r.cosh().sqrt() * factorial(k)
                    / (2f64.powi(m as i32) * factorial(m));
                let rel = (w.value(m as usize) - direct).abs() / direct.abs();
                assert!(rel < 1e-12, "q={q} m={m}: {rel}");
            }
        }
    }

    #[test]
    fn ratio_law_simplifies() {
        let params = p(0.2);
        let t = -squeeze(&params).tanh();
        let w = weights(BargmannIndex::Quarter, &params, 10).unwrap();
        let w3 = weights(BargmannIndex::ThreeQuarters, &params, 10).unwrap();
        for m in 0..10 {
            let r = w.value(m + 1) / w.value(m);
            assert!((r - t * (2 * m + 1) as f64).abs() < 1e-12 * r);
            let r3 = w3.value(m + 1) / w3.value(m);
            assert!((r3 - t * (2 * m + 3) as f64).abs() < 1e-12 * r3);
        }
    }

    fn squeeze(params: &ModelParams) -> f64 {
        crate::params::squeeze_r(params).unwrap()
    }

    #[test]
    fn dual_construction_agrees() {
        for g in [0.05, 0.25, 0.45, 0.499] {
            for q in BargmannIndex::ALL {
                let a = weights(q, &p(g), 200).unwrap();
                let b = weights_log_gamma(q, &p(g), 200).unwrap();
                for m in 0..=200 {
                    let rel = (a.ln_abs[m] - b.ln_abs[m]).abs();
                    assert!(rel < 1e-12 * a.ln_abs[m].abs().max(1.0), "g={g} q={q} m={m}");
                }
            }
        }
    }

    #[test]
    fn survives_factorial_overflow() {
        let w = weights(BargmannIndex::Quarter, &p(0.49), 400).unwrap();
        assert!(w.ln_abs[400].is_finite());
        assert!(w.ln_abs[400] > 700.0);
    }
}
