//! Coefficient expansions shared by both models.
//!
//! In either model one frame expansion has a "primary" coefficient `f_n` obeying a
//! three-term recurrence and a "partner" `e_n = (Δ/2) f_n / D_n`, where `D_n` is
//! the distance from the energy to the `n`-th pole of that frame's family. The
//! other frame (`c_n`, `d_n`) is the same recurrence with `ε → −ε`. Everything
//! model-specific is behind [`Recurrence`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::PoleLine;
use crate::series::{Accumulator, ScaledPair, SeriesPolicy};

/// Model-specific pieces of a frame expansion at fixed energy.
pub(crate) trait Recurrence {
    /// `D_n`: pole energy minus the expansion energy.
    fn denom(&self, n: usize) -> f64;
    /// `(a_n, b_n)` with `f_{n+1} = a_n f_n − b_n f_{n−1}`, given `D_n`.
    fn coeffs(&self, n: usize, denom: f64) -> (f64, f64);
    /// `f_{n+1}` when the expansion restarts at `n` with `e_n = 1`, `f_n = f_{n−1} = 0`.
    fn restart_seed(&self, n: usize) -> f64;
    /// Factor `κ` of the terminating choice `e_N = κ f_{N−1}`.
    fn terminal_factor(&self) -> f64;
    /// `ln |w_0|` of the vacuum-projection weight.
    fn ln_weight0(&self) -> f64;
    /// `ln |w_{n+1} / w_n|`.
    fn ln_weight_ratio(&self, n: usize) -> f64;
    fn half_delta(&self) -> f64;
    fn pole_line(&self, n: usize) -> PoleLine;
}

/// How one frame's expansion is treated at (or away from) its poles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SideMode {
    /// `f_0 = 1`, every coefficient from the recurrence.
    Regular,
    /// Cut after the pinned pole `N`: `e_N = κ f_{N−1}`, all later terms zero.
    Terminated(usize),
    /// Start at the pinned pole `N`: `e_N = 1`, `e_{n<N} = f_{n≤N} = 0`.
    Restarted(usize),
}

/// Weighted sums `Σ e_n w_n` and `Σ f_n w_n` of one frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SideSums {
    pub e: f64,
    pub f: f64,
    pub terms: usize,
}

fn check_pole<R: Recurrence>(rec: &R, n: usize, d: f64, margin: f64, energy: f64) -> Result<()> {
    if d.abs() < margin || !d.is_finite() {
        return Err(Error::PoleProximity { line: rec.pole_line(n), energy });
    }
    Ok(())
}

pub(crate) fn side_sums<R: Recurrence>(
    rec: &R,
    mode: SideMode,
    policy: &SeriesPolicy,
    margin: f64,
    energy: f64,
) -> Result<SideSums> {
    let hd = rec.half_delta();
    let mut ln_w = rec.ln_weight0();
    match mode {
        SideMode::Regular => {
            let mut pair = ScaledPair::new(0.0, 1.0);
            let mut acc_e = Accumulator::new();
            let mut acc_f = Accumulator::new();
            for n in 0..policy.n_max {
                let d = rec.denom(n);
                check_pole(rec, n, d, margin, energy)?;
                let tf = pair.weighted(ln_w, 1.0);
                acc_f.push(tf, policy);
                acc_e.push(hd * tf / d, policy);
                if acc_e.stalled || acc_f.stalled {
                    return Err(Error::Unconverged { terms: n + 1 });
                }
                if acc_e.settled(policy) && acc_f.settled(policy) {
                    return Ok(SideSums { e: acc_e.sum, f: acc_f.sum, terms: n + 1 });
                }
                let (a, b) = rec.coeffs(n, d);
                pair.advance(a, b);
                ln_w += rec.ln_weight_ratio(n);
            }
            Err(Error::Unconverged { terms: policy.n_max })
        }
        SideMode::Terminated(pin) => {
            if pin == 0 {
                return Err(Error::domain("a terminated expansion needs N >= 1"));
            }
            let mut pair = ScaledPair::new(0.0, 1.0);
            let (mut e, mut f) = (0.0, 0.0);
            for n in 0..pin {
                let d = rec.denom(n);
                check_pole(rec, n, d, margin, energy)?;
                let tf = pair.weighted(ln_w, 1.0);
                f += tf;
                e += hd * tf / d;
                if n + 1 < pin {
                    let (a, b) = rec.coeffs(n, d);
                    pair.advance(a, b);
                }
                ln_w += rec.ln_weight_ratio(n);
            }
            e += rec.terminal_factor() * pair.weighted(ln_w, 1.0);
            Ok(SideSums { e, f, terms: pin + 1 })
        }
        SideMode::Restarted(pin) => {
            for n in 0..pin {
                ln_w += rec.ln_weight_ratio(n);
            }
            let mut acc_e = Accumulator::new();
            let mut acc_f = Accumulator::new();
            // e_pin = 1
            acc_e.push(ln_w.exp(), policy);
            acc_f.push(0.0, policy);
            let mut pair = ScaledPair::new(0.0, rec.restart_seed(pin));
            ln_w += rec.ln_weight_ratio(pin);
            for n in pin + 1..pin + 1 + policy.n_max {
                let d = rec.denom(n);
                check_pole(rec, n, d, margin, energy)?;
                let tf = pair.weighted(ln_w, 1.0);
                acc_f.push(tf, policy);
                acc_e.push(hd * tf / d, policy);
                if acc_e.stalled || acc_f.stalled {
                    return Err(Error::Unconverged { terms: n + 1 });
                }
                if acc_e.settled(policy) && acc_f.settled(policy) {
                    return Ok(SideSums { e: acc_e.sum, f: acc_f.sum, terms: n + 1 });
                }
                let (a, b) = rec.coeffs(n, d);
                pair.advance(a, b);
                ln_w += rec.ln_weight_ratio(n);
            }
            Err(Error::Unconverged { terms: policy.n_max })
        }
    }
}

/// Coefficient `f_n` (or `c_n`) from `f_0 = 1` without weighting.
///
/// Used on pole lines, where only the first `n` denominators enter and those are
/// finite away from the pinned pole.
pub(crate) fn coefficient_at<R: Recurrence>(rec: &R, n: usize) -> f64 {
    let mut pair = ScaledPair::new(0.0, 1.0);
    for k in 0..n {
        let d = rec.denom(k);
        let (a, b) = rec.coeffs(k, d);
        pair.advance(a, b);
    }
    pair.value()
}

/// Recurrence output for one frame together with its truncation metadata.
///
/// `primary[n]·exp(log_scale[n])` is the true `f_n` (or `c_n`); `partner` is
/// stored on the same scale. The scale is zero until the values leave
/// `[1e-100, 1e100]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub primary: Vec<f64>,
    pub partner: Vec<f64>,
    pub log_scale: Vec<f64>,
    pub truncation_n: usize,
    pub converged: bool,
    pub tail_estimate: f64,
}

impl CoefficientTable {
    pub fn primary_value(&self, n: usize) -> f64 {
        self.primary[n] * self.log_scale[n].exp()
    }

    pub fn partner_value(&self, n: usize) -> f64 {
        self.partner[n] * self.log_scale[n].exp()
    }

    pub fn len(&self) -> usize {
        self.primary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primary.is_empty()
    }
}

pub(crate) fn coefficient_table<R: Recurrence>(
    rec: &R,
    policy: &SeriesPolicy,
    margin: f64,
    energy: f64,
) -> Result<CoefficientTable> {
    let hd = rec.half_delta();
    let mut pair = ScaledPair::new(0.0, 1.0);
    let mut ln_w = rec.ln_weight0();
    let mut acc_e = Accumulator::new();
    let mut acc_f = Accumulator::new();
    let mut table = CoefficientTable {
        primary: Vec::new(),
        partner: Vec::new(),
        log_scale: Vec::new(),
        truncation_n: 0,
        converged: false,
        tail_estimate: f64::NAN,
    };
    for n in 0..policy.n_max {
        let d = rec.denom(n);
        check_pole(rec, n, d, margin, energy)?;
        table.primary.push(pair.cur);
        table.partner.push(hd * pair.cur / d);
        table.log_scale.push(pair.ln_scale);
        let tf = pair.weighted(ln_w, 1.0);
        acc_f.push(tf, policy);
        acc_e.push(hd * tf / d, policy);
        table.truncation_n = n;
        table.tail_estimate = tf.abs().max((hd * tf / d).abs());
        if acc_e.stalled || acc_f.stalled {
            return Ok(table);
        }
        if acc_e.settled(policy) && acc_f.settled(policy) {
            table.converged = true;
            return Ok(table);
        }
        let (a, b) = rec.coeffs(n, d);
        pair.advance(a, b);
        ln_w += rec.ln_weight_ratio(n);
    }
    Ok(table)
}
