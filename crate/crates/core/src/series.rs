//! Truncation policy for the weighted coefficient series.

use serde::{Deserialize, Serialize};

/// When to stop summing `Σ coef_n · weight_n`.
///
/// A series is settled once `run` consecutive terms each fall below
/// `rel_tol × max |partial sum|`. If `stall_window` is set, a run of that many
/// term ratios inside `stall_band` marks the series as stalled (unconverged).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPolicy {
    pub rel_tol: f64,
    pub run: usize,
    pub n_max: usize,
    pub stall_window: Option<usize>,
    pub stall_band: (f64, f64),
}

impl SeriesPolicy {
    pub fn one_photon() -> Self {
        SeriesPolicy { rel_tol: 1e-14, run: 10, n_max: 5000, stall_window: None, stall_band: (0.99, 1.01) }
    }

    pub fn two_photon() -> Self {
        SeriesPolicy { stall_window: Some(50), ..Self::one_photon() }
    }
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        Self::one_photon()
    }
}

/// Running sum with the stopping rule of [`SeriesPolicy`].
#[derive(Debug, Clone)]
pub(crate) struct Accumulator {
    pub sum: f64,
    max_partial: f64,
    small_run: usize,
    last_abs: f64,
    stall_run: usize,
    pub stalled: bool,
    pub last_term: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator {
            sum: 0.0,
            max_partial: 0.0,
            small_run: 0,
            last_abs: 0.0,
            stall_run: 0,
            stalled: false,
            last_term: 0.0,
        }
    }

    pub fn push(&mut self, term: f64, policy: &SeriesPolicy) {
        self.sum += term;
        self.max_partial = self.max_partial.max(self.sum.abs());
        let a = term.abs();
        if self.max_partial > 0.0 && a <= policy.rel_tol * self.max_partial {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        if let Some(window) = policy.stall_window {
            if self.last_abs > 0.0 && a > 0.0 {
                let ratio = a / self.last_abs;
                if ratio >= policy.stall_band.0 && ratio <= policy.stall_band.1 {
                    self.stall_run += 1;
                    if self.stall_run >= window {
                        self.stalled = true;
                    }
                } else {
                    self.stall_run = 0;
                }
            }
        }
        self.last_abs = a;
        self.last_term = term;
    }

    pub fn settled(&self, policy: &SeriesPolicy) -> bool {
        self.small_run >= policy.run
    }
}

/// Three-term recurrence state carried with a shared logarithmic scale, so that
/// coefficients decaying like `1/n!` neither underflow nor overflow.
///
/// The true values are `prev·e^{ln_scale}` and `cur·e^{ln_scale}`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ScaledPair {
    pub prev: f64,
    pub cur: f64,
    pub ln_scale: f64,
}

const RESCALE_HI: f64 = 1e100;
const RESCALE_LO: f64 = 1e-100;

impl ScaledPair {
    pub fn new(prev: f64, cur: f64) -> Self {
        ScaledPair { prev, cur, ln_scale: 0.0 }
    }

    /// Advances with `next = a·cur − b·prev`.
    pub fn advance(&mut self, a: f64, b: f64) {
        let next = a * self.cur - b * self.prev;
        self.prev = self.cur;
        self.cur = next;
        let m = next.abs().max(self.prev.abs());
        if m > RESCALE_HI || (m < RESCALE_LO && m > 0.0) {
            self.prev /= m;
            self.cur /= m;
            self.ln_scale += m.ln();
        }
    }

    /// `cur · e^{ln_scale + ln_weight}`, the weighted current coefficient.
    pub fn weighted(&self, ln_weight: f64, weight_sign: f64) -> f64 {
        if self.cur == 0.0 {
            return 0.0;
        }
        weight_sign * self.cur.signum() * (self.cur.abs().ln() + self.ln_scale + ln_weight).exp()
    }

    pub fn value(&self) -> f64 {
        self.cur * self.ln_scale.exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series_settles() {
        let policy = SeriesPolicy::one_photon();
        let mut acc = Accumulator::new();
        let mut n = 0;
        while !acc.settled(&policy) {
            acc.push(0.5f64.powi(n), &policy);
            n += 1;
            assert!(n < 200);
        }
        assert!((acc.sum - 2.0).abs() < 1e-13);
    }

    #[test]
    fn stall_is_detected() {
        let policy = SeriesPolicy::two_photon();
        let mut acc = Accumulator::new();
        for n in 0..100 {
            acc.push(0.999f64.powi(n), &policy);
        }
        assert!(acc.stalled);
        let mut acc = Accumulator::new();
        for n in 0..100 {
            acc.push(0.9f64.powi(n), &policy);
        }
        assert!(!acc.stalled);
    }

    #[test]
    fn scaled_pair_tracks_factorial_decay() {
        // f_{n+1} = f_n / (n+1)  =>  f_n = 1/n!
        let mut s = ScaledPair::new(0.0, 1.0);
        let mut ln_fact = 0.0;
        for n in 0..400 {
            s.advance(1.0 / (n + 1) as f64, 0.0);
            ln_fact += ((n + 1) as f64).ln();
        }
        let ln_value = s.cur.ln() + s.ln_scale;
        assert!((ln_value + ln_fact).abs() < 1e-10);
        // weighting by 400! restores 1
        assert!((s.weighted(ln_fact, 1.0) - 1.0).abs() < 1e-10);
    }
}
