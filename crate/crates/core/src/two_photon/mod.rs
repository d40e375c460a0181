//! Asymmetric two-photon Rabi model in squeezed-oscillator frames.
//!
//! Each Bargmann sector `q` is solved separately. The A frame squeezes with `r`,
//! the B frame with `−r`; vacuum projections carry the weights `Ω_m`.

pub mod closed_form;
pub mod degenerate;
pub mod states;
pub mod weights;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{self, CoefficientTable, Recurrence, SideMode};
use crate::params::{self, BargmannIndex, ModelParams, PoleKind, PoleLine};
use crate::poly::{self, Poly};
use crate::series::SeriesPolicy;
use crate::EvalConfig;

pub use closed_form::closed_form_2p;
pub use degenerate::{find_degenerate_2p, DegeneratePoint2p};
pub use states::{degenerate_states_2p, SqueezedState, TerminatedPair2p};
pub use weights::{weights, weights_log_gamma, WeightConstruction, WeightTable};

/// Couplings within this fraction of `ω/2` are treated as the collapse point
/// and kept out of automated scans.
pub const COLLAPSE_EXCLUSION: f64 = 1e-3;

/// Largest coupling an automated two-photon scan will visit.
pub fn scan_g_max(omega: f64) -> f64 {
    0.5 * omega * (1.0 - COLLAPSE_EXCLUSION)
}

/// Squeezing data of the two-photon frames.
///
/// `rho = −r ≥ 0`; the frame vacua are squeezed vacua with `tanh ρ` and `cosh ρ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezeFrame {
    pub omega: f64,
    pub g: f64,
    pub r: f64,
    pub beta: f64,
    pub tanh_rho: f64,
    pub cosh_rho: f64,
}

impl SqueezeFrame {
    pub fn new(params: &ModelParams) -> Result<Self> {
        params.validate_two_photon()?;
        let r = params::squeeze_r(params)?;
        let beta = params::beta(params)?;
        let t = 2.0 * params.g / params.omega;
        // tanh(2ρ) = t
        let tanh_rho = t / (1.0 + ((1.0 - t) * (1.0 + t)).sqrt());
        let cosh_rho = (0.5 * (params.omega / beta + 1.0)).sqrt();
        Ok(SqueezeFrame { omega: params.omega, g: params.g, r, beta, tanh_rho, cosh_rho })
    }

    pub fn tanh_r(&self) -> f64 {
        -self.tanh_rho
    }

    pub fn cosh_r(&self) -> f64 {
        self.cosh_rho
    }

    pub(crate) fn ln_weight0(&self) -> f64 {
        -0.5 * self.cosh_rho.ln()
    }
}

/// `(n+q+1/4)(n+q+3/4)`
pub(crate) fn k_factor(q: BargmannIndex, n: usize) -> f64 {
    let a = n as f64 + q.value();
    (a + 0.25) * (a + 0.75)
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct TwoPhotonRec {
    omega: f64,
    delta: f64,
    eps: f64,
    g: f64,
    beta: f64,
    ln_tanh: f64,
    ln_w0: f64,
    q: BargmannIndex,
    energy: f64,
    kind: PoleKind,
}

impl TwoPhotonRec {
    pub(crate) fn new(frame: &SqueezeFrame, params: &ModelParams, q: BargmannIndex, energy: f64, kind: PoleKind) -> Self {
        TwoPhotonRec {
            omega: params.omega,
            delta: params.delta,
            eps: kind.epsilon_sign() * params.epsilon,
            g: params.g,
            beta: frame.beta,
            ln_tanh: frame.tanh_rho.ln(),
            ln_w0: frame.ln_weight0(),
            q,
            energy,
            kind,
        }
    }
}

impl Recurrence for TwoPhotonRec {
    fn denom(&self, n: usize) -> f64 {
        2.0 * self.beta * (n as f64 + self.q.value()) - self.energy + 0.5 * (self.eps - self.omega)
    }

    fn coeffs(&self, n: usize, denom: f64) -> (f64, f64) {
        let k = k_factor(self.q, n);
        let (w, b) = (self.omega, self.beta);
        let num = 2.0 * (2.0 * w * w - b * b) * (n as f64 + self.q.value())
            - b * (self.energy + 0.5 * (self.eps + w))
            - self.delta * self.delta * b / (4.0 * denom);
        (num / (8.0 * self.g * w * k), 1.0 / (4.0 * k))
    }

    fn restart_seed(&self, n: usize) -> f64 {
        -self.delta * self.beta / (16.0 * self.g * self.omega * k_factor(self.q, n))
    }

    fn terminal_factor(&self) -> f64 {
        -4.0 * self.g * self.omega / (self.delta * self.beta)
    }

    fn ln_weight0(&self) -> f64 {
        self.ln_w0
    }

    fn ln_weight_ratio(&self, n: usize) -> f64 {
        self.ln_tanh + weights::ln_ratio_factor(self.q, n)
    }

    fn half_delta(&self) -> f64 {
        0.5 * self.delta
    }

    fn pole_line(&self, n: usize) -> PoleLine {
        PoleLine::two_photon(self.kind, n, self.q)
    }
}

fn check_coupling(params: &ModelParams) -> Result<SqueezeFrame> {
    params.validate_two_photon()?;
    if params.g <= 0.0 {
        return Err(Error::domain("squeezed-frame expansions need g > 0"));
    }
    SqueezeFrame::new(params)
}

pub fn eval_config() -> EvalConfig {
    EvalConfig { policy: SeriesPolicy::two_photon(), pole_margin: crate::roots::DEFAULT_POLE_MARGIN }
}

/// `f_n` and `e_n` of the A frame in sector `q` at energy `E`.
pub fn coeffs_fe_2p(q: BargmannIndex, params: &ModelParams, energy: f64, policy: &SeriesPolicy) -> Result<CoefficientTable> {
    let frame = check_coupling(params)?;
    let rec = TwoPhotonRec::new(&frame, params, q, energy, PoleKind::A);
    expansion::coefficient_table(&rec, policy, crate::roots::DEFAULT_POLE_MARGIN * params.omega, energy)
}

/// `c_n` and `d_n` of the B frame in sector `q` at energy `E`.
pub fn coeffs_cd_2p(q: BargmannIndex, params: &ModelParams, energy: f64, policy: &SeriesPolicy) -> Result<CoefficientTable> {
    let frame = check_coupling(params)?;
    let rec = TwoPhotonRec::new(&frame, params, q, energy, PoleKind::B);
    expansion::coefficient_table(&rec, policy, crate::roots::DEFAULT_POLE_MARGIN * params.omega, energy)
}

/// The two-photon G-function of sector `q`; its zeros in `E` are that sector's regular spectrum.
pub fn g2p(q: BargmannIndex, params: &ModelParams, energy: f64) -> Result<f64> {
    g2p_with(q, params, energy, &eval_config())
}

pub fn g2p_with(q: BargmannIndex, params: &ModelParams, energy: f64, cfg: &EvalConfig) -> Result<f64> {
    g2p_modes(q, params, energy, SideMode::Regular, SideMode::Regular, cfg)
}

pub(crate) fn g2p_modes(
    q: BargmannIndex,
    params: &ModelParams,
    energy: f64,
    mode_a: SideMode,
    mode_b: SideMode,
    cfg: &EvalConfig,
) -> Result<f64> {
    let frame = check_coupling(params)?;
    let margin = cfg.pole_margin * params.omega;
    let ra = TwoPhotonRec::new(&frame, params, q, energy, PoleKind::A);
    let rb = TwoPhotonRec::new(&frame, params, q, energy, PoleKind::B);
    let a = expansion::side_sums(&ra, mode_a, &cfg.policy, margin, energy)?;
    let b = expansion::side_sums(&rb, mode_b, &cfg.policy, margin, energy)?;
    Ok(a.e * b.e - a.f * b.f)
}

/// `f_N` at the `N`-th A-pole energy (kind A) or `c_M` at the `M`-th B-pole (kind B),
/// for arbitrary bias.
pub fn pole_coefficient_2p(q: BargmannIndex, kind: PoleKind, index: usize, params: &ModelParams) -> Result<f64> {
    let frame = check_coupling(params)?;
    let energy = params::pole_energy(PoleLine::two_photon(kind, index, q), params)?;
    let rec = TwoPhotonRec::new(&frame, params, q, energy, kind);
    Ok(expansion::coefficient_at(&rec, index))
}

pub(crate) fn check_pair(n: usize, m: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain(
            "degenerate crossings need N >= 1; the N = 0 line only carries exceptional points",
        ));
    }
    if m <= n {
        return Err(Error::domain(format!("need M > N, got N = {n}, M = {m}")));
    }
    Ok(())
}

/// Constraint recurrence with `E = (M+N+2q)β − ω/2` and `ε = 2β(M−N)` substituted.
fn pinned_constraint(q: BargmannIndex, target: usize, other: usize, delta: f64, omega: f64, g: f64) -> f64 {
    let b2 = omega * omega - 4.0 * g * g;
    let qv = q.value();
    let (mut prev, mut cur) = (0.0, 1.0);
    for n in 0..target {
        let k = k_factor(q, n);
        let nf = n as f64;
        let a = 2.0 * omega * omega * (nf + qv) - b2 * (nf + other as f64 + 2.0 * qv)
            + delta * delta / (16.0 * (target as f64 - nf));
        let next = a / (4.0 * g * omega * k) * cur - prev / (4.0 * k);
        prev = cur;
        cur = next;
    }
    cur
}

fn check_domain(g: f64, omega: f64) -> Result<()> {
    if !(omega > 0.0) || !(g > 0.0) || !(g < 0.5 * omega) {
        return Err(Error::domain(format!("need 0 < g < omega/2 (g = {g}, omega = {omega})")));
    }
    Ok(())
}

/// `f_N^(q)` on the overlapped pole lines.
pub fn f_n_pole_2p(q: BargmannIndex, n: usize, m: usize, delta: f64, omega: f64, g: f64) -> Result<f64> {
    check_pair(n, m)?;
    check_domain(g, omega)?;
    Ok(pinned_constraint(q, n, m, delta, omega, g))
}

/// `c_M^(q)` on the overlapped pole lines.
pub fn c_m_pole_2p(q: BargmannIndex, n: usize, m: usize, delta: f64, omega: f64, g: f64) -> Result<f64> {
    check_pair(n, m)?;
    check_domain(g, omega)?;
    Ok(pinned_constraint(q, m, n, delta, omega, g))
}

/// The constraint times `(4gω)^T Π k_j / ω^{2T}`: a degree-`T` polynomial in
/// `y = β²/ω²`, evaluated in floating point. Same sign as the constraint for `0 < g < ω/2`.
pub(crate) fn pinned_poly_value(q: BargmannIndex, target: usize, other: usize, delta: f64, omega: f64, y: f64) -> f64 {
    let d2 = (delta / omega).powi(2);
    let qv = q.value();
    let (mut prev, mut cur) = (0.0, 1.0);
    for n in 0..target {
        let nf = n as f64;
        let a = 2.0 * (nf + qv) - y * (nf + other as f64 + 2.0 * qv) + d2 / (16.0 * (target as f64 - nf));
        let b = if n == 0 { 0.0 } else { (1.0 - y) * k_factor(q, n - 1) };
        let next = a * cur - b * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact-coefficient version of [`pinned_poly_value`].
pub(crate) fn pinned_poly_exact(q: BargmannIndex, target: usize, other: usize, delta: f64, omega: f64) -> Result<Poly> {
    let d = poly::exact(delta / omega)?;
    let d2 = &d * &d;
    let q4 = q.quarters();
    let one = poly::ratio(1, 1);
    let one_minus_y = Poly::linear(one.clone(), poly::ratio(-1, 1));
    let mut prev = Poly::zero();
    let mut cur = Poly::constant(one.clone());
    for n in 0..target {
        let n = n as i64;
        // 2(n+q) = (8n + 2q4)/4
        let c0 = poly::ratio(8 * n + 2 * q4, 4) + &d2 / poly::ratio(16 * (target as i64 - n), 1);
        // n + other + 2q = (4n + 4·other + 2q4)/4
        let c1 = -poly::ratio(4 * n + 4 * other as i64 + 2 * q4, 4);
        let a = Poly::linear(c0, c1);
        let mut next = a.mul(&cur);
        if n > 0 {
            // k_{n−1} = (n−1+q+1/4)(n−1+q+3/4) = (4n−4+q4+1)(4n−4+q4+3)/16
            let k = poly::ratio((4 * n - 3 + q4) * (4 * n - 1 + q4), 16);
            next = next.add(&one_minus_y.mul(&prev).scale(&-k));
        }
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `E′ = (E + ω/2)/(2β) − q + ε/(4β)`.
pub fn normalized_energy(energy: f64, q: BargmannIndex, epsilon: f64, beta: f64, omega: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::domain("normalized energy needs beta > 0"));
    }
    Ok((energy + 0.5 * omega) / (2.0 * beta) - q.value() + epsilon / (4.0 * beta))
}
