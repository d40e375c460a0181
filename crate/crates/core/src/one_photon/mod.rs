//! Asymmetric one-photon Rabi model in displaced-oscillator frames.
//!
//! The `A` frame expands in `A = a + g/ω` with coefficients `e_n, f_n`; the `B`
//! frame in `B = a − g/ω` with `c_n, d_n`. Vacuum projections carry the weights
//! `(g/ω)^n`, and the G-function `Σe Σd − Σf Σc` vanishes on the regular spectrum.

pub mod closed_form;
pub mod degenerate;
pub mod states;

use crate::error::{Error, Result};
use crate::expansion::{self, CoefficientTable, Recurrence, SideMode};
use crate::params::{ModelParams, PoleKind, PoleLine};
use crate::poly::{self, Poly};
use crate::series::SeriesPolicy;
use crate::EvalConfig;

pub use closed_form::closed_form_1p;
pub use degenerate::{find_degenerate_1p, DegeneratePoint1p};
pub use states::{degenerate_states_1p, DisplacedState, TerminatedPair1p};

/// Recurrence of one displaced frame; the `B` frame is the `A` frame with `ε → −ε`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct OnePhotonRec {
    omega: f64,
    delta: f64,
    eps: f64,
    g: f64,
    energy: f64,
    kind: PoleKind,
}

impl OnePhotonRec {
    pub(crate) fn new(params: &ModelParams, energy: f64, kind: PoleKind) -> Self {
        OnePhotonRec {
            omega: params.omega,
            delta: params.delta,
            eps: kind.epsilon_sign() * params.epsilon,
            g: params.g,
            energy,
            kind,
        }
    }
}

impl Recurrence for OnePhotonRec {
    fn denom(&self, n: usize) -> f64 {
        n as f64 * self.omega - self.g * self.g / self.omega + 0.5 * self.eps - self.energy
    }

    fn coeffs(&self, n: usize, denom: f64) -> (f64, f64) {
        let n1 = (n + 1) as f64;
        let bracket = n as f64 * self.omega + 3.0 * self.g * self.g / self.omega
            - 0.5 * self.eps
            - self.energy
            - self.delta * self.delta / (4.0 * denom);
        (bracket / (2.0 * self.g * n1), 1.0 / n1)
    }

    fn restart_seed(&self, n: usize) -> f64 {
        -self.delta / (4.0 * self.g * (n + 1) as f64)
    }

    fn terminal_factor(&self) -> f64 {
        -4.0 * self.g / self.delta
    }

    fn ln_weight0(&self) -> f64 {
        0.0
    }

    fn ln_weight_ratio(&self, _n: usize) -> f64 {
        (self.g / self.omega).ln()
    }

    fn half_delta(&self) -> f64 {
        0.5 * self.delta
    }

    fn pole_line(&self, n: usize) -> PoleLine {
        PoleLine::one_photon(self.kind, n)
    }
}

fn check_coupling(params: &ModelParams) -> Result<()> {
    params.validate()?;
    if params.g <= 0.0 {
        return Err(Error::domain("displaced-frame expansions need g > 0"));
    }
    Ok(())
}

/// Default evaluation settings for this model.
pub fn eval_config() -> EvalConfig {
    EvalConfig { policy: SeriesPolicy::one_photon(), pole_margin: crate::roots::DEFAULT_POLE_MARGIN }
}

/// `f_n` and `e_n` of the `A` frame at energy `E`.
pub fn coeffs_fe(params: &ModelParams, energy: f64, policy: &SeriesPolicy) -> Result<CoefficientTable> {
    check_coupling(params)?;
    let rec = OnePhotonRec::new(params, energy, PoleKind::A);
    expansion::coefficient_table(&rec, policy, crate::roots::DEFAULT_POLE_MARGIN * params.omega, energy)
}

/// `c_n` and `d_n` of the `B` frame at energy `E`.
pub fn coeffs_cd(params: &ModelParams, energy: f64, policy: &SeriesPolicy) -> Result<CoefficientTable> {
    check_coupling(params)?;
    let rec = OnePhotonRec::new(params, energy, PoleKind::B);
    expansion::coefficient_table(&rec, policy, crate::roots::DEFAULT_POLE_MARGIN * params.omega, energy)
}

/// The one-photon G-function; its zeros in `E` are the regular spectrum.
pub fn g1p(params: &ModelParams, energy: f64) -> Result<f64> {
    g1p_with(params, energy, &eval_config())
}

pub fn g1p_with(params: &ModelParams, energy: f64, cfg: &EvalConfig) -> Result<f64> {
    g1p_modes(params, energy, SideMode::Regular, SideMode::Regular, cfg)
}

/// G-function with each frame's expansion treated per `mode_a` / `mode_b`.
pub(crate) fn g1p_modes(
    params: &ModelParams,
    energy: f64,
    mode_a: SideMode,
    mode_b: SideMode,
    cfg: &EvalConfig,
) -> Result<f64> {
    check_coupling(params)?;
    let margin = cfg.pole_margin * params.omega;
    let a = expansion::side_sums(&OnePhotonRec::new(params, energy, PoleKind::A), mode_a, &cfg.policy, margin, energy)?;
    let b = expansion::side_sums(&OnePhotonRec::new(params, energy, PoleKind::B), mode_b, &cfg.policy, margin, energy)?;
    Ok(a.e * b.e - a.f * b.f)
}

/// `f_N` at the `N`-th A-pole energy (kind A) or `c_M` at the `M`-th B-pole (kind B),
/// for arbitrary bias. Vanishing marks an exceptional point on that line.
pub fn pole_coefficient(kind: PoleKind, index: usize, params: &ModelParams) -> Result<f64> {
    check_coupling(params)?;
    let energy = crate::params::pole_energy(PoleLine::one_photon(kind, index), params)?;
    let rec = OnePhotonRec::new(params, energy, kind);
    Ok(expansion::coefficient_at(&rec, index))
}

fn check_pair(n: usize, m: usize) -> Result<()> {
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

/// Constraint recurrence on the overlapped pole line:
/// `(n+1) v_{n+1} = (1/2g)[4g²/ω + (n−other)ω − Δ²/(4ω(n−target))] v_n − v_{n−1}`.
fn pinned_constraint(target: usize, other: usize, delta: f64, omega: f64, g: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for n in 0..target {
        let bracket = 4.0 * g * g / omega + (n as f64 - other as f64) * omega
            - delta * delta / (4.0 * omega * (n as f64 - target as f64));
        let next = (bracket / (2.0 * g) * cur - prev) / (n + 1) as f64;
        prev = cur;
        cur = next;
    }
    cur
}

/// `f_N` with `E = (M+N)ω/2 − g²/ω` and `ε = (M−N)ω` substituted.
pub fn f_n_pole(n: usize, m: usize, delta: f64, omega: f64, g: f64) -> Result<f64> {
    check_pair(n, m)?;
    check_positive_g(g, omega)?;
    Ok(pinned_constraint(n, m, delta, omega, g))
}

/// `c_M` with `E = (M+N)ω/2 − g²/ω` and `ε = (M−N)ω` substituted.
pub fn c_m_pole(n: usize, m: usize, delta: f64, omega: f64, g: f64) -> Result<f64> {
    check_pair(n, m)?;
    check_positive_g(g, omega)?;
    Ok(pinned_constraint(m, n, delta, omega, g))
}

fn check_positive_g(g: f64, omega: f64) -> Result<()> {
    if !(omega > 0.0) || !(g > 0.0) || !g.is_finite() {
        return Err(Error::domain(format!("need omega > 0 and g > 0 (omega = {omega}, g = {g})")));
    }
    Ok(())
}

/// `(2g)^T · v_T` as a polynomial in `x = 4g²`, evaluated in floating point.
///
/// Has the sign of the constraint for every `g > 0` and stays finite at `g = 0`.
pub(crate) fn pinned_poly_value(target: usize, other: usize, delta: f64, omega: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for n in 0..target {
        let a = x / omega + (n as f64 - other as f64) * omega
            - delta * delta / (4.0 * omega * (n as f64 - target as f64));
        let next = (a * cur - x * prev) / (n + 1) as f64;
        prev = cur;
        cur = next;
    }
    cur
}

/// The same polynomial with exact rational coefficients in the reduced
/// variable `x/ω² = 4g²/ω²`.
pub(crate) fn pinned_poly_exact(target: usize, other: usize, delta: f64, omega: f64) -> Result<Poly> {
    let d = poly::exact(delta / omega)?;
    let d2_quarter = &d * &d * poly::ratio(1, 4);
    let x = Poly::linear(poly::ratio(0, 1), poly::ratio(1, 1));
    let mut prev = Poly::zero();
    let mut cur = Poly::constant(poly::ratio(1, 1));
    for n in 0..target {
        let shift = poly::ratio(n as i64 - other as i64, 1)
            - &d2_quarter / poly::ratio(n as i64 - target as i64, 1);
        let a = Poly::linear(shift, poly::ratio(1, 1));
        let next = a
            .mul(&cur)
            .add(&x.mul(&prev).scale(&poly::ratio(-1, 1)))
            .scale(&poly::ratio(1, (n + 1) as i64));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
