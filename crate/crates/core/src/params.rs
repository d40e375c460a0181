//! Model parameters, Bargmann sectors and pole lines.
//!
//! Both models share the Hamiltonian
//! `Δ/2 σz + ε/2 σx + ω a†a + g[(a†)^p + a^p] σx` with `p = 1` or `p = 2`.
//! All energies stay in the caller's units; nothing here assumes `ω = 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which Rabi model a quantity belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "1p")]
    OnePhoton,
    #[serde(rename = "2p")]
    TwoPhoton,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::OnePhoton => f.write_str("1p"),
            Model::TwoPhoton => f.write_str("2p"),
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1p" | "one-photon" => Ok(Model::OnePhoton),
            "2p" | "two-photon" => Ok(Model::TwoPhoton),
            other => Err(Error::domain(format!("unknown model `{other}` (expected 1p or 2p)"))),
        }
    }
}

/// Bargmann index of a two-photon parity sector: `q = 1/4` (even Fock) or `q = 3/4` (odd Fock).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BargmannIndex {
    #[serde(rename = "1/4")]
    Quarter,
    #[serde(rename = "3/4")]
    ThreeQuarters,
}

impl BargmannIndex {
    pub const ALL: [BargmannIndex; 2] = [BargmannIndex::Quarter, BargmannIndex::ThreeQuarters];

    pub fn value(self) -> f64 {
        match self {
            BargmannIndex::Quarter => 0.25,
            BargmannIndex::ThreeQuarters => 0.75,
        }
    }

    /// Fock number of the sector's lowest state (0 or 1).
    pub fn fock_offset(self) -> usize {
        match self {
            BargmannIndex::Quarter => 0,
            BargmannIndex::ThreeQuarters => 1,
        }
    }

    /// `q` as an exact fraction `(numerator, 4)`.
    pub fn quarters(self) -> i64 {
        match self {
            BargmannIndex::Quarter => 1,
            BargmannIndex::ThreeQuarters => 3,
        }
    }
}

impl fmt::Display for BargmannIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BargmannIndex::Quarter => f.write_str("1/4"),
            BargmannIndex::ThreeQuarters => f.write_str("3/4"),
        }
    }
}

impl FromStr for BargmannIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "14" | "1/4" | "0.25" => Ok(BargmannIndex::Quarter),
            "34" | "3/4" | "0.75" => Ok(BargmannIndex::ThreeQuarters),
            other => Err(Error::domain(format!("unknown Bargmann index `{other}` (expected 14 or 34)"))),
        }
    }
}

/// Physical parameters `(ω, Δ, ε, g)` shared by both models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub omega: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub g: f64,
}

impl ModelParams {
    /// Validated constructor: `ω > 0`, `Δ ≥ 0`, `g ≥ 0`, all finite.
    pub fn new(omega: f64, delta: f64, epsilon: f64, g: f64) -> Result<Self> {
        let p = ModelParams { omega, delta, epsilon, g };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::domain(format!("omega must be positive, got {}", self.omega)));
        }
        if !(self.delta.is_finite() && self.delta >= 0.0) {
            return Err(Error::domain(format!("delta must be non-negative, got {}", self.delta)));
        }
        if !self.epsilon.is_finite() {
            return Err(Error::domain("epsilon must be finite"));
        }
        if !(self.g.is_finite() && self.g >= 0.0) {
            return Err(Error::domain(format!("g must be non-negative, got {}", self.g)));
        }
        Ok(())
    }

    /// Checks the two-photon condition `g < ω/2`.
    pub fn validate_two_photon(&self) -> Result<()> {
        self.validate()?;
        if self.g >= 0.5 * self.omega {
            return Err(Error::domain(format!(
                "two-photon coupling must satisfy g < omega/2 (g = {}, omega = {})",
                self.g, self.omega
            )));
        }
        Ok(())
    }

    pub fn with_g(self, g: f64) -> Self {
        ModelParams { g, ..self }
    }

    pub fn with_epsilon(self, epsilon: f64) -> Self {
        ModelParams { epsilon, ..self }
    }

    /// Same parameters with the bias sign flipped; maps the type-A family onto type-B.
    pub fn mirrored(self) -> Self {
        ModelParams { epsilon: -self.epsilon, ..self }
    }

    /// Parameters in units of `ω`, i.e. `(1, Δ/ω, ε/ω, g/ω)`.
    pub fn reduced(self) -> Self {
        ModelParams {
            omega: 1.0,
            delta: self.delta / self.omega,
            epsilon: self.epsilon / self.omega,
            g: self.g / self.omega,
        }
    }

    /// Brings a negative bias to `ε ≥ 0`.
    ///
    /// The returned flag is `true` when the sign was flipped; the caller must then
    /// interchange the roles of the A and B pole indices (`N ↔ M`).
    pub fn canonical(self) -> (Self, bool) {
        if self.epsilon < 0.0 {
            (self.mirrored(), true)
        } else {
            (self, false)
        }
    }
}

/// Renormalized cavity frequency `β = ω √(1 − 4(g/ω)²)`.
pub fn beta(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    let t = 2.0 * params.g / params.omega;
    if t > 1.0 {
        return Err(Error::domain(format!(
            "beta requires g <= omega/2 (g = {}, omega = {})",
            params.g, params.omega
        )));
    }
    Ok(params.omega * ((1.0 - t) * (1.0 + t)).sqrt())
}

/// Squeezing parameter `r = ¼ ln((1 − 2g/ω)/(1 + 2g/ω))`; non-positive for `g ≥ 0`.
pub fn squeeze_r(params: &ModelParams) -> Result<f64> {
    params.validate_two_photon()?;
    let t = 2.0 * params.g / params.omega;
    // atanh form avoids cancellation at small g: ln((1-t)/(1+t)) = -2 atanh t
    Ok(-0.5 * t.atanh())
}

/// Type of a pole family: A carries `+ε/2`, B carries `−ε/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PoleKind {
    A,
    B,
}

impl PoleKind {
    pub fn other(self) -> Self {
        match self {
            PoleKind::A => PoleKind::B,
            PoleKind::B => PoleKind::A,
        }
    }

    /// Sign with which `ε` enters this family's energies.
    pub fn epsilon_sign(self) -> f64 {
        match self {
            PoleKind::A => 1.0,
            PoleKind::B => -1.0,
        }
    }
}

impl fmt::Display for PoleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoleKind::A => f.write_str("A"),
            PoleKind::B => f.write_str("B"),
        }
    }
}

/// One baseline energy of the G-function pole structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PoleLine {
    pub model: Model,
    pub kind: PoleKind,
    pub index: usize,
    /// Sector of a two-photon line; `None` for one-photon lines.
    pub q: Option<BargmannIndex>,
}

impl PoleLine {
    pub fn one_photon(kind: PoleKind, index: usize) -> Self {
        PoleLine { model: Model::OnePhoton, kind, index, q: None }
    }

    pub fn two_photon(kind: PoleKind, index: usize, q: BargmannIndex) -> Self {
        PoleLine { model: Model::TwoPhoton, kind, index, q: Some(q) }
    }
}

impl fmt::Display for PoleLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.q {
            Some(q) => write!(f, "{}-pole {} ({}, q={})", self.kind, self.index, self.model, q),
            None => write!(f, "{}-pole {} ({})", self.kind, self.index, self.model),
        }
    }
}

/// Energy of a pole line at the given parameters.
///
/// One-photon: `mω − g²/ω ± ε/2`. Two-photon: `2β(m+q) + (±ε − ω)/2`.
pub fn pole_energy(line: PoleLine, params: &ModelParams) -> Result<f64> {
    let sign = line.kind.epsilon_sign();
    match line.model {
        Model::OnePhoton => {
            params.validate()?;
            Ok(line.index as f64 * params.omega - params.g * params.g / params.omega
                + sign * 0.5 * params.epsilon)
        }
        Model::TwoPhoton => {
            params.validate_two_photon()?;
            let q = line
                .q
                .ok_or_else(|| Error::domain("two-photon pole line needs a Bargmann index"))?;
            let b = beta(params)?;
            Ok(2.0 * b * (line.index as f64 + q.value()) + 0.5 * (sign * params.epsilon - params.omega))
        }
    }
}

/// All pole lines of one model and sector whose energy falls inside `[lo, hi]`.
pub fn poles_in_window(
    model: Model,
    q: Option<BargmannIndex>,
    params: &ModelParams,
    lo: f64,
    hi: f64,
) -> Result<Vec<(PoleLine, f64)>> {
    let mut out = Vec::new();
    for kind in [PoleKind::A, PoleKind::B] {
        let mut index = 0usize;
        loop {
            let line = match model {
                Model::OnePhoton => PoleLine::one_photon(kind, index),
                Model::TwoPhoton => PoleLine::two_photon(
                    kind,
                    index,
                    q.ok_or_else(|| Error::domain("two-photon poles need a Bargmann index"))?,
                ),
            };
            let e = pole_energy(line, params)?;
            if e > hi {
                break;
            }
            if e >= lo {
                out.push((line, e));
            }
            index += 1;
            if index > 1_000_000 {
                return Err(Error::domain("pole spacing too small for the energy window"));
            }
        }
    }
    out.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(out)
}
