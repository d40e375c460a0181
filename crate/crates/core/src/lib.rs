//! Spectra, level crossings and exceptional points of the asymmetric one- and
//! two-photon quantum Rabi models.
//!
//! The regular spectrum is obtained from G-functions built in displaced
//! (one-photon) or squeezed (two-photon) oscillator frames; doubly degenerate
//! crossings from constraint polynomials on overlapped pole lines. A dense
//! truncated-Fock diagonalization in [`oracle`] checks everything independently.

pub mod error;
pub mod exceptional;
pub mod expansion;
pub mod one_photon;
pub mod oracle;
pub mod params;
pub mod poly;
pub mod roots;
pub mod scan;
pub mod series;
pub mod two_photon;

mod pinned;

use serde::{Deserialize, Serialize};

pub use error::{Error, Result};
pub use exceptional::{exceptional_g, find_exceptional, ExceptionalKind, ExceptionalPoint};
pub use expansion::{CoefficientTable, SideMode};
pub use one_photon::{
    c_m_pole, coeffs_cd, coeffs_fe, degenerate_states_1p, f_n_pole, find_degenerate_1p, g1p,
    DegeneratePoint1p,
};
pub use oracle::{MatchReport, OracleResult, Sector, TruncatedHamiltonian};
pub use params::{beta, pole_energy, squeeze_r, BargmannIndex, Model, ModelParams, PoleKind, PoleLine};
pub use roots::{bracket_roots, RootScan, RootSearchConfig};
pub use scan::{enumerate_crossings, trace, CrossingCensus, CrossingPoint, EpsilonRule, SpectrumRecord, TraceRequest};
pub use series::SeriesPolicy;
pub use two_photon::{
    c_m_pole_2p, closed_form_2p, coeffs_cd_2p, coeffs_fe_2p, degenerate_states_2p, f_n_pole_2p,
    find_degenerate_2p, g2p, normalized_energy, weights, DegeneratePoint2p, SqueezeFrame, WeightTable,
};

/// Series policy plus the pole exclusion half-width (in units of `ω`) used when
/// evaluating a G-function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub policy: SeriesPolicy,
    pub pole_margin: f64,
}

/// Code version stamped into every output file.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
