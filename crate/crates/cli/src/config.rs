use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rabi_core::exceptional::ExceptionalKind;
use rabi_core::{BargmannIndex, EpsilonRule, Model, ModelParams};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// How the bias is set: a fixed value, or `kβ` (two-photon) / `kω` (one-photon).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bias {
    Epsilon(f64),
    K(f64),
}

impl Default for Bias {
    fn default() -> Self {
        Bias::Epsilon(0.0)
    }
}

impl Bias {
    pub fn rule(self) -> EpsilonRule {
        match self {
            Bias::Epsilon(e) => EpsilonRule::Fixed(e),
            Bias::K(k) => EpsilonRule::Scaled(k),
        }
    }
}

/// `start:end:step`, both ends included when the step divides the span.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GRange {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl FromStr for GRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts = parse_floats(s, 3)?;
        Ok(GRange { start: parts[0], end: parts[1], step: parts[2] })
    }
}

impl fmt::Display for GRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.end, self.step)
    }
}

/// `lo:hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts = parse_floats(s, 2)?;
        Ok(Window { lo: parts[0], hi: parts[1] })
    }
}

fn parse_floats(s: &str, count: usize) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != count {
        return Err(format!("expected {count} colon-separated numbers, got `{s}`"));
    }
    parts.iter().map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}"))).collect()
}

/// Exceptional G-function family; the pole index comes from `n` (A kinds) or `m` (B kinds).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum KindFamily {
    #[serde(rename = "1A")]
    #[value(name = "1A")]
    OneA,
    #[serde(rename = "2A")]
    #[value(name = "2A")]
    TwoA,
    #[serde(rename = "1B")]
    #[value(name = "1B")]
    OneB,
    #[serde(rename = "2B")]
    #[value(name = "2B")]
    TwoB,
    #[serde(rename = "merged")]
    #[value(name = "merged")]
    Merged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Everything a run depends on. Written next to every output and accepted back
/// through `--config`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: Model,
    #[serde(default)]
    pub q: Option<BargmannIndex>,
    #[serde(default = "one")]
    pub omega: f64,
    pub delta: f64,
    #[serde(default)]
    pub bias: Bias,
    #[serde(default)]
    pub g: Option<f64>,
    #[serde(default)]
    pub g_range: Option<GRange>,
    /// `None` selects the default window.
    #[serde(default)]
    pub e_window: Option<Window>,
    /// Energy tolerance for oracle matching.
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Oracle photon cutoff; `None` picks per model.
    #[serde(default)]
    pub n_max: Option<usize>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default = "default_n_range")]
    pub n_range: (usize, usize),
    #[serde(default = "default_m_range")]
    pub m_range: (usize, usize),
    #[serde(default)]
    pub kind: Option<KindFamily>,
    /// Energy samples per `ω`; `None` picks per command.
    #[serde(default)]
    pub points_per_omega: Option<f64>,
    /// Add oracle levels to `gcurve` output.
    #[serde(default)]
    pub oracle: bool,
    #[serde(default = "default_out")]
    pub out: PathBuf,
    #[serde(default = "default_formats")]
    pub formats: Vec<Format>,
}

fn one() -> f64 {
    1.0
}

fn default_tol() -> f64 {
    1e-6
}

fn default_n_range() -> (usize, usize) {
    (1, 10)
}

fn default_m_range() -> (usize, usize) {
    (2, 20)
}

fn default_out() -> PathBuf {
    PathBuf::from(".")
}

fn default_formats() -> Vec<Format> {
    vec![Format::Csv]
}

impl RunConfig {
    /// Defaults for everything but the model and `Δ`.
    pub fn new(model: Model, delta: f64) -> Self {
        RunConfig {
            model,
            q: None,
            omega: 1.0,
            delta,
            bias: Bias::default(),
            g: None,
            g_range: None,
            e_window: None,
            tol: default_tol(),
            n_max: None,
            n: None,
            m: None,
            n_range: default_n_range(),
            m_range: default_m_range(),
            kind: None,
            points_per_omega: None,
            oracle: false,
            out: default_out(),
            formats: default_formats(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }

    /// Checks shared by every command.
    pub fn validate(&self) -> Result<(), CliError> {
        ModelParams::new(self.omega, self.delta, 0.0, 0.0)?;
        let (Bias::Epsilon(b) | Bias::K(b)) = self.bias;
        if !b.is_finite() {
            return invalid("bias must be finite");
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return invalid("tol must be positive");
        }
        if let Some(w) = self.e_window {
            if !(w.lo.is_finite() && w.hi.is_finite() && w.lo <= w.hi) {
                return invalid(format!("invalid energy window {}:{}", w.lo, w.hi));
            }
        }
        if let Some(r) = self.g_range {
            if !(r.start > 0.0 && r.end >= r.start && r.step > 0.0 && r.end.is_finite()) {
                return invalid(format!("invalid coupling range {r}"));
            }
        }
        if let Some(g) = self.g {
            if !(g.is_finite() && g >= 0.0) {
                return invalid(format!("invalid coupling {g}"));
            }
        }
        if self.n_max.is_some_and(|n| n < 10) {
            return invalid("nmax must be at least 10");
        }
        if self.points_per_omega.is_some_and(|p| !(p >= 10.0 && p.is_finite())) {
            return invalid("points per omega must be at least 10");
        }
        if self.formats.is_empty() {
            return invalid("no output format selected");
        }
        Ok(())
    }

    pub fn require_q(&self) -> Result<BargmannIndex, CliError> {
        self.q.ok_or_else(|| CliError::Validation("two-photon runs need --q 14 or --q 34".into()))
    }

    /// `q` when the model needs one.
    pub fn sector(&self) -> Result<Option<BargmannIndex>, CliError> {
        match self.model {
            Model::OnePhoton => Ok(None),
            Model::TwoPhoton => self.require_q().map(Some),
        }
    }

    pub fn require_g(&self) -> Result<f64, CliError> {
        self.g.ok_or_else(|| CliError::Validation("this command needs --g".into()))
    }

    pub fn require_pair(&self) -> Result<(usize, usize), CliError> {
        match (self.n, self.m) {
            (Some(n), Some(m)) if m > n => Ok((n, m)),
            (Some(n), Some(m)) => invalid(format!("need M > N, got N={n}, M={m}")),
            _ => invalid("this command needs --n and --m"),
        }
    }

    /// Parameters at coupling `g` with the bias rule applied.
    pub fn params_at(&self, g: f64) -> Result<ModelParams, CliError> {
        let eps = self.bias.rule().epsilon(self.model, self.omega, g)?;
        let p = ModelParams::new(self.omega, self.delta, eps, g)?;
        if self.model == Model::TwoPhoton {
            p.validate_two_photon()?;
        }
        Ok(p)
    }

    pub fn exceptional_kind(&self) -> Result<ExceptionalKind, CliError> {
        let family = self.kind.ok_or_else(|| CliError::Validation("exceptional needs --kind".into()))?;
        let need = |v: Option<usize>, flag: &str| {
            v.ok_or_else(|| CliError::Validation(format!("kind {family:?} needs --{flag}")))
        };
        Ok(match family {
            KindFamily::OneA => ExceptionalKind::Kind1A(need(self.n, "n")?),
            KindFamily::TwoA => ExceptionalKind::Kind2A(need(self.n, "n")?),
            KindFamily::OneB => ExceptionalKind::Kind1B(need(self.m, "m")?),
            KindFamily::TwoB => ExceptionalKind::Kind2B(need(self.m, "m")?),
            KindFamily::Merged => {
                let (n, m) = self.require_pair()?;
                ExceptionalKind::Merged { n, m }
            }
        })
    }

    pub fn oracle_cutoff(&self) -> usize {
        self.n_max.unwrap_or(match self.model {
            Model::OnePhoton => 200,
            Model::TwoPhoton => 400,
        })
    }
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Validation(msg.into()))
}
