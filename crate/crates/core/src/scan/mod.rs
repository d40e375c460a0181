//! Spectrum sweeps over the coupling, and exhaustive crossing enumeration.

mod census;
mod levels;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exceptional::{self, ExceptionalKind};
use crate::params::{self, BargmannIndex, Model, ModelParams, PoleKind, PoleLine};
use crate::roots::{bracket_roots, RootSearchConfig};
use crate::{one_photon, two_photon};

pub use census::{census_totals_agree, enumerate_crossings, Anomaly, CrossingCensus, CrossingPoint, PairCount};
pub use levels::{connect_levels, min_adjacent_gap, GapReport, LevelCurve};

/// How the bias follows the coupling along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EpsilonRule {
    Fixed(f64),
    /// `ε = kβ` two-photon, `ε = kω` one-photon.
    Scaled(f64),
}

impl EpsilonRule {
    pub fn epsilon(self, model: Model, omega: f64, g: f64) -> Result<f64> {
        match (self, model) {
            (EpsilonRule::Fixed(e), _) => Ok(e),
            (EpsilonRule::Scaled(k), Model::OnePhoton) => Ok(k * omega),
            (EpsilonRule::Scaled(k), Model::TwoPhoton) => {
                Ok(k * params::beta(&ModelParams::new(omega, 0.0, 0.0, g)?)?)
            }
        }
    }
}

/// What makes a point special.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SpecialTag {
    /// True crossing of the `N`-th A line and the `M`-th B line.
    Degenerate { n: usize, m: usize },
    Exceptional(ExceptionalKind),
}

/// A point that is not a zero of the regular G-function but is in the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecialPoint {
    pub tag: SpecialTag,
    pub line: PoleLine,
    pub g: f64,
    pub epsilon: f64,
    pub energy: f64,
}

/// Spectrum at one coupling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub g: f64,
    pub epsilon: f64,
    /// Regular G-zeros in the window, ascending.
    pub energies: Vec<f64>,
    /// Special points whose coupling is nearest to this grid point.
    pub special: Vec<SpecialPoint>,
    /// Energy stretches where the G-function could not be evaluated.
    pub gaps: Vec<(f64, f64)>,
    pub window: (f64, f64),
}

/// A sweep request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRequest {
    pub model: Model,
    pub q: Option<BargmannIndex>,
    pub omega: f64,
    pub delta: f64,
    pub rule: EpsilonRule,
    pub g_grid: Vec<f64>,
    /// Fixed energy window; `None` uses [`default_window`] at each coupling.
    pub e_window: Option<(f64, f64)>,
    /// Sampling density of the energy scan, per `ω`.
    pub points_per_omega: f64,
    pub annotate_special: bool,
}

impl TraceRequest {
    pub fn new(model: Model, q: Option<BargmannIndex>, omega: f64, delta: f64, rule: EpsilonRule, g_grid: Vec<f64>) -> Self {
        TraceRequest {
            model,
            q,
            omega,
            delta,
            rule,
            g_grid,
            e_window: None,
            points_per_omega: 1000.0,
            annotate_special: true,
        }
    }

    fn validate(&self) -> Result<()> {
        ModelParams::new(self.omega, self.delta, 0.0, 0.0)?;
        if self.model == Model::TwoPhoton && self.q.is_none() {
            return Err(Error::domain("two-photon sweeps need q"));
        }
        if self.g_grid.is_empty() {
            return Err(Error::domain("empty coupling grid"));
        }
        if self.g_grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::domain("coupling grid must be strictly ascending"));
        }
        if !(self.g_grid[0] > 0.0) {
            return Err(Error::domain("coupling grid must start above zero"));
        }
        if self.model == Model::TwoPhoton {
            let top = *self.g_grid.last().unwrap();
            if top > two_photon::scan_g_max(self.omega) {
                return Err(Error::domain(format!(
                    "g = {top} lies in the collapse exclusion zone (max {})",
                    two_photon::scan_g_max(self.omega)
                )));
            }
        }
        if let Some((lo, hi)) = self.e_window {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(Error::domain(format!("invalid energy window ({lo}, {hi})")));
            }
        }
        if !(self.points_per_omega >= 10.0) {
            return Err(Error::domain("points_per_omega must be at least 10"));
        }
        Ok(())
    }

    fn params_at(&self, g: f64) -> Result<ModelParams> {
        let eps = self.rule.epsilon(self.model, self.omega, g)?;
        ModelParams::new(self.omega, self.delta, eps, g)
    }
}

/// Default energy window at one coupling.
///
/// The upper edge is `6ω`. The lower edge is the smaller of `−g²/ω − ε/2 − ω`
/// (`−ω` two-photon) and a strict lower bound on the ground state, so a large
/// `Δ` never pushes the lowest level out of view.
pub fn default_window(model: Model, params: &ModelParams) -> Result<(f64, f64)> {
    let w = params.omega;
    let spin = 0.5 * params.delta.hypot(params.epsilon);
    let lo = match model {
        Model::OnePhoton => {
            let shift = params.g * params.g / w;
            (-shift - 0.5 * params.epsilon.abs() - w).min(-shift - spin - 0.01 * w)
        }
        Model::TwoPhoton => {
            let b = params::beta(params)?;
            (-w).min(0.5 * (b - w) - spin - 0.01 * w)
        }
    };
    Ok((lo, 6.0 * w))
}

fn g_function(model: Model, q: Option<BargmannIndex>, p: &ModelParams, e: f64) -> Result<f64> {
    match model {
        Model::OnePhoton => one_photon::g1p(p, e),
        Model::TwoPhoton => two_photon::g2p(q.expect("validated"), p, e),
    }
}

/// Regular spectrum at one parameter point: zeros of the G-function in `window`
/// with the pole lines cut out.
pub fn regular_zeros(
    model: Model,
    q: Option<BargmannIndex>,
    p: &ModelParams,
    window: (f64, f64),
    points_per_omega: f64,
) -> Result<(Vec<f64>, Vec<(f64, f64)>)> {
    let (lo, hi) = window;
    if hi - lo < 1e-12 * p.omega {
        return Ok((Vec::new(), Vec::new()));
    }
    let poles: Vec<f64> = params::poles_in_window(model, q, p, lo - 1.0, hi + 1.0)?.into_iter().map(|(_, e)| e).collect();
    let span = (hi - lo) / p.omega;
    let cfg = RootSearchConfig::with_unit(lo, hi, p.omega)?
        .with_grid_points(((points_per_omega * span).ceil() as usize).max(2))
        .with_abs_tol(1e-12 * p.omega);
    // segment ends must sit clear of the evaluator's own pole rejection
    let cfg = RootSearchConfig { pole_margin: 2.0 * crate::roots::DEFAULT_POLE_MARGIN * p.omega, ..cfg };
    let scan = bracket_roots(|e| g_function(model, q, p, e), &cfg, &poles)?;
    Ok((scan.roots, scan.unresolved))
}

/// Sweeps the coupling grid, one spectrum per point, in grid order.
pub fn trace(req: &TraceRequest) -> Result<Vec<SpectrumRecord>> {
    req.validate()?;
    let mut records: Vec<SpectrumRecord> = req
        .g_grid
        .par_iter()
        .map(|&g| {
            let p = req.params_at(g)?;
            let window = match req.e_window {
                Some(w) => w,
                None => default_window(req.model, &p)?,
            };
            let (energies, gaps) = regular_zeros(req.model, req.q, &p, window, req.points_per_omega)?;
            Ok(SpectrumRecord { g, epsilon: p.epsilon, energies, special: Vec::new(), gaps, window })
        })
        .collect::<Result<_>>()?;
    if req.annotate_special {
        let specials = special_points(req)?;
        attach(&mut records, specials);
    }
    Ok(records)
}

fn attach(records: &mut [SpectrumRecord], specials: Vec<SpecialPoint>) {
    let gs: Vec<f64> = records.iter().map(|r| r.g).collect();
    let (first, last) = (gs[0], gs[gs.len() - 1]);
    let half = if gs.len() > 1 { 0.5 * (gs[1] - gs[0]).min(gs[gs.len() - 1] - gs[gs.len() - 2]) } else { 0.0 };
    for s in specials {
        if s.g < first - half || s.g > last + half {
            continue;
        }
        let i = match gs.binary_search_by(|x| x.total_cmp(&s.g)) {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) if i == gs.len() => i - 1,
            Err(i) => {
                if s.g - gs[i - 1] <= gs[i] - s.g {
                    i - 1
                } else {
                    i
                }
            }
        };
        let r = &mut records[i];
        if s.energy >= r.window.0 && s.energy <= r.window.1 {
            r.special.push(s);
        }
    }
    for r in records.iter_mut() {
        r.special.sort_by(|a, b| a.g.total_cmp(&b.g).then(a.energy.total_cmp(&b.energy)));
    }
}

/// Energy of a pole line along the sweep; lines fall monotonically with `g`.
fn line_energy(req: &TraceRequest, line: PoleLine, g: f64) -> Result<f64> {
    params::pole_energy(line, &req.params_at(g)?)
}

fn line(req: &TraceRequest, kind: PoleKind, index: usize) -> PoleLine {
    match req.model {
        Model::OnePhoton => PoleLine::one_photon(kind, index),
        Model::TwoPhoton => PoleLine::two_photon(kind, index, req.q.expect("validated")),
    }
}

/// Indices of one pole family whose line enters the energy window somewhere on the grid.
fn lines_in_view(req: &TraceRequest, kind: PoleKind, window: (f64, f64)) -> Result<Vec<usize>> {
    let (g_lo, g_hi) = (req.g_grid[0], *req.g_grid.last().unwrap());
    let mut out = Vec::new();
    for index in 0.. {
        let l = line(req, kind, index);
        let top = line_energy(req, l, g_lo)?;
        let bottom = line_energy(req, l, g_hi)?;
        if bottom.min(top) > window.1 {
            break;
        }
        if bottom.max(top) >= window.0 {
            out.push(index);
        }
        if index > 100_000 {
            return Err(Error::domain("too many pole lines in view"));
        }
    }
    Ok(out)
}

/// Widest energy window used anywhere on the grid.
fn overall_window(req: &TraceRequest) -> Result<(f64, f64)> {
    if let Some(w) = req.e_window {
        return Ok(w);
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &g in &req.g_grid {
        let (a, b) = default_window(req.model, &req.params_at(g)?)?;
        lo = lo.min(a);
        hi = hi.max(b);
    }
    Ok((lo, hi))
}

fn g_search(req: &TraceRequest) -> Result<RootSearchConfig> {
    let (g_lo, g_hi) = (req.g_grid[0], *req.g_grid.last().unwrap());
    let span = (g_hi - g_lo).max(1e-9 * req.omega);
    RootSearchConfig::with_unit(g_lo, g_lo + span, req.omega).map(|c| c.with_abs_tol(1e-12 * req.omega))
}

/// Crossings and exceptional points on the sweep, ascending in `g`.
pub fn special_points(req: &TraceRequest) -> Result<Vec<SpecialPoint>> {
    req.validate()?;
    let window = overall_window(req)?;
    let mut out = degenerate_specials(req, window)?;
    out.extend(exceptional_specials(req, window)?);
    out.sort_by(|a, b| a.g.total_cmp(&b.g).then(a.energy.total_cmp(&b.energy)));
    Ok(out)
}

/// Number of A-to-B line steps `M − N` at which the sweep keeps lines overlapped.
fn overlap_steps(req: &TraceRequest) -> Option<usize> {
    let k = match (req.rule, req.model) {
        (EpsilonRule::Fixed(e), Model::OnePhoton) => e.abs() / req.omega,
        (EpsilonRule::Scaled(k), Model::OnePhoton) => k.abs(),
        (EpsilonRule::Scaled(k), Model::TwoPhoton) => 0.5 * k.abs(),
        // at fixed bias two-photon lines overlap only at isolated couplings
        (EpsilonRule::Fixed(_), Model::TwoPhoton) => return None,
    };
    let d = k.round();
    if d >= 1.0 && (k - d).abs() < 1e-9 {
        Some(d as usize)
    } else {
        None
    }
}

fn degenerate_specials(req: &TraceRequest, window: (f64, f64)) -> Result<Vec<SpecialPoint>> {
    let Some(d) = overlap_steps(req) else {
        return Ok(Vec::new());
    };
    let (g_lo, g_hi) = (req.g_grid[0], *req.g_grid.last().unwrap());
    // a negative bias swaps the roles of the two frames; the crossing energies are unchanged
    let flip = req.rule.epsilon(req.model, req.omega, g_lo)? < 0.0;
    let mut pairs = Vec::new();
    for n in 1.. {
        let a = line(req, PoleKind::A, n);
        // lower bound on the crossing energy anywhere on the grid
        let e_min = line_energy(req, a, g_hi)? - req.rule.epsilon(req.model, req.omega, g_hi)?.abs();
        if e_min > window.1 + req.omega {
            break;
        }
        pairs.push((n, n + d));
        if n > 10_000 {
            break;
        }
    }
    let found: Vec<Vec<SpecialPoint>> = pairs
        .par_iter()
        .map(|&(n, m)| -> Result<Vec<SpecialPoint>> {
            let pts: Vec<(f64, f64, f64)> = match req.model {
                Model::OnePhoton => one_photon::find_degenerate_1p(n, m, req.delta, req.omega, None)?
                    .into_iter()
                    .map(|p| (p.g, p.epsilon, p.energy))
                    .collect(),
                Model::TwoPhoton => two_photon::find_degenerate_2p(req.q.unwrap(), n, m, req.delta, req.omega, None)?
                    .into_iter()
                    .map(|p| (p.g, p.epsilon, p.energy))
                    .collect(),
            };
            let kind = if flip { PoleKind::B } else { PoleKind::A };
            Ok(pts
                .into_iter()
                .filter(|(g, _, e)| *g >= g_lo && *g <= g_hi && *e >= window.0 && *e <= window.1)
                .map(|(g, eps, energy)| SpecialPoint {
                    tag: SpecialTag::Degenerate { n, m },
                    line: line(req, kind, n),
                    g,
                    epsilon: if flip { -eps } else { eps },
                    energy,
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

fn exceptional_specials(req: &TraceRequest, window: (f64, f64)) -> Result<Vec<SpecialPoint>> {
    // with overlapped lines the pinned functions are singular; crossings cover those lines
    if overlap_steps(req).is_some() {
        return Ok(Vec::new());
    }
    let mut kinds = Vec::new();
    for n in lines_in_view(req, PoleKind::A, window)? {
        kinds.push(ExceptionalKind::Kind2A(n));
        if n >= 1 {
            kinds.push(ExceptionalKind::Kind1A(n));
        }
    }
    for m in lines_in_view(req, PoleKind::B, window)? {
        kinds.push(ExceptionalKind::Kind2B(m));
        if m >= 1 {
            kinds.push(ExceptionalKind::Kind1B(m));
        }
    }
    let cfg = g_search(req)?;
    let found: Vec<Vec<SpecialPoint>> = kinds
        .par_iter()
        .map(|&kind| exceptional_zeros(req, kind, &cfg, window))
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

fn exceptional_zeros(
    req: &TraceRequest,
    kind: ExceptionalKind,
    cfg: &RootSearchConfig,
    window: (f64, f64),
) -> Result<Vec<SpecialPoint>> {
    let (family, index) = kind.pinned();
    let roots = match (req.rule, kind) {
        (EpsilonRule::Fixed(eps), ExceptionalKind::Kind1A(_) | ExceptionalKind::Kind1B(_)) => {
            let base = ModelParams::new(req.omega, req.delta, eps, cfg.lo)?;
            exceptional::coefficient_zeros(req.model, req.q, family, index, &base, cfg, None)?
                .points
                .into_iter()
                .map(|p| p.g)
                .collect::<Vec<_>>()
        }
        (EpsilonRule::Fixed(eps), _) => {
            let base = ModelParams::new(req.omega, req.delta, eps, cfg.lo)?;
            exceptional::find_exceptional(req.model, req.q, kind, &base, cfg, None)?
                .points
                .into_iter()
                .map(|p| p.g)
                .collect()
        }
        (EpsilonRule::Scaled(_), ExceptionalKind::Kind1A(_) | ExceptionalKind::Kind1B(_)) => {
            let f = |g: f64| {
                let p = req.params_at(g)?;
                match req.model {
                    Model::OnePhoton => one_photon::pole_coefficient(family, index, &p),
                    Model::TwoPhoton => two_photon::pole_coefficient_2p(req.q.unwrap(), family, index, &p),
                }
            };
            bracket_roots(f, cfg, &[])?.roots
        }
        (EpsilonRule::Scaled(_), _) => {
            let f = |g: f64| exceptional::exceptional_g(req.model, req.q, kind, &req.params_at(g)?);
            bracket_roots(f, cfg, &[])?.roots
        }
    };
    let l = line(req, family, index);
    let mut out = Vec::new();
    for g in roots {
        let p = req.params_at(g)?;
        let energy = params::pole_energy(l, &p)?;
        if energy >= window.0 && energy <= window.1 {
            out.push(SpecialPoint { tag: SpecialTag::Exceptional(kind), line: l, g, epsilon: p.epsilon, energy });
        }
    }
    Ok(out)
}

/// Where an A line meets a B line on a fixed-bias two-photon sweep, with the
/// narrowest level spacing found around the meeting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineMeeting {
    pub n: usize,
    pub m: usize,
    pub g: f64,
    pub energy: f64,
    /// `None` when no record falls close enough to the meeting.
    pub gap: Option<GapReport>,
}

/// Meetings of the `N`-th A and `M`-th B lines inside the sweep, each with the
/// minimum adjacent-level gap over records within two grid steps and half a
/// level spacing of it. A gap well above zero marks an avoided crossing.
///
/// Lines meet at isolated couplings only for two-photon sweeps at fixed
/// nonzero bias; every other sweep returns an empty list.
pub fn line_meetings(req: &TraceRequest, records: &[SpectrumRecord]) -> Result<Vec<LineMeeting>> {
    req.validate()?;
    let EpsilonRule::Fixed(eps) = req.rule else {
        return Ok(Vec::new());
    };
    if req.model != Model::TwoPhoton || eps == 0.0 {
        return Ok(Vec::new());
    }
    let (g_lo, g_hi) = (req.g_grid[0], *req.g_grid.last().unwrap());
    let step = if req.g_grid.len() > 1 { (g_hi - g_lo) / (req.g_grid.len() - 1) as f64 } else { 0.0 };
    let window = overall_window(req)?;
    let mut out = Vec::new();
    // A_n meets B_m where 2β(M − N) = ε
    for d in 1usize.. {
        let beta = eps.abs() / (2.0 * d as f64);
        if beta >= req.omega {
            continue;
        }
        let g = 0.5 * (req.omega * req.omega - beta * beta).sqrt();
        // g grows with d
        if g > g_hi {
            break;
        }
        if g < g_lo {
            continue;
        }
        let p = req.params_at(g)?;
        for low in 0usize.. {
            let (n, m) = if eps > 0.0 { (low, low + d) } else { (low + d, low) };
            let energy = params::pole_energy(line(req, PoleKind::A, n), &p)?;
            if energy > window.1 {
                break;
            }
            if energy < window.0 {
                continue;
            }
            let gap = levels::min_adjacent_gap(
                records,
                (g - 2.0 * step, g + 2.0 * step),
                (energy - 0.5 * beta, energy + 0.5 * beta),
            );
            out.push(LineMeeting { n, m, g, energy, gap });
        }
    }
    out.sort_by(|a, b| a.g.total_cmp(&b.g).then(a.energy.total_cmp(&b.energy)));
    Ok(out)
}

/// Uniform grid `a, a + step, …` not passing `b`.
pub fn uniform_grid(a: f64, b: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && a.is_finite() && b.is_finite() && b >= a) {
        return Err(Error::domain(format!("invalid grid {a}:{b}:{step}")));
    }
    let n = ((b - a) / step + 1e-9).floor() as usize;
    if n > 10_000_000 {
        return Err(Error::domain("grid too fine"));
    }
    Ok((0..=n).map(|i| a + i as f64 * step).collect())
}
