//! The subcommands. Each one computes everything first and returns the files
//! to write, so a failure never leaves partial output behind.

use rabi_core::exceptional::{default_exceptional_search, exceptional_g, ExceptionalScan};
use rabi_core::oracle::{self, fock, MatchReport};
use rabi_core::params::poles_in_window;
use rabi_core::scan::{
    self, connect_levels, default_window, line_meetings, regular_zeros, uniform_grid, LineMeeting, SpecialTag,
};
use rabi_core::{
    find_degenerate_1p, find_degenerate_2p, find_exceptional, g1p, g2p, pole_energy, BargmannIndex, Error,
    ExceptionalPoint, Model, ModelParams, PoleKind, PoleLine, RootSearchConfig, SpectrumRecord, TraceRequest,
};
use serde::Serialize;

use crate::config::{Bias, Format, RunConfig};
use crate::error::CliError;
use crate::output::{csv_bytes, json_bytes, metadata, Artifact, Cell, Table};
use crate::svg::{Marker, Plot, Series};

/// What a command produced. `status` carries a failure that is reported after
/// the files are written (verification mismatch, census anomalies).
pub struct Outcome {
    pub artifacts: Vec<Artifact>,
    pub summary: Vec<String>,
    pub warnings: Vec<String>,
    pub status: Result<(), CliError>,
}

/// Collects artifacts in the requested formats.
struct Emit<'a> {
    command: &'static str,
    cfg: &'a RunConfig,
    artifacts: Vec<Artifact>,
}

impl<'a> Emit<'a> {
    fn new(command: &'static str, cfg: &'a RunConfig) -> Self {
        Emit { command, cfg, artifacts: Vec::new() }
    }

    fn csv(&mut self, suffix: &str, table: &Table, extra: &[(&str, String)]) -> Result<(), CliError> {
        if self.cfg.wants(Format::Csv) {
            let meta = metadata(self.command, self.cfg, extra);
            self.artifacts.push(Artifact { name: format!("{}{suffix}.csv", self.command), bytes: csv_bytes(&meta, table)? });
        }
        Ok(())
    }

    fn json<T: Serialize>(&mut self, payload: &T) -> Result<(), CliError> {
        if self.cfg.wants(Format::Json) {
            self.artifacts.push(Artifact { name: format!("{}.json", self.command), bytes: json_bytes(self.command, self.cfg, payload)? });
        }
        Ok(())
    }

    fn svg(&mut self, plot: impl FnOnce() -> Plot) {
        if self.cfg.wants(Format::Svg) {
            self.artifacts.push(Artifact { name: format!("{}.svg", self.command), bytes: plot().render().into_bytes() });
        }
    }

    fn finish(self, summary: Vec<String>, warnings: Vec<String>, status: Result<(), CliError>) -> Outcome {
        Outcome { artifacts: self.artifacts, summary, warnings, status }
    }
}

fn short(line: &PoleLine) -> String {
    format!("{}{}", line.kind, line.index)
}

/// `sign(y)·log10(1 + |y|)`, keeps zeros and signs readable next to poles.
fn squash(y: f64) -> f64 {
    y.signum() * y.abs().ln_1p() / std::f64::consts::LN_10
}

fn g_function(model: Model, q: Option<BargmannIndex>, p: &ModelParams, e: f64) -> rabi_core::Result<f64> {
    match model {
        Model::OnePhoton => g1p(p, e),
        Model::TwoPhoton => g2p(q.expect("sector checked"), p, e),
    }
}

fn window_of(cfg: &RunConfig, p: &ModelParams) -> Result<((f64, f64), bool), CliError> {
    Ok(match cfg.e_window {
        Some(w) => ((w.lo, w.hi), false),
        None => (default_window(cfg.model, p)?, true),
    })
}

fn oracle_levels(cfg: &RunConfig, p: &ModelParams, q: Option<BargmannIndex>) -> Result<oracle::OracleResult, CliError> {
    let n_max = cfg.oracle_cutoff();
    let h = match q {
        None => oracle::build_1p(p, n_max)?,
        Some(q) => oracle::build_2p(p, n_max, q)?,
    };
    Ok(oracle::eigenvalues(&h, h.dim)?)
}

fn match_rows(table: &mut Table, sector: &str, rep: &MatchReport) {
    let mut rows: Vec<(f64, Vec<Cell>)> = Vec::new();
    for &(z, l, d) in &rep.matched {
        rows.push((z, vec![sector.into(), z.into(), l.into(), d.into(), "matched".into()]));
    }
    for &z in &rep.unmatched_zeros {
        rows.push((z, vec![sector.into(), z.into(), Cell::Empty, Cell::Empty, "unmatched_zero".into()]));
    }
    for &l in &rep.unmatched_levels {
        rows.push((l, vec![sector.into(), Cell::Empty, l.into(), Cell::Empty, "unmatched_level".into()]));
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (_, r) in rows {
        table.push(r);
    }
}

#[derive(Serialize)]
struct GcurvePayload {
    g: f64,
    epsilon: f64,
    window: (f64, f64),
    window_default: bool,
    samples: Vec<(f64, Option<f64>)>,
    poles: Vec<(String, f64)>,
    zeros: Vec<f64>,
    oracle: Option<MatchReport>,
}

/// G(E) at fixed coupling, its zeros, and optionally the oracle levels.
pub fn gcurve(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let q = cfg.sector()?;
    let g = cfg.require_g()?;
    let p = cfg.params_at(g)?;
    let ((lo, hi), window_default) = window_of(cfg, &p)?;
    let ppo = cfg.points_per_omega.unwrap_or(200.0);
    let span = (hi - lo) / cfg.omega;
    let count = if span > 0.0 { (ppo * span).ceil() as usize + 1 } else { 0 };

    let mut curve = Table::new(&["E", "G", "pole"]);
    let mut samples = Vec::with_capacity(count);
    for i in 0..count {
        let e = lo + (hi - lo) * i as f64 / (count - 1) as f64;
        match g_function(cfg.model, q, &p, e) {
            Ok(v) => {
                curve.push(vec![e.into(), v.into(), Cell::Empty]);
                samples.push((e, Some(v)));
            }
            Err(Error::PoleProximity { line, .. }) => {
                curve.push(vec![e.into(), f64::NAN.into(), short(&line).into()]);
                samples.push((e, None));
            }
            Err(other) => return Err(other.into()),
        }
    }
    let poles: Vec<(String, f64)> = if count > 0 {
        poles_in_window(cfg.model, q, &p, lo, hi)?.iter().map(|(l, e)| (short(l), *e)).collect()
    } else {
        Vec::new()
    };
    let zeros = if count > 0 {
        let (zeros, gaps) = regular_zeros(cfg.model, q, &p, (lo, hi), ppo.max(1000.0))?;
        if let Some(gap) = gaps.first() {
            return Err(CliError::Numerical(format!("G could not be evaluated on E in {gap:?}")));
        }
        zeros
    } else {
        Vec::new()
    };

    let report = if cfg.oracle { Some(oracle::verify_zeros_in_window(&zeros, &oracle_levels(cfg, &p, q)?, cfg.tol, (lo, hi))) } else { None };
    let mut zero_table = Table::new(&["sector", "zero", "oracle", "abs_diff", "status"]);
    let sector = q.map(|q| q.to_string()).unwrap_or_else(|| "full".into());
    match &report {
        Some(rep) => match_rows(&mut zero_table, &sector, rep),
        None => {
            for &z in &zeros {
                zero_table.push(vec![sector.as_str().into(), z.into(), Cell::Empty, Cell::Empty, Cell::Empty]);
            }
        }
    }

    let extra = [("epsilon", p.epsilon.to_string()), ("window", format!("{lo}:{hi}")), ("window_default", window_default.to_string())];
    let mut emit = Emit::new("gcurve", cfg);
    emit.csv("", &curve, &extra)?;
    emit.csv("_zeros", &zero_table, &extra)?;
    emit.svg(|| {
        let mut series = vec![Series::Line {
            points: samples.iter().map(|(e, v)| (*e, v.map_or(f64::NAN, squash))).collect(),
            color: "black",
            dashed: false,
        }];
        for (_, e) in &poles {
            series.push(Series::Line { points: vec![(*e, -8.0), (*e, 8.0)], color: "gray", dashed: true });
        }
        series.push(Series::Points { points: zeros.iter().map(|z| (*z, 0.0)).collect(), color: "red", marker: Marker::Circle });
        if let Some(rep) = &report {
            let levels = rep.matched.iter().map(|m| m.1).chain(rep.unmatched_levels.iter().copied());
            series.push(Series::Points { points: levels.map(|l| (l, 0.0)).collect(), color: "blue", marker: Marker::Cross });
        }
        Plot {
            title: format!("G(E), {} g={} eps={}", cfg.model, g, p.epsilon),
            x_label: "E".into(),
            y_label: "sign(G) log10(1+|G|)".into(),
            series,
            y_range: Some((-8.0, 8.0)),
        }
    });
    let mut summary = vec![format!("{} zeros in [{lo}, {hi}]", zeros.len())];
    let mut status = Ok(());
    if let Some(rep) = &report {
        summary.push(format!("oracle: {} matched, worst |dE| = {:e}", rep.matched.len(), rep.worst));
        if !rep.success {
            status = Err(CliError::Mismatch(format!(
                "{} unmatched zeros, {} unmatched levels",
                rep.unmatched_zeros.len(),
                rep.unmatched_levels.len()
            )));
        }
    }
    emit.json(&GcurvePayload { g, epsilon: p.epsilon, window: (lo, hi), window_default, samples, poles, zeros, oracle: report })?;
    Ok(emit.finish(summary, Vec::new(), status))
}

fn tag_text(tag: &SpecialTag) -> (&'static str, String) {
    match tag {
        SpecialTag::Degenerate { n, m } => ("degenerate", format!("N={n},M={m}")),
        SpecialTag::Exceptional(k) => ("exceptional", k.to_string()),
    }
}

/// Shifted energy used in the published spectra: `E + g²/ω + ε/2` one-photon,
/// `E′` two-photon.
fn shifted(cfg: &RunConfig, q: Option<BargmannIndex>, g: f64, eps: f64, e: f64) -> Result<f64, CliError> {
    Ok(match q {
        None => e + g * g / cfg.omega + 0.5 * eps,
        Some(q) => {
            let beta = rabi_core::beta(&ModelParams::new(cfg.omega, cfg.delta, eps, g)?)?;
            rabi_core::normalized_energy(e, q, eps, beta, cfg.omega)?
        }
    })
}

#[derive(Serialize)]
struct SpectrumPayload {
    records: Vec<SpectrumRecord>,
    line_meetings: Vec<LineMeeting>,
}

/// Regular spectrum over a coupling grid, with crossings and exceptional points.
pub fn spectrum(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let q = cfg.sector()?;
    let r = cfg.g_range.ok_or_else(|| CliError::Validation("spectrum needs --g-range".into()))?;
    let grid = uniform_grid(r.start, r.end, r.step)?;
    for &g in [grid[0], *grid.last().unwrap()].iter() {
        cfg.params_at(g)?;
    }
    let mut req = TraceRequest::new(cfg.model, q, cfg.omega, cfg.delta, cfg.bias.rule(), grid);
    req.e_window = cfg.e_window.map(|w| (w.lo, w.hi));
    if let Some(ppo) = cfg.points_per_omega {
        req.points_per_omega = ppo;
    }
    let records = scan::trace(&req)?;
    let meetings = line_meetings(&req, &records)?;

    let mut levels = Table::new(&["g", "epsilon", "level", "energy", "e_prime"]);
    let mut specials = Table::new(&["g", "epsilon", "energy", "e_prime", "type", "label", "line"]);
    let mut unresolved = 0;
    for rec in &records {
        for (i, &e) in rec.energies.iter().enumerate() {
            levels.push(vec![rec.g.into(), rec.epsilon.into(), i.into(), e.into(), shifted(cfg, q, rec.g, rec.epsilon, e)?.into()]);
        }
        for s in &rec.special {
            let (ty, label) = tag_text(&s.tag);
            specials.push(vec![
                s.g.into(),
                s.epsilon.into(),
                s.energy.into(),
                shifted(cfg, q, s.g, s.epsilon, s.energy)?.into(),
                ty.into(),
                label.into(),
                short(&s.line).into(),
            ]);
        }
        unresolved += rec.gaps.len();
    }
    let mut meeting_table = Table::new(&["n", "m", "g", "energy", "gap", "gap_g"]);
    for mt in &meetings {
        let (gap, at) = mt.gap.map_or((Cell::Empty, Cell::Empty), |gr| (gr.gap.into(), gr.g.into()));
        meeting_table.push(vec![mt.n.into(), mt.m.into(), mt.g.into(), mt.energy.into(), gap, at]);
    }

    let extra = [("window_default", cfg.e_window.is_none().to_string()), ("unresolved_stretches", unresolved.to_string())];
    let mut emit = Emit::new("spectrum", cfg);
    emit.csv("", &levels, &extra)?;
    emit.csv("_special", &specials, &extra)?;
    if !meetings.is_empty() {
        emit.csv("_meetings", &meeting_table, &extra)?;
    }
    emit.svg(|| spectrum_plot(cfg, q, &records));
    let n_special: usize = records.iter().map(|r| r.special.len()).sum();
    let summary = vec![format!("{} couplings, {} levels, {} special points", records.len(), levels.rows.len(), n_special)];
    let warnings = if unresolved > 0 { vec![format!("{unresolved} energy stretches could not be evaluated")] } else { Vec::new() };
    emit.json(&SpectrumPayload { records, line_meetings: meetings })?;
    Ok(emit.finish(summary, warnings, Ok(())))
}

fn spectrum_plot(cfg: &RunConfig, q: Option<BargmannIndex>, records: &[SpectrumRecord]) -> Plot {
    let mut series = Vec::new();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for r in records {
        lo = lo.min(r.window.0);
        hi = hi.max(r.window.1);
    }
    // pole lines in view, dashed
    for (kind, color) in [(PoleKind::A, "blue"), (PoleKind::B, "red")] {
        for index in 0..200 {
            let line = match q {
                None => PoleLine::one_photon(kind, index),
                Some(q) => PoleLine::two_photon(kind, index, q),
            };
            let pts: Vec<(f64, f64)> = records
                .iter()
                .filter_map(|r| {
                    let p = ModelParams::new(cfg.omega, cfg.delta, r.epsilon, r.g).ok()?;
                    pole_energy(line, &p).ok().map(|e| (r.g, e))
                })
                .collect();
            if pts.iter().all(|p| p.1 > hi) {
                break;
            }
            series.push(Series::Line { points: pts, color, dashed: true });
        }
    }
    for c in connect_levels(records) {
        series.push(Series::Line { points: c.points, color: "black", dashed: false });
    }
    let pick = |want: &str| -> Vec<(f64, f64)> {
        records.iter().flat_map(|r| r.special.iter()).filter(|s| tag_text(&s.tag).0 == want).map(|s| (s.g, s.energy)).collect()
    };
    series.push(Series::Points { points: pick("degenerate"), color: "green", marker: Marker::Triangle });
    series.push(Series::Points { points: pick("exceptional"), color: "magenta", marker: Marker::Circle });
    let bias = match cfg.bias {
        Bias::Epsilon(e) => format!("eps={e}"),
        Bias::K(k) => format!("k={k}"),
    };
    Plot {
        title: format!("{} spectrum, delta={} {bias}", cfg.model, cfg.delta),
        x_label: "g".into(),
        y_label: "E".into(),
        series,
        y_range: lo.is_finite().then_some((lo, hi)),
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum Crossings {
    One(Vec<rabi_core::DegeneratePoint1p>),
    Two(Vec<rabi_core::DegeneratePoint2p>),
}

/// Crossings on the overlapped `N`-th A and `M`-th B lines.
pub fn crossings(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let q = cfg.sector()?;
    let (n, m) = cfg.require_pair()?;
    let mut table = Table::new(&["n", "m", "q", "g", "epsilon", "energy", "residual_f", "residual_c"]);
    let found = match q {
        None => Crossings::One(find_degenerate_1p(n, m, cfg.delta, cfg.omega, None)?),
        Some(q) => Crossings::Two(find_degenerate_2p(q, n, m, cfg.delta, cfg.omega, None)?),
    };
    let rows: Vec<(f64, f64, f64, f64, f64)> = match &found {
        Crossings::One(v) => v.iter().map(|p| (p.g, p.epsilon, p.energy, p.residual_f, p.residual_c)).collect(),
        Crossings::Two(v) => v.iter().map(|p| (p.g, p.epsilon, p.energy, p.residual_f, p.residual_c)).collect(),
    };
    let q_cell = || q.map_or(Cell::Empty, |q| q.to_string().into());
    for &(g, eps, e, rf, rc) in &rows {
        table.push(vec![n.into(), m.into(), q_cell(), g.into(), eps.into(), e.into(), rf.into(), rc.into()]);
    }
    let mut emit = Emit::new("crossings", cfg);
    emit.csv("", &table, &[])?;
    emit.svg(|| constraint_plot(cfg, q, n, m, &rows));
    emit.json(&found)?;
    let summary = rows.iter().map(|r| format!("N={n} M={m}: g={:.10} eps={:.10} E={:.10}", r.0, r.1, r.2)).collect::<Vec<_>>();
    let summary = if summary.is_empty() { vec![format!("N={n} M={m}: no crossings")] } else { summary };
    Ok(emit.finish(summary, Vec::new(), Ok(())))
}

/// `f_N` and `c_M` against `g` on the overlapped lines, crossings marked.
fn constraint_plot(cfg: &RunConfig, q: Option<BargmannIndex>, n: usize, m: usize, rows: &[(f64, f64, f64, f64, f64)]) -> Plot {
    let g_hi = match q {
        None => 2f64.max((m as f64).sqrt()) * cfg.omega,
        Some(_) => rabi_core::two_photon::scan_g_max(cfg.omega),
    };
    let (a, b) = cfg.g_range.map_or((1e-3 * cfg.omega, g_hi), |r| (r.start, r.end));
    let samples = 600;
    let curve = |f: &dyn Fn(f64) -> rabi_core::Result<f64>| -> Vec<(f64, f64)> {
        (0..=samples)
            .map(|i| {
                let g = a + (b - a) * i as f64 / samples as f64;
                (g, f(g).map_or(f64::NAN, squash))
            })
            .collect()
    };
    let (d, w) = (cfg.delta, cfg.omega);
    let (fc, cc): (Vec<_>, Vec<_>) = match q {
        None => (
            curve(&|g| rabi_core::f_n_pole(n, m, d, w, g)),
            curve(&|g| rabi_core::c_m_pole(n, m, d, w, g)),
        ),
        Some(q) => (
            curve(&|g| rabi_core::f_n_pole_2p(q, n, m, d, w, g)),
            curve(&|g| rabi_core::c_m_pole_2p(q, n, m, d, w, g)),
        ),
    };
    Plot {
        title: format!("f_{n} and c_{m}, {} delta={}", cfg.model, cfg.delta),
        x_label: "g".into(),
        y_label: "sign log10(1+|.|)".into(),
        series: vec![
            Series::Line { points: fc, color: "blue", dashed: false },
            Series::Line { points: cc, color: "red", dashed: false },
            Series::Points { points: rows.iter().map(|r| (r.0, 0.0)).collect(), color: "black", marker: Marker::Triangle },
        ],
        y_range: None,
    }
}

/// Zeros in `g` of one exceptional G-function at fixed bias.
pub fn exceptional(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let q = cfg.sector()?;
    let kind = cfg.exceptional_kind()?;
    let eps = match (cfg.bias, kind) {
        (Bias::Epsilon(e), _) => e,
        (Bias::K(_), rabi_core::ExceptionalKind::Merged { .. }) => 0.0,
        (Bias::K(_), _) => return Err(CliError::Validation("exceptional scans take a fixed --epsilon".into())),
    };
    let base = ModelParams::new(cfg.omega, cfg.delta, eps, 0.0)?;
    let mut search = default_exceptional_search(cfg.model, cfg.omega)?;
    if let Some(r) = cfg.g_range {
        let points = ((r.end - r.start) / r.step).ceil() as usize + 1;
        search = RootSearchConfig { lo: r.start, hi: r.end, grid_points: points.max(2), ..search };
        search.validate()?;
    }
    let window = cfg.e_window.map(|w| (w.lo, w.hi));
    let scan: ExceptionalScan = find_exceptional(cfg.model, q, kind, &base, &search, window)?;

    let mut table = Table::new(&["kind", "line", "g", "epsilon", "energy"]);
    for p in &scan.points {
        table.push(vec![p.kind.to_string().into(), short(&p.line).into(), p.g.into(), p.epsilon.into(), p.energy.into()]);
    }
    let mut emit = Emit::new("exceptional", cfg);
    emit.csv("", &table, &[("unresolved_stretches", scan.unresolved.len().to_string())])?;
    emit.svg(|| exceptional_plot(cfg, q, kind, &base, &search, &scan.points));
    emit.json(&scan)?;
    let summary = vec![format!("{kind}: {} zeros", scan.points.len())];
    let warnings = scan.unresolved.iter().map(|u| format!("could not evaluate for g in {u:?}")).collect();
    Ok(emit.finish(summary, warnings, Ok(())))
}

fn exceptional_plot(
    cfg: &RunConfig,
    q: Option<BargmannIndex>,
    kind: rabi_core::ExceptionalKind,
    base: &ModelParams,
    search: &RootSearchConfig,
    points: &[ExceptionalPoint],
) -> Plot {
    let samples = 800;
    let curve: Vec<(f64, f64)> = (0..=samples)
        .map(|i| {
            let g = search.lo + (search.hi - search.lo) * i as f64 / samples as f64;
            let p = match kind {
                rabi_core::ExceptionalKind::Merged { n, m } => rabi_core::exceptional::overlap_epsilon(cfg.model, n, m, &base.with_g(g))
                    .map(|e| base.with_g(g).with_epsilon(e)),
                _ => Ok(base.with_g(g)),
            };
            (g, p.and_then(|p| exceptional_g(cfg.model, q, kind, &p)).map_or(f64::NAN, squash))
        })
        .collect();
    Plot {
        title: format!("exceptional G {kind}, {} delta={}", cfg.model, cfg.delta),
        x_label: "g".into(),
        y_label: "sign(G) log10(1+|G|)".into(),
        series: vec![
            Series::Line { points: curve, color: "black", dashed: false },
            Series::Points { points: points.iter().map(|p| (p.g, 0.0)).collect(), color: "magenta", marker: Marker::Circle },
        ],
        y_range: None,
    }
}

/// Every crossing over a block of `(N, M)` pairs.
pub fn census(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let q = cfg.sector()?;
    let (n0, n1) = cfg.n_range;
    let (m0, m1) = cfg.m_range;
    if n0 == 0 || n1 < n0 || m1 < m0 || m1 <= n0 {
        return Err(CliError::Validation(format!("invalid ranges N {n0}:{n1}, M {m0}:{m1}")));
    }
    let c = rabi_core::enumerate_crossings(cfg.model, q, cfg.delta, cfg.omega, n0..=n1, m0..=m1)?;
    let mut points = Table::new(&["n", "m", "g", "epsilon", "energy"]);
    for p in &c.points {
        points.push(vec![p.n().into(), p.m().into(), p.g().into(), p.epsilon().into(), p.energy().into()]);
    }
    let mut pairs = Table::new(&["n", "m", "count"]);
    for pc in &c.per_pair {
        pairs.push(vec![pc.n.into(), pc.m.into(), pc.count.into()]);
    }
    let extra = [("total", c.total.to_string()), ("anomalies", c.anomalies.len().to_string())];
    let mut emit = Emit::new("census", cfg);
    emit.csv("", &points, &extra)?;
    emit.csv("_pairs", &pairs, &extra)?;
    emit.svg(|| Plot {
        title: format!("{} crossings, delta={}", cfg.model, cfg.delta),
        x_label: "g".into(),
        y_label: "epsilon".into(),
        series: vec![Series::Points {
            points: c.points.iter().map(|p| (p.g(), p.epsilon())).collect(),
            color: "black",
            marker: Marker::Triangle,
        }],
        y_range: None,
    });
    emit.json(&c)?;
    let summary = vec![format!("total {} crossings over {} pairs", c.total, c.per_pair.len())];
    let status = if c.anomalies.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numerical(format!("{} pairs could not be settled", c.anomalies.len())))
    };
    let warnings = c.anomalies.iter().map(|a| format!("N={} M={}: {}", a.n, a.m, a.message)).collect();
    Ok(emit.finish(summary, warnings, status))
}

#[derive(Serialize)]
struct SectorCheck {
    sector: String,
    window: (f64, f64),
    converged_below: f64,
    report: MatchReport,
}

#[derive(Serialize)]
struct CrossingCheck {
    g: f64,
    epsilon: f64,
    energy: f64,
    oracle_levels_near: usize,
    residual_a: f64,
    residual_b: f64,
    overlap: f64,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyPayload {
    pass: bool,
    worst_abs_de: f64,
    sectors: Vec<SectorCheck>,
    crossings: Vec<CrossingCheck>,
}

/// Largest residual accepted for a terminated state.
const STATE_RESIDUAL_TOL: f64 = 1e-8;

/// Cross-checks against the truncated-Fock oracle: G-zeros at `--g`, or the
/// crossings of `--n/--m` when both are given.
pub fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut table = Table::new(&["sector", "zero", "oracle", "abs_diff", "status"]);
    let mut sectors = Vec::new();
    let mut checks = Vec::new();
    if cfg.n.is_some() || cfg.m.is_some() {
        let (n, m) = cfg.require_pair()?;
        verify_crossings(cfg, n, m, &mut checks)?;
        let mut ct = Table::new(&["g", "epsilon", "energy", "levels_near", "residual_a", "residual_b", "overlap", "pass"]);
        for c in &checks {
            ct.push(vec![
                c.g.into(),
                c.epsilon.into(),
                c.energy.into(),
                c.oracle_levels_near.into(),
                c.residual_a.into(),
                c.residual_b.into(),
                c.overlap.into(),
                c.pass.to_string().into(),
            ]);
        }
        table = ct;
    } else {
        let g = cfg.require_g()?;
        let p = cfg.params_at(g)?;
        let qs: Vec<Option<BargmannIndex>> = match cfg.model {
            Model::OnePhoton => vec![None],
            Model::TwoPhoton => cfg.q.map_or(BargmannIndex::ALL.map(Some).to_vec(), |q| vec![Some(q)]),
        };
        let (window, _) = window_of(cfg, &p)?;
        for q in qs {
            let levels = oracle_levels(cfg, &p, q)?;
            let win = (window.0, window.1.min(levels.converged_below));
            let (zeros, gaps) = regular_zeros(cfg.model, q, &p, win, cfg.points_per_omega.unwrap_or(2000.0))?;
            if let Some(gap) = gaps.first() {
                return Err(CliError::Numerical(format!("G could not be evaluated on E in {gap:?}")));
            }
            let report = oracle::verify_zeros_in_window(&zeros, &levels, cfg.tol, win);
            let sector = q.map_or("full".to_string(), |q| q.to_string());
            match_rows(&mut table, &sector, &report);
            sectors.push(SectorCheck { sector, window: win, converged_below: levels.converged_below, report });
        }
    }
    let worst = sectors.iter().map(|s| s.report.worst).fold(0.0f64, f64::max);
    let pass = sectors.iter().all(|s| s.report.success) && checks.iter().all(|c| c.pass);
    let mut emit = Emit::new("verify", cfg);
    emit.csv("", &table, &[("pass", pass.to_string())])?;
    let mut summary: Vec<String> = sectors
        .iter()
        .map(|s| {
            format!(
                "sector {}: {} matched, {} unmatched zeros, {} unmatched levels, worst |dE| = {:e}",
                s.sector,
                s.report.matched.len(),
                s.report.unmatched_zeros.len(),
                s.report.unmatched_levels.len(),
                s.report.worst
            )
        })
        .collect();
    summary.extend(checks.iter().map(|c| {
        format!("crossing g={:.10}: {} oracle levels, residuals {:e} {:e}, pass={}", c.g, c.oracle_levels_near, c.residual_a, c.residual_b, c.pass)
    }));
    summary.push(format!("{}", if pass { "PASS" } else { "FAIL" }));
    emit.json(&VerifyPayload { pass, worst_abs_de: worst, sectors, crossings: checks })?;
    let status = if pass { Ok(()) } else { Err(CliError::Mismatch("oracle disagrees".into())) };
    Ok(emit.finish(summary, Vec::new(), status))
}

fn verify_crossings(cfg: &RunConfig, n: usize, m: usize, out: &mut Vec<CrossingCheck>) -> Result<(), CliError> {
    let n_max = cfg.oracle_cutoff();
    match cfg.sector()? {
        None => {
            for pt in find_degenerate_1p(n, m, cfg.delta, cfg.omega, None)? {
                let h = oracle::build_1p(&pt.params(), n_max)?;
                let levels = oracle::eigenvalues(&h, h.dim)?;
                let pair = rabi_core::degenerate_states_1p(&pt)?;
                let a = fock::displaced_state_vector(&pair.a, n_max);
                let b = fock::displaced_state_vector(&pair.b, n_max);
                out.push(crossing_check(cfg, &h, &levels, pt.g, pt.epsilon, pt.energy, &a, &b)?);
            }
        }
        Some(q) => {
            for pt in find_degenerate_2p(q, n, m, cfg.delta, cfg.omega, None)? {
                let h = oracle::build_2p(&pt.params(), n_max, q)?;
                let levels = oracle::eigenvalues(&h, h.dim)?;
                let pair = rabi_core::degenerate_states_2p(&pt)?;
                let a = fock::squeezed_state_vector(&pair.a, n_max);
                let b = fock::squeezed_state_vector(&pair.b, n_max);
                out.push(crossing_check(cfg, &h, &levels, pt.g, pt.epsilon, pt.energy, &a, &b)?);
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn crossing_check(
    cfg: &RunConfig,
    h: &oracle::TruncatedHamiltonian,
    levels: &oracle::OracleResult,
    g: f64,
    epsilon: f64,
    energy: f64,
    a: &[f64],
    b: &[f64],
) -> Result<CrossingCheck, CliError> {
    let near = oracle::levels_near(levels, energy, cfg.tol);
    let residual_a = fock::residual(h, a, energy)?;
    let residual_b = fock::residual(h, b, energy)?;
    let overlap = fock::overlap(a, b);
    let pass = near >= 2 && residual_a < STATE_RESIDUAL_TOL && residual_b < STATE_RESIDUAL_TOL && overlap < 1.0 - 1e-6;
    Ok(CrossingCheck { g, epsilon, energy, oracle_levels_near: near, residual_a, residual_b, overlap, pass })
}
