//! `rabi-spectra`: spectra, crossings and exceptional points of the asymmetric
//! one- and two-photon Rabi models, written as CSV, JSON and SVG.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod svg;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rabi_core::{BargmannIndex, Model};

pub use config::{Bias, Format, GRange, KindFamily, RunConfig, Window};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "rabi-spectra", version, about = "G-function spectra of the asymmetric Rabi models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// G(E) at fixed coupling, with its zeros and optional oracle levels
    Gcurve(RunArgs),
    /// Spectrum over a coupling grid with crossings and exceptional points
    Spectrum(RunArgs),
    /// Degenerate crossings on the overlapped N-th A and M-th B lines
    Crossings(RunArgs),
    /// Zeros of one exceptional G-function
    Exceptional(RunArgs),
    /// All crossings over a block of (N, M) pairs
    Census(RunArgs),
    /// Cross-check against truncated-Fock diagonalization
    Verify(RunArgs),
}

impl Command {
    fn parts(&self) -> (&'static str, &RunArgs) {
        match self {
            Command::Gcurve(a) => ("gcurve", a),
            Command::Spectrum(a) => ("spectrum", a),
            Command::Crossings(a) => ("crossings", a),
            Command::Exceptional(a) => ("exceptional", a),
            Command::Census(a) => ("census", a),
            Command::Verify(a) => ("verify", a),
        }
    }
}

fn parse_index_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected A:B, got `{s}`"))?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    Ok((p(a)?, p(b)?))
}

/// Flags shared by every subcommand; each overrides the `--config` file.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct RunArgs {
    /// JSON run configuration
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write the effective configuration here
    #[arg(long, value_name = "PATH")]
    pub save_config: Option<PathBuf>,
    /// 1p or 2p
    #[arg(long)]
    pub model: Option<Model>,
    /// Two-photon Bargmann index: 14 or 34
    #[arg(long)]
    pub q: Option<BargmannIndex>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    /// Fixed bias
    #[arg(long, allow_hyphen_values = true, conflicts_with = "k")]
    pub epsilon: Option<f64>,
    /// Bias k·beta (two-photon) or k·omega (one-photon)
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long, value_name = "A:B:STEP")]
    pub g_range: Option<GRange>,
    #[arg(long, value_name = "LO:HI", allow_hyphen_values = true)]
    pub e_window: Option<Window>,
    /// Oracle photon cutoff
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Energy tolerance for oracle matching
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_name = "A:B", value_parser = parse_index_range)]
    pub n_range: Option<(usize, usize)>,
    #[arg(long, value_name = "A:B", value_parser = parse_index_range)]
    pub m_range: Option<(usize, usize)>,
    /// Exceptional family; index from --n (A kinds) or --m (B kinds)
    #[arg(long, value_enum)]
    pub kind: Option<KindFamily>,
    /// Energy samples per omega
    #[arg(long)]
    pub points_per_omega: Option<f64>,
    /// Overlay oracle levels on gcurve output
    #[arg(long)]
    pub oracle: bool,
    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Comma-separated: csv, json, svg
    #[arg(long, value_enum, value_delimiter = ',')]
    pub format: Option<Vec<Format>>,
}

impl RunArgs {
    /// The config file (if any) with every given flag applied on top.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => {
                let model = self.model.ok_or_else(|| CliError::Validation("--model is required".into()))?;
                let delta = self.delta.ok_or_else(|| CliError::Validation("--delta is required".into()))?;
                RunConfig::new(model, delta)
            }
        };
        macro_rules! set {
            ($($flag:ident => $field:ident),*) => {
                $(if let Some(v) = self.$flag.clone() { cfg.$field = v; })*
            };
        }
        macro_rules! set_opt {
            ($($flag:ident => $field:ident),*) => {
                $(if let Some(v) = self.$flag.clone() { cfg.$field = Some(v); })*
            };
        }
        set!(model => model, omega => omega, delta => delta, tol => tol, n_range => n_range, m_range => m_range, out => out, format => formats);
        set_opt!(q => q, g => g, g_range => g_range, e_window => e_window, nmax => n_max, n => n, m => m, kind => kind, points_per_omega => points_per_omega);
        if let Some(e) = self.epsilon {
            cfg.bias = Bias::Epsilon(e);
        }
        if let Some(k) = self.k {
            cfg.bias = Bias::K(k);
        }
        if self.oracle {
            cfg.oracle = true;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Caps the worker pool from `RABI_SPECTRA_THREADS`.
fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("RABI_SPECTRA_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Validation(format!("RABI_SPECTRA_THREADS must be a positive integer, got `{v}`")))?;
    // a pool may already exist when called twice in one process; keep it
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn execute(command: &Command) -> Result<(), CliError> {
    let (name, args) = command.parts();
    let cfg = args.resolve()?;
    configure_threads()?;
    let outcome = match command {
        Command::Gcurve(_) => commands::gcurve(&cfg)?,
        Command::Spectrum(_) => commands::spectrum(&cfg)?,
        Command::Crossings(_) => commands::crossings(&cfg)?,
        Command::Exceptional(_) => commands::exceptional(&cfg)?,
        Command::Census(_) => commands::census(&cfg)?,
        Command::Verify(_) => commands::verify(&cfg)?,
    };
    let artifacts = outcome.artifacts;
    if let Some(path) = &args.save_config {
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
        let file = path.file_name().ok_or_else(|| CliError::Validation("--save-config needs a file name".into()))?;
        output::write_artifacts(&dir, &[output::Artifact { name: file.to_string_lossy().into_owned(), bytes: (cfg.to_json() + "\n").into_bytes() }])?;
    }
    if cfg.formats.contains(&Format::Svg) && !artifacts.iter().any(|a| a.name.ends_with(".svg")) {
        eprintln!("note: {name} has no plot");
    }
    let paths = output::write_artifacts(&cfg.out, &artifacts)?;
    for line in &outcome.summary {
        println!("{line}");
    }
    for p in paths {
        println!("wrote {}", p.display());
    }
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    outcome.status
}

/// Runs the tool on `args` and returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
