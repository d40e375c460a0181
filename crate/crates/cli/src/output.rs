//! CSV tables with a metadata header, JSON documents, and atomic file writes.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;

/// `x` with 12 significant digits, fixed notation for moderate exponents.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci.rsplit_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    if (-5..12).contains(&exp) {
        let s = format!("{:.*}", (11 - exp).max(0) as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let (mant, _) = sci.split_once('e').unwrap();
        let mant = if mant.contains('.') { mant.trim_end_matches('0').trim_end_matches('.') } else { mant };
        format!("{mant}e{exp}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => fmt_num(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Metadata lines: tool version, command, every config key, then extras.
pub fn metadata(command: &str, cfg: &RunConfig, extra: &[(&str, String)]) -> Vec<(String, String)> {
    let mut out = vec![
        ("tool".to_string(), format!("rabi-spectra {}", rabi_core::VERSION)),
        ("command".to_string(), command.to_string()),
    ];
    if let serde_json::Value::Object(map) = serde_json::to_value(cfg).expect("config serializes") {
        for (k, v) in map {
            out.push((k, v.to_string()));
        }
    }
    out.extend(extra.iter().map(|(k, v)| (k.to_string(), v.clone())));
    out
}

pub fn csv_bytes(meta: &[(String, String)], table: &Table) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    for (k, v) in meta {
        writeln!(buf, "# {k}={v}")?;
    }
    let mut w = csv::Writer::from_writer(buf);
    let io = |e: csv::Error| CliError::Io(std::io::Error::other(e));
    w.write_record(&table.columns).map_err(io)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render)).map_err(io)?;
    }
    w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))
}

/// JSON document with the config and version alongside the payload.
pub fn json_bytes<T: Serialize>(command: &str, cfg: &RunConfig, payload: &T) -> Result<Vec<u8>, CliError> {
    let doc = serde_json::json!({
        "tool": format!("rabi-spectra {}", rabi_core::VERSION),
        "command": command,
        "config": cfg,
        "result": payload,
    });
    let mut bytes = serde_json::to_vec_pretty(&doc).map_err(|e| CliError::Io(std::io::Error::other(e)))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// A file to be written under the output directory.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

/// Writes every artifact through a temporary file and a rename, so a reader
/// never sees a half-written file.
pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::with_capacity(artifacts.len());
    for a in artifacts {
        let path = dir.join(&a.name);
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(&a.bytes)?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).map_err(|e| CliError::Io(e.error))?;
        paths.push(path);
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rabi_core::Model;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_num(0.5995137), "0.5995137");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(-2.0 / 3.0 * 1e3), "-666.666666667");
        assert_eq!(fmt_num(12.0), "12");
        assert_eq!(fmt_num(1e-9 / 3.0), "3.33333333333e-10");
        assert_eq!(fmt_num(9.9999999999999), "10");
        assert_eq!(fmt_num(f64::NAN), "NaN");
        assert_eq!(fmt_num(0.0), "0");
        for x in [0.1234567890123456, 123456.7890123456, 1e-7 * 0.987654321098765] {
            let back: f64 = fmt_num(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 5e-12, "{x}");
        }
    }

    #[test]
    fn csv_header_and_quoting() {
        let cfg = RunConfig::new(Model::OnePhoton, 1.5);
        let mut t = Table::new(&["a", "tag"]);
        t.push(vec![Cell::Num(0.25), Cell::from("merged(N=1,M=2)")]);
        let text = String::from_utf8(csv_bytes(&metadata("x", &cfg, &[]), &t).unwrap()).unwrap();
        assert!(text.starts_with("# tool=rabi-spectra"));
        assert!(text.contains("# delta=1.5\n"));
        assert!(text.ends_with("a,tag\n0.25,\"merged(N=1,M=2)\"\n"));
    }

    #[test]
    fn atomic_write_leaves_no_temporaries() {
        let dir = tempfile::tempdir().unwrap();
        let a = Artifact { name: "x.csv".into(), bytes: b"1\n".to_vec() };
        write_artifacts(dir.path(), &[a]).unwrap();
        let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
        assert_eq!(names, vec![std::ffi::OsString::from("x.csv")]);
    }
}
