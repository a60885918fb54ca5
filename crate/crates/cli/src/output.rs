use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// What a subcommand produced: a summary for the terminal plus its data in both formats.
pub struct Report {
    pub summary: String,
    pub csv: Vec<u8>,
    pub json: serde_json::Value,
}

impl Report {
    pub fn new<R: Serialize>(summary: String, rows: &[R], json: serde_json::Value) -> Result<Self> {
        Ok(Self {
            summary,
            csv: csv_bytes(rows)?,
            json,
        })
    }

    pub fn bytes(&self, format: Format) -> Result<Vec<u8>> {
        Ok(match format {
            Format::Csv => self.csv.clone(),
            Format::Json => {
                let mut b = serde_json::to_vec_pretty(&self.json)?;
                b.push(b'\n');
                b
            }
        })
    }
}

pub fn csv_bytes<R: Serialize>(rows: &[R]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    w.into_inner().map_err(|e| anyhow::anyhow!("csv buffer: {e}"))
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: serde_json::Value,
    pub seed: Option<u64>,
    pub version: String,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub wall_time_s: f64,
    pub outputs: Vec<PathBuf>,
}

pub fn now_ms() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

/// Resolves `--out`: a path with a file extension is the data file itself,
/// anything else is a directory receiving `<command>.<ext>`.
pub fn resolve_out(out: &Path, command: &str, ext: &str) -> PathBuf {
    if out.extension().is_some() {
        out.to_path_buf()
    } else {
        out.join(format!("{command}.{ext}"))
    }
}

/// Manifest path next to a data file: `x.csv` → `x.manifest.json`.
pub fn manifest_path(data: &Path) -> PathBuf {
    let stem = data
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    data.with_file_name(format!("{stem}.manifest.json"))
}

/// Writes via a temporary file in the target directory and renames into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub struct Emit<'a> {
    pub command: &'a str,
    pub params: serde_json::Value,
    pub seed: Option<u64>,
    pub started: u128,
    pub out: Option<&'a Path>,
    pub inputs: Vec<PathBuf>,
}

impl Emit<'_> {
    /// Writes data and manifest, or prints data to stdout and the manifest to stderr without `--out`.
    pub fn finish(self, data: &[u8], ext: &str) -> Result<()> {
        let target = self.out.map(|o| resolve_out(o, self.command, ext));
        if let Some(t) = &target {
            for input in &self.inputs {
                if same_file(input, t) {
                    anyhow::bail!(hyperspectra::Error::Parameter(format!(
                        "output {} would overwrite input {}",
                        t.display(),
                        input.display()
                    )));
                }
            }
            write_atomic(t, data)?;
        }
        let finished = now_ms();
        let manifest = RunManifest {
            command: self.command.to_string(),
            params: self.params,
            seed: self.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            started_unix_ms: self.started,
            finished_unix_ms: finished,
            wall_time_s: finished.saturating_sub(self.started) as f64 / 1000.0,
            outputs: target.iter().cloned().collect(),
        };
        let mut m = serde_json::to_vec_pretty(&manifest)?;
        m.push(b'\n');
        match &target {
            Some(t) => write_atomic(&manifest_path(t), &m)?,
            None => {
                std::io::stdout().write_all(data)?;
                std::io::stderr().write_all(&m)?;
            }
        }
        Ok(())
    }
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (a.canonicalize(), b.canonicalize()) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}

pub fn format_ext(f: Format) -> &'static str {
    f.ext()
}
