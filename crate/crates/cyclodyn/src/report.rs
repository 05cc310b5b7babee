//! `report.json` and the append-only `manifest.json` of a run directory.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::dto::Certificate;
use crate::error::CliError;

pub const REPORT_FILE: &str = "report.json";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Completed,
    BudgetExhausted,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Completed => 0,
            Outcome::BudgetExhausted => 3,
        }
    }
}

/// The body written to `report.json`. Contains nothing time- or
/// thread-dependent, so equal configs give equal bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub outcome: Outcome,
    pub result: Value,
    pub certificates: Vec<Certificate>,
}

impl Report {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s.into_bytes()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub tool_version: String,
    pub command: String,
    pub config: Value,
    pub started: String,
    pub finished: String,
    pub outcome: Outcome,
    pub report_sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn read_manifest(dir: &Path) -> Result<Vec<ManifestEntry>, CliError> {
    let path = dir.join(MANIFEST_FILE);
    let raw = match fs::read(&path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(CliError::io(path, e)),
    };
    serde_json::from_slice(&raw)
        .map_err(|e| crate::error::ConfigError::new(MANIFEST_FILE, e.to_string()).into())
}

/// Writes the report, then appends its manifest entry.
pub fn write_run(dir: &Path, report: &Report, started: String) -> Result<ManifestEntry, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let bytes = report.to_bytes();
    let report_path = dir.join(REPORT_FILE);
    fs::write(&report_path, &bytes).map_err(|e| CliError::io(&report_path, e))?;
    let entry = ManifestEntry {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command: report.command.clone(),
        config: report.config.clone(),
        started,
        finished: now(),
        outcome: report.outcome,
        report_sha256: sha256_hex(&bytes),
    };
    let mut entries = read_manifest(dir)?;
    entries.push(entry.clone());
    let manifest_path = dir.join(MANIFEST_FILE);
    let mut s = serde_json::to_string_pretty(&entries).expect("manifest serializes");
    s.push('\n');
    fs::write(&manifest_path, s).map_err(|e| CliError::io(&manifest_path, e))?;
    Ok(entry)
}

pub fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

/// Result of checking a run directory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub hash_ok: bool,
    /// Per-certificate results, in report order.
    pub certificates: Vec<bool>,
    pub errors: Vec<String>,
}

impl VerifyOutcome {
    pub fn ok(&self) -> bool {
        self.hash_ok && self.errors.is_empty() && self.certificates.iter().all(|&b| b)
    }
}

/// Accepts a run directory or a path to its `report.json`.
pub fn run_dir(path: &Path) -> PathBuf {
    if path.file_name().is_some_and(|n| n == REPORT_FILE) {
        path.parent().map(Path::to_path_buf).unwrap_or_default()
    } else {
        path.to_path_buf()
    }
}

/// Recomputes the report hash against the latest manifest entry and
/// re-checks every embedded certificate.
pub fn verify_report(path: &Path) -> Result<VerifyOutcome, CliError> {
    let dir = run_dir(path);
    let report_path = dir.join(REPORT_FILE);
    let manifest_path = dir.join(MANIFEST_FILE);
    let bytes = fs::read(&report_path).map_err(|e| CliError::io(&report_path, e))?;
    if !manifest_path.exists() {
        return Err(CliError::NotFound(manifest_path));
    }
    let entries = read_manifest(&dir)?;
    let hash_ok = entries
        .last()
        .is_some_and(|e| e.report_sha256 == sha256_hex(&bytes));
    let mut out = VerifyOutcome {
        hash_ok,
        certificates: Vec::new(),
        errors: Vec::new(),
    };
    match serde_json::from_slice::<Report>(&bytes) {
        Ok(report) => {
            for (i, c) in report.certificates.iter().enumerate() {
                match crate::verify::check(c) {
                    Ok(b) => out.certificates.push(b),
                    Err(e) => {
                        out.certificates.push(false);
                        out.errors.push(format!("certificate {i}: {e}"));
                    }
                }
            }
        }
        Err(e) => out.errors.push(format!("{REPORT_FILE}: {e}")),
    }
    Ok(out)
}
