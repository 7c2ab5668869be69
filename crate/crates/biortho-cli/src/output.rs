//! Row types of the emitted tables and their CSV/JSON encodings.

use crate::CliError;
use biortho::polyseq::ModelParamsText;
use biortho::verify::VerificationReport;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// Version of every JSON document this tool writes.
pub const JSON_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Where the parameters of a table came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceInfo {
    pub case: Option<String>,
    pub params: ModelParamsText,
}

/// JSON envelope shared by all commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document<T> {
    pub schema_version: u32,
    pub command: String,
    pub source: Option<SourceInfo>,
    pub rows: Vec<T>,
}

impl<T> Document<T> {
    pub fn new(command: &str, source: Option<SourceInfo>, rows: Vec<T>) -> Self {
        Document {
            schema_version: JSON_SCHEMA_VERSION,
            command: command.to_string(),
            source,
            rows,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffRow {
    pub n: usize,
    pub beta: String,
    pub alpha_next: String,
    pub gamma_next: String,
    pub beta_tilde: String,
    /// Empty at n = 0.
    pub alpha_tilde: Option<String>,
    pub gamma_tilde: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyRow {
    pub family: String,
    pub n: usize,
    pub text: String,
    /// Ascending powers, each "p/q".
    pub coefficients: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentRow {
    pub functional: String,
    pub k: usize,
    pub exact: String,
    pub approx: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightRow {
    pub x: f64,
    pub w0: f64,
    pub w1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub case: String,
    pub system: String,
    pub status: String,
    pub checks: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub worst_moments: Option<f64>,
    pub worst_ode: Option<f64>,
    pub worst_linkage: Option<f64>,
    pub worst_boundary: Option<f64>,
    pub worst_continuity: Option<f64>,
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn from_csv<T: DeserializeOwned>(text: &str) -> Result<Vec<T>, CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize().map(|row| row.map_err(CliError::from)).collect()
}

pub fn to_json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    Ok(serde_json::from_str(text)?)
}

fn reparse_csv<T: Serialize + DeserializeOwned>(text: &str) -> Result<String, CliError> {
    to_csv(&from_csv::<T>(text)?)
}

fn reparse_json<T: Serialize + DeserializeOwned>(text: &str) -> Result<String, CliError> {
    to_json(&from_json::<Document<T>>(text)?)
}

/// Parse an emitted table and emit it again. `command` is the subcommand that
/// produced it ("coeffs", "poly", "moments", "weights", "verify", "report").
pub fn reemit(command: &str, format: Format, text: &str) -> Result<String, CliError> {
    match (command, format) {
        ("coeffs", Format::Csv) => reparse_csv::<CoeffRow>(text),
        ("coeffs", Format::Json) => reparse_json::<CoeffRow>(text),
        ("poly", Format::Json) => reparse_json::<PolyRow>(text),
        ("moments", Format::Csv) => reparse_csv::<MomentRow>(text),
        ("moments", Format::Json) => reparse_json::<MomentRow>(text),
        ("weights", Format::Csv) => reparse_csv::<WeightRow>(text),
        ("weights", Format::Json) => reparse_json::<WeightRow>(text),
        ("verify", Format::Json) => reparse_json::<VerificationReport>(text),
        ("report", Format::Csv) => reparse_csv::<ReportRow>(text),
        ("report", Format::Json) => reparse_json::<ReportRow>(text),
        _ => Err(CliError::Usage(format!("{command} has no {format:?} table"))),
    }
}
