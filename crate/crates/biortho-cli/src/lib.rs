//! Command-line front end: recurrence coefficients, polynomials, exact moments,
//! weight samples and verification reports.

mod output;

pub use output::*;

use biortho::functional::{classify, moment_table};
use biortho::poly::{format_rational, parse_rational, to_f64, Poly, Rational};
use biortho::polyseq::{coeffs, gen_p, gen_q, ModelParams};
use biortho::verify::{verify_cases, Category, Status, VerificationReport, VerifyOptions, MAX_QUADRATURE_MOMENT};
use biortho::weights::{build_measure, CaseId, Convention, WeightError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use thiserror::Error;

/// Largest polynomial index accepted by `coeffs` and `poly`.
pub const MAX_N: u16 = 20;
/// Largest moment index accepted by `moments`.
pub const MAX_K: u16 = 12;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for usage errors (as clap does), 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn usage(msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(msg.to_string())
}

impl From<WeightError> for CliError {
    fn from(e: WeightError) -> Self {
        match e {
            WeightError::Hypothesis { .. } | WeightError::Degenerate(_) | WeightError::Functional(_) => {
                usage(format!("invalid parameters: {e}"))
            }
            WeightError::UnknownCase(_) | WeightError::UnknownParameter { .. } => usage(e),
            other => CliError::Compute(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "biortho", version, about = "Classical 2-orthogonal polynomials, their functionals and weight pairs")]
pub struct Cli {
    /// Quadrature tolerance for verification
    #[arg(long, global = true, env = "BIORTHO_TOL")]
    pub tol: Option<f64>,
    /// Write to this file instead of standard output
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recurrence coefficients β_n, α_{n+1}, γ_{n+1} and their tilde variants
    Coeffs {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(short = 'N', long = "max-n", default_value_t = 10, value_parser = clap::value_parser!(u16).range(0..=MAX_N as i64))]
        n: u16,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// The polynomials P_0..P_N (or Q_0..Q_N)
    Poly {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(short = 'N', long = "max-n", default_value_t = 5, value_parser = clap::value_parser!(u16).range(0..=MAX_N as i64))]
        n: u16,
        #[arg(long, value_enum, default_value_t = Family::P)]
        family: Family,
        #[arg(long)]
        json: bool,
    },
    /// Exact moments of u0, u1, u2, v0, v1
    Moments {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(short = 'K', long = "max-k", default_value_t = 8, value_parser = clap::value_parser!(u16).range(0..=MAX_K as i64))]
        k: u16,
        /// Table layout; the default prints one "m0: ..." line per functional
        #[arg(long, value_enum, default_value_t = MomentFormat::Rows)]
        format: MomentFormat,
    },
    /// Weight pairs of the special cases
    Weights {
        #[command(subcommand)]
        action: WeightsAction,
    },
    /// Run every check for a case, or for all cases
    Verify {
        #[command(flatten)]
        params: CaseArgs,
        /// Emit the full reports as JSON
        #[arg(long)]
        json: bool,
        /// Highest moment compared against quadrature
        #[arg(long, default_value_t = MAX_QUADRATURE_MOMENT as u16, value_parser = clap::value_parser!(u16).range(0..=MAX_QUADRATURE_MOMENT as i64))]
        kmax: u16,
    },
    /// One summary row per case
    Report {
        #[command(flatten)]
        params: CaseArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
pub enum WeightsAction {
    /// Sample w0 and w1 on an even grid
    Sample {
        #[command(flatten)]
        params: CaseArgs,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u32).range(1..=1_000_000))]
        points: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    P,
    Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MomentFormat {
    Rows,
    Csv,
    Json,
}

/// Case-specific parameters. Values are "p/q", integers or decimals.
#[derive(Debug, Clone, Default, Args)]
pub struct CaseParams {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    /// Sign convention of the VI.1 family (A or B)
    #[arg(long)]
    pub convention: Option<String>,
}

/// A case id, or the five model parameters directly.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// Case label, e.g. I.2, III.2 or "III.1(p=-7/10, q=-1/2)"
    #[arg(long)]
    pub case: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[command(flatten)]
    pub extra: CaseParams,
}

/// A case id (or `all`) with optional overrides of its parameters.
#[derive(Debug, Clone, Default, Args)]
pub struct CaseArgs {
    /// Case label, or `all`
    #[arg(long)]
    pub case: String,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha1: Option<String>,
    #[command(flatten)]
    pub extra: CaseParams,
}

pub enum Source {
    Case(CaseId),
    Raw(ModelParams),
}

impl Source {
    pub fn params(&self) -> Result<ModelParams, CliError> {
        match self {
            Source::Case(c) => Ok(c.model_params()?),
            Source::Raw(p) => Ok(p.clone()),
        }
    }

    pub fn info(&self) -> Result<SourceInfo, CliError> {
        Ok(SourceInfo {
            case: match self {
                Source::Case(c) => Some(c.to_string()),
                Source::Raw(_) => None,
            },
            params: self.params()?.to_text(),
        })
    }
}

fn rational(name: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| usage(format!("--{name}: {e}")))
}

fn extra_values(extra: &CaseParams) -> Vec<(&'static str, &String)> {
    [("alpha", &extra.alpha), ("p", &extra.p), ("q", &extra.q), ("mu", &extra.mu), ("nu", &extra.nu)]
        .into_iter()
        .filter_map(|(n, v)| v.as_ref().map(|v| (n, v)))
        .collect()
}

/// Parse a case label and apply parameter overrides, checking the case hypotheses.
fn case_with(label: &str, values: &[(&'static str, &String)], convention: Option<&String>) -> Result<CaseId, CliError> {
    let mut id: CaseId = label.parse()?;
    for (name, v) in values {
        id.set(name, rational(name, v)?)?;
    }
    if let Some(c) = convention {
        if !id.kind.has_convention() {
            return Err(usage(format!("case {} has no sign convention", id.label())));
        }
        id = id.with_convention(c.parse::<Convention>()?);
    }
    id.model_params()?;
    Ok(id)
}

impl ParamArgs {
    pub fn source(&self) -> Result<Source, CliError> {
        let raw = [("r", &self.r), ("s", &self.s), ("beta0", &self.beta0), ("alpha1", &self.alpha1), ("gamma", &self.gamma)];
        match &self.case {
            Some(label) => {
                let mut values: Vec<(&'static str, &String)> =
                    raw.iter().filter_map(|(n, v)| v.as_ref().map(|v| (*n, v))).collect();
                values.extend(extra_values(&self.extra));
                Ok(Source::Case(case_with(label, &values, self.extra.convention.as_ref())?))
            }
            None => {
                if let Some((name, _)) = extra_values(&self.extra).first() {
                    return Err(usage(format!("--{name} is a case parameter and needs --case")));
                }
                if self.extra.convention.is_some() {
                    return Err(usage("--convention needs --case"));
                }
                let missing: Vec<String> = raw.iter().filter(|(_, v)| v.is_none()).map(|(n, _)| format!("--{n}")).collect();
                if !missing.is_empty() {
                    return Err(usage(format!(
                        "give either --case or all five model parameters (missing {})",
                        missing.join(", ")
                    )));
                }
                let v: Vec<Rational> = raw
                    .iter()
                    .map(|(n, v)| rational(n, v.as_ref().expect("checked")))
                    .collect::<Result<_, _>>()?;
                Ok(Source::Raw(ModelParams::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone())))
            }
        }
    }
}

impl CaseArgs {
    pub fn cases(&self) -> Result<Vec<CaseId>, CliError> {
        let mut values: Vec<(&'static str, &String)> = [("r", &self.r), ("s", &self.s), ("alpha1", &self.alpha1)]
            .into_iter()
            .filter_map(|(n, v)| v.as_ref().map(|v| (n, v)))
            .collect();
        values.extend(extra_values(&self.extra));
        if self.case.eq_ignore_ascii_case("all") {
            if !values.is_empty() || self.extra.convention.is_some() {
                return Err(usage("parameter overrides need a single --case, not all"));
            }
            return Ok(CaseId::all());
        }
        Ok(vec![case_with(&self.case, &values, self.extra.convention.as_ref())?])
    }

    pub fn single(&self, command: &str) -> Result<CaseId, CliError> {
        let mut cases = self.cases()?;
        if cases.len() != 1 {
            return Err(usage(format!("{command} needs a single --case")));
        }
        Ok(cases.remove(0))
    }
}

/// Text to emit and whether every check behind it passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn verify_options(cli: &Cli, kmax: usize) -> Result<VerifyOptions, CliError> {
    let mut opts = VerifyOptions {
        kmax,
        ..Default::default()
    };
    if let Some(tol) = cli.tol {
        if !(tol > 0.0 && tol < 1.0) {
            return Err(usage(format!("tolerance must lie in (0, 1), got {tol}")));
        }
        opts.quad.tol = tol;
    }
    Ok(opts)
}

fn regular(params: &ModelParams, n: usize) -> Result<(), CliError> {
    match params.first_singular(n) {
        Some(i) => Err(usage(format!("invalid parameters: regularity fails at n = {i}: gamma_{i} = 0"))),
        None => Ok(()),
    }
}

fn opt_text(r: Option<Rational>) -> Option<String> {
    r.as_ref().map(format_rational)
}

fn coeff_rows(params: &ModelParams, n: usize) -> Vec<CoeffRow> {
    (0..=n)
        .map(|i| {
            let c = coeffs(params, i);
            CoeffRow {
                n: i,
                beta: format_rational(&c.beta),
                alpha_next: format_rational(&c.alpha_next),
                gamma_next: format_rational(&c.gamma_next),
                beta_tilde: format_rational(&c.beta_tilde),
                alpha_tilde: opt_text(c.alpha_tilde),
                gamma_tilde: opt_text(c.gamma_tilde),
            }
        })
        .collect()
}

fn poly_rows(family: Family, polys: &[Poly]) -> Vec<PolyRow> {
    let name = match family {
        Family::P => "P",
        Family::Q => "Q",
    };
    polys
        .iter()
        .enumerate()
        .map(|(n, p)| PolyRow {
            family: name.to_string(),
            n,
            text: p.to_string(),
            coefficients: p.coeffs().iter().map(format_rational).collect(),
        })
        .collect()
}

fn moment_rows(params: &ModelParams, k: usize) -> Result<Vec<MomentRow>, CliError> {
    let sys = classify(params).map_err(|e| usage(format!("invalid parameters: {e}")))?;
    let t = moment_table(&sys, k);
    let mut rows = Vec::new();
    for (name, seq) in [("m0", &t.m0), ("m1", &t.m1), ("m2", &t.m2), ("v0", &t.v0), ("v1", &t.v1)] {
        for (i, m) in seq.iter().enumerate().take(k + 1) {
            rows.push(MomentRow {
                functional: name.to_string(),
                k: i,
                exact: format_rational(m),
                approx: to_f64(m),
            });
        }
    }
    Ok(rows)
}

/// "m0: 1,1,2,6" lines, one per functional.
fn moment_lines(rows: &[MomentRow]) -> String {
    let mut out = String::new();
    let mut current: Option<&str> = None;
    for r in rows {
        if current != Some(r.functional.as_str()) {
            if current.is_some() {
                out.push('\n');
            }
            out.push_str(&r.functional);
            out.push_str(": ");
            current = Some(&r.functional);
        } else {
            out.push(',');
        }
        out.push_str(&r.exact);
    }
    out.push('\n');
    out
}

fn weight_rows(case: &CaseId, from: f64, to: f64, points: usize) -> Result<Vec<WeightRow>, CliError> {
    if !(from.is_finite() && to.is_finite() && from < to) {
        return Err(usage(format!("need finite --from < --to, got {from} and {to}")));
    }
    let built = build_measure(case)?;
    let step = if points > 1 { (to - from) / (points - 1) as f64 } else { 0.0 };
    Ok((0..points)
        .map(|i| {
            let x = if i + 1 == points && points > 1 { to } else { from + step * i as f64 };
            WeightRow {
                x,
                w0: built.mu0.density_or_zero(x),
                w1: built.mu1.density_or_zero(x),
            }
        })
        .collect())
}

fn worst(r: &VerificationReport, cat: Category) -> Option<f64> {
    r.worst_relative_error.get(&cat.to_string()).copied()
}

fn report_row(id: &CaseId, r: &VerificationReport) -> ReportRow {
    ReportRow {
        case: id.to_string(),
        system: r.system.map(|s| s.to_string()).unwrap_or_default(),
        status: if r.passed() { "pass" } else { "fail" }.to_string(),
        checks: r.checks.len(),
        pass: r.count(Status::Pass),
        fail: r.count(Status::Fail),
        skipped: r.count(Status::Skipped),
        worst_moments: worst(r, Category::Moments),
        worst_ode: worst(r, Category::Ode),
        worst_linkage: worst(r, Category::Linkage),
        worst_boundary: worst(r, Category::Boundary),
        worst_continuity: worst(r, Category::Continuity),
    }
}

fn verify_text(ids: &[CaseId], reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for (id, r) in ids.iter().zip(reports) {
        out.push_str(&format!(
            "{id}: {} ({} checks: {} pass, {} fail, {} skipped)\n",
            if r.passed() { "PASS" } else { "FAIL" },
            r.checks.len(),
            r.count(Status::Pass),
            r.count(Status::Fail),
            r.count(Status::Skipped)
        ));
        for c in r.failures() {
            out.push_str(&format!("  FAIL {}", c.name));
            if let (Some(m), Some(t)) = (c.measured, c.threshold) {
                out.push_str(&format!(" measured {m:e} threshold {t:e}"));
            }
            if let Some(l) = &c.location {
                out.push_str(&format!(" at {l}"));
            }
            if let Some(d) = &c.detail {
                out.push_str(&format!(": {d}"));
            }
            out.push('\n');
        }
    }
    out
}

/// Execute one command and return its output.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Coeffs { params, n, format } => {
            let source = params.source()?;
            let p = source.params()?;
            let rows = coeff_rows(&p, *n as usize);
            Ok(Outcome::ok(match format {
                Format::Csv => to_csv(&rows)?,
                Format::Json => to_json(&Document::new("coeffs", Some(source.info()?), rows))?,
            }))
        }
        Command::Poly { params, n, family, json } => {
            let source = params.source()?;
            let p = source.params()?;
            let n = *n as usize;
            regular(&p, n + 1)?;
            let polys = match family {
                Family::P => gen_p(&p, n),
                Family::Q => gen_q(&p, n),
            }
            .map_err(|e| usage(format!("invalid parameters: {e}")))?;
            let rows = poly_rows(*family, &polys);
            Ok(Outcome::ok(if *json {
                to_json(&Document::new("poly", Some(source.info()?), rows))?
            } else {
                rows.iter().map(|r| format!("{}{} = {}\n", r.family, r.n, r.text)).collect()
            }))
        }
        Command::Moments { params, k, format } => {
            let source = params.source()?;
            let rows = moment_rows(&source.params()?, *k as usize)?;
            Ok(Outcome::ok(match format {
                MomentFormat::Rows => moment_lines(&rows),
                MomentFormat::Csv => to_csv(&rows)?,
                MomentFormat::Json => to_json(&Document::new("moments", Some(source.info()?), rows))?,
            }))
        }
        Command::Weights {
            action: WeightsAction::Sample {
                params,
                from,
                to,
                points,
                format,
            },
        } => {
            let case = params.single("weights sample")?;
            let rows = weight_rows(&case, *from, *to, *points as usize)?;
            Ok(Outcome::ok(match format {
                Format::Csv => to_csv(&rows)?,
                Format::Json => to_json(&Document::new("weights", Some(Source::Case(case).info()?), rows))?,
            }))
        }
        Command::Verify { params, json, kmax } => {
            let ids = params.cases()?;
            let reports = verify_cases(&ids, &verify_options(cli, *kmax as usize)?);
            let ok = reports.iter().all(VerificationReport::passed);
            let text = if *json {
                to_json(&Document::new("verify", None, reports))?
            } else {
                verify_text(&ids, &reports)
            };
            Ok(Outcome { text, ok })
        }
        Command::Report { params, format } => {
            let ids = params.cases()?;
            let reports = verify_cases(&ids, &verify_options(cli, MAX_QUADRATURE_MOMENT)?);
            let rows: Vec<ReportRow> = ids.iter().zip(&reports).map(|(id, r)| report_row(id, r)).collect();
            let ok = reports.iter().all(VerificationReport::passed);
            let text = match format {
                Format::Csv => to_csv(&rows)?,
                Format::Json => to_json(&Document::new("report", None, rows))?,
            };
            Ok(Outcome { text, ok })
        }
    }
}
