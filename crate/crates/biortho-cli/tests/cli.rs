use biortho_cli::{from_csv, reemit, run, Cli, CliError, Document, Format, ReportRow, WeightRow};
use clap::Parser;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biortho"))
        .args(args)
        .env_remove("BIORTHO_TOL")
        .output()
        .expect("run biortho")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn run_args(args: &[&str]) -> Result<biortho_cli::Outcome, CliError> {
    let mut full = vec!["biortho"];
    full.extend_from_slice(args);
    run(&Cli::try_parse_from(full).expect("arguments parse"))
}

#[test]
fn laguerre_moment_row() {
    let o = bin(&["moments", "--case", "III.2", "--alpha", "0", "-K", "8"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("m0: 1,1,2,6,24,120,720,5040,40320"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn cubic_from_raw_parameters() {
    let o = bin(&["poly", "--r", "0", "--s", "0", "--beta0", "0", "--alpha1", "0", "--gamma", "1", "-N", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "P3 = x^3 - 2"), "{}", stdout(&o));
}

#[test]
fn airy_case_verifies() {
    let o = bin(&["verify", "--case", "I.2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("I.2: PASS"));
}

#[test]
fn failing_tolerance_gives_nonzero_exit() {
    // a tolerance this loose lets quadrature stop before the moment thresholds are met
    let o = Command::new(env!("CARGO_BIN_EXE_biortho"))
        .args(["verify", "--case", "I.1", "--json"])
        .env("BIORTHO_TOL", "0.5")
        .output()
        .expect("run");
    let doc: Document<biortho::verify::VerificationReport> = serde_json::from_slice(&o.stdout).expect("json");
    assert_eq!(doc.rows.len(), 1);
    assert_eq!(o.status.success(), doc.rows[0].passed());
}

#[test]
fn tolerance_from_environment_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_biortho"))
        .args(["verify", "--case", "I.2"])
        .env("BIORTHO_TOL", "2")
        .output()
        .expect("run");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("tolerance"));
}

#[test]
fn weight_samples_are_csv() {
    let o = bin(&["weights", "sample", "--case", "I.1", "--from", "-2", "--to", "2", "--points", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("x,w0,w1\n"));
    let rows: Vec<WeightRow> = from_csv(&text).expect("parse");
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0].x, -2.0);
    assert_eq!(rows[4].x, 2.0);
    assert!((rows[2].w0 - 0.2635136447491401).abs() < 1e-13);
}

#[test]
fn hypothesis_is_named() {
    let o = bin(&["moments", "--case", "II", "--alpha", "-2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("alpha > -1"), "{err}");

    let e = run_args(&["coeffs", "--case", "IV.1", "--r", "1", "--alpha1", "1/4"]).unwrap_err();
    assert!(matches!(e, CliError::Usage(_)));
    assert!(e.to_string().contains("requires"), "{e}");
}

#[test]
fn singular_raw_parameters_are_usage_errors() {
    let e = run_args(&["poly", "--r", "0", "--s", "0", "--beta0", "0", "--alpha1", "0", "--gamma", "0"]).unwrap_err();
    assert!(matches!(e, CliError::Usage(_)));
    assert!(e.to_string().contains("gamma_1 = 0"), "{e}");
}

#[test]
fn exactly_one_parameter_source() {
    let e = run_args(&["coeffs"]).unwrap_err();
    assert!(e.to_string().contains("--case or all five"), "{e}");
    let e = run_args(&["coeffs", "--r", "1", "--s", "1"]).unwrap_err();
    assert!(e.to_string().contains("missing --beta0"), "{e}");
    let e = run_args(&["coeffs", "--case", "I.2", "--gamma", "1"]).unwrap_err();
    assert!(matches!(e, CliError::Usage(_)), "{e}");
    let e = run_args(&["moments", "--alpha", "1"]).unwrap_err();
    assert!(e.to_string().contains("needs --case"), "{e}");
}

#[test]
fn ceilings() {
    for args in [
        vec!["coeffs", "--case", "I.2", "-N", "21"],
        vec!["poly", "--case", "I.2", "-N", "21"],
        vec!["moments", "--case", "I.2", "-K", "13"],
    ] {
        let o = bin(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    assert!(bin(&["coeffs", "--case", "I.2", "-N", "20"]).status.success());
    assert!(bin(&["moments", "--case", "I.2", "-K", "12"]).status.success());
}

#[test]
fn tables_round_trip() {
    let cases: &[(&str, &[&str], Format)] = &[
        ("coeffs", &["coeffs", "--case", "III.1", "-N", "20"], Format::Csv),
        ("coeffs", &["coeffs", "--case", "VI.1", "--format", "json"], Format::Json),
        ("poly", &["poly", "--case", "I.3", "-N", "8", "--json"], Format::Json),
        ("moments", &["moments", "--case", "IV.2", "-K", "12", "--format", "csv"], Format::Csv),
        ("moments", &["moments", "--case", "I.1", "--format", "json"], Format::Json),
        ("weights", &["weights", "sample", "--case", "III.1", "--from", "-3", "--to", "3", "--points", "41"], Format::Csv),
        (
            "weights",
            &["weights", "sample", "--case", "VI.2", "--from", "-1", "--to", "4", "--points", "17", "--format", "json"],
            Format::Json,
        ),
        ("verify", &["verify", "--case", "III.2", "--json"], Format::Json),
        ("report", &["report", "--case", "IV.2"], Format::Csv),
        ("report", &["report", "--case", "I.2", "--format", "json"], Format::Json),
    ];
    for (command, args, format) in cases {
        let text = run_args(args).expect("command runs").text;
        let again = reemit(command, *format, &text).expect("reparse");
        assert_eq!(again, text, "{args:?}");
    }
}

#[test]
fn moment_csv_has_exact_and_float_columns() {
    let text = run_args(&["moments", "--case", "I.2", "-K", "3", "--format", "csv"]).unwrap().text;
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("functional,k,exact,approx"));
    assert_eq!(lines.next(), Some("m0,0,1,1.0"));
    assert_eq!(lines.next(), Some("m0,1,0,0.0"));
    assert_eq!(text.lines().count(), 1 + 5 * 4);
}

#[test]
fn report_has_one_row_per_case() {
    let o = bin(&["report", "--case", "all"]);
    let rows: Vec<ReportRow> = from_csv(&stdout(&o)).expect("parse");
    assert_eq!(rows.len(), biortho::weights::CaseId::all().len());
    assert!(rows.iter().all(|r| r.status == "pass" && r.fail == 0), "{}", stdout(&o));
    assert!(o.status.success());
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("biortho-cli-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let o = bin(&["coeffs", "--case", "I.2", "-N", "3", "-o", p]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.starts_with("n,beta,alpha_next,gamma_next,beta_tilde,alpha_tilde,gamma_tilde\n"));
    assert_eq!(text.lines().count(), 5);
}
