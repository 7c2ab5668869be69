//! The harness accepts the constructed measures and rejects perturbed ones.

use biortho::verify::{
    verify_boundary, verify_case, verify_cases, verify_continuity, verify_measure_against_oracle, verify_ode_and_linkage,
    Category, Status, VerifyOptions, SCHEMA_VERSION,
};
use biortho::weights::{build_measure, BuiltCase, CaseId, Density, Measure};
use std::sync::Arc;

fn built(label: &str) -> BuiltCase {
    build_measure(&label.parse().unwrap()).unwrap()
}

/// Multiply the branch of `mu` that lies on x ≤ 0 by `factor`.
fn scale_left_branch(mu: &mut Measure, factor: f64) {
    let b = mu.branches.iter_mut().find(|b| b.hi <= 0.0).expect("left branch");
    let w = b.w.clone();
    b.w = Arc::new(move |x| factor * w(x)) as Density;
    if let Some(dw) = b.dw.clone() {
        b.dw = Some(Arc::new(move |x| factor * dw(x)));
    }
}

fn failing(checks: &[biortho::verify::Check]) -> Vec<String> {
    checks.iter().filter(|c| c.failed()).map(|c| c.name.clone()).collect()
}

#[test]
fn airy_case_passes_everything() {
    let report = verify_case(&"I.2".parse().unwrap(), &VerifyOptions::default());
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    assert_eq!(report.schema_version, SCHEMA_VERSION);
    assert_eq!(report.count(Status::Skipped), 0);
    for cat in [Category::Orthogonality, Category::Structure, Category::Moments, Category::Ode, Category::Linkage, Category::Boundary] {
        assert!(report.checks.iter().any(|c| c.category == cat), "no {cat} checks");
    }
}

#[test]
fn unbalanced_tricomi_branch_is_caught() {
    let mut b = built("III.1");
    assert!(failing(&verify_continuity(&b)).is_empty());
    scale_left_branch(&mut b.mu0, 1.01);
    let cont = failing(&verify_continuity(&b));
    assert_eq!(cont, ["continuity.w0"]);
    let bound = failing(&verify_boundary(&b, 4));
    assert!(bound.iter().any(|n| n.contains("jump")), "{bound:?}");
    let mom = failing(&verify_measure_against_oracle(&b, 4, &Default::default()));
    assert!(mom.iter().any(|n| n.starts_with("moments.u0")), "{mom:?}");
}

#[test]
fn wrong_second_weight_breaks_linkage() {
    let mut b = built("IV.2");
    assert!(failing(&verify_ode_and_linkage(&b, 20)).is_empty());
    let w0 = b.mu0.branches[0].w.clone();
    let w1 = b.mu1.branches[0].w.clone();
    b.mu1.branches[0].w = Arc::new(move |x| w1(x) + 1e-3 * w0(x));
    let bad = failing(&verify_ode_and_linkage(&b, 20));
    assert!(bad.iter().any(|n| n.starts_with("linkage")), "{bad:?}");
}

#[test]
fn laguerre_without_negative_branch_fails_moments() {
    let mut b = built("III.2");
    b.mu1.branches.retain(|br| br.lo >= 0.0);
    let bad = failing(&verify_measure_against_oracle(&b, 3, &Default::default()));
    assert!(bad.iter().any(|n| n == "moments.u1.0" || n == "moments.anti_mass"), "{bad:?}");
}

#[test]
fn hypothesis_violation_is_a_failed_report() {
    let case = "II(alpha=-2)".parse::<CaseId>().unwrap();
    let report = verify_case(&case, &VerifyOptions::default());
    assert!(!report.passed());
    assert!(report.failures().next().unwrap().detail.as_deref().unwrap().contains("alpha > -1"));
}

#[test]
fn reports_are_deterministic_and_ordered() {
    let opts = VerifyOptions {
        kmax: 6,
        grid_points: 20,
        ..Default::default()
    };
    let cases: Vec<CaseId> = ["VI.2", "I.3", "III.1-lim2"].iter().map(|s| s.parse().unwrap()).collect();
    let a = verify_cases(&cases, &opts);
    let b = verify_cases(&cases, &opts);
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
    let labels: Vec<&str> = a.iter().map(|r| r.case.as_str()).collect();
    assert_eq!(labels, ["VI.2", "I.3", "III.1-lim2"]);
}

#[test]
fn resolved_convention_is_recorded() {
    let report = verify_case(&"VI.1-lim2".parse().unwrap(), &VerifyOptions::default());
    let c = report.checks.iter().find(|c| c.name == "convention.resolution").unwrap();
    assert_eq!(c.status, Status::Pass);
    assert_eq!(c.location.as_deref(), Some("convention=B"));
    assert_eq!(report.convention.as_deref(), Some("B"));
}
