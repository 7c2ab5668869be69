//! Weight constructions against closed forms and the exact moment oracle.

use biortho::functional::moment_table;
use biortho::poly::{rat, ratio, to_f64};
use biortho::quad::{integrate, moments, Interval, QuadOptions};
use biortho::specfun::{airy_ai, gamma, tricomi_u};
use biortho::verify::{convention_consistent, VerifyOptions};
use biortho::weights::{
    build_measure, eval_measure, laguerre_half_line_form, tricomi_constants, CaseId, CaseKind, Convention, Side,
    Support, WeightError,
};
use proptest::prelude::*;

fn case(label: &str) -> CaseId {
    label.parse().unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn shifted_airy_at_origin() {
    let b = build_measure(&case("I.1")).unwrap();
    let expect = (2.0f64 / 3.0).exp() * airy_ai(1.0, 0);
    assert!(close(eval_measure(&b.mu0, 0.0).unwrap(), expect, 1e-13));
    assert!(close(expect, 0.263_513_644_749_140_1, 1e-14));
}

#[test]
fn plain_airy_weight() {
    let b = build_measure(&case("I.2")).unwrap();
    assert!(close(eval_measure(&b.mu0, 0.0).unwrap(), 0.355_028_053_887_817_2, 1e-14));
    // w₁ = −w₀′
    assert!(close(eval_measure(&b.mu1, 0.0).unwrap(), 0.258_819_403_792_806_8, 1e-14));
    assert_eq!(b.mu0.support, Support::WholeLine);
}

#[test]
fn laguerre_second_weight_at_origin() {
    let b = build_measure(&case("III.2(alpha=0)")).unwrap();
    assert!(close(b.mu1.one_sided(0.0, Side::Right), 0.5, 1e-14));
    assert!(close(b.mu1.one_sided(0.0, Side::Left), -0.5, 1e-14));
    assert!(close(b.mu1.eval(-3.0).unwrap(), -0.5 * (-3.0f64).exp(), 1e-14));
}

#[test]
fn degenerate_tricomi_is_elementary() {
    let b = build_measure(&case("III.1-lim2")).unwrap();
    for x in [-6.0f64, -2.5, -0.3, 0.3, 1.0, 4.0, 9.0] {
        let w0 = 0.5 * (-f64::abs(x)).exp();
        let w1 = if x >= 0.0 { -0.25 * (1.0 - 2.0 * x) * (-x).exp() } else { -0.25 * x.exp() };
        assert!(close(b.mu0.eval(x).unwrap(), w0, 1e-10), "w0({x})");
        assert!(close(b.mu1.eval(x).unwrap(), w1, 1e-10), "w1({x})");
    }
}

#[test]
fn gaussian_first_weight() {
    let b = build_measure(&case("IV.2")).unwrap();
    for x in [-3.0f64, -0.5, 0.0, 1.25, 4.0] {
        let expect = (-x * x).exp() / std::f64::consts::PI.sqrt();
        assert!(close(b.mu0.eval(x).unwrap(), expect, 1e-14));
    }
}

#[test]
fn tricomi_constants_identities() {
    for (p, q) in [(-0.6, -0.6), (-0.7, -0.5), (-0.3, -0.9), (-0.55, -0.8)] {
        let tc = tricomi_constants(p, q).unwrap();
        let lhs = gamma(-p).unwrap() * tc.k1;
        let rhs = gamma(-q).unwrap() * tc.k2;
        assert!(close(lhs, rhs, 1e-12), "({p}, {q}): {lhs} vs {rhs}");
        let c = 2.0 + p + q;
        let i1 = integrate(
            |x| (-x).exp() * tricomi_u(1.0 + p, c, 2.0 * x).unwrap(),
            Interval::Right(0.0),
            &QuadOptions::with_tol(1e-12),
        )
        .unwrap();
        assert!(close(tc.i1, i1.value, 1e-9), "I1({p}, {q}): {} vs {}", tc.i1, i1.value);
        let i2 = integrate(
            |x| (-x).exp() * tricomi_u(1.0 + q, c, 2.0 * x).unwrap(),
            Interval::Right(0.0),
            &QuadOptions::with_tol(1e-12),
        )
        .unwrap();
        assert!(close(tc.i2, i2.value, 1e-9));
        assert!(close(tc.k_tilde1, tc.k1 / (2.0 * p), 1e-15));
        assert!(!close(tc.k_tilde1, tc.k_tilde1_alternative, 1e-6) || p == q);
    }
    let sym = tricomi_constants(-0.6, -0.6).unwrap();
    assert!(close(sym.k1, sym.k2, 1e-14));
}

#[test]
fn half_line_atom_form_gets_mass_but_not_first_moment() {
    let mu = laguerre_half_line_form(0.0);
    let r = moments(&mu, 1, &QuadOptions::default()).unwrap();
    // ⟨u₁, 1⟩ = 0 and ⟨u₁, x⟩ = 1
    assert!(r.values[0].abs() < 1e-9, "mass {}", r.values[0]);
    assert!((r.values[1] - 1.0).abs() > 0.1, "first moment {}", r.values[1]);

    let full = build_measure(&case("III.2(alpha=0)")).unwrap();
    let r = moments(&full.mu1, 1, &QuadOptions::default()).unwrap();
    assert!(r.values[0].abs() < 1e-9);
    assert!((r.values[1] - 1.0).abs() < 1e-9);
}

#[test]
fn laguerre_numeric_moments_are_factorials() {
    let b = build_measure(&case("III.2(alpha=0)")).unwrap();
    let r = moments(&b.mu0, 8, &QuadOptions::default()).unwrap();
    let mut f = 1.0;
    for (k, v) in r.values.iter().enumerate() {
        if k > 0 {
            f *= k as f64;
        }
        assert!(close(*v, f, 1e-10), "k = {k}: {v}");
    }
}

#[test]
fn hypothesis_violations_name_the_hypothesis() {
    let cases = [
        ("I.1", "alpha", rat(0), "alpha > 0"),
        ("II", "alpha", rat(-1), "alpha > -1"),
        ("III.2", "alpha", ratio(-1, 2), "alpha >= 0"),
        ("IV.2", "mu", rat(1), "mu < 0"),
        ("III.1", "p", ratio(1, 5), "-1 < p < 0"),
    ];
    for (label, name, value, hyp) in cases {
        let id = case(label).with(name, value).unwrap();
        match build_measure(&id) {
            Err(e @ WeightError::Hypothesis { .. }) => assert!(e.to_string().contains(hyp), "{label}: {e}"),
            other => panic!("{label}: expected a hypothesis error, got {:?}", other.map(|b| b.case)),
        }
    }
    assert!(matches!(case("I.2").with("alpha", rat(1)), Err(WeightError::UnknownParameter { .. })));
    assert!(matches!("VII".parse::<CaseId>(), Err(WeightError::UnknownCase(_))));
}

#[test]
fn only_the_resolved_convention_is_consistent() {
    let opts = VerifyOptions::default();
    let id = case("VI.1");
    let (a_ok, a_why) = convention_consistent(&id, Convention::A, &opts);
    let (b_ok, b_why) = convention_consistent(&id, Convention::B, &opts);
    assert!(!a_ok, "A: {a_why}");
    assert!(b_ok, "B: {b_why}");
    assert_eq!(Convention::RESOLVED, Convention::B);
}

#[test]
fn case_ids_round_trip_through_text() {
    let mut ids = CaseId::all();
    ids.push(case("I.1").with("alpha", ratio(1, 2)).unwrap());
    ids.push(case("VI.1").with("q", ratio(-4, 5)).unwrap().with_convention(Convention::A));
    ids.push(case("VI.2").with("nu", ratio(-1, 3)).unwrap());
    for id in ids {
        let text = id.to_string();
        let back: CaseId = text.parse().unwrap();
        assert_eq!(back, id, "{text}");
    }
    assert_eq!(case("iii.2").kind, CaseKind::III2);
}

#[test]
fn every_case_matches_its_moment_oracle() {
    for id in CaseId::all() {
        let b = build_measure(&id).unwrap();
        let table = moment_table(&b.system, 6);
        let opts = QuadOptions::default();
        for (mu, exact) in [(&b.mu0, &table.m0), (&b.mu1, &table.m1)] {
            let r = moments(mu, 6, &opts).unwrap();
            let tol = mu.regime.relative_tolerance();
            for k in 0..=6 {
                let e = to_f64(&exact[k]);
                assert!((r.values[k] - e).abs() <= (tol * e.abs()).max(1e-8), "{id} k={k}: {} vs {e}", r.values[k]);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn laguerre_family_moments(num in 0i64..=12) {
        let alpha = ratio(num, 4);
        let id = case("III.2").with("alpha", alpha.clone()).unwrap();
        let b = build_measure(&id).unwrap();
        let table = moment_table(&b.system, 4);
        for (mu, exact) in [(&b.mu0, &table.m0), (&b.mu1, &table.m1)] {
            let r = moments(mu, 4, &QuadOptions::default()).unwrap();
            for k in 0..=4 {
                let e = to_f64(&exact[k]);
                prop_assert!((r.values[k] - e).abs() <= (1e-8 * e.abs()).max(1e-8), "alpha={} k={}: {} vs {}", alpha, k, r.values[k], e);
            }
        }
        // ∫₀^∞ w₁ = 2^{−α−1} balances the negative branch
        let a = to_f64(&alpha);
        let pos = integrate(|x| b.mu1.eval(x).unwrap(), Interval::Right(0.0), &QuadOptions::default()).unwrap();
        prop_assert!((pos.value - 2f64.powf(-a - 1.0)).abs() < 1e-9);
    }
}
