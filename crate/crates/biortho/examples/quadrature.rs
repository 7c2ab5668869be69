//! Moments of the constructed measures by quadrature, against the exact values.
//!
//! `cargo run --release --example quadrature`

use biortho::functional::moment_table;
use biortho::poly::to_f64;
use biortho::quad::{integrate, moments, Interval, QuadOptions};
use biortho::weights::{build_measure, CaseId};

fn main() {
    let opts = QuadOptions::default();

    // a plain integral with an infinite tail
    let gauss = integrate(|x| (-x * x).exp(), Interval::Whole, &opts).unwrap();
    println!("int exp(-x^2) = {:.15} (sqrt(pi) = {:.15})", gauss.value, std::f64::consts::PI.sqrt());

    for label in ["II", "III.1", "IV.1", "I.3"] {
        let case: CaseId = label.parse().unwrap();
        let built = build_measure(&case).unwrap();
        let exact = moment_table(&built.system, 6);
        let numeric = moments(&built.mu1, 6, &opts).unwrap();
        println!("{case}: second functional, {} panels", numeric.panels_used);
        for k in 0..=6 {
            let e = to_f64(&exact.m1[k]);
            println!("  k={k} exact {e:>14.6e} quadrature {:>14.6e} error {:.1e}", numeric.values[k], (numeric.values[k] - e).abs());
        }
    }
}
