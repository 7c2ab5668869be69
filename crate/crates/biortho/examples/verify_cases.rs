//! Full verification of every case at its default parameters.
//!
//! `cargo run --release --example verify_cases`

use biortho::verify::{verify_all, Status, VerifyOptions};

fn main() {
    let reports = verify_all(&VerifyOptions::default());
    println!("{:<12} {:>6} {:>6} {:>7}  worst error/threshold", "case", "pass", "fail", "skipped");
    for r in &reports {
        let worst = r.worst_relative_error.values().cloned().fold(0.0, f64::max);
        println!(
            "{:<12} {:>6} {:>6} {:>7}  {worst:.3}",
            r.case,
            r.count(Status::Pass),
            r.count(Status::Fail),
            r.count(Status::Skipped)
        );
        for c in r.failures() {
            println!("    {} {:?} {:?}", c.name, c.location, c.detail);
        }
    }
}
