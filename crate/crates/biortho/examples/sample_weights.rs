//! Sample the weight pair of a case on a grid, as CSV.
//!
//! `cargo run --example sample_weights -- "III.1(p=-7/10, q=-1/2)"`

use biortho::weights::{build_measure, CaseId};

fn main() {
    let label = std::env::args().nth(1).unwrap_or_else(|| "IV.2".into());
    let case: CaseId = label.parse().expect("case id");
    let built = build_measure(&case).expect("valid parameters");
    for (name, value) in &built.mu0.constants {
        eprintln!("{name} = {value}");
    }
    println!("x,w0,w1");
    let (from, to, points) = (-4.0, 4.0, 17);
    for i in 0..points {
        let x = from + (to - from) * i as f64 / (points - 1) as f64;
        println!("{x},{},{}", built.mu0.density_or_zero(x), built.mu1.density_or_zero(x));
    }
}
