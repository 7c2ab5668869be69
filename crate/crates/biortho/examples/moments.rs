//! Exact moments of the two orthogonality functionals and the derived ones.
//!
//! `cargo run --example moments`

use biortho::functional::{classify, moment_table};
use biortho::poly::format_rational;
use biortho::weights::CaseId;

fn main() {
    for label in ["I.2", "III.2(alpha=0)", "VI.2"] {
        let case: CaseId = label.parse().unwrap();
        let params = case.model_params().unwrap();
        let system = classify(&params).unwrap();
        let table = moment_table(&system, 8);
        println!("{case}: system {}", system.tag);
        for (name, row) in [("u0", &table.m0), ("u1", &table.m1), ("u2", &table.m2), ("v0", &table.v0), ("v1", &table.v1)] {
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            println!("  {name}: {}", cells.join(", "));
        }
    }
}
