//! Recurrence coefficients and the first polynomials of a parameter set.
//!
//! `cargo run --example recurrence`

use biortho::poly::{format_rational, rat, ratio};
use biortho::polyseq::{coeffs, gen_p, gen_q, ModelParams};

fn main() {
    // r, s, β₀, α₁, γ
    let params = ModelParams::new(ratio(1, 2), ratio(-1, 3), rat(1), ratio(3, 2), rat(2));
    println!("delta0 = {}, delta1 = {}, eta = {}", params.delta0(), params.delta1(), params.eta());
    println!("n,beta,alpha_next,gamma_next");
    for n in 0..6 {
        let c = coeffs(&params, n);
        println!(
            "{n},{},{},{}",
            format_rational(&c.beta),
            format_rational(&c.alpha_next),
            format_rational(&c.gamma_next)
        );
    }

    let ps = gen_p(&params, 4).expect("regular parameters");
    let qs = gen_q(&params, 3).expect("regular parameters");
    for (n, p) in ps.iter().enumerate() {
        println!("P{n} = {p}");
    }
    for (n, q) in qs.iter().enumerate() {
        println!("Q{n} = {q}");
    }

    // the Airy family: P3 = x^3 - 2
    let airy = ModelParams::new(rat(0), rat(0), rat(0), rat(0), rat(1));
    let p3 = &gen_p(&airy, 3).unwrap()[3];
    println!("Airy P3 = {p3}");
}
