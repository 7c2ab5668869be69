//! A tour of the special-function kernel.
//!
//! `cargo run --example special_functions`

use biortho::specfun::{airy_ai, erfc, gamma, gamma_q, hyp2f1, kummer_m, rho, tricomi_u};

fn main() {
    println!("Gamma(1/2)        = {}", gamma(0.5).unwrap());
    println!("Q(2, 3)           = {}", gamma_q(2.0, 3.0).unwrap());
    println!("erfc(3)           = {:e}", erfc(3.0));
    println!("Ai(0), Ai'(0)     = {}, {}", airy_ai(0.0, 0), airy_ai(0.0, 1));
    println!("Ai(-20)           = {}", airy_ai(-20.0, 0));
    println!("rho_1/2(1)        = {}", rho(0.5, 1.0).unwrap());
    println!("M(1/2; 3/2; -30)  = {}", kummer_m(0.5, 1.5, -30.0).unwrap());
    println!("U(0.4; 0.8; 2)    = {}", tricomi_u(0.4, 0.8, 2.0).unwrap());
    println!("U(0.4; 1; 0.01)   = {}", tricomi_u(0.4, 1.0, 0.01).unwrap());
    println!("2F1(1,1/2;3/2;-1) = {}", hyp2f1(1.0, 0.5, 1.5, -1.0).unwrap());
}
