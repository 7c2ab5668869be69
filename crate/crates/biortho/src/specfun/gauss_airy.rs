use super::airy::airy_ai;
use super::{domain, Result};
use std::f64::consts::PI;

/// Gauss–Airy function GAi(x, ξ, τ) = (1/π) ∫₀^∞ e^{−ξt²} cos(xt + τt³/3) dt.
///
/// Rescaling t by |τ|^{−1/3} reduces every case with τ ≠ 0 to
/// GAi(x, a, 1) = e^{a(x + 2a²/3)} Ai(x + a²); τ = 0 is a Gaussian integral.
pub fn gauss_airy(x: f64, xi: f64, tau: f64) -> Result<f64> {
    if !(xi >= 0.0) {
        return Err(domain("gauss_airy", format!("requires xi >= 0, got {xi}")));
    }
    if tau == 0.0 {
        if xi == 0.0 {
            return Err(domain("gauss_airy", "xi = tau = 0 is a distribution, not a function"));
        }
        return Ok((-x * x / (4.0 * xi)).exp() / (2.0 * (PI * xi).sqrt()));
    }
    // cos is even, so a negative τ flips the sign of x
    let (x, tau) = if tau < 0.0 { (-x, -tau) } else { (x, tau) };
    let scale = tau.cbrt().recip();
    let a = xi * scale * scale;
    let xs = x * scale;
    let arg = xs + a * a;
    if a == 0.0 {
        return Ok(scale * airy_ai(xs, 0));
    }
    // merge the exponential prefactor with the Ai decay where the latter underflows
    let pre = a * (xs + 2.0 * a * a / 3.0);
    if arg >= 8.75 {
        let zeta = 2.0 / 3.0 * arg * arg.sqrt();
        let (scaled, _) = super::airy::airy_ai_asymptotic_scaled(arg);
        return Ok(scale * (pre - zeta).exp() * scaled);
    }
    Ok(scale * pre.exp() * airy_ai(arg, 0))
}
