use super::gamma::{gamma, ln_gamma};
use super::{domain, Result, SpecError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    /// ω_ν(x) = x^{ν/2} I_ν(2√x)
    Omega,
    /// ρ_ν(x) = 2 x^{ν/2} K_ν(2√x)
    Rho,
}

/// ω_ν(x) = x^{ν/2} I_ν(2√x) = Σ_k x^{ν+k} / (k! Γ(ν+k+1)), ν > −1, x ≥ 0.
pub fn omega(nu: f64, x: f64) -> Result<f64> {
    if !(nu > -1.0) {
        return Err(domain("omega", format!("requires nu > -1, got {nu}")));
    }
    if !(x >= 0.0) {
        return Err(domain("omega", format!("requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        });
    }
    // first term in log space so large x does not overflow prematurely
    let mut term = (nu * x.ln() - ln_gamma(nu + 1.0)?).exp();
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= x / (k * (nu + k));
        sum += term;
        if !sum.is_finite() {
            return Err(SpecError::Overflow { func: "omega" });
        }
        if term < 1e-17 * sum && k > x.sqrt() {
            break;
        }
        if k > 1e6 {
            return Err(SpecError::NoConvergence {
                func: "omega",
                terms: k as usize,
            });
        }
    }
    Ok(sum)
}

/// e^x K_ν(x) for x > 0, from the trapezoidal rule applied to
/// ∫₀^∞ e^{−x(cosh t − 1)} cosh(νt) dt, which converges geometrically in the step.
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("bessel_k", format!("requires x > 0, got {x}")));
    }
    let nu = nu.abs();
    let h = 0.0625;
    let f = |t: f64| {
        let s = (0.5 * t).sinh();
        let arg = -x * 2.0 * s * s + nu * t;
        // cosh(νt) e^{-x(cosh t -1)} = ½(e^{νt} + e^{-νt}) e^{...}
        0.5 * (arg.exp() + (arg - 2.0 * nu * t).exp())
    };
    let mut sum = 0.5 * f(0.0);
    let mut k = 1.0;
    let mut peak: f64 = sum;
    loop {
        let v = f(k * h);
        sum += v;
        peak = peak.max(v);
        if v < 1e-18 * sum && v < peak {
            break;
        }
        k += 1.0;
        if k > 1e6 {
            return Err(SpecError::NoConvergence {
                func: "bessel_k",
                terms: k as usize,
            });
        }
    }
    Ok(h * sum)
}

/// K_ν(x) for x > 0.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_k_scaled(nu, x)? * (-x).exp())
}

/// ρ_ν(x) = 2 x^{ν/2} K_ν(2√x).
pub fn rho(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("rho", format!("requires x > 0, got {x}")));
    }
    let z = 2.0 * x.sqrt();
    Ok(2.0 * (0.5 * nu * x.ln() - z).exp() * bessel_k_scaled(nu, z)?)
}

/// Scaled Bessel functions ω_ν and ρ_ν.
pub fn bessel_scaled(nu: f64, x: f64, kind: BesselKind) -> Result<f64> {
    if !(nu > -1.0) {
        return Err(domain("bessel_scaled", format!("requires nu > -1, got {nu}")));
    }
    match kind {
        BesselKind::Omega => omega(nu, x),
        BesselKind::Rho => {
            if x == 0.0 {
                // ρ_ν(0⁺) = Γ(ν) for ν > 0, diverges otherwise
                return if nu > 0.0 { gamma(nu) } else { Ok(f64::INFINITY) };
            }
            rho(nu, x)
        }
    }
}
