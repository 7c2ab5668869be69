//! Confluent hypergeometric functions M(a;c;z) and U(a;c;x).

use super::gamma::{digamma, gamma, ln_gamma, rgamma, EULER_GAMMA};
use super::{domain, is_nonpositive_int, Result, SpecError};
use std::f64::consts::FRAC_PI_2;

const ASYM_M: f64 = 40.0;
const ASYM_U: f64 = 25.0;
const CONNECTION_MAX_X: f64 = 1.0;
const NEAR_INTEGER: f64 = 1e-3;
const MAX_TERMS: usize = 20_000;

fn series_m(a: f64, c: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) / (c + nf) * z / (nf + 1.0);
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() < 1e-17 * sum.abs() && nf > a.abs() && nf > z.abs() * 0.5 {
            return Ok(sum);
        }
        if !sum.is_finite() {
            return Err(SpecError::Overflow { func: "kummer_m" });
        }
    }
    Err(SpecError::NoConvergence {
        func: "kummer_m",
        terms: MAX_TERMS,
    })
}

/// Σ_s (p)_s (q)_s / s! · w^s summed to its smallest term; `None` when the
/// smallest term is not below 1e-16 relative.
fn asymptotic_sum(p: f64, q: f64, w: f64) -> Option<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut last = f64::INFINITY;
    for s in 0..500 {
        let sf = s as f64;
        term *= (p + sf) * (q + sf) / (sf + 1.0) * w;
        if term == 0.0 {
            return Some(sum);
        }
        if term.abs() > last {
            return None;
        }
        last = term.abs();
        sum += term;
        if term.abs() < 1e-16 * sum.abs() {
            return Some(sum);
        }
    }
    None
}

/// Kummer's function M(a;c;z) = Σ (a)_n/(c)_n zⁿ/n!.
pub fn kummer_m(a: f64, c: f64, z: f64) -> Result<f64> {
    if is_nonpositive_int(c) {
        return Err(SpecError::Pole { func: "kummer_m", x: c });
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if a == c {
        return Ok(z.exp());
    }
    if is_nonpositive_int(a) {
        return series_m(a, c, z);
    }
    if z < 0.0 {
        let y = -z;
        if is_nonpositive_int(c - a) {
            return Ok((-y).exp() * series_m(c - a, c, y)?);
        }
        if y > ASYM_M {
            // M(a;c;−y) ~ Γ(c)/Γ(c−a) y^{−a} Σ (a)_s (a−c+1)_s / s! y^{−s}
            if let Some(s) = asymptotic_sum(a, a - c + 1.0, 1.0 / y) {
                let lg = ln_gamma(c)? - ln_gamma(c - a)? - a * y.ln();
                let sign = gamma_sign(c) * gamma_sign(c - a);
                return Ok(sign * lg.exp() * s);
            }
        }
        return Ok((-y).exp() * series_m(c - a, c, y)?);
    }
    if z > ASYM_M {
        if is_nonpositive_int(c - a) {
            return Ok(z.exp() * series_m(c - a, c, -z)?);
        }
        // M(a;c;z) ~ Γ(c)/Γ(a) e^z z^{a−c} Σ (1−a)_s (c−a)_s / s! z^{−s}
        if let Some(s) = asymptotic_sum(1.0 - a, c - a, 1.0 / z) {
            let lg = ln_gamma(c)? - ln_gamma(a)? + z + (a - c) * z.ln();
            let sign = gamma_sign(c) * gamma_sign(a);
            let v = sign * lg.exp() * s;
            if !v.is_finite() {
                return Err(SpecError::Overflow { func: "kummer_m" });
            }
            return Ok(v);
        }
    }
    series_m(a, c, z)
}

fn gamma_sign(x: f64) -> f64 {
    if x > 0.0 || (x.floor() as i64) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn near_integer(c: f64) -> bool {
    (c - c.round()).abs() < NEAR_INTEGER
}

/// Double-exponential quadrature of U(a;c;x)Γ(a) = ∫₀^∞ e^{−xt} t^{a−1} (1+t)^{c−a−1} dt,
/// with t = exp((π/2) sinh u).
fn tricomi_quadrature(a: f64, c: f64, x: f64) -> Result<f64> {
    let log_integrand = |u: f64| {
        let lt = FRAC_PI_2 * u.sinh();
        let t = lt.exp();
        let l1p = if lt > 0.0 { lt + (-lt).exp().ln_1p() } else { t.ln_1p() };
        -x * t + a * lt + (c - a - 1.0) * l1p + (FRAC_PI_2 * u.cosh()).ln()
    };
    let f = |u: f64| {
        let l = log_integrand(u);
        if l.is_nan() {
            0.0
        } else {
            l.exp()
        }
    };
    // window: t^a negligible on the left, e^{-xt} on the right
    let left = -((60.0 / (a * FRAC_PI_2)).asinh() + 0.5);
    let right = ((2.0 / std::f64::consts::PI) * (80.0 / x).max(std::f64::consts::E).ln()).asinh() + 1.0;
    let mut h = 0.25;
    let count = |h: f64| ((right - left) / h).ceil() as i64;
    let mut n = count(h);
    let mut sum: f64 = (0..=n).map(|k| f(left + k as f64 * h)).sum();
    let mut prev = sum * h;
    for _ in 0..8 {
        h *= 0.5;
        n = count(h);
        let odd: f64 = (0..n).filter(|k| k % 2 == 1).map(|k| f(left + k as f64 * h)).sum();
        sum += odd;
        let cur = sum * h;
        if (cur - prev).abs() <= 1e-14 * cur.abs() {
            return Ok(cur * rgamma(a));
        }
        prev = cur;
    }
    Ok(prev * rgamma(a))
}

/// Tricomi's function U(a;c;x) for a ≥ 0 and x > 0.
///
/// Large x uses the asymptotic series; small x with c away from the integers uses
/// the connection formula through M; everything else integrates the Laplace
/// representation numerically.
pub fn tricomi_u(a: f64, c: f64, x: f64) -> Result<f64> {
    if !(a >= 0.0) {
        return Err(domain("tricomi_u", format!("requires a >= 0, got {a}")));
    }
    if !(x > 0.0) {
        return Err(domain("tricomi_u", format!("requires x > 0, got {x}")));
    }
    if a == 0.0 {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x >= ASYM_U {
        // U ~ x^{−a} Σ (a)_s (a−c+1)_s / s! (−x)^{−s}
        if let Some(s) = asymptotic_sum(a, a - c + 1.0, -1.0 / x) {
            return Ok((-a * x.ln()).exp() * s);
        }
    }
    if x <= CONNECTION_MAX_X && !near_integer(c) {
        let t1 = gamma(1.0 - c)? * rgamma(a - c + 1.0) * kummer_m(a, c, x)?;
        let t2 = gamma(c - 1.0)? * rgamma(a) * x.powf(1.0 - c) * kummer_m(a - c + 1.0, 2.0 - c, x)?;
        let u = t1 + t2;
        if u.abs() > 1e-3 * t1.abs().max(t2.abs()) {
            return Ok(u);
        }
    }
    tricomi_quadrature(a, c, x)
}

/// Leading small-x behaviour of U(a;c;x) (a > 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmallX {
    /// c < 1: U(a;c;0⁺) = value. For c = 0 the next term is x ln x / Γ(a).
    Finite(f64),
    /// c = 1: U ≈ −(ln x + ψ(a) + 2γ_E)/Γ(a).
    Log { offset: f64, coef: f64 },
    /// c > 1: U ≈ coef · x^{1−c}.
    Power { coef: f64, exponent: f64 },
}

impl SmallX {
    /// Evaluate the leading term at a small positive x.
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            SmallX::Finite(v) => v,
            SmallX::Log { offset, coef } => coef * (x.ln() + offset),
            SmallX::Power { coef, exponent } => coef * x.powf(exponent),
        }
    }
}

/// Small-argument behaviour of U(a;c;x) as x → 0⁺.
pub fn tricomi_u_small_x(a: f64, c: f64) -> Result<SmallX> {
    if !(a > 0.0) {
        return Err(domain("tricomi_u_small_x", format!("requires a > 0, got {a}")));
    }
    if c < 1.0 {
        Ok(SmallX::Finite(gamma(1.0 - c)? * rgamma(1.0 + a - c)))
    } else if c == 1.0 {
        Ok(SmallX::Log {
            offset: digamma(a)? + 2.0 * EULER_GAMMA,
            coef: -rgamma(a),
        })
    } else {
        Ok(SmallX::Power {
            coef: gamma(c - 1.0)? * rgamma(a),
            exponent: 1.0 - c,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModTricomiKind {
    /// 𝒰(y; m, n) = e^{−y} U(1+m; 2+m+n; 2y), y ≥ 0
    U,
    /// 𝒱(y; m, n) = e^{y} U(1+m; 2+m+n; −2y), y ≤ 0
    V,
}

/// Modified Tricomi functions. The first parameter `m` enters U's first argument.
pub fn mod_tricomi(y: f64, m: f64, n: f64, kind: ModTricomiKind) -> Result<f64> {
    match kind {
        ModTricomiKind::U if y < 0.0 => {
            return Err(domain("mod_tricomi", "𝒰 is defined for y >= 0"));
        }
        ModTricomiKind::V if y > 0.0 => {
            return Err(domain("mod_tricomi", "𝒱 is defined for y <= 0"));
        }
        _ => {}
    }
    if !(1.0 + m > 0.0) {
        return Err(domain("mod_tricomi", format!("requires 1 + m > 0, got m = {m}")));
    }
    let ay = y.abs();
    if ay == 0.0 {
        return mod_tricomi_at_zero(m, n);
    }
    Ok((-ay).exp() * tricomi_u(1.0 + m, 2.0 + m + n, 2.0 * ay)?)
}

/// Limit of 𝒰(y; m, n) (or 𝒱) at y → 0, finite when 2 + m + n < 1.
pub fn mod_tricomi_at_zero(m: f64, n: f64) -> Result<f64> {
    match tricomi_u_small_x(1.0 + m, 2.0 + m + n)? {
        SmallX::Finite(v) => Ok(v),
        _ => Err(domain("mod_tricomi", "unbounded at 0 unless 2 + m + n < 1")),
    }
}
