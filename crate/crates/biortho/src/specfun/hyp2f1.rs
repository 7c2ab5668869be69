use super::gamma::{digamma, gamma, rgamma, EULER_GAMMA};
use super::{domain, is_nonpositive_int, Result, SpecError};

const SERIES_RADIUS: f64 = 0.5;
const LONG_SERIES_MAX_Z: f64 = 0.9;
const NEAR_INTEGER: f64 = 1e-3;
const EXACT_INTEGER: f64 = 1e-12;
const MAX_TERMS: usize = 2_000_000;

fn series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() < 1e-17 * sum.abs() && nf > (a.abs() + b.abs()).max(c.abs()) {
            return Ok(sum);
        }
        if !sum.is_finite() {
            return Err(SpecError::Overflow { func: "hyp2f1" });
        }
    }
    Err(SpecError::NoConvergence {
        func: "hyp2f1",
        terms: MAX_TERMS,
    })
}

/// Connection formula between z and 1 − z; requires c − a − b away from the integers.
fn one_minus_z(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let s = c - a - b;
    let w = 1.0 - z;
    let first = gamma(c)? * gamma(s)? * rgamma(c - a) * rgamma(c - b) * series(a, b, 1.0 - s, w)?;
    let second = w.powf(s) * gamma(c)? * gamma(-s)? * rgamma(a) * rgamma(b) * series(c - a, c - b, 1.0 + s, w)?;
    Ok(first + second)
}

/// Gauss hypergeometric ₂F₁(a, b; c; z) for real z ≤ 1.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if is_nonpositive_int(c) {
        return Err(SpecError::Pole { func: "hyp2f1", x: c });
    }
    if z.is_nan() || z > 1.0 {
        return Err(domain("hyp2f1", format!("requires z <= 1, got {z}")));
    }
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    if is_nonpositive_int(a) || is_nonpositive_int(b) {
        return series(a, b, c, z);
    }
    if b == c {
        return Ok((1.0 - z).powf(-a));
    }
    if a == c {
        return Ok((1.0 - z).powf(-b));
    }
    if z == 1.0 {
        let s = c - a - b;
        if !(s > 0.0) {
            return Err(domain("hyp2f1", "divergent at z = 1 unless c - a - b > 0"));
        }
        return Ok(gamma(c)? * gamma(s)? * rgamma(c - a) * rgamma(c - b));
    }
    if z.abs() <= SERIES_RADIUS {
        return series(a, b, c, z);
    }
    if z < 0.0 {
        // Pfaff: (1 − z)^{−a} ₂F₁(a, c − b; c; z/(z − 1)), argument in (1/3, 1)
        return Ok((1.0 - z).powf(-a) * hyp2f1(a, c - b, c, z / (z - 1.0))?);
    }
    let s = c - a - b;
    let m = s.round();
    if (s - m).abs() > NEAR_INTEGER || (z <= LONG_SERIES_MAX_Z && (s - m).abs() > EXACT_INTEGER) {
        if (s - m).abs() > NEAR_INTEGER {
            return one_minus_z(a, b, c, z);
        }
        return series(a, b, c, z);
    }
    if (s - m).abs() > EXACT_INTEGER {
        // accuracy degrades like 1e-16 / |s - m| here
        return one_minus_z(a, b, c, z);
    }
    if m < 0.0 {
        // Euler: (1 − z)^{c−a−b} ₂F₁(c − a, c − b; c; z)
        return Ok((1.0 - z).powf(s) * integer_gap(c - a, c - b, -m as usize, z)?);
    }
    integer_gap(a, b, m as usize, z)
}

/// ₂F₁(a, b; a + b + m; z) for integer m ≥ 0 and ½ < z < 1, by the logarithmic
/// expansion about z = 1.
fn integer_gap(a: f64, b: f64, m: usize, z: f64) -> Result<f64> {
    let w = 1.0 - z;
    let mf = m as f64;
    let c = a + b + mf;
    let mut finite = 0.0;
    if m > 0 {
        let mut term = 1.0;
        for n in 0..m {
            let nf = n as f64;
            finite += term;
            term *= (a + nf) * (b + nf) / ((nf + 1.0) * (1.0 - mf + nf)) * w;
        }
        finite *= gamma(mf)? * gamma(c)? * rgamma(a + mf) * rgamma(b + mf);
    }
    // ψ values advanced by the recurrence ψ(x + 1) = ψ(x) + 1/x
    let mut psi_n1 = -EULER_GAMMA;
    let mut psi_nm1 = digamma(mf + 1.0)?;
    let mut psi_a = digamma(a + mf)?;
    let mut psi_b = digamma(b + mf)?;
    let lw = w.ln();
    let mut coef = 1.0 / gamma(mf + 1.0)?;
    let mut sum = 0.0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let add = coef * (lw - psi_n1 - psi_nm1 + psi_a + psi_b);
        sum += add;
        if add.abs() < 1e-17 * sum.abs() && n > 2 {
            break;
        }
        coef *= (a + mf + nf) * (b + mf + nf) / ((nf + 1.0) * (nf + mf + 1.0)) * w;
        psi_n1 += 1.0 / (nf + 1.0);
        psi_nm1 += 1.0 / (nf + mf + 1.0);
        psi_a += 1.0 / (a + mf + nf);
        psi_b += 1.0 / (b + mf + nf);
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(finite - sign * w.powi(m as i32) * gamma(c)? * rgamma(a) * rgamma(b) * sum)
}
