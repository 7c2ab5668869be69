use super::gamma::upper_cf;
use std::f64::consts::PI;

const SERIES_RADIUS: f64 = 1.25;
const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

fn erf_series(x: f64) -> f64 {
    if x == 0.0 {
        return x;
    }
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= -x2 / n;
        let add = term / (2.0 * n + 1.0);
        sum += add;
        if add.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    FRAC_2_SQRT_PI * sum
}

/// e^{−x²} with the square split exactly so large arguments keep full precision.
fn exp_neg_sq(x: f64) -> f64 {
    let hi = x * x;
    let lo = x.mul_add(x, -hi);
    (-hi).exp() * (-lo).exp()
}

/// Scaled complement erfcx(x) = e^{x²} erfc(x).
pub fn erfcx(x: f64) -> f64 {
    if x < SERIES_RADIUS {
        let (_, c) = erf_pair(x);
        return c / exp_neg_sq(x);
    }
    if x > 1e8 {
        // 1/(x√π)·(1 − 1/(2x²)) is exact to double precision here
        return 1.0 / (x * PI.sqrt());
    }
    // Q(1/2, x^2) = e^{-x^2} x / Γ(1/2) · cf
    let cf = upper_cf(0.5, x * x).unwrap_or(f64::NAN);
    x * cf / PI.sqrt()
}

/// erfc(x).
pub fn erfc(x: f64) -> f64 {
    erf_pair(x).1
}

/// (erf(x), erfc(x)); the smaller member is computed directly and the other as its
/// complement, so the two sum to one within an ulp.
pub fn erf_pair(x: f64) -> (f64, f64) {
    if x.is_nan() {
        return (f64::NAN, f64::NAN);
    }
    if x.abs() < SERIES_RADIUS {
        let e = erf_series(x);
        return (e, 1.0 - e);
    }
    if x > 0.0 {
        let c = if x > 27.3 {
            // e^{−x²} underflows
            0.0
        } else {
            exp_neg_sq(x) * erfcx(x)
        };
        (1.0 - c, c)
    } else {
        let (e, _) = erf_pair(-x);
        (-e, 1.0 + e)
    }
}
