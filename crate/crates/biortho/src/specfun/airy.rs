//! Airy function Ai and its derivative on the real line.
//!
//! Inside |x| < 8.75 the pair (Ai, Ai′) is propagated by Taylor steps of the
//! ODE y″ = xy from a table of anchors spaced 0.5 apart. Anchors on
//! [−2.5, 2.5] come straight from the Maclaurin expansion; anchors on the
//! positive side are stepped inward from the asymptotic value at x = 9 (the
//! stable direction for the recessive solution); anchors on the negative
//! side are stepped outward from −2.5, where both solutions oscillate with
//! comparable amplitude. Outside that window the standard asymptotic
//! expansions are summed to their smallest term (error below e^{−2ζ}).

use std::f64::consts::PI;
use std::sync::OnceLock;

const AI0: f64 = 0.355_028_053_887_817_2;
const AIP0: f64 = -0.258_819_403_792_806_8;
const ANCHOR_LO: f64 = -8.5;
const ANCHOR_STEP: f64 = 0.5;
const ANCHOR_COUNT: usize = 35;
const ASYMPTOTIC_RADIUS: f64 = 8.75;
const POSITIVE_START: f64 = 9.0;

/// One Taylor step of y″ = xy from (x0, y, y′) to x0 + t.
fn taylor_step(x0: f64, y: f64, yp: f64, t: f64) -> (f64, f64) {
    // c_{k+2} = (x0 c_k + c_{k-1}) / ((k+2)(k+1))
    let mut c_prev = 0.0; // c_{k-1}
    let mut c_k = y;
    let mut c_k1 = yp;
    let mut val = y + yp * t;
    let mut der = yp;
    let mut tk = t; // t^{k+1}
    let mut k = 0usize;
    let mut small = 0;
    let scale = y.abs() + yp.abs() + 1e-300;
    loop {
        let c_k2 = (x0 * c_k + c_prev) / (((k + 2) * (k + 1)) as f64);
        // term c_{k+2} t^{k+2}, derivative term (k+2) c_{k+2} t^{k+1}
        let dterm = (k + 2) as f64 * c_k2 * tk;
        tk *= t;
        let vterm = c_k2 * tk;
        val += vterm;
        der += dterm;
        if vterm.abs() <= 1e-18 * scale && dterm.abs() <= 1e-18 * scale {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        c_prev = c_k;
        c_k = c_k1;
        c_k1 = c_k2;
        k += 1;
        if k > 400 {
            break;
        }
    }
    (val, der)
}

fn anchors() -> &'static [(f64, f64); ANCHOR_COUNT] {
    static TABLE: OnceLock<[(f64, f64); ANCHOR_COUNT]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [(0.0, 0.0); ANCHOR_COUNT];
        let at = |j: usize| ANCHOR_LO + ANCHOR_STEP * j as f64;
        for (j, slot) in table.iter_mut().enumerate() {
            let x = at(j);
            if x.abs() <= 2.5 {
                *slot = taylor_step(0.0, AI0, AIP0, x);
            }
        }
        // positive side: inward from the asymptotic start
        let (mut y, mut yp) = airy_ai_asymptotic(POSITIVE_START);
        let mut x = POSITIVE_START;
        for j in (0..ANCHOR_COUNT).rev() {
            let target = at(j);
            if target <= 2.5 {
                break;
            }
            let (ny, nyp) = taylor_step(x, y, yp, target - x);
            y = ny;
            yp = nyp;
            x = target;
            table[j] = (y, yp);
        }
        // negative side: outward from -2.5
        let start = ((-2.5 - ANCHOR_LO) / ANCHOR_STEP).round() as usize;
        let (mut y, mut yp) = table[start];
        let mut x = at(start);
        for j in (0..start).rev() {
            let target = at(j);
            let (ny, nyp) = taylor_step(x, y, yp, target - x);
            y = ny;
            yp = nyp;
            x = target;
            table[j] = (y, yp);
        }
        table
    })
}

fn u_coeff(k: usize) -> f64 {
    let mut u = 1.0;
    for j in 1..=k {
        let j = j as f64;
        u *= (6.0 * j - 5.0) * (6.0 * j - 3.0) * (6.0 * j - 1.0) / (216.0 * j * (2.0 * j - 1.0));
    }
    u
}

/// e^{ζ}(Ai(x), Ai′(x)) for large positive x, ζ = (2/3)x^{3/2}, from the asymptotic series.
pub(crate) fn airy_ai_asymptotic_scaled(x: f64) -> (f64, f64) {
    let z = x;
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let q = z.sqrt().sqrt();
    let sqpi = PI.sqrt();
    // Ai ~ e^{-ζ}/(2√π z^{1/4}) Σ (-1)^k u_k ζ^{-k}; Ai' with v_k
    let (mut su, mut sv) = (1.0, 1.0);
    let mut u = 1.0;
    let mut pz = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / (216.0 * kf * (2.0 * kf - 1.0));
        pz *= -1.0 / zeta;
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        let tu = u * pz;
        if tu.abs() > last {
            break;
        }
        last = tu.abs();
        su += tu;
        sv += v * pz;
        if tu.abs() < 1e-17 * su.abs() {
            break;
        }
    }
    (su / (2.0 * sqpi * q), -q / (2.0 * sqpi) * sv)
}

/// Asymptotic expansions of (Ai, Ai′), summed to the smallest term. Meaningful for |x| ≳ 8.
pub fn airy_ai_asymptotic(x: f64) -> (f64, f64) {
    let z = x.abs();
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let q = z.sqrt().sqrt();
    let sqpi = PI.sqrt();
    if x > 0.0 {
        let e = (-zeta).exp();
        let (a, ap) = airy_ai_asymptotic_scaled(x);
        (e * a, e * ap)
    } else {
        // DLMF 9.7.9 / 9.7.10
        let (mut p_even, mut p_odd, mut r_even, mut r_odd) = (1.0, 0.0, 1.0, 0.0);
        let mut last = f64::INFINITY;
        let mut pz = 1.0;
        for k in 1..200 {
            let u = u_coeff(k);
            let kf = k as f64;
            let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
            pz /= zeta;
            let tu = u * pz;
            if tu.abs() > last {
                break;
            }
            last = tu.abs();
            // sign (-1)^{floor(k/2)}
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                p_even += sign * tu;
                r_even += sign * v * pz;
            } else {
                p_odd += sign * tu;
                r_odd += sign * v * pz;
            }
            if tu < 1e-17 {
                break;
            }
        }
        let th = zeta - PI / 4.0;
        let (s, c) = th.sin_cos();
        let ai = (c * p_even + s * p_odd) / (sqpi * q);
        let aip = q / sqpi * (s * r_even - c * r_odd);
        (ai, aip)
    }
}

/// (Ai(x), Ai′(x)).
pub fn airy_ai_pair(x: f64) -> (f64, f64) {
    if x.is_nan() {
        return (f64::NAN, f64::NAN);
    }
    if x.abs() >= ASYMPTOTIC_RADIUS {
        if x == f64::INFINITY {
            return (0.0, 0.0);
        }
        return airy_ai_asymptotic(x);
    }
    let j = ((x - ANCHOR_LO) / ANCHOR_STEP).round().clamp(0.0, (ANCHOR_COUNT - 1) as f64) as usize;
    let x0 = ANCHOR_LO + ANCHOR_STEP * j as f64;
    let (y, yp) = anchors()[j];
    taylor_step(x0, y, yp, x - x0)
}

/// Ai(x) (`deriv_order` 0) or Ai′(x) (`deriv_order` 1).
pub fn airy_ai(x: f64, deriv_order: u8) -> f64 {
    let (a, ap) = airy_ai_pair(x);
    if deriv_order == 0 {
        a
    } else {
        ap
    }
}
