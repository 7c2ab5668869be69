//! Adaptive Gauss–Kronrod quadrature on finite, half-infinite and infinite intervals,
//! and the pairing of measures (densities plus point masses) with polynomials.
//!
//! Every routine integrates a vector of integrands at once so that a whole moment
//! sequence shares one set of panels. Panels are refined in a fixed order, so the
//! results are bit-identical across runs.

use crate::poly::Poly;
use crate::weights::{Branch, Density, Measure, Regularization, TailRule};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use thiserror::Error;

pub const DEFAULT_TOL: f64 = 1e-10;
/// Tolerance used for oscillatory integrands.
pub const OSCILLATORY_TOL: f64 = 1e-8;
pub const DEFAULT_BUDGET: usize = 400_000;
/// Integrand magnitude below which an oscillatory tail is cut.
pub const ENVELOPE_CUT: f64 = 1e-18;
const MAX_TAIL_PANELS: usize = 80;

// QUADPACK 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Interval {
    Finite(f64, f64),
    /// [a, ∞)
    Right(f64),
    /// (−∞, b]
    Left(f64),
    Whole,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub tol: f64,
    /// Maximum number of 15-point panel evaluations.
    pub budget: usize,
    /// Width of the first panel of an infinite tail; later panels double.
    pub tail_width: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            tol: DEFAULT_TOL,
            budget: DEFAULT_BUDGET,
            tail_width: 1.0,
        }
    }
}

impl QuadOptions {
    pub fn with_tol(tol: f64) -> Self {
        QuadOptions {
            tol,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub panels_used: usize,
    /// Finite end points at which infinite tails were cut off.
    pub truncation: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct VecQuadResult {
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
    /// ∫|fᵢ|, the scale for relative tolerances.
    pub l1: Vec<f64>,
    pub panels_used: usize,
    pub truncation: Vec<f64>,
}

impl VecQuadResult {
    fn zeros(dim: usize) -> Self {
        VecQuadResult {
            values: vec![0.0; dim],
            errors: vec![0.0; dim],
            l1: vec![0.0; dim],
            panels_used: 0,
            truncation: Vec::new(),
        }
    }

    fn absorb(&mut self, other: &VecQuadResult) {
        for i in 0..self.values.len() {
            self.values[i] += other.values[i];
            self.errors[i] += other.errors[i];
            self.l1[i] += other.l1[i];
        }
        self.panels_used += other.panels_used;
        self.truncation.extend_from_slice(&other.truncation);
    }

    fn into_scalar(self) -> QuadResult {
        QuadResult {
            value: self.values[0],
            error_estimate: self.errors[0],
            panels_used: self.panels_used,
            truncation: self.truncation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("panel budget of {budget} exhausted before reaching the tolerance")]
    BudgetExceeded { budget: usize, partial: VecQuadResult },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },
    #[error("infinite tail did not decay within {panels} panels")]
    TailNotDecaying { panels: usize, partial: VecQuadResult },
    #[error("Abel-regularized moments need the density derivative")]
    MissingDerivative,
}

impl QuadError {
    /// The partial result carried by budget errors.
    pub fn partial(&self) -> Option<&VecQuadResult> {
        match self {
            QuadError::BudgetExceeded { partial, .. } | QuadError::TailNotDecaying { partial, .. } => Some(partial),
            _ => None,
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    values: Vec<f64>,
    errors: Vec<f64>,
    l1: Vec<f64>,
    key: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key && self.a == other.a
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // ties broken by position so the refinement order is deterministic
        self.key.total_cmp(&other.key).then(other.a.total_cmp(&self.a))
    }
}

struct Kernel<'f, F> {
    f: &'f mut F,
    dim: usize,
    buf: Vec<f64>,
    used: usize,
}

impl<F: FnMut(f64, &mut [f64])> Kernel<'_, F> {
    fn eval(&mut self, x: f64) -> Result<(), QuadError> {
        (self.f)(x, &mut self.buf);
        if self.buf.iter().any(|v| !v.is_finite()) {
            return Err(QuadError::NonFinite { x });
        }
        Ok(())
    }

    fn gk15(&mut self, a: f64, b: f64) -> Result<Panel, QuadError> {
        self.used += 1;
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut k = vec![0.0; self.dim];
        let mut g = vec![0.0; self.dim];
        let mut l1 = vec![0.0; self.dim];
        self.eval(c)?;
        for i in 0..self.dim {
            let v = self.buf[i];
            k[i] += WGK[7] * v;
            g[i] += WG[3] * v;
            l1[i] += WGK[7] * v.abs();
        }
        for j in 0..7 {
            let dx = h * XGK[j];
            for x in [c - dx, c + dx] {
                self.eval(x)?;
                for i in 0..self.dim {
                    let v = self.buf[i];
                    k[i] += WGK[j] * v;
                    l1[i] += WGK[j] * v.abs();
                    if j % 2 == 1 {
                        g[i] += WG[j / 2] * v;
                    }
                }
            }
        }
        let ah = h.abs();
        let values: Vec<f64> = k.iter().map(|v| v * h).collect();
        let errors: Vec<f64> = k.iter().zip(&g).map(|(kv, gv)| (kv - gv).abs() * ah).collect();
        let l1: Vec<f64> = l1.iter().map(|v| v * ah).collect();
        Ok(Panel {
            a,
            b,
            values,
            errors,
            l1,
            key: 0.0,
        })
    }
}

fn panel_key(p: &Panel, scale: &[f64], tol: f64) -> f64 {
    p.errors
        .iter()
        .zip(scale)
        .map(|(e, s)| e / (tol * s).max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max)
}

/// Adaptive refinement of [a, b], pre-split into `pieces` equal panels. `floor` is an
/// extra per-component absolute scale (accumulated L1 from neighbouring intervals).
fn adaptive<F: FnMut(f64, &mut [f64])>(
    kernel: &mut Kernel<'_, F>,
    a: f64,
    b: f64,
    pieces: usize,
    tol: f64,
    floor: &[f64],
    budget: usize,
) -> Result<VecQuadResult, QuadError> {
    let dim = kernel.dim;
    let pieces = pieces.max(1);
    let mut heap = BinaryHeap::new();
    let mut tot = VecQuadResult::zeros(dim);
    for j in 0..pieces {
        let lo = a + (b - a) * j as f64 / pieces as f64;
        let hi = if j + 1 == pieces {
            b
        } else {
            a + (b - a) * (j + 1) as f64 / pieces as f64
        };
        let p = kernel.gk15(lo, hi)?;
        heap.push(p);
    }
    let start = kernel.used;
    for p in heap.iter() {
        for i in 0..dim {
            tot.errors[i] += p.errors[i];
            tot.l1[i] += p.l1[i];
        }
    }
    let mut rekey_at = 0;
    loop {
        let scale: Vec<f64> = tot.l1.iter().zip(floor).map(|(l, f)| l.max(*f)).collect();
        let done = (0..dim).all(|i| tot.errors[i] <= tol * scale[i] || tot.errors[i] <= 0.0);
        if done {
            break;
        }
        if kernel.used - start >= budget {
            return Err(QuadError::BudgetExceeded {
                budget,
                partial: fixed_order_sum(heap.into_vec(), dim),
            });
        }
        if heap.len() >= rekey_at {
            // keys are relative to the running scale; refresh them as the panel count doubles
            let mut panels = heap.into_vec();
            for p in panels.iter_mut() {
                p.key = panel_key(p, &scale, tol);
            }
            heap = BinaryHeap::from(panels);
            rekey_at = 2 * heap.len();
        }
        let mut worst = heap.pop().expect("at least one panel");
        for i in 0..dim {
            tot.errors[i] -= worst.errors[i];
            tot.l1[i] -= worst.l1[i];
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // cannot split further in double precision; accept the panel as is
            worst.errors.iter_mut().for_each(|e| *e = 0.0);
            worst.key = 0.0;
            for i in 0..dim {
                tot.l1[i] += worst.l1[i];
            }
            heap.push(worst);
            continue;
        }
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let mut p = kernel.gk15(lo, hi)?;
            p.key = panel_key(&p, &scale, tol);
            for i in 0..dim {
                tot.errors[i] += p.errors[i];
                tot.l1[i] += p.l1[i];
            }
            heap.push(p);
        }
        for v in tot.errors.iter_mut() {
            *v = v.max(0.0);
        }
    }
    let out = fixed_order_sum(heap.into_vec(), dim);
    Ok(out)
}

/// Sum panels left to right so the rounding does not depend on heap order.
fn fixed_order_sum(mut panels: Vec<Panel>, dim: usize) -> VecQuadResult {
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut out = VecQuadResult::zeros(dim);
    for p in &panels {
        for i in 0..dim {
            out.values[i] += p.values[i];
            out.errors[i] += p.errors[i];
            out.l1[i] += p.l1[i];
        }
    }
    out.panels_used = panels.len();
    out
}

/// Geometric panels [a, a + h], [a + h, a + 3h], … (direction `sign`) until a panel adds
/// less than tol/10 of the accumulated absolute integral in every component.
fn tail<F: FnMut(f64, &mut [f64])>(
    kernel: &mut Kernel<'_, F>,
    a: f64,
    sign: f64,
    opts: &QuadOptions,
    floor: &[f64],
) -> Result<VecQuadResult, QuadError> {
    let dim = kernel.dim;
    let mut acc = VecQuadResult::zeros(dim);
    let mut lo = a;
    let mut width = opts.tail_width;
    for j in 0..MAX_TAIL_PANELS {
        let hi = lo + sign * width;
        let scale: Vec<f64> = acc.l1.iter().zip(floor).map(|(l, f)| l.max(*f)).collect();
        let remaining = opts.budget.saturating_sub(kernel.used);
        let piece = adaptive(kernel, lo.min(hi), lo.max(hi), 1, opts.tol, &scale, remaining).map_err(|e| match e {
            QuadError::BudgetExceeded { budget, partial } => {
                let mut p = acc.clone();
                p.absorb(&partial);
                QuadError::BudgetExceeded { budget, partial: p }
            }
            other => other,
        })?;
        acc.absorb(&piece);
        let total: Vec<f64> = acc.l1.iter().zip(floor).map(|(l, f)| l.max(*f)).collect();
        let negligible = (0..dim).all(|i| piece.l1[i] <= 0.1 * opts.tol * total[i] || (piece.l1[i] == 0.0 && total[i] == 0.0));
        lo = hi;
        if j >= 2 && negligible {
            acc.truncation.push(lo);
            return Ok(acc);
        }
        width *= 2.0;
    }
    Err(QuadError::TailNotDecaying {
        panels: MAX_TAIL_PANELS,
        partial: acc,
    })
}

/// Integrate the `dim` components written by `f(x, out)` over `interval`.
pub fn integrate_vec<F: FnMut(f64, &mut [f64])>(
    mut f: F,
    dim: usize,
    interval: Interval,
    opts: &QuadOptions,
) -> Result<VecQuadResult, QuadError> {
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(QuadError::InvalidTolerance(opts.tol));
    }
    let mut kernel = Kernel {
        f: &mut f,
        dim,
        buf: vec![0.0; dim],
        used: 0,
    };
    let zero = vec![0.0; dim];
    match interval {
        Interval::Finite(a, b) => {
            if a == b {
                return Ok(VecQuadResult::zeros(dim));
            }
            adaptive(&mut kernel, a, b, 1, opts.tol, &zero, opts.budget)
        }
        Interval::Right(a) => tail(&mut kernel, a, 1.0, opts, &zero),
        Interval::Left(b) => tail(&mut kernel, b, -1.0, opts, &zero),
        Interval::Whole => {
            let mut left = tail(&mut kernel, 0.0, -1.0, opts, &zero)?;
            let right = tail(&mut kernel, 0.0, 1.0, opts, &left.l1)?;
            left.absorb(&right);
            Ok(left)
        }
    }
}

/// Scalar version of [`integrate_vec`].
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, interval: Interval, opts: &QuadOptions) -> Result<QuadResult, QuadError> {
    integrate_vec(|x, out| out[0] = f(x), 1, interval, opts).map(VecQuadResult::into_scalar)
}

/// Finite interval split into `pieces` initial panels (for oscillatory integrands).
pub fn integrate_vec_split<F: FnMut(f64, &mut [f64])>(
    mut f: F,
    dim: usize,
    a: f64,
    b: f64,
    pieces: usize,
    opts: &QuadOptions,
) -> Result<VecQuadResult, QuadError> {
    let mut kernel = Kernel {
        f: &mut f,
        dim,
        buf: vec![0.0; dim],
        used: 0,
    };
    adaptive(&mut kernel, a, b, pieces, opts.tol, &vec![0.0; dim], opts.budget)
}

/// Point where `envelope(x)·max(1,|x|)^power` first drops below [`ENVELOPE_CUT`], walking from
/// `start` in direction `sign`.
fn envelope_cut(envelope: &dyn Fn(f64) -> f64, start: f64, sign: f64, power: usize) -> f64 {
    let mut x = start + sign;
    for _ in 0..4000 {
        let v = envelope(x) * x.abs().max(1.0).powi(power as i32);
        if v < ENVELOPE_CUT {
            return x;
        }
        x += sign * (1.0 + 0.05 * x.abs());
    }
    x
}

/// ∫ xᵏ w(x) dx over one branch for k = 0..=kmax.
fn branch_moments(b: &Branch, kmax: usize, opts: &QuadOptions) -> Result<VecQuadResult, QuadError> {
    let dim = kmax + 1;
    let w = b.w.clone();
    let integrand = move |x: f64, out: &mut [f64]| {
        let v = w(x);
        let mut p = v;
        for o in out.iter_mut() {
            *o = p;
            p *= x;
        }
    };
    let opts = QuadOptions {
        tail_width: b.tail_width,
        ..*opts
    };
    match (&b.tail, b.lo.is_finite(), b.hi.is_finite()) {
        (_, true, true) => integrate_vec_split(integrand, dim, b.lo, b.hi, b.pieces, &opts),
        (TailRule::Geometric, true, false) => integrate_vec(integrand, dim, Interval::Right(b.lo), &opts),
        (TailRule::Geometric, false, true) => integrate_vec(integrand, dim, Interval::Left(b.hi), &opts),
        (TailRule::Geometric, false, false) => integrate_vec(integrand, dim, Interval::Whole, &opts),
        (TailRule::Envelope(env), lo_fin, hi_fin) => {
            let lo = if lo_fin {
                b.lo
            } else {
                envelope_cut(env.as_ref(), b.hi.min(0.0), -1.0, kmax)
            };
            let hi = if hi_fin {
                b.hi
            } else {
                envelope_cut(env.as_ref(), b.lo.max(0.0), 1.0, kmax)
            };
            // about one panel per unit length to resolve oscillations
            let pieces = ((hi - lo).abs().ceil() as usize).max(b.pieces);
            let mut r = integrate_vec_split(integrand, dim, lo, hi, pieces, &opts)?;
            if !lo_fin {
                r.truncation.push(lo);
            }
            if !hi_fin {
                r.truncation.push(hi);
            }
            Ok(r)
        }
    }
}

/// Moments ⟨μ, xᵏ⟩ for k = 0..=kmax, atoms included.
pub fn moments(mu: &Measure, kmax: usize, opts: &QuadOptions) -> Result<VecQuadResult, QuadError> {
    let mut total = match &mu.regularization {
        Regularization::None => {
            let mut acc = VecQuadResult::zeros(kmax + 1);
            for b in &mu.branches {
                let r = branch_moments(b, kmax, opts)?;
                acc.absorb(&r);
            }
            acc
        }
        Regularization::AbelAiry { gamma, split, far } => {
            abel_airy_moments(mu, *gamma, *split, *far, None, kmax, opts)?
        }
        Regularization::AbelAiryDerivative {
            gamma,
            split,
            far,
            base,
            base_dw,
        } => abel_airy_moments(mu, *gamma, *split, *far, Some((base, base_dw)), kmax, opts)?,
    };
    for atom in &mu.atoms {
        let mut p = 1.0;
        for k in 0..=kmax {
            total.values[k] += atom.mass * p;
            total.l1[k] += (atom.mass * p).abs();
            p *= atom.location;
        }
    }
    Ok(total)
}

/// Moments of a density on ℝ with γw″ = xw whose left tail only decays like a power.
///
/// The right part [split, ∞) is integrated directly. For the left part,
/// ∫_{−∞}^{X} xᵏw = γXᵏ⁻¹w′(X) − γ(k−1)Xᵏ⁻²w(X) + γ(k−1)(k−2)∫_{−∞}^{X} xᵏ⁻³w
/// in the Abel sense, which leaves only the tail mass ∫_{−∞}^{X} w. That is integrated
/// down to `far` and completed beyond it by the same integration by parts applied to
/// ∫ w x^{−j}.
///
/// With `base = Some((v, v′))` the density is −v′ instead, and its left moments are
/// −Xᵏv(X) + k∫_{−∞}^{X} xᵏ⁻¹v.
fn abel_airy_moments(
    mu: &Measure,
    gamma: f64,
    split: f64,
    far: f64,
    base: Option<(&Density, &Density)>,
    kmax: usize,
    opts: &QuadOptions,
) -> Result<VecQuadResult, QuadError> {
    let b = mu.branches.first().expect("density branch");
    let (w, dw) = match base {
        Some((v, dv)) => (v.clone(), dv.clone()),
        None => (b.w.clone(), b.dw.clone().ok_or(QuadError::MissingDerivative)?),
    };
    let right = Branch {
        lo: split,
        hi: f64::INFINITY,
        w: b.w.clone(),
        dw: None,
        tail: TailRule::Geometric,
        tail_width: b.tail_width,
        pieces: 1,
    };
    let mut out = branch_moments(&right, kmax, opts)?;
    let osc_opts = QuadOptions {
        tol: opts.tol.min(OSCILLATORY_TOL),
        ..*opts
    };
    let pieces = ((split - far).abs().ceil() as usize).max(1);
    let wm = w.clone();
    let mass = integrate_vec_split(move |x, o| o[0] = wm(x), 1, far, split, pieces, &osc_opts)?;
    let beyond = airy_tail_mass(gamma, w(far), dw(far), far);
    let mut t = vec![0.0; kmax + 1];
    t[0] = mass.values[0] + beyond;
    let (wx, dwx) = (w(split), dw(split));
    for k in 1..=kmax {
        let kf = k as f64;
        let mut v = gamma * split.powi(k as i32 - 1) * dwx;
        if k >= 2 {
            v -= gamma * (kf - 1.0) * split.powi(k as i32 - 2) * wx;
        }
        if k >= 3 {
            v += gamma * (kf - 1.0) * (kf - 2.0) * t[k - 3];
        }
        t[k] = v;
    }
    if base.is_some() {
        let mut t1 = vec![-wx; kmax + 1];
        for k in 1..=kmax {
            t1[k] = -split.powi(k as i32) * wx + k as f64 * t[k - 1];
        }
        t = t1;
    }
    for k in 0..=kmax {
        out.values[k] += t[k];
        out.errors[k] += mass.errors[0] * split.abs().max(1.0).powi(k as i32);
        out.l1[k] += t[k].abs();
    }
    out.panels_used += mass.panels_used;
    out.truncation.push(far);
    Ok(out)
}

/// ∫_{−∞}^{x0} w for γw″ = xw, x0 < 0 large: R_j = ∫ w x^{−j} satisfies
/// R_j = γ[w′x0^{−j−1} + (j+1)w x0^{−j−2} + (j+1)(j+2)R_{j+3}], summed until the terms stall.
fn airy_tail_mass(gamma: f64, w: f64, dw: f64, x0: f64) -> f64 {
    let mut sum = 0.0;
    let mut factor = 1.0;
    let mut j = 0.0;
    let mut last = f64::INFINITY;
    for _ in 0..40 {
        let term = factor * gamma * (dw * x0.powf(-j - 1.0) + (j + 1.0) * w * x0.powf(-j - 2.0));
        if term.abs() > last {
            break;
        }
        last = term.abs();
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
        factor *= gamma * (j + 1.0) * (j + 2.0);
        j += 3.0;
    }
    sum
}

/// ⟨μ, f⟩ for a polynomial f with floating coefficients, through the moments.
pub fn pair(mu: &Measure, f: &Poly, opts: &QuadOptions) -> Result<f64, QuadError> {
    let coeffs = f.to_f64_coeffs();
    if coeffs.is_empty() {
        return Ok(0.0);
    }
    let m = moments(mu, coeffs.len() - 1, opts)?;
    Ok(coeffs.iter().zip(&m.values).map(|(c, v)| c * v).sum())
}

/// ⟨μ, f⟩ for an arbitrary function; only meaningful for absolutely integrable densities.
pub fn pair_fn<F: Fn(f64) -> f64 + Sync + Send + 'static>(
    mu: &Measure,
    f: F,
    opts: &QuadOptions,
) -> Result<f64, QuadError> {
    let f = std::sync::Arc::new(f);
    let mut total = 0.0;
    for b in &mu.branches {
        let w = b.w.clone();
        let g = f.clone();
        let prod = Branch {
            w: std::sync::Arc::new(move |x| w(x) * g(x)),
            dw: None,
            ..b.clone()
        };
        total += branch_moments(&prod, 0, opts)?.values[0];
    }
    for a in &mu.atoms {
        total += a.mass * f(a.location);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gaussian_mass() {
        let r = integrate(|x| (-x * x).exp() / PI.sqrt(), Interval::Whole, &QuadOptions::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12, "{}", r.value);
        assert!(r.error_estimate <= 1e-10);
        assert_eq!(r.truncation.len(), 2);
    }

    #[test]
    fn half_lines_and_finite() {
        let o = QuadOptions::default();
        let r = integrate(|x| (-x).exp(), Interval::Right(0.0), &o).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let l = integrate(|x| x.exp(), Interval::Left(1.0), &o).unwrap();
        assert!((l.value - 1f64.exp()).abs() < 1e-11);
        let f = integrate(|x| x.sin(), Interval::Finite(0.0, PI), &o).unwrap();
        assert!((f.value - 2.0).abs() < 1e-13);
        let rev = integrate(|x| x.sin(), Interval::Finite(PI, 0.0), &o).unwrap();
        assert!((rev.value + 2.0).abs() < 1e-13);
    }

    #[test]
    fn endpoint_log_singularity() {
        let r = integrate(|x: f64| -x.ln(), Interval::Finite(0.0, 1.0), &QuadOptions::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn vector_moments_of_exponential() {
        let r = integrate_vec(
            |x, out| {
                let w = (-x).exp();
                let mut p = w;
                for o in out.iter_mut() {
                    *o = p;
                    p *= x;
                }
            },
            8,
            Interval::Right(0.0),
            &QuadOptions::default(),
        )
        .unwrap();
        let mut fact = 1.0;
        for (k, v) in r.values.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            assert!((v - fact).abs() <= 1e-9 * fact, "k={k} {v}");
        }
    }

    #[test]
    fn budget_exhaustion_carries_partial() {
        let o = QuadOptions {
            tol: 1e-14,
            budget: 3,
            tail_width: 1.0,
        };
        let e = integrate(|x: f64| (50.0 * x).sin().abs(), Interval::Finite(0.0, 10.0), &o).unwrap_err();
        assert!(matches!(e, QuadError::BudgetExceeded { .. }));
        assert!(e.partial().is_some());
    }

    #[test]
    fn rejects_bad_tolerance() {
        let o = QuadOptions::with_tol(0.0);
        assert!(matches!(
            integrate(|x| x, Interval::Finite(0.0, 1.0), &o),
            Err(QuadError::InvalidTolerance(_))
        ));
    }

    #[test]
    fn airy_tail_mass_matches_closed_value() {
        // ∫_{−∞}^{0} Ai = 2/3
        use crate::specfun::airy_ai_pair;
        let far = -40.0;
        let (a, ap) = airy_ai_pair(far);
        let o = QuadOptions::with_tol(1e-12);
        let mid = integrate_vec_split(|x, out| out[0] = airy_ai_pair(x).0, 1, far, 0.0, 40, &o).unwrap();
        let total = mid.values[0] + airy_tail_mass(1.0, a, ap, far);
        assert!((total - 2.0 / 3.0).abs() < 1e-11, "{total}");
    }
}
