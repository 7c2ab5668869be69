//! Measures (μ₀, μ₁) whose moments are those of the functional pair, one
//! construction per special case.
//!
//! Every case pins [`ModelParams`] exactly (rational arithmetic) from a handful of
//! case parameters; the measures are then evaluated in double precision.

use crate::functional::{classify, FunctionalError, FunctionalSystem};
use crate::poly::{format_rational, rat, ratio, to_f64, Rational};
use crate::polyseq::ModelParams;
use crate::quad::{integrate, Interval, QuadError, QuadOptions};
use crate::specfun::{
    airy_ai_asymptotic_scaled, airy_ai_pair, erfc, erfcx, gamma, gamma_p, gamma_q, hyp2f1, kummer_m,
    omega, rgamma, tricomi_u, SpecError,
};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use thiserror::Error;

pub type Density = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

fn density(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Density {
    Arc::new(f)
}

#[derive(Debug, Error)]
pub enum WeightError {
    #[error("unknown case {0:?}")]
    UnknownCase(String),
    #[error("case {case} has no parameter {name:?}")]
    UnknownParameter { case: &'static str, name: String },
    #[error("case {case} requires {hypothesis}")]
    Hypothesis { case: &'static str, hypothesis: String },
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("x = {x} is outside the support")]
    OutsideSupport { x: f64 },
    #[error(transparent)]
    Functional(#[from] FunctionalError),
    #[error(transparent)]
    Special(#[from] SpecError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// How an infinite tail of a branch is cut off.
#[derive(Clone)]
pub enum TailRule {
    /// Geometrically growing panels until they stop contributing.
    Geometric,
    /// Truncate where this envelope (times |x|ᵏ) drops below 1e-18; for oscillatory tails.
    Envelope(Density),
}

/// One smooth piece of a density on [lo, hi] (either end may be infinite).
#[derive(Clone)]
pub struct Branch {
    pub lo: f64,
    pub hi: f64,
    pub w: Density,
    pub dw: Option<Density>,
    pub tail: TailRule,
    /// First tail panel width.
    pub tail_width: f64,
    /// Initial subdivision of finite pieces.
    pub pieces: usize,
}

impl Branch {
    pub fn new(lo: f64, hi: f64, w: Density) -> Self {
        Branch {
            lo,
            hi,
            w,
            dw: None,
            tail: TailRule::Geometric,
            tail_width: 1.0,
            pieces: 1,
        }
    }

    pub fn with_derivative(mut self, dw: Density) -> Self {
        self.dw = Some(dw);
        self
    }

    pub fn with_tail(mut self, tail: TailRule) -> Self {
        self.tail = tail;
        self
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }
}

impl fmt::Debug for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Branch")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("has_derivative", &self.dw.is_some())
            .field(
                "tail",
                &match self.tail {
                    TailRule::Geometric => "geometric",
                    TailRule::Envelope(_) => "envelope",
                },
            )
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub location: f64,
    pub mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Support {
    WholeLine,
    /// [0, ∞)
    HalfLine,
    /// ℝ, with different formulas on each side of 0.
    PiecewiseAtZero,
}

/// Numerical character of a density, which fixes the quadrature tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Non-negative with exponential decay.
    Decaying,
    /// Oscillating tail.
    Oscillatory,
    /// Changes sign.
    Signed,
}

impl Regime {
    /// Relative part of the moment tolerance max(1e-8, ρ·|oracle|).
    pub fn relative_tolerance(self) -> f64 {
        match self {
            Regime::Decaying => 1e-8,
            Regime::Oscillatory | Regime::Signed => 1e-6,
        }
    }
}

/// Moments that do not converge absolutely and are taken in the Abel sense.
#[derive(Clone)]
pub enum Regularization {
    None,
    /// Density w with γw″ = xw, power-law decay on the left.
    AbelAiry { gamma: f64, split: f64, far: f64 },
    /// Density −v′ with γv″ = xv.
    AbelAiryDerivative {
        gamma: f64,
        split: f64,
        far: f64,
        base: Density,
        base_dw: Density,
    },
}

#[derive(Clone)]
pub struct Measure {
    pub support: Support,
    /// Left to right; neighbours share an end point.
    pub branches: Vec<Branch>,
    pub atoms: Vec<Atom>,
    pub constants: BTreeMap<String, f64>,
    pub regime: Regime,
    pub regularization: Regularization,
}

impl fmt::Debug for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Measure")
            .field("support", &self.support)
            .field("branches", &self.branches)
            .field("atoms", &self.atoms)
            .field("constants", &self.constants)
            .field("regime", &self.regime)
            .finish()
    }
}

/// Which branch to use at a shared end point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Measure {
    fn branch_at(&self, x: f64, side: Side) -> Option<&Branch> {
        match side {
            Side::Right => self.branches.iter().rev().find(|b| b.contains(x)),
            Side::Left => self.branches.iter().find(|b| b.contains(x)),
        }
    }

    /// Density at x; at 0 the right-hand branch is used.
    pub fn eval(&self, x: f64) -> Result<f64, WeightError> {
        self.branch_at(x, Side::Right)
            .map(|b| (b.w)(x))
            .ok_or(WeightError::OutsideSupport { x })
    }

    /// Density derivative, if the branch carries one.
    pub fn eval_derivative(&self, x: f64) -> Result<Option<f64>, WeightError> {
        self.branch_at(x, Side::Right)
            .map(|b| b.dw.as_ref().map(|d| d(x)))
            .ok_or(WeightError::OutsideSupport { x })
    }

    /// One-sided value at x; zero outside the support.
    pub fn one_sided(&self, x: f64, side: Side) -> f64 {
        self.branch_at(x, side).map_or(0.0, |b| (b.w)(x))
    }

    /// Density extended by zero outside the support.
    pub fn density_or_zero(&self, x: f64) -> f64 {
        self.one_sided(x, Side::Right)
    }

    pub fn atom_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum()
    }
}

/// Density value of μ at x.
pub fn eval_measure(mu: &Measure, x: f64) -> Result<f64, WeightError> {
    mu.eval(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseKind {
    I1,
    I2,
    I3,
    II,
    III1,
    III1Lim1,
    III1Lim2,
    III2,
    IV1,
    IV2,
    V1,
    VI1,
    VI1Lim1,
    VI1Lim2,
    VI2,
}

impl CaseKind {
    pub const ALL: [CaseKind; 15] = [
        CaseKind::I1,
        CaseKind::I2,
        CaseKind::I3,
        CaseKind::II,
        CaseKind::III1,
        CaseKind::III1Lim1,
        CaseKind::III1Lim2,
        CaseKind::III2,
        CaseKind::IV1,
        CaseKind::IV2,
        CaseKind::V1,
        CaseKind::VI1,
        CaseKind::VI1Lim1,
        CaseKind::VI1Lim2,
        CaseKind::VI2,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CaseKind::I1 => "I.1",
            CaseKind::I2 => "I.2",
            CaseKind::I3 => "I.3",
            CaseKind::II => "II",
            CaseKind::III1 => "III.1",
            CaseKind::III1Lim1 => "III.1-lim1",
            CaseKind::III1Lim2 => "III.1-lim2",
            CaseKind::III2 => "III.2",
            CaseKind::IV1 => "IV.1",
            CaseKind::IV2 => "IV.2",
            CaseKind::V1 => "V.1",
            CaseKind::VI1 => "VI.1",
            CaseKind::VI1Lim1 => "VI.1-lim1",
            CaseKind::VI1Lim2 => "VI.1-lim2",
            CaseKind::VI2 => "VI.2",
        }
    }

    /// Names of the case parameters, in display order.
    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            CaseKind::I1 | CaseKind::II | CaseKind::III2 => &["alpha"],
            CaseKind::I2 | CaseKind::I3 | CaseKind::III1Lim2 | CaseKind::VI1Lim2 => &[],
            CaseKind::III1 | CaseKind::VI1 => &["p", "q"],
            CaseKind::III1Lim1 | CaseKind::VI1Lim1 => &["p"],
            CaseKind::IV1 => &["r", "alpha1"],
            CaseKind::IV2 => &["mu"],
            CaseKind::V1 => &["s", "alpha1"],
            CaseKind::VI2 => &["nu", "alpha"],
        }
    }

    fn defaults(self) -> Vec<Rational> {
        match self {
            CaseKind::I1 => vec![rat(1)],
            CaseKind::II => vec![rat(0)],
            CaseKind::III2 => vec![rat(1)],
            CaseKind::I2 | CaseKind::I3 | CaseKind::III1Lim2 | CaseKind::VI1Lim2 => vec![],
            CaseKind::III1 | CaseKind::VI1 => vec![ratio(-3, 5), ratio(-3, 5)],
            CaseKind::III1Lim1 => vec![ratio(-3, 10)],
            CaseKind::VI1Lim1 => vec![ratio(-7, 10)],
            CaseKind::IV1 => vec![rat(1), rat(1)],
            CaseKind::IV2 => vec![rat(-1)],
            CaseKind::V1 => vec![rat(1), ratio(3, 2)],
            CaseKind::VI2 => vec![ratio(-1, 2), rat(1)],
        }
    }

    /// Whether the sign convention of the VI.1 family applies.
    pub fn has_convention(self) -> bool {
        matches!(self, CaseKind::VI1 | CaseKind::VI1Lim1 | CaseKind::VI1Lim2)
    }
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CaseKind {
    type Err = WeightError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseKind::ALL
            .into_iter()
            .find(|k| k.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| WeightError::UnknownCase(s.to_string()))
    }
}

/// Sign convention for the VI.1 family.
///
/// `A`: r = 3/4, s = −5/4 (δ₀ = −1/2, δ₁ = −2, δ₀δ₁ = 1).
/// `B`: r = 5/4, s = 3/4 (δ₀ = 2, δ₁ = −1/2, δ₀δ₁ = −1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    A,
    B,
}

impl Convention {
    /// The convention that yields a normalizable measure.
    pub const RESOLVED: Convention = Convention::B;

    fn r_s(self) -> (Rational, Rational) {
        match self {
            Convention::A => (ratio(3, 4), ratio(-5, 4)),
            Convention::B => (ratio(5, 4), ratio(3, 4)),
        }
    }
}

impl FromStr for Convention {
    type Err = WeightError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(Convention::A),
            "B" | "b" => Ok(Convention::B),
            other => Err(WeightError::UnknownParameter {
                case: "VI.1",
                name: format!("convention {other}"),
            }),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::A => "A",
            Convention::B => "B",
        })
    }
}

/// A special case together with its parameter values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseId {
    pub kind: CaseKind,
    values: Vec<Rational>,
    pub convention: Convention,
}

impl CaseId {
    /// The case with its default parameters.
    pub fn new(kind: CaseKind) -> Self {
        CaseId {
            kind,
            values: kind.defaults(),
            convention: Convention::RESOLVED,
        }
    }

    /// Every case at its defaults, in table order.
    pub fn all() -> Vec<CaseId> {
        CaseKind::ALL.into_iter().map(CaseId::new).collect()
    }

    pub fn label(&self) -> &'static str {
        self.kind.label()
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        let i = self.kind.parameter_names().iter().position(|n| *n == name)?;
        Some(&self.values[i])
    }

    pub fn set(&mut self, name: &str, value: Rational) -> Result<(), WeightError> {
        let i = self
            .kind
            .parameter_names()
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| WeightError::UnknownParameter {
                case: self.kind.label(),
                name: name.to_string(),
            })?;
        self.values[i] = value;
        Ok(())
    }

    pub fn with(mut self, name: &str, value: Rational) -> Result<Self, WeightError> {
        self.set(name, value)?;
        Ok(self)
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    /// (name, value) pairs, in display order.
    pub fn parameters(&self) -> Vec<(&'static str, &Rational)> {
        self.kind.parameter_names().iter().copied().zip(&self.values).collect()
    }

    fn v(&self, name: &str) -> Rational {
        self.get(name).cloned().expect("parameter declared for this case")
    }

    fn hypothesis(&self, ok: bool, hypothesis: &str) -> Result<(), WeightError> {
        if ok {
            Ok(())
        } else {
            Err(WeightError::Hypothesis {
                case: self.kind.label(),
                hypothesis: format!("{hypothesis} (got {})", self.describe_values()),
            })
        }
    }

    fn describe_values(&self) -> String {
        let mut parts: Vec<String> = self
            .parameters()
            .into_iter()
            .map(|(n, v)| format!("{n} = {}", format_rational(v)))
            .collect();
        if self.kind.has_convention() {
            parts.push(format!("convention {}", self.convention));
        }
        if parts.is_empty() {
            "no parameters".to_string()
        } else {
            parts.join(", ")
        }
    }

    /// The two Tricomi exponents (right piece, left piece) of the III.1 and VI.1 families.
    fn tricomi_exponents(&self) -> Option<(Rational, Rational)> {
        let one = Rational::one();
        match self.kind {
            CaseKind::III1 => Some((self.v("p"), self.v("q"))),
            CaseKind::III1Lim1 => Some((self.v("p"), -one - self.v("p"))),
            CaseKind::III1Lim2 | CaseKind::VI1Lim2 => Some((-one.clone(), -one)),
            // the right piece carries q
            CaseKind::VI1 => Some((self.v("q"), self.v("p"))),
            CaseKind::VI1Lim1 => Some((-one - self.v("p"), self.v("p"))),
            _ => None,
        }
    }

    /// Check the parameter ranges and pin the model parameters.
    pub fn model_params(&self) -> Result<ModelParams, WeightError> {
        let zero = Rational::zero();
        let one = Rational::one();
        let two = rat(2);
        let m = |r: Rational, s: Rational, b: Rational, a: Rational, g: Rational| ModelParams::new(r, s, b, a, g);
        Ok(match self.kind {
            CaseKind::I1 => {
                let a = self.v("alpha");
                self.hypothesis(a > zero, "alpha > 0")?;
                m(zero.clone(), zero.clone(), zero, &two * a, one)
            }
            CaseKind::I2 => m(zero.clone(), zero.clone(), zero.clone(), zero, one),
            CaseKind::I3 => m(zero.clone(), zero.clone(), zero.clone(), zero, ratio(1, 9)),
            CaseKind::II => {
                let a = self.v("alpha");
                self.hypothesis(a > -one.clone(), "alpha > -1")?;
                m(zero, -one.clone(), &a + &two, &a + rat(3), one)
            }
            CaseKind::III1 | CaseKind::III1Lim1 | CaseKind::III1Lim2 => {
                let (p, q) = self.tricomi_exponents().expect("tricomi family");
                match self.kind {
                    CaseKind::III1 => self.hypothesis(
                        p > -one.clone() && p < zero && q > -one.clone() && q < zero && &p + &q > -two.clone() && &p + &q < -one.clone(),
                        "-1 < p < 0, -1 < q < 0 and -2 < p + q < -1",
                    )?,
                    CaseKind::III1Lim1 => self.hypothesis(p > -one.clone() && p < zero, "-1 < p < 0 (with q = -1 - p)")?,
                    _ => {}
                }
                let beta0 = &q - &p;
                let alpha1 = -(&p + &q);
                let gamma = &beta0 - &alpha1;
                m(-one, zero, beta0, alpha1, gamma)
            }
            CaseKind::III2 => {
                let a = self.v("alpha");
                self.hypothesis(a >= zero, "alpha >= 0")?;
                let a1 = &a + &one;
                m(one, zero, a1.clone(), a1.clone(), two * a1)
            }
            CaseKind::IV1 => {
                let r = self.v("r");
                let a1 = self.v("alpha1");
                self.hypothesis(r > zero, "r > 0")?;
                self.hypothesis(&two * &r * &a1 > one, "2*r*alpha1 > 1 (eta > 0, so that the parabolic index is positive)")?;
                let beta0 = (r.recip() - &a1) / (&two * &r);
                m(r.clone(), r, beta0, a1, one)
            }
            CaseKind::IV2 => {
                let mu = self.v("mu");
                self.hypothesis(mu < zero, "mu < 0")?;
                let r = (&two * &mu).recip();
                m(r.clone(), r.clone(), zero, ratio(1, 2), r)
            }
            CaseKind::V1 => {
                let s = self.v("s");
                let a1 = self.v("alpha1");
                self.hypothesis(s > zero, "s > 0")?;
                self.hypothesis(&two * &s * &a1 > one, "2*s*alpha1 > 1 (positive parabolic index)")?;
                let beta0 = (s.recip() - &a1) / (&two * &s);
                let gamma = &one - &two * &s * &a1;
                m(-s.clone(), s, beta0, a1, gamma)
            }
            CaseKind::VI1 | CaseKind::VI1Lim1 | CaseKind::VI1Lim2 => {
                let (right, left) = self.tricomi_exponents().expect("tricomi family");
                match self.kind {
                    CaseKind::VI1 => {
                        let (p, q) = (self.v("p"), self.v("q"));
                        let nonneg_int = |v: &Rational| v.is_integer() && *v >= zero;
                        self.hypothesis(
                            p > -one.clone() && q > -one.clone() && !nonneg_int(&p) && !nonneg_int(&q),
                            "p > -1, q > -1, p and q not non-negative integers",
                        )?;
                        self.hypothesis(&p + &q < zero, "p + q < 0 (integrable weight at the origin)")?;
                    }
                    CaseKind::VI1Lim1 => {
                        let p = self.v("p");
                        self.hypothesis(p > -one.clone() && p < zero, "-1 < p < 0 (with q = -1 - p)")?;
                    }
                    _ => {}
                }
                solve_vi1(self.convention, &right, &left)?
            }
            CaseKind::VI2 => {
                let nu = self.v("nu");
                let a = self.v("alpha");
                self.hypothesis(nu > -one.clone() && nu < zero, "-1 < nu < 0")?;
                self.hypothesis(a >= zero, "alpha >= 0")?;
                let r = (&one + nu.recip()) / &two;
                let a1 = &a + &one;
                let gamma = &two * &r * &a1;
                m(r.clone(), r - one, a1.clone(), a1, gamma)
            }
        })
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.label())?;
        let params = self.parameters();
        if params.is_empty() && !self.kind.has_convention() {
            return Ok(());
        }
        write!(f, "(")?;
        let mut first = true;
        for (n, v) in params {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{n}={}", format_rational(v))?;
        }
        if self.kind.has_convention() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "convention={}", self.convention)?;
        }
        write!(f, ")")
    }
}

/// Accepts a bare label ("III.1") or the display form "III.1(p=-3/5, q=-1/2, convention=B)".
impl FromStr for CaseId {
    type Err = WeightError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let Some((label, rest)) = s.split_once('(') else {
            return Ok(CaseId::new(s.parse()?));
        };
        let body = rest
            .strip_suffix(')')
            .ok_or_else(|| WeightError::UnknownCase(s.to_string()))?;
        let mut case = CaseId::new(label.trim().parse()?);
        for item in body.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| WeightError::UnknownCase(s.to_string()))?;
            let (name, value) = (name.trim(), value.trim());
            if name == "convention" && case.kind.has_convention() {
                case.convention = value.parse()?;
            } else {
                let v = crate::poly::parse_rational(value).map_err(|_| WeightError::UnknownParameter {
                    case: case.kind.label(),
                    name: format!("{name}={value}"),
                })?;
                case.set(name, v)?;
            }
        }
        Ok(case)
    }
}

fn rational_sqrt(v: &Rational) -> Option<Rational> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer().sqrt();
    let d = v.denom().sqrt();
    (&n * &n == *v.numer() && &d * &d == *v.denom()).then(|| Rational::new(n, d))
}

/// Exact exponent data of a Laplace-type system with φ = φ₁x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TricomiExponents {
    /// Decay rates: the right piece carries e^{t1·x}, the left e^{t2·x}.
    pub t1: Rational,
    pub t2: Rational,
    /// Right and left Tricomi exponents.
    pub a: Rational,
    pub b: Rational,
}

/// The exponents implied by φ, ϑ, χ when φ is a multiple of x.
pub fn tricomi_exponents(sys: &FunctionalSystem) -> Result<TricomiExponents, WeightError> {
    let phi1 = sys.phi.coeff(1);
    if !sys.phi.coeff(0).is_zero() || phi1.is_zero() || sys.phi.degree() != Some(1) {
        return Err(WeightError::Degenerate(format!("phi = {} is not a nonzero multiple of x", sys.phi)));
    }
    let a1 = sys.theta.coeff(1) / &phi1;
    let a0 = (sys.theta.coeff(0) + rat(2) * &phi1) / &phi1;
    let b1 = sys.chi.coeff(1) / &phi1;
    let b0 = (sys.chi.coeff(0) + sys.theta.coeff(1)) / &phi1;
    let disc = &a1 * &a1 - rat(4) * &b1;
    let root = rational_sqrt(&disc)
        .ok_or_else(|| WeightError::Degenerate(format!("discriminant {} is not a rational square", format_rational(&disc))))?;
    if root.is_zero() {
        return Err(WeightError::Degenerate("double root".into()));
    }
    let half = ratio(1, 2);
    let t1 = (-&a1 - &root) * &half;
    let t2 = (-&a1 + &root) * &half;
    let p = |t: &Rational| &a0 * t + &b0;
    let a = p(&t1) / (&t1 - &t2) - Rational::one();
    let b = p(&t2) / (&t2 - &t1) - Rational::one();
    Ok(TricomiExponents { t1, t2, a, b })
}

/// β₀ and α₁ that give the requested exponents under a VI.1 sign convention.
fn solve_vi1(convention: Convention, right: &Rational, left: &Rational) -> Result<ModelParams, WeightError> {
    let (r, s) = convention.r_s();
    let delta1 = &s - &r;
    let sign = match convention {
        Convention::A => -Rational::one(),
        Convention::B => Rational::one(),
    };
    let build = |beta0: Rational, alpha1: Rational| {
        let gamma = &sign * &beta0 - &delta1 * &alpha1;
        ModelParams::new(r.clone(), s.clone(), beta0, alpha1, gamma)
    };
    // (β₀, α₁) ↦ (a, b) is affine; sample it where γ ≠ 0 under both conventions
    let at = |b0: i64, a1: i64| -> Result<(Rational, Rational), WeightError> {
        let sys = classify(&build(rat(b0), rat(a1)))?;
        let e = tricomi_exponents(&sys)?;
        Ok((e.a, e.b))
    };
    let (a10, b10) = at(1, 0)?;
    let (a01, b01) = at(0, 1)?;
    let (a11, b11) = at(1, 1)?;
    let (m11, m21) = (&a11 - &a01, &b11 - &b01);
    let (m12, m22) = (&a11 - &a10, &b11 - &b10);
    let (a00, b00) = (&a10 - &m11, &b10 - &m21);
    let det = &m11 * &m22 - &m12 * &m21;
    if det.is_zero() {
        return Err(WeightError::Degenerate("exponent map is singular".into()));
    }
    let (ra, rb) = (right - &a00, left - &b00);
    let beta0 = (&m22 * &ra - &m12 * &rb) / &det;
    let alpha1 = (&m11 * &rb - &m21 * &ra) / &det;
    Ok(build(beta0, alpha1))
}

/// A case with its exact parameters, functional system and representing measures.
#[derive(Debug, Clone)]
pub struct BuiltCase {
    pub case: CaseId,
    pub params: ModelParams,
    pub system: FunctionalSystem,
    pub mu0: Measure,
    pub mu1: Measure,
    /// Intervals inside the support, away from kinks, for pointwise differential checks.
    pub windows: Vec<(f64, f64)>,
    /// Whether both densities are continuous across 0.
    pub continuous_at_zero: bool,
    /// False when no choice of constant makes μ₀ a finite measure.
    pub normalizable: bool,
}

/// Build (μ₀, μ₁) for a case. Range violations name the failed hypothesis.
pub fn build_measure(case: &CaseId) -> Result<BuiltCase, WeightError> {
    let params = case.model_params()?;
    let system = classify(&params)?;
    let f = |name: &str| to_f64(&case.v(name));
    let mut consts = BTreeMap::new();
    for (n, v) in case.parameters() {
        consts.insert(n.to_string(), to_f64(v));
    }
    let built = |mu0: Measure, mu1: Measure, windows: Vec<(f64, f64)>, continuous_at_zero: bool| BuiltCase {
        case: case.clone(),
        params: params.clone(),
        system: system.clone(),
        mu0,
        mu1,
        windows,
        continuous_at_zero,
        normalizable: true,
    };
    Ok(match case.kind {
        CaseKind::I1 => {
            let (mu0, mu1) = shifted_airy(f("alpha"), consts);
            built(mu0, mu1, vec![(-8.0, 5.0)], true)
        }
        CaseKind::I2 => {
            let (mu0, mu1) = scaled_airy(1.0, consts);
            built(mu0, mu1, vec![(-8.0, 5.0)], true)
        }
        CaseKind::I3 => {
            let (mu0, mu1) = scaled_airy(3f64.powf(2.0 / 3.0), consts);
            built(mu0, mu1, vec![(-6.0, 4.0)], true)
        }
        CaseKind::II => {
            let (mu0, mu1) = bessel_laguerre(f("alpha"), consts)?;
            built(mu0, mu1, vec![(0.1, 25.0)], false)
        }
        CaseKind::III1 | CaseKind::III1Lim1 | CaseKind::III1Lim2 | CaseKind::VI1 | CaseKind::VI1Lim1 | CaseKind::VI1Lim2 => {
            let exps = tricomi_exponents(&system)?;
            let (expect_a, expect_b) = case.tricomi_exponents().expect("tricomi family");
            if exps.a != expect_a || exps.b != expect_b {
                return Err(WeightError::Degenerate(format!(
                    "exponents ({}, {}) do not match the case parameters",
                    format_rational(&exps.a),
                    format_rational(&exps.b)
                )));
            }
            let lt = laplace_tricomi(&system, &exps, consts)?;
            let left = if to_f64(&exps.t2) < 1.0 { -25.0 } else { -12.0 };
            let mut b = built(lt.mu0, lt.mu1, vec![(left, -0.1), (0.1, 12.0)], lt.continuous);
            b.normalizable = lt.normalizable;
            if case.kind == CaseKind::III1 {
                add_closed_form_constants(&mut b, &exps)?;
            }
            b
        }
        CaseKind::III2 => {
            let (mu0, mu1) = laguerre_pair(f("alpha"), consts)?;
            built(mu0, mu1, vec![(0.1, 20.0), (-10.0, -0.1)], false)
        }
        CaseKind::IV1 => {
            let (mu0, mu1) = parabolic_pair(&params, ParabolicLink::Shifted, consts)?;
            built(mu0, mu1, vec![(-10.0, 4.0)], true)
        }
        CaseKind::IV2 => {
            let (mu0, mu1) = hermite_pair(f("mu"), consts);
            built(mu0, mu1, vec![(-5.0, 5.0)], true)
        }
        CaseKind::V1 => {
            let (mu0, mu1) = parabolic_pair(&params, ParabolicLink::Derivative, consts)?;
            built(mu0, mu1, vec![(-10.0, 4.0)], true)
        }
        CaseKind::VI2 => {
            let (mu0, mu1) = laguerre_shift_pair(f("nu"), f("alpha"), consts)?;
            built(mu0, mu1, vec![(0.1, 20.0)], false)
        }
    })
}

fn finish(mut consts: BTreeMap<String, f64>) -> BTreeMap<String, f64> {
    consts.entry("lambda0".into()).or_insert(0.0);
    consts.entry("lambda1".into()).or_insert(0.0);
    consts
}

fn measure(support: Support, branches: Vec<Branch>, regime: Regime, consts: &BTreeMap<String, f64>) -> Measure {
    Measure {
        support,
        branches,
        atoms: Vec::new(),
        constants: consts.clone(),
        regime,
        regularization: Regularization::None,
    }
}

/// e^{pre}·(Ai(z), Ai′(z)) without intermediate overflow or underflow.
fn airy_scaled_pair(z: f64, pre: f64) -> (f64, f64) {
    if z >= 8.75 {
        let zeta = 2.0 / 3.0 * z * z.sqrt();
        let (a, ap) = airy_ai_asymptotic_scaled(z);
        let e = (pre - zeta).exp();
        (e * a, e * ap)
    } else {
        let (a, ap) = airy_ai_pair(z);
        let e = pre.exp();
        (e * a, e * ap)
    }
}

/// I.1: w₀ = e^{2α³/3}e^{αx}Ai(x + α²), w₁ = −w₀′.
fn shifted_airy(alpha: f64, mut consts: BTreeMap<String, f64>) -> (Measure, Measure) {
    let c = 2.0 * alpha.powi(3) / 3.0;
    consts.insert("c".into(), c.exp());
    let consts = finish(consts);
    let pair = move |x: f64| {
        let (a, ap) = airy_scaled_pair(x + alpha * alpha, alpha * x + c);
        (a, alpha * a + ap)
    };
    let w0 = density(move |x| pair(x).0);
    let dw0 = density(move |x| pair(x).1);
    let w1 = density(move |x| -pair(x).1);
    let dw1 = density(move |x| {
        // w₀″ = 2αw₀′ + x·w₀
        let (w, dw) = pair(x);
        -(2.0 * alpha * dw + x * w)
    });
    let env = density(move |x: f64| {
        let z = x + alpha * alpha;
        let decay = 2.0 / 3.0 * z.max(0.0).powf(1.5);
        2.0 * (1.0 + alpha) * (alpha * x + c - decay).exp() * (1.0 + z.abs()).powf(0.25) / PI.sqrt()
    });
    let b0 = Branch::new(f64::NEG_INFINITY, f64::INFINITY, w0)
        .with_derivative(dw0)
        .with_tail(TailRule::Envelope(env.clone()));
    let b1 = Branch::new(f64::NEG_INFINITY, f64::INFINITY, w1)
        .with_derivative(dw1)
        .with_tail(TailRule::Envelope(env));
    (
        measure(Support::WholeLine, vec![b0], Regime::Oscillatory, &consts),
        measure(Support::WholeLine, vec![b1], Regime::Oscillatory, &consts),
    )
}

/// I.2 (c = 1) and I.3 (c = 3^{2/3}): w₀ = c·Ai(cx), w₁ = −w₀′, with γ = 1/c³.
fn scaled_airy(c: f64, mut consts: BTreeMap<String, f64>) -> (Measure, Measure) {
    consts.insert("c".into(), c);
    let consts = finish(consts);
    let gamma = 1.0 / c.powi(3);
    let w0 = density(move |x| c * airy_ai_pair(c * x).0);
    let dw0 = density(move |x| c * c * airy_ai_pair(c * x).1);
    let w1 = density(move |x| -c * c * airy_ai_pair(c * x).1);
    let dw1 = density(move |x| -c * c * c * c * x * airy_ai_pair(c * x).0);
    let split = -4.0 / c;
    let far = -30.0 / c;
    let mut mu0 = measure(
        Support::WholeLine,
        vec![Branch::new(f64::NEG_INFINITY, f64::INFINITY, w0.clone()).with_derivative(dw0.clone())],
        Regime::Oscillatory,
        &consts,
    );
    mu0.regularization = Regularization::AbelAiry { gamma, split, far };
    let mut mu1 = measure(
        Support::WholeLine,
        vec![Branch::new(f64::NEG_INFINITY, f64::INFINITY, w1).with_derivative(dw1)],
        Regime::Oscillatory,
        &consts,
    );
    mu1.regularization = Regularization::AbelAiryDerivative {
        gamma,
        split,
        far,
        base: w0,
        base_dw: dw0,
    };
    (mu0, mu1)
}

/// II: w₀ = ω_α e^{−x−1}, w₁ = −(ω_{α+1}e^{−x−1})′ = (ω_{α+1} − ω_α)e^{−x−1} on [0, ∞).
fn bessel_laguerre(alpha: f64, consts: BTreeMap<String, f64>) -> Result<(Measure, Measure), WeightError> {
    omega(alpha, 1.0)?;
    let consts = finish(consts);
    let om = |nu: f64, x: f64| omega(nu, x).unwrap_or(f64::NAN);
    let w0 = density(move |x| om(alpha, x) * (-x - 1.0).exp());
    // ω_ν′ = ω_{ν−1} = (ω_{ν+1} + νω_ν)/x
    let dw0 = density(move |x| {
        let (a, b) = (om(alpha, x), om(alpha + 1.0, x));
        ((b + alpha * a) / x - a) * (-x - 1.0).exp()
    });
    let w1 = density(move |x| (om(alpha + 1.0, x) - om(alpha, x)) * (-x - 1.0).exp());
    let dw1 = density(move |x| {
        let (a, b) = (om(alpha, x), om(alpha + 1.0, x));
        let da = (b + alpha * a) / x;
        (2.0 * a - da - b) * (-x - 1.0).exp()
    });
    Ok((
        measure(
            Support::HalfLine,
            vec![Branch::new(0.0, f64::INFINITY, w0).with_derivative(dw0)],
            Regime::Decaying,
            &consts,
        ),
        measure(
            Support::HalfLine,
            vec![Branch::new(0.0, f64::INFINITY, w1).with_derivative(dw1)],
            Regime::Signed,
            &consts,
        ),
    ))
}

/// U(a; c; z) including the finite limit at z = 0 when c < 1.
fn tricomi_at(a: f64, c: f64, z: f64) -> f64 {
    if a == 0.0 {
        return 1.0;
    }
    if z == 0.0 {
        return if c < 1.0 {
            gamma(1.0 - c).map(|g| g * rgamma(a - c + 1.0)).unwrap_or(f64::NAN)
        } else {
            f64::INFINITY
        };
    }
    tricomi_u(a, c, z).unwrap_or(f64::NAN)
}

struct LaplaceTricomi {
    mu0: Measure,
    mu1: Measure,
    continuous: bool,
    normalizable: bool,
}

/// Piecewise Tricomi weights for φ = φ₁x:
/// w₀ = k₁e^{t1·x}U(1+a; C; Lx) for x ≥ 0 and k₂e^{t2·x}U(1+b; C; −Lx) for x < 0,
/// C = 2 + a + b, L = t2 − t1, and ηw₁ = φ₁x·w₀′ + (ϱ + φ₁)w₀.
///
/// The constants match the finite parts at 0 (C ≠ 1: k₁ = cΓ(−b), k₂ = cΓ(−a)) or the
/// logarithmic fluxes (C = 1: k₁ = cΓ(1+a), k₂ = cΓ(1+b)); c normalizes the mass
/// through ∫₀^∞ e^{−zy}U(A; C; y)dy = Γ(2−C)/Γ(A−C+2)·z^{−1}·₂F₁(A, 1; A−C+2; 1 − 1/z).
fn laplace_tricomi(
    sys: &FunctionalSystem,
    exps: &TricomiExponents,
    mut consts: BTreeMap<String, f64>,
) -> Result<LaplaceTricomi, WeightError> {
    let (t1, t2, a, b) = (to_f64(&exps.t1), to_f64(&exps.t2), to_f64(&exps.a), to_f64(&exps.b));
    let c_exact = rat(2) + &exps.a + &exps.b;
    let big_c = to_f64(&c_exact);
    if big_c >= 2.0 {
        return Err(WeightError::Degenerate("2 + a + b >= 2: weight not integrable at 0".into()));
    }
    let l = t2 - t1;
    let (aa, bb) = (1.0 + a, 1.0 + b);
    let log_case = c_exact.is_one();
    let (g1, g2) = if log_case { (gamma(aa)?, gamma(bb)?) } else { (gamma(-b)?, gamma(-a)?) };
    let normalizable = t1 < 0.0 && t2 > 0.0;
    let c = if normalizable {
        let i1 = gamma(2.0 - big_c)? * rgamma(1.0 - b) / (-t1) * hyp2f1(aa, 1.0, 1.0 - b, t2 / t1)?;
        let i2 = gamma(2.0 - big_c)? * rgamma(1.0 - a) / t2 * hyp2f1(bb, 1.0, 1.0 - a, t1 / t2)?;
        consts.insert("I1".into(), i1);
        consts.insert("I2".into(), i2);
        1.0 / (g1 * i1 + g2 * i2)
    } else {
        1.0
    };
    let (k1, k2) = (c * g1, c * g2);
    let eta = to_f64(&sys.eta);
    let phi1 = to_f64(&sys.phi.coeff(1));
    let rho1 = to_f64(&sys.varrho.coeff(1));
    let rho0 = to_f64(&sys.varrho.coeff(0));
    for (n, v) in [("c", c), ("k1", k1), ("k2", k2), ("k_tilde1", k1 / eta), ("k_tilde2", k2 / eta), ("t1", t1), ("t2", t2)] {
        consts.insert(n.into(), v);
    }
    consts.insert("normalizable".into(), if normalizable { 1.0 } else { 0.0 });
    let consts = finish(consts);

    let right = move |x: f64| {
        let e = (t1 * x).exp();
        let u = tricomi_at(aa, big_c, l * x);
        let du = if aa == 0.0 { 0.0 } else { -aa * l * tricomi_at(aa + 1.0, big_c + 1.0, l * x) };
        (k1 * e * u, k1 * e * (t1 * u + du))
    };
    let left = move |x: f64| {
        let e = (t2 * x).exp();
        let u = tricomi_at(bb, big_c, -l * x);
        let du = if bb == 0.0 { 0.0 } else { bb * l * tricomi_at(bb + 1.0, big_c + 1.0, -l * x) };
        (k2 * e * u, k2 * e * (t2 * u + du))
    };
    let link = move |x: f64, (w, dw): (f64, f64)| {
        // x·w₀′ → 0 at the origin when C < 1
        let xdw = if x == 0.0 { 0.0 } else { x * dw };
        (phi1 * xdw + (rho1 * x + rho0 + phi1) * w) / eta
    };
    let w0r = density(move |x| right(x).0);
    let dw0r = density(move |x| right(x).1);
    let w0l = density(move |x| left(x).0);
    let dw0l = density(move |x| left(x).1);
    let w1r = density(move |x| link(x, right(x)));
    let w1l = density(move |x| link(x, left(x)));
    let mu0 = measure(
        Support::PiecewiseAtZero,
        vec![
            Branch::new(f64::NEG_INFINITY, 0.0, w0l).with_derivative(dw0l),
            Branch::new(0.0, f64::INFINITY, w0r).with_derivative(dw0r),
        ],
        if k1 > 0.0 && k2 > 0.0 { Regime::Decaying } else { Regime::Signed },
        &consts,
    );
    let mu1 = measure(
        Support::PiecewiseAtZero,
        vec![Branch::new(f64::NEG_INFINITY, 0.0, w1l), Branch::new(0.0, f64::INFINITY, w1r)],
        Regime::Signed,
        &consts,
    );
    Ok(LaplaceTricomi {
        mu0,
        mu1,
        continuous: big_c < 1.0,
        normalizable,
    })
}

/// Constants of the (p, q) Tricomi pair in the closed forms built on
/// Δ(p, q) = Γ(−p−q)[p·₂F₁(1, 1+p; 1−q; −1) + q·₂F₁(1, 1+q; 1−p; −1)].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TricomiConstants {
    pub delta: f64,
    pub k1: f64,
    pub k2: f64,
    /// k₁/η with η = 2p.
    pub k_tilde1: f64,
    /// k₂/η.
    pub k_tilde2: f64,
    /// The alternative form qΓ(−q)/(2Δ), which does not equal k₁/η.
    pub k_tilde1_alternative: f64,
    /// ∫₀^∞ e^{−x}U(1+p; 2+p+q; 2x)dx.
    pub i1: f64,
    pub i2: f64,
}

/// Closed-form constants of the (p, q) Tricomi pair.
pub fn tricomi_constants(p: f64, q: f64) -> Result<TricomiConstants, WeightError> {
    let g = gamma(-p - q)?;
    let f1 = hyp2f1(1.0, 1.0 + p, 1.0 - q, -1.0)?;
    let f2 = hyp2f1(1.0, 1.0 + q, 1.0 - p, -1.0)?;
    let delta = g * (p * f1 + q * f2);
    if delta == 0.0 || !delta.is_finite() {
        return Err(WeightError::Degenerate(format!("Delta(p, q) = {delta}")));
    }
    let k1 = p * gamma(1.0 - q)? / delta;
    let k2 = q * gamma(1.0 - p)? / delta;
    let eta = 2.0 * p;
    Ok(TricomiConstants {
        delta,
        k1,
        k2,
        k_tilde1: k1 / eta,
        k_tilde2: k2 / eta,
        k_tilde1_alternative: q * gamma(-q)? / (2.0 * delta),
        i1: g * rgamma(1.0 - q) * f1,
        i2: g * rgamma(1.0 - p) * f2,
    })
}

fn add_closed_form_constants(b: &mut BuiltCase, exps: &TricomiExponents) -> Result<(), WeightError> {
    let tc = tricomi_constants(to_f64(&exps.a), to_f64(&exps.b))?;
    for mu in [&mut b.mu0, &mut b.mu1] {
        for (n, v) in [
            ("delta_pq", tc.delta),
            ("k1_closed_form", tc.k1),
            ("k2_closed_form", tc.k2),
            ("k_tilde1_alternative", tc.k_tilde1_alternative),
        ] {
            mu.constants.insert(n.into(), v);
        }
    }
    Ok(())
}

/// III.2: w₀ = x^α e^{−x}/Γ(α+1) on [0, ∞);
/// w₁ = w₀ − eˣQ(α+1, 2x)/2^{α+1} for x ≥ 0 and −eˣ/2^{α+1} for x < 0.
fn laguerre_pair(alpha: f64, mut consts: BTreeMap<String, f64>) -> Result<(Measure, Measure), WeightError> {
    let rg = rgamma(alpha + 1.0);
    let scale = 2f64.powf(-(alpha + 1.0));
    consts.insert("negative_branch_mass".into(), -scale);
    let consts = finish(consts);
    let w0f = move |x: f64| if x == 0.0 { if alpha == 0.0 { rg } else { 0.0 } } else { (alpha * x.ln() - x).exp() * rg };
    let w0 = density(w0f);
    let dw0 = density(move |x| (alpha / x - 1.0) * w0f(x));
    let w1r = density(move |x| w0f(x) - x.exp() * gamma_q(alpha + 1.0, 2.0 * x).unwrap_or(f64::NAN) * scale);
    let w1l = density(move |x| -x.exp() * scale);
    Ok((
        measure(
            Support::HalfLine,
            vec![Branch::new(0.0, f64::INFINITY, w0).with_derivative(dw0)],
            Regime::Decaying,
            &consts,
        ),
        measure(
            Support::PiecewiseAtZero,
            vec![Branch::new(f64::NEG_INFINITY, 0.0, w1l), Branch::new(0.0, f64::INFINITY, w1r)],
            Regime::Signed,
            &consts,
        ),
    ))
}

/// The III.2 second measure in half-line form: the same w₁ on [0, ∞) with the negative
/// half-line mass collapsed into an atom −2^{−α−1} at 0. It has the right mass but not
/// the right first moment.
pub fn laguerre_half_line_form(alpha: f64) -> Measure {
    let scale = 2f64.powf(-(alpha + 1.0));
    let rg = rgamma(alpha + 1.0);
    let w = density(move |x| (alpha * x.ln() - x).exp() * rg - x.exp() * gamma_q(alpha + 1.0, 2.0 * x).unwrap_or(f64::NAN) * scale);
    let mut consts = BTreeMap::new();
    consts.insert("alpha".to_string(), alpha);
    consts.insert("lambda1".to_string(), -scale);
    let mut mu = measure(Support::HalfLine, vec![Branch::new(0.0, f64::INFINITY, w)], Regime::Signed, &consts);
    mu.atoms.push(Atom {
        location: 0.0,
        mass: -scale,
    });
    mu
}

/// IV.2: w₀ = e^{−x²}/√π, w₁ = μw₀ + ½μ²e^{μ²/4+μx}erfc(−x−μ/2) on ℝ.
fn hermite_pair(mu: f64, consts: BTreeMap<String, f64>) -> (Measure, Measure) {
    let consts = finish(consts);
    let sp = PI.sqrt();
    let w0f = move |x: f64| (-x * x).exp() / sp;
    let w1f = move |x: f64| {
        let u = -x - mu / 2.0;
        let tail = if u > 0.0 {
            (-x * x).exp() * erfcx(u)
        } else {
            (mu * mu / 4.0 + mu * x).exp() * erfc(u)
        };
        mu * w0f(x) + 0.5 * mu * mu * tail
    };
    (
        measure(
            Support::WholeLine,
            vec![Branch::new(f64::NEG_INFINITY, f64::INFINITY, density(w0f)).with_derivative(density(move |x| -2.0 * x * w0f(x)))],
            Regime::Decaying,
            &consts,
        ),
        measure(
            Support::WholeLine,
            vec![Branch::new(f64::NEG_INFINITY, f64::INFINITY, density(w1f))],
            Regime::Signed,
            &consts,
        ),
    )
}

/// VI.2: w₀ = x^α e^{−x}/Γ(α+1), w₁ = νw₀ + ν²e^{νx}P(α+1, (ν+1)x)/(ν+1)^{α+1} on [0, ∞).
fn laguerre_shift_pair(nu: f64, alpha: f64, consts: BTreeMap<String, f64>) -> Result<(Measure, Measure), WeightError> {
    let consts = finish(consts);
    let rg = rgamma(alpha + 1.0);
    let scale = (nu + 1.0).powf(-(alpha + 1.0));
    let w0f = move |x: f64| if x == 0.0 { if alpha == 0.0 { rg } else { 0.0 } } else { (alpha * x.ln() - x).exp() * rg };
    let w1f = move |x: f64| nu * w0f(x) + nu * nu * (nu * x).exp() * gamma_p(alpha + 1.0, (nu + 1.0) * x).unwrap_or(f64::NAN) * scale;
    Ok((
        measure(
            Support::HalfLine,
            vec![Branch::new(0.0, f64::INFINITY, density(w0f)).with_derivative(density(move |x| (alpha / x - 1.0) * w0f(x)))],
            Regime::Decaying,
            &consts,
        ),
        measure(Support::HalfLine, vec![Branch::new(0.0, f64::INFINITY, density(w1f))], Regime::Signed, &consts),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ParabolicLink {
    /// ηw₁ = w₀′ + 2ρ(x − β₀)w₀
    Shifted,
    /// w₁ = −w₀′
    Derivative,
}

/// e^{pre}·(E(y), dE/dy + 2yE) for E = e^{−y²}Ũ(y), where Ũ is the entire continuation of
/// U(κ; ½; y²) from y > 0:
/// Ũ(y) = √π/Γ(κ+½)·M(κ; ½; y²) − 2√π/Γ(κ)·y·M(κ+½; 3/2; y²).
fn parabolic_profile(kappa: f64, y: f64, pre: f64) -> (f64, f64) {
    let big_b = -2.0 * PI.sqrt() * rgamma(kappa);
    if y == 0.0 {
        let big_a = PI.sqrt() * rgamma(kappa + 0.5);
        return (pre.exp() * big_a, pre.exp() * big_b);
    }
    let z = y * y;
    let eu = (pre - z).exp();
    let e_u = eu * tricomi_u(kappa, 0.5, z).unwrap_or(f64::NAN);
    let d_u = -2.0 * kappa * y * eu * tricomi_u(kappa + 1.0, 1.5, z).unwrap_or(f64::NAN);
    if y > 0.0 {
        return (e_u, d_u);
    }
    let ep = pre.exp();
    let m1 = kummer_m(1.0 - kappa, 1.5, -z).unwrap_or(f64::NAN);
    let m2 = kummer_m(1.0 - kappa, 2.5, -z).unwrap_or(f64::NAN);
    let e = e_u + 2.0 * big_b * y * ep * m1;
    let d = d_u + 2.0 * big_b * ep * (m1 + 4.0 * (kappa + 0.5) / 3.0 * z * m2);
    (e, d)
}

/// IV.1 and V.1: w₀ = k·e^{x/(2ρ)}·E(√ρ·x) with ρ = r and κ = η/(16r³) (IV.1) or
/// ρ = s and κ = (2sα₁ − 1)/(16s³) (V.1); k = 1/J with J from quadrature.
fn parabolic_pair(
    params: &ModelParams,
    link: ParabolicLink,
    mut consts: BTreeMap<String, f64>,
) -> Result<(Measure, Measure), WeightError> {
    let (rho, kappa) = match link {
        ParabolicLink::Shifted => {
            let r = to_f64(&params.r);
            (r, to_f64(&params.eta()) / (16.0 * r.powi(3)))
        }
        ParabolicLink::Derivative => {
            let s = to_f64(&params.s);
            let num = rat(2) * &params.s * &params.alpha1 - Rational::one();
            (s, to_f64(&num) / (16.0 * s.powi(3)))
        }
    };
    let sq = rho.sqrt();
    let raw = move |x: f64| {
        let (e, d) = parabolic_profile(kappa, sq * x, x / (2.0 * rho));
        (e, (1.0 / (2.0 * rho) - 2.0 * rho * x) * e + sq * d)
    };
    let j = integrate(move |x| raw(x).0, Interval::Whole, &QuadOptions::default())?.value;
    if !(j.is_finite() && j != 0.0) {
        return Err(WeightError::Degenerate(format!("normalization integral J = {j}")));
    }
    let k = 1.0 / j;
    consts.insert("alpha".into(), kappa);
    consts.insert("J".into(), j);
    consts.insert("k".into(), k);
    let consts = finish(consts);
    let eta = to_f64(&params.eta());
    let beta0 = to_f64(&params.beta0);
    let w0 = density(move |x| k * raw(x).0);
    let dw0 = density(move |x| k * raw(x).1);
    let w1 = match link {
        ParabolicLink::Shifted => density(move |x| {
            let (w, dw) = raw(x);
            k * (dw + 2.0 * rho * (x - beta0) * w) / eta
        }),
        ParabolicLink::Derivative => density(move |x| -k * raw(x).1),
    };
    Ok((
        measure(
            Support::WholeLine,
            vec![Branch::new(f64::NEG_INFINITY, f64::INFINITY, w0).with_derivative(dw0)],
            Regime::Decaying,
            &consts,
        ),
        measure(
            Support::WholeLine,
            vec![Branch::new(f64::NEG_INFINITY, f64::INFINITY, w1)],
            Regime::Signed,
            &consts,
        ),
    ))
}
