//! Recurrence coefficients and the polynomial sequences P_n and Q_n = P′_{n+1}/(n+1).

use crate::poly::{format_rational, rat, ratio, Poly, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolySeqError {
    /// γ_n = 0 makes the recurrence degenerate: the sequence is no longer 2-orthogonal.
    #[error("regularity fails at n = {index}: gamma_{index} = 0")]
    Singular { index: usize },
}

/// The five free parameters of the family.
///
/// `gamma` is half of γ₁. Derived scalars: δ₀ = s + r, δ₁ = s − r, η = 2rα₁ − γ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModelParams {
    pub r: Rational,
    pub s: Rational,
    pub beta0: Rational,
    pub alpha1: Rational,
    pub gamma: Rational,
}

/// Text form of [`ModelParams`] used in reports: every field as "p/q".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelParamsText {
    pub r: String,
    pub s: String,
    pub beta0: String,
    pub alpha1: String,
    pub gamma: String,
}

fn eps(n: usize) -> Rational {
    if n % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

impl ModelParams {
    pub fn new(r: Rational, s: Rational, beta0: Rational, alpha1: Rational, gamma: Rational) -> Self {
        ModelParams {
            r,
            s,
            beta0,
            alpha1,
            gamma,
        }
    }

    pub fn delta0(&self) -> Rational {
        &self.s + &self.r
    }

    pub fn delta1(&self) -> Rational {
        &self.s - &self.r
    }

    /// δ_n = s + (−1)ⁿ r.
    pub fn delta(&self, n: usize) -> Rational {
        &self.s + eps(n) * &self.r
    }

    pub fn eta(&self) -> Rational {
        rat(2) * &self.r * &self.alpha1 - &self.gamma
    }

    pub fn gamma1(&self) -> Rational {
        rat(2) * &self.gamma
    }

    /// β_n.
    pub fn beta(&self, n: usize) -> Rational {
        let e = eps(n);
        let nn = rat(n as i64);
        (&e * &self.r - rat(2) * &self.s) * nn - ratio(1, 2) * (Rational::one() - e) * &self.r + &self.beta0
    }

    /// α_{n+1}.
    pub fn alpha_next(&self, n: usize) -> Rational {
        let e = eps(n);
        let nn = rat(n as i64);
        let inner = (&self.r * &self.r + &self.s * &self.s) * &nn
            + (Rational::one() - e) * &self.r * &self.s
            + &self.alpha1;
        (nn + Rational::one()) * inner
    }

    /// α_n for n ≥ 1.
    pub fn alpha(&self, n: usize) -> Rational {
        assert!(n >= 1, "alpha_n is defined for n >= 1");
        self.alpha_next(n - 1)
    }

    /// The bracket shared by γ_{n+1} and γ̃_n.
    fn gamma_bracket(&self, n: usize) -> Rational {
        let e = eps(n);
        let nn = rat(n as i64);
        let rs = &self.r - &e * &self.s;
        let rps = &self.r + &self.s;
        &e * &rs * &rs * &self.r * nn
            - ratio(1, 2) * (Rational::one() - &e) * (&rps * &rps + rat(2) * &self.alpha1) * &self.r
            + &self.gamma
    }

    /// γ_{n+1}.
    pub fn gamma_next(&self, n: usize) -> Rational {
        rat(((n + 2) * (n + 1)) as i64) * self.gamma_bracket(n)
    }

    /// γ_n for n ≥ 1.
    pub fn gamma_n(&self, n: usize) -> Rational {
        assert!(n >= 1, "gamma_n is defined for n >= 1");
        self.gamma_next(n - 1)
    }

    /// β̃_n.
    pub fn beta_tilde(&self, n: usize) -> Rational {
        let e = eps(n);
        let nn = rat(n as i64);
        -(&e * &self.r + rat(2) * &self.s) * nn - ratio(1, 2) * (Rational::one() + e) * &self.r - &self.s
            + &self.beta0
    }

    /// α̃_n for n ≥ 1.
    pub fn alpha_tilde(&self, n: usize) -> Rational {
        assert!(n >= 1, "alpha_tilde_n is defined for n >= 1");
        let e = eps(n);
        let nn = rat(n as i64);
        let inner = (&self.r * &self.r + &self.s * &self.s) * &nn
            + (Rational::one() - e) * &self.r * &self.s
            + &self.alpha1;
        nn * inner
    }

    /// γ̃_n for n ≥ 1.
    pub fn gamma_tilde(&self, n: usize) -> Rational {
        assert!(n >= 1, "gamma_tilde_n is defined for n >= 1");
        rat(((n + 1) * n) as i64) * self.gamma_bracket(n)
    }

    /// First index n ≤ `max_n` with γ_n = 0, if any.
    pub fn first_singular(&self, max_n: usize) -> Option<usize> {
        (1..=max_n).find(|&n| self.gamma_n(n).is_zero())
    }

    pub fn to_text(&self) -> ModelParamsText {
        ModelParamsText {
            r: format_rational(&self.r),
            s: format_rational(&self.s),
            beta0: format_rational(&self.beta0),
            alpha1: format_rational(&self.alpha1),
            gamma: format_rational(&self.gamma),
        }
    }
}

/// The coefficients at one index n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceCoeffs {
    pub n: usize,
    pub beta: Rational,
    pub alpha_next: Rational,
    pub gamma_next: Rational,
    pub beta_tilde: Rational,
    /// α̃_n, defined for n ≥ 1.
    pub alpha_tilde: Option<Rational>,
    /// γ̃_n, defined for n ≥ 1.
    pub gamma_tilde: Option<Rational>,
}

pub fn coeffs(params: &ModelParams, n: usize) -> RecurrenceCoeffs {
    RecurrenceCoeffs {
        n,
        beta: params.beta(n),
        alpha_next: params.alpha_next(n),
        gamma_next: params.gamma_next(n),
        beta_tilde: params.beta_tilde(n),
        alpha_tilde: (n >= 1).then(|| params.alpha_tilde(n)),
        gamma_tilde: (n >= 1).then(|| params.gamma_tilde(n)),
    }
}

/// Three-term-ahead recurrence P_{n+3} = (x − b_{n+2})P_{n+2} − a_{n+2}P_{n+1} − g_{n+1}P_n
/// with P_1 = x − b_0 and P_2 = (x − b_1)P_1 − a_1.
fn run_recurrence(
    big_n: usize,
    b: impl Fn(usize) -> Rational,
    a: impl Fn(usize) -> Rational,
    g: impl Fn(usize) -> Rational,
) -> Vec<Poly> {
    let mut out = Vec::with_capacity(big_n + 1);
    out.push(Poly::one());
    if big_n >= 1 {
        out.push(Poly::linear(-b(0), Rational::one()));
    }
    if big_n >= 2 {
        let p2 = &Poly::linear(-b(1), Rational::one()) * &out[1] - Poly::constant(a(1));
        out.push(p2);
    }
    for m in 3..=big_n {
        let n = m - 3;
        let next = &(&Poly::linear(-b(n + 2), Rational::one()) * &out[n + 2])
            - &(&out[n + 1].scale(&a(n + 2)) + &out[n].scale(&g(n + 1)));
        out.push(next);
    }
    out
}

/// P_0, …, P_N.
pub fn gen_p(params: &ModelParams, big_n: usize) -> Result<Vec<Poly>, PolySeqError> {
    if let Some(index) = params.first_singular(big_n) {
        return Err(PolySeqError::Singular { index });
    }
    Ok(run_recurrence(
        big_n,
        |n| params.beta(n),
        |n| params.alpha(n),
        |n| params.gamma_n(n),
    ))
}

/// Q_0, …, Q_N from the tilde recurrence.
pub fn gen_q(params: &ModelParams, big_n: usize) -> Result<Vec<Poly>, PolySeqError> {
    if let Some(index) = (1..=big_n).find(|&n| params.gamma_tilde(n).is_zero()) {
        return Err(PolySeqError::Singular { index });
    }
    Ok(run_recurrence(
        big_n,
        |n| params.beta_tilde(n),
        |n| params.alpha_tilde(n),
        |n| params.gamma_tilde(n),
    ))
}

/// Q_n built directly as P′_{n+1}/(n+1), for n ≤ N − 1 given P_0..P_N.
pub fn derivative_q(ps: &[Poly]) -> Vec<Poly> {
    ps.iter()
        .enumerate()
        .skip(1)
        .map(|(k, p)| p.derivative().scale(&ratio(1, k as i64)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn airy() -> ModelParams {
        ModelParams::new(rat(0), rat(0), rat(0), rat(0), rat(1))
    }

    fn generic() -> ModelParams {
        ModelParams::new(ratio(1, 3), ratio(-2, 5), ratio(7, 4), ratio(5, 2), ratio(-3, 7))
    }

    #[test]
    fn case_one_coefficients_are_linear_in_n() {
        let p = ModelParams::new(rat(0), rat(0), ratio(1, 2), rat(3), rat(5));
        for n in 0..6 {
            let c = coeffs(&p, n);
            assert_eq!(c.beta, ratio(1, 2));
            assert_eq!(c.alpha_next, rat(3 * (n as i64 + 1)));
            assert_eq!(c.gamma_next, rat(5 * ((n + 2) * (n + 1)) as i64));
        }
    }

    #[test]
    fn beta_one_with_unit_r() {
        let p = ModelParams::new(rat(1), rat(0), rat(0), rat(1), rat(1));
        assert_eq!(p.beta(1), rat(-2));
    }

    #[test]
    fn gamma_one_is_twice_gamma() {
        let p = generic();
        assert_eq!(p.gamma_n(1), p.gamma1());
    }

    #[test]
    fn airy_cubic() {
        let ps = gen_p(&airy(), 3).unwrap();
        assert_eq!(ps[3].to_string(), "x^3 - 2");
    }

    #[test]
    fn first_three_by_definition() {
        let p = generic();
        let ps = gen_p(&p, 2).unwrap();
        assert_eq!(ps[1], Poly::linear(-p.beta0.clone(), rat(1)));
        let p2 = &(&Poly::linear(-p.beta(1), rat(1)) * &ps[1]) - &Poly::constant(p.alpha1.clone());
        assert_eq!(ps[2], p2);
    }

    #[test]
    fn q_one_offset() {
        let p = generic();
        let qs = gen_q(&p, 1).unwrap();
        let expected = -&p.r - &p.s + &p.beta0;
        assert_eq!(qs[1], Poly::linear(-expected, rat(1)));
    }

    #[test]
    fn singular_parameters_are_reported() {
        let p = ModelParams::new(rat(0), rat(0), rat(0), rat(1), rat(0));
        assert_eq!(gen_p(&p, 4), Err(PolySeqError::Singular { index: 1 }));
    }

    #[test]
    fn degrees_and_monic() {
        let ps = gen_p(&generic(), 12).unwrap();
        for (n, p) in ps.iter().enumerate() {
            assert_eq!(p.degree(), Some(n));
            assert!(p.is_monic());
        }
    }
}
