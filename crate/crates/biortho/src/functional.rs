//! Functional systems satisfied by the pair (u₀, u₁) and their exact moments.
//!
//! The vector functional U = (u₀, u₁) satisfies (ΦU)′ + ΨU = 0 with 2×2 matrices of
//! polynomials of degree ≤ 1. Eliminating u₁ gives one of three systems depending on
//! η = 2rα₁ − γ and δ₀ = s + r:
//!
//! * S1 (η ≠ 0, δ₀ ≠ 0) and S2 (η ≠ 0, δ₀ = 0): (φu₀)″ + (ϑu₀)′ + χu₀ = 0 and
//!   ηu₁ = (φu₀)′ + ϱu₀; in S2 this collapses to u₁ = −u₀′.
//! * S3 (η = 0, δ₀ ≠ 0): σu₀′ + τu₀ = 0 and δ₀u₁′ − u₁ = u₀′.
//!
//! Moments follow by pairing with xⁿ and moving derivatives across (⟨u′, f⟩ = −⟨u, f′⟩).

use crate::poly::{rat, Poly, Rational};
use crate::polyseq::ModelParams;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctionalError {
    #[error("eta = 0 and delta0 = 0: the leading matrix is singular")]
    Singular,
    #[error("system {tag} requires eta != 0")]
    Inconsistent { tag: SystemTag },
    #[error("need {needed} moments of u0, have {have}")]
    TooFewMoments { needed: usize, have: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SystemTag {
    S1,
    S2,
    S3,
}

impl fmt::Display for SystemTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SystemTag::S1 => "S1",
            SystemTag::S2 => "S2",
            SystemTag::S3 => "S3",
        };
        f.write_str(s)
    }
}

pub type Matrix2 = [[Poly; 2]; 2];

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalSystem {
    pub tag: SystemTag,
    pub params: ModelParams,
    pub phi: Poly,
    pub theta: Poly,
    pub chi: Poly,
    pub varrho: Poly,
    pub sigma: Poly,
    pub tau: Poly,
    pub big_phi: Matrix2,
    pub big_psi: Matrix2,
    pub eta: Rational,
    pub delta0: Rational,
    pub delta1: Rational,
    pub gamma1: Rational,
}

/// Classify the parameters and build the coefficient polynomials and matrices.
pub fn classify(params: &ModelParams) -> Result<FunctionalSystem, FunctionalError> {
    let eta = params.eta();
    let d0 = params.delta0();
    let d1 = params.delta1();
    let tag = match (eta.is_zero(), d0.is_zero()) {
        (true, true) => return Err(FunctionalError::Singular),
        (false, false) => SystemTag::S1,
        (false, true) => SystemTag::S2,
        (true, false) => SystemTag::S3,
    };
    let b0 = &params.beta0;
    let a1 = &params.alpha1;
    let g = &params.gamma;
    // x − β₀
    let shifted = Poly::linear(-b0.clone(), Rational::one());
    let phi = &shifted.scale(&-(&d1 * &d0)) + &Poly::constant(&d1 * a1 + g);
    let theta = &shifted.scale(&(rat(2) * &params.s)) - &Poly::constant(a1.clone());
    let chi = Poly::linear(b0.clone(), -Rational::one());
    let varrho = shifted.scale(&d0);
    let sigma = &shifted.scale(&d1) - &Poly::constant(a1.clone());
    let tau = Poly::linear(b0 + &d1, -Rational::one());

    let inv_g = Rational::one() / g;
    let big_phi = [
        [Poly::one(), Poly::constant(-d0.clone())],
        [
            shifted.scale(&(-(&d1) * &inv_g)),
            Poly::constant(Rational::one() + &d1 * a1 * &inv_g),
        ],
    ];
    let big_psi = [
        [Poly::zero(), Poly::one()],
        [shifted.scale(&inv_g), Poly::constant(-(a1 * &inv_g))],
    ];
    Ok(FunctionalSystem {
        tag,
        params: params.clone(),
        phi,
        theta,
        chi,
        varrho,
        sigma,
        tau,
        big_phi,
        big_psi,
        eta,
        delta0: d0,
        delta1: d1,
        gamma1: params.gamma1(),
    })
}

impl FunctionalSystem {
    /// det Φ.
    pub fn det_phi(&self) -> Poly {
        let m = &self.big_phi;
        &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
    }
}

/// Exact moment sequences. `m2`, `v0`, `v1` are filled by [`derived_functionals`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MomentTable {
    pub m0: Vec<Rational>,
    pub m1: Vec<Rational>,
    pub m2: Vec<Rational>,
    pub v0: Vec<Rational>,
    pub v1: Vec<Rational>,
}

fn c(p: &Poly, k: usize) -> Rational {
    p.coeff(k)
}

/// (u₀)ₙ for n = 0..=K.
pub fn moments_u0(sys: &FunctionalSystem, k: usize) -> Vec<Rational> {
    let mut m: Vec<Rational> = Vec::with_capacity(k + 1);
    m.push(Rational::one());
    let get = |m: &Vec<Rational>, i: isize| -> Rational {
        if i < 0 {
            Rational::zero()
        } else {
            m[i as usize].clone()
        }
    };
    match sys.tag {
        SystemTag::S1 | SystemTag::S2 => {
            // ⟨u₀, φf″ − ϑf′ + χf⟩ = 0 at f = xⁿ
            let (p0, p1) = (c(&sys.phi, 0), c(&sys.phi, 1));
            let (t0, t1) = (c(&sys.theta, 0), c(&sys.theta, 1));
            let b0 = &sys.params.beta0;
            for n in 0..k {
                let nn = rat(n as i64);
                let ni = n as isize;
                let next = (b0 - &nn * &t1) * get(&m, ni)
                    + &nn * (rat(n as i64 - 1) * &p1 - &t0) * get(&m, ni - 1)
                    + &p0 * &nn * rat(n as i64 - 1) * get(&m, ni - 2);
                m.push(next);
            }
        }
        SystemTag::S3 => {
            // ⟨u₀, −(σf)′ + τf⟩ = 0 at f = xⁿ
            let (s0, s1) = (c(&sys.sigma, 0), c(&sys.sigma, 1));
            let t0 = c(&sys.tau, 0);
            for n in 0..k {
                let nn = rat(n as i64);
                let ni = n as isize;
                let next = (&t0 - rat(n as i64 + 1) * &s1) * get(&m, ni) - &s0 * &nn * get(&m, ni - 1);
                m.push(next);
            }
        }
    }
    m
}

/// (u₁)ₙ for n = 0..=K. S1/S2 need `m0` up to index K + 1.
pub fn moments_u1(sys: &FunctionalSystem, m0: &[Rational], k: usize) -> Result<Vec<Rational>, FunctionalError> {
    let mut m1 = Vec::with_capacity(k + 1);
    match sys.tag {
        SystemTag::S1 | SystemTag::S2 => {
            if sys.eta.is_zero() {
                return Err(FunctionalError::Inconsistent { tag: sys.tag });
            }
            if m0.len() < k + 2 {
                return Err(FunctionalError::TooFewMoments {
                    needed: k + 2,
                    have: m0.len(),
                });
            }
            // η⟨u₁, f⟩ = ⟨u₀, −φf′ + ϱf⟩
            let (p0, p1) = (c(&sys.phi, 0), c(&sys.phi, 1));
            let (r0, r1) = (c(&sys.varrho, 0), c(&sys.varrho, 1));
            for n in 0..=k {
                let nn = rat(n as i64);
                let prev = if n == 0 { Rational::zero() } else { m0[n - 1].clone() };
                let v = -(&nn) * (&p0 * prev + &p1 * &m0[n]) + &r0 * &m0[n] + &r1 * &m0[n + 1];
                m1.push(v / &sys.eta);
            }
        }
        SystemTag::S3 => {
            if m0.len() < k.max(1) {
                return Err(FunctionalError::TooFewMoments {
                    needed: k.max(1),
                    have: m0.len(),
                });
            }
            // ⟨δ₀u₁′ − u₁ − u₀′, xⁿ⟩ = 0
            m1.push(Rational::zero());
            for n in 1..=k {
                let nn = rat(n as i64);
                let v = &nn * &m0[n - 1] - &sys.delta0 * &nn * &m1[n - 1];
                m1.push(v);
            }
        }
    }
    Ok(m1)
}

/// Moments of u₂ = ((x − β₀)u₀ − α₁u₁)/γ₁, v₀ = u₀ − δ₀u₁ and v₁ = u₁ − 2δ₁u₂, for n = 0..=K.
/// Needs m0 up to K + 1 and m1 up to K.
pub fn derived_functionals(
    sys: &FunctionalSystem,
    m0: &[Rational],
    m1: &[Rational],
    k: usize,
) -> Result<(Vec<Rational>, Vec<Rational>, Vec<Rational>), FunctionalError> {
    if m0.len() < k + 2 {
        return Err(FunctionalError::TooFewMoments {
            needed: k + 2,
            have: m0.len(),
        });
    }
    if m1.len() < k + 1 {
        return Err(FunctionalError::TooFewMoments {
            needed: k + 1,
            have: m1.len(),
        });
    }
    let p = &sys.params;
    let m2: Vec<Rational> = (0..=k)
        .map(|n| (&m0[n + 1] - &p.beta0 * &m0[n] - &p.alpha1 * &m1[n]) / &sys.gamma1)
        .collect();
    let v0 = (0..=k).map(|n| &m0[n] - &sys.delta0 * &m1[n]).collect();
    let v1 = (0..=k).map(|n| &m1[n] - rat(2) * &sys.delta1 * &m2[n]).collect();
    Ok((m2, v0, v1))
}

/// All five moment sequences up to index K.
pub fn moment_table(sys: &FunctionalSystem, k: usize) -> MomentTable {
    let m0 = moments_u0(sys, k + 1);
    let m1 = moments_u1(sys, &m0, k).expect("classification guarantees a consistent system");
    let (m2, v0, v1) = derived_functionals(sys, &m0, &m1, k).expect("lengths are sufficient");
    let mut m0 = m0;
    m0.truncate(k + 1);
    MomentTable { m0, m1, m2, v0, v1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    fn airy() -> ModelParams {
        ModelParams::new(rat(0), rat(0), rat(0), rat(0), rat(1))
    }

    #[test]
    fn classification_patterns() {
        assert_eq!(classify(&airy()).unwrap().tag, SystemTag::S2);
        let alpha = rat(2);
        let a1 = &alpha + rat(1);
        let laguerre = ModelParams::new(rat(1), rat(0), a1.clone(), a1.clone(), rat(2) * &a1);
        let sys = classify(&laguerre).unwrap();
        assert_eq!(sys.tag, SystemTag::S3);
        assert_eq!(sys.sigma, Poly::linear(rat(0), rat(-1)));
        assert_eq!(sys.tau, Poly::linear(alpha, rat(-1)));
        let bad = ModelParams::new(rat(1), rat(-1), rat(0), ratio(1, 2), rat(1));
        assert_eq!(classify(&bad), Err(FunctionalError::Singular));
    }

    #[test]
    fn airy_moments() {
        let sys = classify(&airy()).unwrap();
        let m0 = moments_u0(&sys, 9);
        let expect: Vec<Rational> = [1, 0, 0, 2, 0, 0, 40, 0, 0, 2240].iter().map(|&v| rat(v)).collect();
        assert_eq!(m0, expect);
        let m1 = moments_u1(&sys, &m0, 7).unwrap();
        let expect1: Vec<Rational> = [0, 1, 0, 0, 8, 0, 0, 280].iter().map(|&v| rat(v)).collect();
        assert_eq!(m1, expect1);
    }

    #[test]
    fn laguerre_moments_at_alpha_zero() {
        let p = ModelParams::new(rat(1), rat(0), rat(1), rat(1), rat(2));
        let sys = classify(&p).unwrap();
        let m0 = moments_u0(&sys, 6);
        let fact: Vec<Rational> = [1, 1, 2, 6, 24, 120, 720].iter().map(|&v| rat(v)).collect();
        assert_eq!(m0, fact);
        let m1 = moments_u1(&sys, &m0, 5).unwrap();
        let expect: Vec<Rational> = [0, 1, 0, 6, 0, 120].iter().map(|&v| rat(v)).collect();
        assert_eq!(m1, expect);
    }

    #[test]
    fn determinant_matches_phi() {
        let p = ModelParams::new(ratio(1, 3), ratio(-2, 5), ratio(7, 4), ratio(5, 2), ratio(-3, 7));
        let sys = classify(&p).unwrap();
        assert_eq!(sys.det_phi().scale(&p.gamma), sys.phi);
        let sum = &(&sys.phi + &sys.sigma.scale(&sys.delta0)) + &Poly::constant(sys.eta.clone());
        assert!(sum.is_zero());
    }
}
