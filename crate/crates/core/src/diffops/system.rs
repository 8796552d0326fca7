//! The commuting operators M₁(u), M₂(u), their u-independent parts M̃₁, M̃₂,
//! the A₁ factors H± and the constant relating the two zero-shift potentials.

use num_complex::Complex64;

use super::operator::{coefficient, DifferenceOperator, ShiftVector};
use crate::elliptic::{theta1, theta1_denominator, EllipticModulus};
use crate::error::{Error, Result};
use crate::weight::WeightPoint;

/// Which operator of the pair: d = 1 (vector representation) or d = 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Degree {
    One,
    Two,
}

impl Degree {
    pub const ALL: [Degree; 2] = [Degree::One, Degree::Two];

    pub fn value(self) -> u8 {
        match self {
            Degree::One => 1,
            Degree::Two => 2,
        }
    }
}

impl TryFrom<u8> for Degree {
    type Error = Error;

    fn try_from(d: u8) -> Result<Self> {
        match d {
            1 => Ok(Degree::One),
            2 => Ok(Degree::Two),
            other => Err(Error::Constraint(format!("operator degree must be 1 or 2, got {other}"))),
        }
    }
}

/// Sign of the A₁ factor H± (λ± = λ₁ ± λ₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlusMinus {
    Plus,
    Minus,
}

impl PlusMinus {
    fn sign(self) -> i32 {
        match self {
            PlusMinus::Plus => 1,
            PlusMinus::Minus => -1,
        }
    }
}

const SIGNS: [i32; 2] = [1, -1];

/// The four elements of 𝒫₁ as coordinate vectors.
const SINGLE: [(i32, i32); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

fn quotient(num: Complex64, den: Complex64, m: &EllipticModulus) -> Result<Complex64> {
    Ok(theta1(num, m)? / theta1_denominator(den, m)?)
}

/// F(u) = θ₁(u)θ₁(u+2ħ)²θ₁(u+4ħ) / (θ₁(−3ħ)²θ₁(ħ)²).
pub fn f_factor(u: Complex64, hbar: Complex64, m: &EllipticModulus) -> Result<Complex64> {
    let t = |z| theta1(z, m);
    let d = |z| theta1_denominator(z, m);
    Ok(t(u)? * t(u + 2.0 * hbar)?.powi(2) * t(u + 4.0 * hbar)? / (d(-3.0 * hbar)?.powi(2) * d(hbar)?.powi(2)))
}

/// G(u) = θ₁(u−ħ)θ₁(u)²θ₁(u+ħ)θ₁(u+2ħ)θ₁(u+3ħ)²θ₁(u+4ħ) / (θ₁(−3ħ)⁴θ₁(ħ)⁴).
pub fn g_factor(u: Complex64, hbar: Complex64, m: &EllipticModulus) -> Result<Complex64> {
    let t = |z| theta1(z, m);
    let d = |z| theta1_denominator(z, m);
    let h = hbar;
    Ok(t(u - h)? * t(u)?.powi(2) * t(u + h)? * t(u + 2.0 * h)? * t(u + 3.0 * h)?.powi(2) * t(u + 4.0 * h)?
        / (d(-3.0 * h)?.powi(4) * d(h)?.powi(4)))
}

/// H(u) = θ₁(u+6ħ)θ₁(u−3ħ)θ₁(2ħ) / (θ₁(u)θ₁(u+3ħ)θ₁(6ħ)).
pub fn h_factor(u: Complex64, hbar: Complex64, m: &EllipticModulus) -> Result<Complex64> {
    let t = |z| theta1(z, m);
    let d = |z| theta1_denominator(z, m);
    let h = hbar;
    Ok(t(u + 6.0 * h)? * t(u - 3.0 * h)? * t(2.0 * h)? / (d(u)? * d(u + 3.0 * h)? * d(6.0 * h)?))
}

/// U(λ_p, λ_q) in the zero-shift part of M₂(u).
pub fn u_potential(lp: Complex64, lq: Complex64, hbar: Complex64, m: &EllipticModulus) -> Result<Complex64> {
    let t = |z| theta1(z, m);
    let d = |z| theta1_denominator(z, m);
    let h = hbar;
    let s = lp + lq;
    Ok(t(2.0 * h)? / d(6.0 * h)? * t(2.0 * lp + 2.0 * h)? * t(2.0 * lq + 2.0 * h)? / (d(2.0 * lp)? * d(2.0 * lq)?)
        * t(s - 5.0 * h)?
        * t(s + 2.0 * h)?
        / (d(s)? * d(s + h)?))
}

/// R(x) = θ₁(x−ħ)θ₁(x+2ħ) / (θ₁(x)θ₁(x+ħ)), the zero-shift part of M̃₂.
pub fn r_potential(x: Complex64, hbar: Complex64, m: &EllipticModulus) -> Result<Complex64> {
    let t = |z| theta1(z, m);
    let d = |z| theta1_denominator(z, m);
    Ok(t(x - hbar)? * t(x + 2.0 * hbar)? / (d(x)? * d(x + hbar)?))
}

/// Coefficient of T_{2p} in M̃₁: Π_{q ≠ ±p} θ₁(λ_{p+q} − ħ)/θ₁(λ_{p+q}).
fn m1_coefficient(p: (i32, i32), lam: &WeightPoint, hbar: Complex64, m: &EllipticModulus) -> Result<Complex64> {
    let mut v = Complex64::new(1.0, 0.0);
    for q in SINGLE {
        if q == p || q == (-p.0, -p.1) {
            continue;
        }
        let x = lam.pairing(p.0 + q.0, p.1 + q.1);
        v *= quotient(x - hbar, x, m)?;
    }
    Ok(v)
}

fn m2_double_shifts(hbar: Complex64, m: EllipticModulus) -> DifferenceOperator {
    let mut op = DifferenceOperator::zero(hbar, m);
    for s1 in SIGNS {
        for s2 in SIGNS {
            op = op.with_term(
                ShiftVector::whole(s1, s2),
                coefficient(move |lam| {
                    let x = lam.pairing(s1, s2);
                    quotient(x - hbar, x + hbar, &m)
                }),
            );
        }
    }
    op
}

/// M̃_d, the u-independent part of M_d(u).
pub fn build_m_tilde(d: Degree, hbar: Complex64, m: EllipticModulus) -> DifferenceOperator {
    match d {
        Degree::One => {
            let mut op = DifferenceOperator::zero(hbar, m);
            for p in SINGLE {
                op = op
                    .with_term(ShiftVector::whole(p.0, p.1), coefficient(move |lam| m1_coefficient(p, lam, hbar, &m)));
            }
            op
        }
        Degree::Two => m2_double_shifts(hbar, m).with_term(
            ShiftVector::ZERO,
            coefficient(move |lam| {
                let mut acc = Complex64::new(0.0, 0.0);
                for s1 in SIGNS {
                    for s2 in SIGNS {
                        acc += r_potential(lam.pairing(s1, s2), hbar, &m)?;
                    }
                }
                Ok(acc)
            }),
        ),
    }
}

/// M_d(u) in closed form: M₁(u) = F(u)M̃₁ and
/// M₂(u) = G(u)(Σ double shifts + Σ U(λ_p, λ_q) − H(u)).
pub fn build_m(d: Degree, u: Complex64, hbar: Complex64, m: EllipticModulus) -> Result<DifferenceOperator> {
    match d {
        Degree::One => Ok(build_m_tilde(Degree::One, hbar, m).scale(f_factor(u, hbar, &m)?)),
        Degree::Two => {
            let g = g_factor(u, hbar, &m)?;
            let hu = h_factor(u, hbar, &m)?;
            let op = m2_double_shifts(hbar, m).with_term(
                ShiftVector::ZERO,
                coefficient(move |lam| {
                    let mut acc = -hu;
                    for s1 in SIGNS {
                        for s2 in SIGNS {
                            acc += u_potential(lam.pairing(s1, 0), lam.pairing(0, s2), hbar, &m)?;
                        }
                    }
                    Ok(acc)
                }),
            );
            Ok(op.scale(g))
        }
    }
}

/// H± = θ₁(λ±−ħ)/θ₁(λ±)·T_{ε₁±ε₂} + θ₁(−λ±−ħ)/θ₁(−λ±)·T_{−(ε₁±ε₂)}.
///
/// T_{ε₁±ε₂} moves (λ₁, λ₂) by (ħ/2, ±ħ/2), so λ± moves by ħ.
pub fn build_h_pm(sign: PlusMinus, hbar: Complex64, m: EllipticModulus) -> DifferenceOperator {
    let s = sign.sign();
    let mut op = DifferenceOperator::zero(hbar, m);
    for e in SIGNS {
        op = op.with_term(
            ShiftVector::halves(e, e * s),
            coefficient(move |lam| {
                let x = e as f64 * lam.pairing(1, s);
                quotient(x - hbar, x, &m)
            }),
        );
    }
    op
}

/// θ₁(8ħ)θ₁(ħ)/(θ₁(6ħ)θ₁(5ħ)) + θ₁(5ħ)θ₁(2ħ)/(θ₁(4ħ)θ₁(3ħ))
/// + θ₁(6ħ)θ₁(3ħ)/(θ₁(5ħ)θ₁(4ħ)) + θ₁(4ħ)θ₁(ħ)/(θ₁(3ħ)θ₁(2ħ)).
pub fn k_four_term_sum(hbar: Complex64, m: &EllipticModulus) -> Result<Complex64> {
    let t = |k: f64| theta1(k * hbar, m);
    let d = |k: f64| theta1_denominator(k * hbar, m);
    Ok(t(8.0)? * t(1.0)? / (d(6.0)? * d(5.0)?)
        + t(5.0)? * t(2.0)? / (d(4.0)? * d(3.0)?)
        + t(6.0)? * t(3.0)? / (d(5.0)? * d(4.0)?)
        + t(4.0)? * t(1.0)? / (d(3.0)? * d(2.0)?))
}

/// The constant value of Σ U(λ_p, λ_q) − Σ R(λ_{p+q}).
///
/// Evaluating the left side at λ_q = ħ after the substitution λ_p = −λ_q − 2ħ
/// gives the four-term theta sum with an overall minus sign.
pub fn constant_k(hbar: Complex64, m: &EllipticModulus) -> Result<Complex64> {
    Ok(-k_four_term_sum(hbar, m)?)
}

/// Σ_{p=±ε₁, q=±ε₂} (U(λ_p, λ_q) − R(λ_{p+q})).
pub fn lemma22_lhs(lam: &WeightPoint, hbar: Complex64, m: &EllipticModulus) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for s1 in SIGNS {
        for s2 in SIGNS {
            let (lp, lq) = (lam.pairing(s1, 0), lam.pairing(0, s2));
            acc += u_potential(lp, lq, hbar, m)? - r_potential(lp + lq, hbar, m)?;
        }
    }
    Ok(acc)
}

/// |LHS(λ) − K|.
pub fn lemma22_residual(lam: &WeightPoint, hbar: Complex64, m: &EllipticModulus) -> Result<f64> {
    Ok((lemma22_lhs(lam, hbar, m)? - constant_k(hbar, m)?).norm())
}
