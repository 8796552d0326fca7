//! Weierstrass σ, σᵣ, η₁ and ℘ expressed through the unit-period theta functions.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::theta::{log_theta1_deriv, nonvanishing, theta_derivatives, EllipticModulus, ThetaKind};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Quasi-periods 2ω₁, 2ω₂ with the derived modulus τ = ω₂/ω₁ and η₁ = ζ(ω₁).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPeriods {
    omega1: Complex64,
    omega2: Complex64,
    eta1: Complex64,
    modulus: EllipticModulus,
    theta1_prime0: Complex64,
    theta_at0: [Complex64; 3],
}

impl HalfPeriods {
    pub fn new(omega1: Complex64, omega2: Complex64) -> Result<Self> {
        if omega1.norm() == 0.0 {
            return Err(Error::InvalidHalfPeriods(Complex64::new(f64::NAN, f64::NAN)));
        }
        let tau = omega2 / omega1;
        if !(tau.im > 0.0) {
            return Err(Error::InvalidHalfPeriods(tau));
        }
        let modulus = EllipticModulus::new(tau)?;
        let d = theta_derivatives(ThetaKind::One, Complex64::new(0.0, 0.0), &modulus, 3)?;
        let zero = Complex64::new(0.0, 0.0);
        let theta_at0 = [
            theta_derivatives(ThetaKind::Two, zero, &modulus, 0)?[0],
            theta_derivatives(ThetaKind::Three, zero, &modulus, 0)?[0],
            theta_derivatives(ThetaKind::Four, zero, &modulus, 0)?[0],
        ];
        Ok(Self { omega1, omega2, eta1: -d[3] / (12.0 * omega1 * d[1]), modulus, theta1_prime0: d[1], theta_at0 })
    }

    /// ω₁ given, ω₂ = τ·ω₁.
    pub fn from_modulus(omega1: Complex64, tau: Complex64) -> Result<Self> {
        Self::new(omega1, tau * omega1)
    }

    pub fn omega1(&self) -> Complex64 {
        self.omega1
    }

    pub fn omega2(&self) -> Complex64 {
        self.omega2
    }

    pub fn eta1(&self) -> Complex64 {
        self.eta1
    }

    /// η₂ from the Legendre relation η₁ω₂ − η₂ω₁ = πi/2.
    pub fn eta2(&self) -> Complex64 {
        (self.eta1 * self.omega2 - I * PI / 2.0) / self.omega1
    }

    pub fn tau(&self) -> Complex64 {
        self.modulus.tau()
    }

    pub fn modulus(&self) -> &EllipticModulus {
        &self.modulus
    }

    /// The half period ωᵣ with ω₀ = 0 and ω₃ = −ω₁ − ω₂.
    pub fn half_period(&self, r: usize) -> Complex64 {
        match r {
            0 => Complex64::new(0.0, 0.0),
            1 => self.omega1,
            2 => self.omega2,
            _ => -self.omega1 - self.omega2,
        }
    }
}

/// η₁ = −θ₁‴(0) / (12 ω₁ θ₁′(0)).
pub fn eta1_const(omega1: Complex64, omega2: Complex64) -> Result<Complex64> {
    Ok(HalfPeriods::new(omega1, omega2)?.eta1)
}

/// σ₀ = σ and the three associated functions σ₁, σ₂, σ₃.
pub fn sigma_fn(r: u8, z: Complex64, hp: &HalfPeriods) -> Result<Complex64> {
    let w = hp.omega1;
    let gauss = (hp.eta1 * z * z / (2.0 * w)).exp();
    let x = z / (2.0 * w);
    let (kind, norm) = match r {
        0 => (ThetaKind::One, hp.theta1_prime0),
        1 => (ThetaKind::Two, hp.theta_at0[0]),
        2 => (ThetaKind::Three, hp.theta_at0[1]),
        3 => (ThetaKind::Four, hp.theta_at0[2]),
        other => return Err(Error::InvalidSigmaIndex(other)),
    };
    Ok(gauss * theta_derivatives(kind, x, &hp.modulus, 0)?[0] / norm)
}

/// ℘(z) = −(log θ₁)″(z/2ω₁) / 4ω₁² − η₁/ω₁.
pub fn wp(z: Complex64, hp: &HalfPeriods) -> Result<Complex64> {
    let w = hp.omega1;
    nonvanishing(z, "wp argument")?;
    let l2 = log_theta1_deriv(z / (2.0 * w), &hp.modulus, 2)?;
    Ok(-l2 / (4.0 * w * w) - hp.eta1 / w)
}
