//! The one-variable difference Lamé operator and its Bethe equation.

use num_complex::Complex64;

use crate::elliptic::{theta1, theta1_denominator, theta_k, EllipticModulus, ThetaKind};
use crate::error::{Error, Result};

/// L f(z) = θ₁(z−ℓħ)/θ₁(z)·f(z+ħ) + θ₁(z+ℓħ)/θ₁(z)·f(z−ħ).
#[derive(Debug, Clone, Copy)]
pub struct LameOperator {
    pub hbar: Complex64,
    pub ell: u32,
    pub modulus: EllipticModulus,
}

impl LameOperator {
    pub fn new(hbar: Complex64, ell: u32, modulus: EllipticModulus) -> Self {
        Self { hbar, ell, modulus }
    }

    pub fn apply<F>(&self, f: F, z: Complex64) -> Result<Complex64>
    where
        F: Fn(Complex64) -> Result<Complex64>,
    {
        let m = &self.modulus;
        let lh = self.hbar * self.ell as f64;
        let den = theta1_denominator(z, m)?;
        Ok(theta1(z - lh, m)? / den * f(z + self.hbar)? + theta1(z + lh, m)? / den * f(z - self.hbar)?)
    }
}

/// E_i = θ₁(2ħ)θ_i(0)/(θ₁(ħ)θ_i(ħ)), the ℓ = 1 eigenvalue on θ_i for i = 2, 3, 4.
pub fn lame_eigenvalue(kind: ThetaKind, hbar: Complex64, m: &EllipticModulus) -> Result<Complex64> {
    if kind == ThetaKind::One {
        return Err(Error::InvalidThetaKind(1));
    }
    let den = theta1_denominator(hbar, m)? * theta_k(kind, hbar, m)?;
    if den.norm() < crate::elliptic::POLE_FLOOR {
        return Err(Error::PoleProximity { what: "θ₁(ħ)θ_i(ħ)", value: den.norm() });
    }
    Ok(theta1(2.0 * hbar, m)? * theta_k(kind, Complex64::new(0.0, 0.0), m)? / den)
}

/// |L θ_i(z) − E_i θ_i(z)| / max(1, |E_i θ_i(z)|) at ℓ = 1.
pub fn lame_eigen_residual(kind: ThetaKind, z: Complex64, hbar: Complex64, m: &EllipticModulus) -> Result<f64> {
    let op = LameOperator::new(hbar, 1, *m);
    let lhs = op.apply(|x| theta_k(kind, x, m), z)?;
    let rhs = lame_eigenvalue(kind, hbar, m)? * theta_k(kind, z, m)?;
    Ok((lhs - rhs).norm() / rhs.norm().max(1.0))
}

/// |θ₁(t−ħ)/θ₁(t+ħ) − e^{2ħc}|.
pub fn bethe_residual(t: Complex64, c: Complex64, hbar: Complex64, m: &EllipticModulus) -> Result<f64> {
    let q = theta1(t - hbar, m)? / theta1_denominator(t + hbar, m)?;
    Ok((q - (2.0 * hbar * c).exp()).norm())
}

/// The three solutions (t, c) = (½, 0), ((1+τ)/2, πi), (τ/2, πi).
pub fn bethe_solutions(m: &EllipticModulus) -> [(Complex64, Complex64); 3] {
    let tau = m.tau();
    let pi_i = Complex64::new(0.0, std::f64::consts::PI);
    [(Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0)), ((1.0 + tau) / 2.0, pi_i), (tau / 2.0, pi_i)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn oracle_theta4(z: Complex64, tau: Complex64) -> Complex64 {
        (-200i32..200)
            .map(|k| {
                let n = k as f64;
                (2.0 * PI * c(0.0, 1.0) * ((z + 0.5) * n + 0.5 * n * n * tau)).exp()
            })
            .sum()
    }

    #[test]
    fn constant_function_at_zero_coupling() {
        let m = EllipticModulus::new(c(0.0, 1.1)).unwrap();
        let op = LameOperator::new(c(0.1, 0.0), 0, m);
        let v = op.apply(|_| Ok(c(1.0, 0.0)), c(0.3, 0.1)).unwrap();
        assert!((v - 2.0).norm() < 1e-14);
    }

    #[test]
    fn theta4_eigenfunction_against_series() {
        let tau = c(0.0, 1.2);
        let m = EllipticModulus::new(tau).unwrap();
        let (h, z) = (c(0.12, 0.0), c(0.37, 0.0));
        let op = LameOperator::new(h, 1, m);
        let lhs = op.apply(|x| Ok(oracle_theta4(x, tau)), z).unwrap();
        let e4 = lame_eigenvalue(ThetaKind::Four, h, &m).unwrap();
        let rhs = e4 * oracle_theta4(z, tau);
        assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0));
    }

    #[test]
    fn even_thetas_are_eigenfunctions() {
        let m = EllipticModulus::new(c(0.2, 1.1)).unwrap();
        let h = c(0.1, 0.02);
        for kind in [ThetaKind::Two, ThetaKind::Three, ThetaKind::Four] {
            for z in [c(0.13, 0.05), c(0.41, -0.2), c(-0.3, 0.33)] {
                assert!(lame_eigen_residual(kind, z, h, &m).unwrap() < 1e-10);
            }
        }
        assert_eq!(lame_eigenvalue(ThetaKind::One, h, &m), Err(Error::InvalidThetaKind(1)));
    }

    #[test]
    fn bethe_solutions_hold() {
        for tau in [c(0.0, 1.1), c(0.3, 0.8)] {
            let m = EllipticModulus::new(tau).unwrap();
            for h in [c(0.1, 0.0), c(0.07, 0.03)] {
                for (t, cc) in bethe_solutions(&m) {
                    assert!(bethe_residual(t, cc, h, &m).unwrap() < 1e-11);
                }
            }
        }
        let m = EllipticModulus::new(c(0.0, 1.1)).unwrap();
        assert!(bethe_residual(c(0.3, 0.0), c(0.0, 0.0), c(0.1, 0.0), &m).unwrap() > 1e-3);
    }
}
