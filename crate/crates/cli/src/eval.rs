//! Single-value evaluations behind `ellidiff eval`.

use ellidiff_core::diffops::{build_m_tilde, Degree};
use ellidiff_core::elliptic::{theta, wp, EllipticModulus, HalfPeriods};
use ellidiff_core::face_weights::{w11, FaceConfig, SingleWeight};
use ellidiff_core::spectra::basis_f;
use ellidiff_core::weight::WeightPoint;
use ellidiff_core::{Error, Result};
use num_complex::Complex64;

/// d^order/dz^order θ_kind(z | τ).
pub fn eval_theta(kind: u8, z: Complex64, tau: Complex64, order: u8) -> Result<Complex64> {
    theta(kind, z, &EllipticModulus::new(tau)?, order)
}

/// ℘(z) for the half periods (ω₁, ω₁τ).
pub fn eval_wp(z: Complex64, omega1: Complex64, tau: Complex64) -> Result<Complex64> {
    wp(z, &HalfPeriods::from_modulus(omega1, tau)?)
}

/// Parses "e1", "-e1", "e2", "-e2".
pub fn parse_edge(s: &str) -> Result<SingleWeight> {
    match s.trim() {
        "e1" | "+e1" => Ok(SingleWeight::E1),
        "-e1" => Ok(SingleWeight::NEG_E1),
        "e2" | "+e2" => Ok(SingleWeight::E2),
        "-e2" => Ok(SingleWeight::NEG_E2),
        other => Err(Error::Constraint(format!("edge must be one of e1, -e1, e2, -e2, got {other:?}"))),
    }
}

/// W₁₁ of the face with edges [top, right, left, bottom] at λ.
pub fn eval_weight(
    lambda: WeightPoint,
    edges: [SingleWeight; 4],
    u: Complex64,
    hbar: Complex64,
    tau: Complex64,
) -> Result<Complex64> {
    let [top, right, left, bottom] = edges;
    w11(&FaceConfig { lambda, top, right, left, bottom, u, hbar, modulus: EllipticModulus::new(tau)? })
}

/// (M̃_d f_i)(λ) for the basis function f_i, i = 0..=3.
pub fn eval_operator(degree: u8, basis: u8, lambda: WeightPoint, hbar: Complex64, tau: Complex64) -> Result<Complex64> {
    let m = EllipticModulus::new(tau)?;
    let op = build_m_tilde(Degree::try_from(degree)?, hbar, m);
    op.apply(|x| basis_f(basis, x, &m), &lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ellidiff_core::spectra::eigenvalue;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn theta_at_zero() {
        let tau = c(0.0, 1.1);
        assert!(eval_theta(1, c(0.0, 0.0), tau, 0).unwrap().norm() < 1e-15);
        assert!(eval_theta(5, c(0.0, 0.0), tau, 0).is_err());
    }

    #[test]
    fn wp_is_even() {
        let (w, tau) = (c(0.5, 0.0), c(0.0, 1.1));
        let z = c(0.13, 0.07);
        assert!((eval_wp(z, w, tau).unwrap() - eval_wp(-z, w, tau).unwrap()).norm() < 1e-10);
    }

    #[test]
    fn identity_face_at_zero() {
        let lam = WeightPoint::real(0.21, 0.37);
        let e = parse_edge("e1").unwrap();
        let v = eval_weight(lam, [e, e, e, e], c(0.0, 0.0), c(0.1, 0.0), c(0.0, 1.1)).unwrap();
        assert!((v - 1.0).norm() < 1e-12);
        assert!(parse_edge("e3").is_err());
    }

    #[test]
    fn operator_on_an_eigenfunction() {
        let (lam, h, tau) = (WeightPoint::real(0.21, 0.37), c(0.1, 0.0), c(0.0, 1.1));
        let m = EllipticModulus::new(tau).unwrap();
        let got = eval_operator(1, 2, lam, h, tau).unwrap();
        let want = eigenvalue(Degree::One, 2, h, &m).unwrap() * basis_f(2, &lam, &m).unwrap();
        assert!((got - want).norm() < 1e-10 * want.norm().max(1.0));
        assert!(eval_operator(3, 1, lam, h, tau).is_err());
    }
}
