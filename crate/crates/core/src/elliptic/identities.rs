//! Residuals of the classical theta identities: quasi-periodicity,
//! half-period shifts, parity and the doubled-modulus product formulas.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::sigma::{sigma_fn, HalfPeriods};
use super::theta::{theta_direct, theta_k, EllipticModulus, ThetaKind};
use crate::error::Result;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Window of the unreduced reference sums.
const DIRECT_WIDTH: usize = 80;

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

/// Sign picked up by θ_kind under z → z + 1 (and z → z + τ).
fn signs(kind: ThetaKind) -> (f64, f64) {
    match kind {
        ThetaKind::One => (-1.0, -1.0),
        ThetaKind::Two => (-1.0, 1.0),
        ThetaKind::Three => (1.0, 1.0),
        ThetaKind::Four => (1.0, -1.0),
    }
}

/// θ(z + a + bτ) from an unreduced sum against s₁^a s₂^b e^{−πib²τ−2πibz} θ(z).
pub fn quasi_periodicity_residual(kind: ThetaKind, z: Complex64, a: i32, b: i32, m: &EllipticModulus) -> Result<f64> {
    let tau = m.tau();
    let lhs = theta_direct(kind, z + a as f64 + b as f64 * tau, tau, 0, DIRECT_WIDTH);
    let (s1, s2) = signs(kind);
    let bf = b as f64;
    let pref = s1.powi(a) * s2.powi(b) * (-PI * I * bf * bf * tau - 2.0 * PI * I * bf * z).exp();
    Ok(rel(lhs, pref * theta_k(kind, z, m)?))
}

/// The three half-period shifts of θ₁ for the series convention used here:
/// θ₁(z+½) = −θ₂(z), θ₁(z+τ/2) = −i e^{−πi(z+τ/4)} θ₄(z),
/// θ₁(z+½+τ/2) = −e^{−πi(z+τ/4)} θ₃(z).
pub fn half_period_residuals(z: Complex64, m: &EllipticModulus) -> Result<[f64; 3]> {
    let tau = m.tau();
    let t1 = |w: Complex64| theta_direct(ThetaKind::One, w, tau, 0, DIRECT_WIDTH);
    let e = (-PI * I * (z + tau / 4.0)).exp();
    Ok([
        rel(t1(z + 0.5), -theta_k(ThetaKind::Two, z, m)?),
        rel(t1(z + tau / 2.0), -I * e * theta_k(ThetaKind::Four, z, m)?),
        rel(t1(z + 0.5 + tau / 2.0), -e * theta_k(ThetaKind::Three, z, m)?),
    ])
}

/// The product formulas expressing θ_k(x|τ)θ_k(y|τ) through θ₂, θ₃ at (x±y | 2τ),
/// in the order θ₄θ₄, θ₃θ₃, θ₂θ₂, θ₁θ₁.
pub fn addition_residuals(x: Complex64, y: Complex64, m: &EllipticModulus) -> Result<[f64; 4]> {
    let m2 = m.doubled();
    let t = |k, z| theta_k(k, z, m);
    let d2 = |z| theta_k(ThetaKind::Two, z, &m2);
    let d3 = |z| theta_k(ThetaKind::Three, z, &m2);
    let (s, d) = (x + y, x - y);
    let (a33, a22) = (d3(s)? * d3(d)?, d2(s)? * d2(d)?);
    let (a32, a23) = (d3(s)? * d2(d)?, d2(s)? * d3(d)?);
    use ThetaKind::*;
    Ok([
        rel(t(Four, x)? * t(Four, y)?, a33 - a22),
        rel(t(Three, x)? * t(Three, y)?, a33 + a22),
        rel(t(Two, x)? * t(Two, y)?, a32 + a23),
        rel(t(One, x)? * t(One, y)?, a32 - a23),
    ])
}

/// |θ_k(−z) ∓ θ_k(z)|, odd for θ₁ and even otherwise.
pub fn parity_residual(kind: ThetaKind, z: Complex64, m: &EllipticModulus) -> Result<f64> {
    let s = if kind == ThetaKind::One { -1.0 } else { 1.0 };
    Ok(rel(theta_k(kind, -z, m)?, s * theta_k(kind, z, m)?))
}

/// σ(z + 2ω₁) = −e^{2η₁(z+ω₁)} σ(z) and σ(z + 2ω₂) = −e^{2η₂(z+ω₂)} σ(z), worst of the two.
pub fn sigma_law_residual(z: Complex64, hp: &HalfPeriods) -> Result<f64> {
    let s = sigma_fn(0, z, hp)?;
    let (w1, w2) = (hp.omega1(), hp.omega2());
    let a = rel(sigma_fn(0, z + 2.0 * w1, hp)?, -(2.0 * hp.eta1() * (z + w1)).exp() * s);
    let b = rel(sigma_fn(0, z + 2.0 * w2, hp)?, -(2.0 * hp.eta2() * (z + w2)).exp() * s);
    Ok(a.max(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quasi_periodicity_in_both_directions() {
        let m = EllipticModulus::new(c(0.2, 1.1)).unwrap();
        for kind in ThetaKind::ALL {
            for a in -2..=2 {
                for b in -2..=2 {
                    let r = quasi_periodicity_residual(kind, c(0.17, -0.2), a, b, &m).unwrap();
                    assert!(r < 1e-11, "{kind:?} {a} {b} {r}");
                }
            }
        }
    }

    #[test]
    fn half_periods_with_the_series_sign() {
        let m = EllipticModulus::new(c(0.0, 1.0)).unwrap();
        for z in [c(0.1, 0.0), c(0.31, -0.12), c(-0.4, 0.3)] {
            for r in half_period_residuals(z, &m).unwrap() {
                assert!(r < 1e-11, "{r}");
            }
        }
        // The relation θ₁(z+½) = +θ₂(z) does not hold for this series.
        let z = c(0.1, 0.0);
        let lhs = theta_direct(ThetaKind::One, z + 0.5, m.tau(), 0, 80);
        assert!((lhs - theta_k(ThetaKind::Two, z, &m).unwrap()).norm() > 0.1);
    }

    #[test]
    fn product_formulas() {
        for tau in [c(0.0, 1.1), c(0.4, 0.7)] {
            let m = EllipticModulus::new(tau).unwrap();
            for (x, y) in [(c(0.1, 0.05), c(0.33, -0.1)), (c(-0.27, 0.2), c(0.41, 0.0))] {
                for r in addition_residuals(x, y, &m).unwrap() {
                    assert!(r < 1e-11, "{r}");
                }
            }
        }
    }

    #[test]
    fn parity_and_sigma_law() {
        let m = EllipticModulus::new(c(0.1, 0.9)).unwrap();
        for kind in ThetaKind::ALL {
            assert!(parity_residual(kind, c(0.23, 0.11), &m).unwrap() < 1e-12);
        }
        let hp = HalfPeriods::new(c(1.0, 0.0), c(0.0, 2.0)).unwrap();
        assert!(sigma_law_residual(c(0.2, 0.1), &hp).unwrap() < 1e-10);
    }
}
