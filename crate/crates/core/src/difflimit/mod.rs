//! The ħ → 0 expansion of M̃₁, M̃₂: constant terms, the second- and
//! fourth-order differential operators, their Δ-gauge forms and the
//! Inozemtsev potential.

mod jet;

pub use jet::{Jet, JetFunction, PlaneWave, Product, Symmetrized, ThetaPair, JET_ORDER};

use num_complex::Complex64;

use crate::diffops::{build_m_tilde, Degree};
use crate::elliptic::{log_theta1_deriv, theta1_ratios, wp, EllipticModulus, HalfPeriods};
use crate::error::Result;
use crate::weight::WeightPoint;

/// Default radius of the ħ circle used for coefficient extraction.
pub const DEFAULT_H0: f64 = 0.02;

/// Number of ħ nodes on the circle.
pub const CIRCLE_NODES: usize = 32;

/// Taylor coefficients of ħ ↦ M̃_d(ħ) f(λ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HbarCoefficients {
    pub c0: Complex64,
    pub c2: Complex64,
    pub c4: Complex64,
    /// Odd content relative to the sampled values: max over n = 1, 3, 5 of
    /// |c_n|·h0ⁿ / max(1, max_k |g(ħ_k)|).
    pub odd: f64,
}

/// Extracts the Taylor coefficients of ħ ↦ M̃_d(ħ) f(λ) by a discrete Fourier
/// transform over ħ = h0·e^{2πik/N}, k = 0..N−1. Aliasing enters at order ħ^N.
pub fn hbar_coefficients<F: JetFunction>(
    d: Degree,
    f: &F,
    lam: &WeightPoint,
    h0: f64,
    m: &EllipticModulus,
) -> Result<HbarCoefficients> {
    let n = CIRCLE_NODES;
    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        let hbar = Complex64::from_polar(h0, std::f64::consts::TAU * k as f64 / n as f64);
        let op = build_m_tilde(d, hbar, *m);
        values.push(op.apply(|x| f.value(x, m), lam)?);
    }
    let coeff = |order: usize| -> Complex64 {
        let s: Complex64 = values
            .iter()
            .enumerate()
            .map(|(k, v)| v * Complex64::from_polar(1.0, -std::f64::consts::TAU * (k * order) as f64 / n as f64))
            .sum();
        s / n as f64 / h0.powi(order as i32)
    };
    let scale = values.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let odd = [1, 3, 5].iter().map(|&o| coeff(o).norm() * h0.powi(o as i32) / scale).fold(0.0, f64::max);
    Ok(HbarCoefficients { c0: coeff(0), c2: coeff(2), c4: coeff(4), odd })
}

/// a, b, c, d = θ₁′/θ₁, θ₁″/θ₁, θ₁‴/θ₁, θ₁⁗/θ₁ at λ₊ and λ₋.
struct Ratios {
    a: [Complex64; 2],
    b: [Complex64; 2],
    c: [Complex64; 2],
    d: [Complex64; 2],
}

impl Ratios {
    fn at(lam: &WeightPoint, m: &EllipticModulus) -> Result<Self> {
        let p = theta1_ratios(lam.plus(), m)?;
        let q = theta1_ratios(lam.minus(), m)?;
        Ok(Self { a: [p[1], q[1]], b: [p[2], q[2]], c: [p[3], q[3]], d: [p[4], q[4]] })
    }
}

/// M_{1,2} acting on a jet:
/// ∂₁² + ∂₂² − 2(a₊+a₋)∂₁ − 2(a₊−a₋)∂₂ + 2(b₊+b₋).
pub fn apply_m12_jet(f: &Jet, lam: &WeightPoint, m: &EllipticModulus) -> Result<Complex64> {
    let r = Ratios::at(lam, m)?;
    let ([ap, am], [bp, bm]) = (r.a, r.b);
    Ok(f.get(2, 0) + f.get(0, 2) - 2.0 * (ap + am) * f.get(1, 0) - 2.0 * (ap - am) * f.get(0, 1)
        + 2.0 * (bp + bm) * f.get(0, 0))
}

pub fn apply_m12<F: JetFunction>(f: &F, lam: &WeightPoint, m: &EllipticModulus) -> Result<Complex64> {
    apply_m12_jet(&f.jet(lam, m)?, lam, m)
}

/// Coefficient of f in M_{2,4} − 2M_{1,4}:
/// (d₊+d₋) − 4(a₊c₊+a₋c₋) + 4(a₊²b₊+a₋²b₋) − 2b₊b₋.
fn m24_potential(r: &Ratios) -> Complex64 {
    let ([ap, am], [bp, bm], [cp, cm], [dp, dm]) = (r.a, r.b, r.c, r.d);
    (dp + dm) - 4.0 * (ap * cp + am * cm) + 4.0 * (ap * ap * bp + am * am * bm) - 2.0 * bp * bm
}

/// M_{2,4} − 2M_{1,4} acting on a jet.
pub fn apply_m24_minus_2m14_jet(f: &Jet, lam: &WeightPoint, m: &EllipticModulus) -> Result<Complex64> {
    let r = Ratios::at(lam, m)?;
    let ([ap, am], [bp, bm]) = (r.a, r.b);
    let sq = 2.0 * (ap * ap + am * am);
    Ok(f.get(2, 2) - 2.0 * (ap - am) * f.get(2, 1) - 2.0 * (ap + am) * f.get(1, 2)
        + (sq - (bp + 2.0 * ap * am + bm)) * f.get(2, 0)
        + (sq - (bp - 2.0 * ap * am + bm)) * f.get(0, 2)
        + 4.0 * (ap * ap - am * am) * f.get(1, 1)
        + (2.0 * (ap * bp + am * bm) + 2.0 * (bp * am + ap * bm) - 4.0 * (ap.powi(3) + am.powi(3))) * f.get(1, 0)
        + (2.0 * (ap * bp - am * bm) - 2.0 * (bp * am - ap * bm) - 4.0 * (ap.powi(3) - am.powi(3))) * f.get(0, 1)
        + m24_potential(&r) * f.get(0, 0))
}

pub fn apply_m24_minus_2m14<F: JetFunction>(f: &F, lam: &WeightPoint, m: &EllipticModulus) -> Result<Complex64> {
    apply_m24_minus_2m14_jet(&f.jet(lam, m)?, lam, m)
}

/// Jet up to order two of 2((log θ₁)″(λ₊) − (log θ₁)″(λ₋)) (sign = −1) or
/// 4((log θ₁)″(λ₊) + (log θ₁)″(λ₋)) (sign = +1 with weight 4).
fn log_potential_jet(lam: &WeightPoint, m: &EllipticModulus, weight: f64, sign: f64) -> Result<Jet> {
    let derivs = |z: Complex64| -> Result<[Complex64; JET_ORDER + 1]> {
        let zero = Complex64::new(0.0, 0.0);
        Ok([log_theta1_deriv(z, m, 2)?, log_theta1_deriv(z, m, 3)?, log_theta1_deriv(z, m, 4)?, zero, zero])
    };
    let p = Jet::along(&derivs(lam.plus())?, 1.0);
    let q = Jet::along(&derivs(lam.minus())?, -1.0);
    // Orders above two are not available; clear them.
    let mut j = (p + q.scale(Complex64::new(sign, 0.0))).scale(Complex64::new(weight, 0.0));
    for a in 0..=JET_ORDER {
        for b in 0..=JET_ORDER - a {
            if a + b > 2 {
                j.d[a][b] = Complex64::new(0.0, 0.0);
            }
        }
    }
    Ok(j)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

/// (first, second) residuals of
/// Δ⁻¹M_{1,2}Δ = ∂₁² + ∂₂² + 4((log θ₁)″(+) + (log θ₁)″(−)) and
/// Δ⁻¹(M_{2,4} − 2M_{1,4})Δ = D², D = ∂₁∂₂ + 2((log θ₁)″(+) − (log θ₁)″(−)),
/// each as |L − R| / max(1, |L|, |R|).
pub fn gauge_identity_residual<F: JetFunction>(lam: &WeightPoint, m: &EllipticModulus, f: &F) -> Result<(f64, f64)> {
    let fj = f.jet(lam, m)?;
    let delta = ThetaPair::DELTA.jet(lam, m)?;
    let gauged = delta * fj;
    let dv = delta.value();
    crate::elliptic::nonvanishing(dv, "Δ")?;

    let lhs1 = apply_m12_jet(&gauged, lam, m)? / dv;
    let v = log_potential_jet(lam, m, 4.0, 1.0)?;
    let rhs1 = fj.get(2, 0) + fj.get(0, 2) + v.value() * fj.value();

    let lhs2 = apply_m24_minus_2m14_jet(&gauged, lam, m)? / dv;
    let p = log_potential_jet(lam, m, 2.0, -1.0)?;
    let df = fj.derivative(1, 1) + p * fj;
    let rhs2 = df.get(1, 1) + p.value() * df.value();
    Ok((rel(lhs1, rhs1), rel(lhs2, rhs2)))
}

/// Coupling constants g(g−1) and gᵣ(gᵣ−1), r = 1, 2, 3, of the BC₂ potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InozemtsevCouplings {
    pub g: f64,
    pub g_r: [f64; 3],
}

impl Default for InozemtsevCouplings {
    /// g(g−1) = 2 and gᵣ(gᵣ−1) = 0.
    fn default() -> Self {
        Self { g: 2.0, g_r: [0.0; 3] }
    }
}

/// V(λ) − W(λ) with V = 4((log θ₁)″(λ₊) + (log θ₁)″(λ₋)) and
/// W = −8ω₁²[g(℘(x₊) + ℘(x₋)) + Σᵣ gᵣ(℘(ωᵣ+x₁) + ℘(ωᵣ+x₂))], x = 2ω₁λ.
pub fn inozemtsev_offset(lam: &WeightPoint, hp: &HalfPeriods, k: &InozemtsevCouplings) -> Result<Complex64> {
    let m = hp.modulus();
    let w1 = hp.omega1();
    let v = 4.0 * (log_theta1_deriv(lam.plus(), m, 2)? + log_theta1_deriv(lam.minus(), m, 2)?);
    let x = lam.scaled(2.0 * w1);
    let mut bracket = k.g * (wp(x.plus(), hp)? + wp(x.minus(), hp)?);
    for r in 1..=3 {
        if k.g_r[r - 1] != 0.0 {
            let wr = hp.half_period(r);
            bracket += k.g_r[r - 1] * (wp(wr + x.l1, hp)? + wp(wr + x.l2, hp)?);
        }
    }
    Ok(v + 8.0 * w1 * w1 * bracket)
}

/// |(V − W)(λ_a) − (V − W)(λ_b)|.
pub fn inozemtsev_residual(
    lam_a: &WeightPoint,
    lam_b: &WeightPoint,
    hp: &HalfPeriods,
    k: &InozemtsevCouplings,
) -> Result<f64> {
    Ok((inozemtsev_offset(lam_a, hp, k)? - inozemtsev_offset(lam_b, hp, k)?).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::ThetaKind;
    use crate::weight::WeylElement;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn md(t: f64) -> EllipticModulus {
        EllipticModulus::new(c(0.0, t)).unwrap()
    }

    fn points() -> Vec<WeightPoint> {
        vec![
            WeightPoint::real(0.31, 0.18),
            WeightPoint::new(c(0.27, 0.05), c(0.11, 0.1)),
            WeightPoint::new(c(0.41, 0.12), c(0.22, 0.02)),
        ]
    }

    #[test]
    fn leading_constants_and_second_order() {
        let m = md(1.3);
        for lam in points() {
            let f = PlaneWave::new(1, 0);
            let k1 = hbar_coefficients(Degree::One, &f, &lam, DEFAULT_H0, &m).unwrap();
            let k2 = hbar_coefficients(Degree::Two, &f, &lam, DEFAULT_H0, &m).unwrap();
            let fv = f.value(&lam, &m).unwrap();
            assert!((k1.c0 - 4.0 * fv).norm() < 1e-10);
            assert!((k2.c0 - 8.0 * fv).norm() < 1e-10);
            let m12 = apply_m12(&f, &lam, &m).unwrap();
            assert!((k1.c2 - m12).norm() < 1e-8 * m12.norm().max(1.0), "{} {}", k1.c2, m12);
            assert!((k2.c2 - 2.0 * k1.c2).norm() < 1e-8 * m12.norm().max(1.0));
        }
    }

    #[test]
    fn odd_orders_vanish() {
        let m = md(1.2);
        let f = ThetaPair::new(ThetaKind::Two, ThetaKind::Three);
        for d in Degree::ALL {
            let k = hbar_coefficients(d, &f, &points()[1], DEFAULT_H0, &m).unwrap();
            assert!(k.odd < 1e-13, "{}", k.odd);
        }
    }

    #[test]
    fn constant_operand() {
        let m = md(1.2);
        let lam = points()[1];
        let r = theta1_ratios(lam.plus(), &m).unwrap();
        let s = theta1_ratios(lam.minus(), &m).unwrap();
        let got = apply_m12(&PlaneWave::ONE, &lam, &m).unwrap();
        assert!((got - 2.0 * (r[2] + s[2])).norm() < 1e-12);
    }

    #[test]
    fn fourth_order_combination_matches_extraction() {
        let m = md(1.2);
        for lam in points() {
            for f in [PlaneWave::new(1, -1), PlaneWave::ONE] {
                let k1 = hbar_coefficients(Degree::One, &f, &lam, DEFAULT_H0, &m).unwrap();
                let k2 = hbar_coefficients(Degree::Two, &f, &lam, DEFAULT_H0, &m).unwrap();
                let extracted = k2.c4 - 2.0 * k1.c4;
                let direct = apply_m24_minus_2m14(&f, &lam, &m).unwrap();
                assert!((extracted - direct).norm() < 1e-4 * direct.norm().max(1.0), "{extracted} {direct}");
            }
        }
    }

    #[test]
    fn halved_zeroth_order_weights_miss_the_extraction() {
        // Replacing the weights 1 and 4 of d± and a±²b± by ½ and 2 changes the result.
        let m = md(1.2);
        let lam = points()[0];
        let f = PlaneWave::ONE;
        let r = Ratios::at(&lam, &m).unwrap();
        let drop = 0.5 * (r.d[0] + r.d[1]) + 2.0 * (r.a[0].powi(2) * r.b[0] + r.a[1].powi(2) * r.b[1]);
        let k1 = hbar_coefficients(Degree::One, &f, &lam, DEFAULT_H0, &m).unwrap();
        let k2 = hbar_coefficients(Degree::Two, &f, &lam, DEFAULT_H0, &m).unwrap();
        let halved = apply_m24_minus_2m14(&f, &lam, &m).unwrap() - drop;
        assert!((k2.c4 - 2.0 * k1.c4 - halved).norm() > 1.0);
    }

    #[test]
    fn symmetric_operands_give_symmetric_values() {
        let m = md(1.2);
        let f = Symmetrized(PlaneWave::new(1, -2));
        let lam = points()[2];
        let a = apply_m12(&f, &lam, &m).unwrap();
        let b = apply_m12(&f, &lam.swapped(), &m).unwrap();
        assert!((a - b).norm() < 1e-10 * a.norm().max(1.0));
    }

    #[test]
    fn gauge_forms() {
        let m = md(1.2);
        for lam in points() {
            let (r1, r2) = gauge_identity_residual(&lam, &m, &PlaneWave::ONE).unwrap();
            assert!(r1 < 1e-9 && r2 < 1e-9, "{r1} {r2}");
            for f in [PlaneWave::new(1, 0), PlaneWave::new(-1, 2)] {
                let (r1, r2) = gauge_identity_residual(&lam, &m, &f).unwrap();
                assert!(r1 < 1e-7 && r2 < 1e-7, "{r1} {r2}");
            }
            let (r1, r2) =
                gauge_identity_residual(&lam, &m, &ThetaPair::new(ThetaKind::Three, ThetaKind::Four)).unwrap();
            assert!(r1 < 1e-7 && r2 < 1e-7, "{r1} {r2}");
        }
    }

    #[test]
    fn gauge_form_of_the_degree_two_term_has_factor_two() {
        // Δ⁻¹M_{2,2}Δ = 2Δ⁻¹M_{1,2}Δ, so it is twice the Laplacian-plus-potential form.
        let m = md(1.2);
        let lam = points()[1];
        let f = PlaneWave::new(1, 0);
        let gauged = Product(ThetaPair::DELTA, f);
        let k2 = hbar_coefficients(Degree::Two, &gauged, &lam, DEFAULT_H0, &m).unwrap();
        let dv = ThetaPair::DELTA.value(&lam, &m).unwrap();
        let fj = f.jet(&lam, &m).unwrap();
        let pot = 4.0 * (log_theta1_deriv(lam.plus(), &m, 2).unwrap() + log_theta1_deriv(lam.minus(), &m, 2).unwrap());
        let rhs = fj.get(2, 0) + fj.get(0, 2) + pot * fj.value();
        assert!((k2.c2 / dv - 2.0 * rhs).norm() < 1e-6 * rhs.norm());
        assert!((k2.c2 / dv - rhs).norm() > 1.0);
    }

    #[test]
    fn inozemtsev_difference_is_constant() {
        let hp = HalfPeriods::new(c(0.5, 0.0), c(0.0, 0.55)).unwrap();
        let k = InozemtsevCouplings::default();
        let pts = points();
        for a in &pts {
            for b in &pts {
                assert!(inozemtsev_residual(a, b, &hp, &k).unwrap() < 1e-8);
            }
            for w in WeylElement::all() {
                assert!(inozemtsev_residual(a, &w.act(a), &hp, &k).unwrap() < 1e-10);
            }
        }
        let off = inozemtsev_offset(&pts[0], &hp, &k).unwrap();
        assert!((off + 32.0 * hp.omega1() * hp.eta1()).norm() < 1e-9, "{off}");
    }

    #[test]
    fn inozemtsev_boundary_couplings_break_constancy() {
        let hp = HalfPeriods::new(c(0.5, 0.0), c(0.0, 0.55)).unwrap();
        let k = InozemtsevCouplings { g: 2.0, g_r: [0.0, 1.0, 0.0] };
        let pts = points();
        assert!(inozemtsev_residual(&pts[0], &pts[2], &hp, &k).unwrap() > 1e-2);
    }

    #[test]
    fn inozemtsev_general_half_periods() {
        let hp = HalfPeriods::new(c(0.8, 0.2), c(-0.1, 0.9)).unwrap();
        let k = InozemtsevCouplings::default();
        let pts = points();
        assert!(inozemtsev_residual(&pts[0], &pts[1], &hp, &k).unwrap() < 1e-8);
    }
}
