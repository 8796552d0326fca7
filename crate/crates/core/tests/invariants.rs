//! Randomized invariants over moduli, points and ħ.

use ellidiff_core::diffops::{build_m_tilde, constant_k, lemma22_lhs, op_distance, Degree};
use ellidiff_core::elliptic::{
    addition_residuals, half_period_residuals, quasi_periodicity_residual, EllipticModulus, ThetaKind,
};
use ellidiff_core::face_weights::ybe_residual;
use ellidiff_core::spectra::{basis_f, eigen_residual};
use ellidiff_core::weight::{WeightPoint, WeylElement};
use ellidiff_core::{Complex64, Error};
use proptest::prelude::*;

fn modulus() -> impl Strategy<Value = EllipticModulus> {
    (-0.5f64..0.5, 0.6f64..1.6).prop_map(|(re, im)| EllipticModulus::new(Complex64::new(re, im)).unwrap())
}

fn z() -> impl Strategy<Value = Complex64> {
    (-0.5f64..0.5, -0.2f64..0.2).prop_map(|(re, im)| Complex64::new(re, im))
}

fn point() -> impl Strategy<Value = WeightPoint> {
    (0.05f64..0.45, 0.0f64..0.2, 0.05f64..0.45, 0.0f64..0.2)
        .prop_map(|(a, b, c, d)| WeightPoint::new(Complex64::new(a, b), Complex64::new(c, d)))
}

fn hbar() -> impl Strategy<Value = Complex64> {
    (0.06f64..0.15, -0.02f64..0.02).prop_map(|(re, im)| Complex64::new(re, im))
}

/// Pole proximity is an admissible outcome for a random draw.
fn near_pole<T>(r: &Result<T, Error>) -> bool {
    matches!(r, Err(Error::PoleProximity { .. }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn theta_quasi_periodicity(m in modulus(), z in z(), a in -2i32..=2, b in -2i32..=2) {
        for kind in ThetaKind::ALL {
            prop_assert!(quasi_periodicity_residual(kind, z, a, b, &m).unwrap() < 1e-11);
        }
    }

    #[test]
    fn theta_half_periods_and_products(m in modulus(), x in z(), y in z()) {
        for r in half_period_residuals(x, &m).unwrap() {
            prop_assert!(r < 1e-11);
        }
        for r in addition_residuals(x, y, &m).unwrap() {
            prop_assert!(r < 1e-11);
        }
    }

    #[test]
    fn zero_shift_sum_is_constant(m in modulus(), lam in point(), h in hbar()) {
        let lhs = lemma22_lhs(&lam, h, &m);
        prop_assume!(!near_pole(&lhs));
        let k = constant_k(h, &m).unwrap();
        prop_assert!((lhs.unwrap() - k).norm() < 1e-9 * k.norm().max(1.0));
    }

    #[test]
    fn symmetric_basis_is_weyl_invariant(m in modulus(), lam in point()) {
        for w in WeylElement::all() {
            for i in 1..=3u8 {
                let a = basis_f(i, &w.act(&lam), &m).unwrap();
                let b = basis_f(i, &lam, &m).unwrap();
                prop_assert!((a - b).norm() < 1e-11 * b.norm().max(1.0));
            }
        }
    }

    #[test]
    fn symmetric_basis_diagonalizes_both_operators(m in modulus(), lam in point(), h in hbar(), i in 1u8..=3) {
        for d in Degree::ALL {
            let r = eigen_residual(d, i, &lam, h, &m);
            prop_assume!(!near_pole(&r));
            prop_assert!(r.unwrap() < 1e-9);
        }
    }

    #[test]
    fn m_tilde_is_weyl_conjugation_invariant(m in modulus(), lam in point(), h in hbar()) {
        for d in Degree::ALL {
            let op = build_m_tilde(d, h, m);
            for w in WeylElement::all() {
                let r = op_distance(&op, &op.conjugate_by(&w), &[lam]);
                prop_assume!(!near_pole(&r));
                prop_assert!(r.unwrap() < 1e-10);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn yang_baxter_on_random_parameters(
        m in modulus(),
        lam in point(),
        u in z(),
        v in z(),
        w in z(),
        h in hbar(),
    ) {
        let r = ybe_residual(&lam, u, v, w, h, &m);
        prop_assume!(!near_pole(&r));
        prop_assert!(r.unwrap() < 1e-9);
    }
}
