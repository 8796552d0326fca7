//! Level-one theta functions Θ_μ on the C₂ weight lattice, the Weyl-invariant
//! basis S_μ, the eigenfunctions f_i of M̃_d and their eigenvalues.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::diffops::{build_h_pm, build_m_tilde, lame_eigenvalue, Degree, DifferenceOperator, PlusMinus};
use crate::elliptic::{theta_k, EllipticModulus, ThetaKind};
use crate::error::{Error, Result};
use crate::weight::{WeightPoint, WeylElement};

const I: Complex64 = Complex64::new(0.0, 1.0);
const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Largest condition number accepted for a 3×3 interpolation solve.
pub const MAX_CONDITION: f64 = 1e8;

/// The four classes of P modulo Q∨ = 2ℤε₁ + 2ℤε₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeClass {
    Zero,
    E1,
    E2,
    E1E2,
}

impl LatticeClass {
    pub const ALL: [LatticeClass; 4] = [LatticeClass::Zero, LatticeClass::E1, LatticeClass::E2, LatticeClass::E1E2];

    /// Coordinate parities (n₁ mod 2, n₂ mod 2).
    pub fn parity(self) -> (i32, i32) {
        match self {
            LatticeClass::Zero => (0, 0),
            LatticeClass::E1 => (1, 0),
            LatticeClass::E2 => (0, 1),
            LatticeClass::E1E2 => (1, 1),
        }
    }

    pub fn from_vector(v: (i32, i32)) -> Self {
        match (v.0.rem_euclid(2), v.1.rem_euclid(2)) {
            (0, 0) => LatticeClass::Zero,
            (1, 0) => LatticeClass::E1,
            (0, 1) => LatticeClass::E2,
            _ => LatticeClass::E1E2,
        }
    }
}

/// Dominant level-one weights indexing the invariant basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dominant {
    Zero,
    Lambda1,
    Lambda2,
}

impl Dominant {
    pub const ALL: [Dominant; 3] = [Dominant::Zero, Dominant::Lambda1, Dominant::Lambda2];

    fn vector(self) -> (i32, i32) {
        match self {
            Dominant::Zero => (0, 0),
            Dominant::Lambda1 => (1, 0),
            Dominant::Lambda2 => (1, 1),
        }
    }
}

/// Evaluation route for Θ_μ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaMethod {
    Lattice,
    Product,
}

/// Half-width N such that the one-dimensional terms with |n| > N are below
/// the modulus' target, for exponent −π Im τ n²/2 + 2π|Im λ||n|.
fn lattice_width(im_lam: f64, m: &EllipticModulus) -> Result<usize> {
    let a = std::f64::consts::PI * m.tau().im / 2.0;
    let b = TWO_PI * im_lam.abs();
    let log_target = (m.target_abs_err() * 1e-3).ln();
    let mut n = 1usize;
    loop {
        let x = n as f64;
        if x > b / a && -a * x * x + b * x < log_target {
            return Ok(n);
        }
        n += 1;
        if n > m.max_terms() {
            return Err(Error::TruncationOverflow { needed: n, limit: m.max_terms() });
        }
    }
}

/// Θ_μ(λ) = Σ_{n ∈ μ+Q∨} exp 2πi(n₁λ₁ + n₂λ₂ + (n₁² + n₂²)τ/4).
pub fn theta_mu(mu: LatticeClass, lam: &WeightPoint, m: &EllipticModulus, method: ThetaMethod) -> Result<Complex64> {
    match method {
        ThetaMethod::Lattice => {
            let tau = m.tau();
            let n1max = lattice_width(lam.l1.im, m)? as i32;
            let n2max = lattice_width(lam.l2.im, m)? as i32;
            let (p1, p2) = mu.parity();
            let mut acc = Complex64::new(0.0, 0.0);
            for n1 in (-n1max - 1..=n1max + 1).filter(|n| n.rem_euclid(2) == p1) {
                for n2 in (-n2max - 1..=n2max + 1).filter(|n| n.rem_euclid(2) == p2) {
                    let (a, b) = (n1 as f64, n2 as f64);
                    acc += (TWO_PI * I * (a * lam.l1 + b * lam.l2 + (a * a + b * b) * tau / 4.0)).exp();
                }
            }
            Ok(acc)
        }
        ThetaMethod::Product => {
            let m2 = m.doubled();
            let factor = |odd: i32, z: Complex64| {
                let kind = if odd == 1 { ThetaKind::Two } else { ThetaKind::Three };
                theta_k(kind, 2.0 * z, &m2)
            };
            let (p1, p2) = mu.parity();
            Ok(factor(p1, lam.l1)? * factor(p2, lam.l2)?)
        }
    }
}

/// S_μ = (1/|W_μ|) Σ_{w∈W} Θ_{w(μ)}.
pub fn s_mu(mu: Dominant, lam: &WeightPoint, m: &EllipticModulus) -> Result<Complex64> {
    let v = mu.vector();
    let all = WeylElement::all();
    let stabilizer = all.iter().filter(|w| w.act_vector(v) == v).count() as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for w in all {
        acc += theta_mu(LatticeClass::from_vector(w.act_vector(v)), lam, m, ThetaMethod::Product)?;
    }
    Ok(acc / stabilizer)
}

fn theta_p(class: LatticeClass, lam: &WeightPoint, m: &EllipticModulus) -> Result<Complex64> {
    theta_mu(class, lam, m, ThetaMethod::Product)
}

/// f₁ = Θ_{ε₁}+Θ_{ε₂}, f₂ = Θ₀+Θ_{ε₁+ε₂}, f₃ = Θ₀−Θ_{ε₁+ε₂} and the
/// antisymmetric f₀ = Θ_{ε₁}−Θ_{ε₂}.
pub fn basis_f(i: u8, lam: &WeightPoint, m: &EllipticModulus) -> Result<Complex64> {
    use LatticeClass::*;
    Ok(match i {
        0 => theta_p(E1, lam, m)? - theta_p(E2, lam, m)?,
        1 => theta_p(E1, lam, m)? + theta_p(E2, lam, m)?,
        2 => theta_p(Zero, lam, m)? + theta_p(E1E2, lam, m)?,
        3 => theta_p(Zero, lam, m)? - theta_p(E1E2, lam, m)?,
        other => return Err(Error::Constraint(format!("basis index must be 0..=3, got {other}"))),
    })
}

fn kind_of(i: u8) -> Result<ThetaKind> {
    match i {
        0 => Ok(ThetaKind::One),
        1 => Ok(ThetaKind::Two),
        2 => Ok(ThetaKind::Three),
        3 => Ok(ThetaKind::Four),
        other => Err(Error::Constraint(format!("basis index must be 0..=3, got {other}"))),
    }
}

/// θ_{i+1}(λ₊)θ_{j+1}(λ₋).
pub fn theta_product(i: u8, j: u8, lam: &WeightPoint, m: &EllipticModulus) -> Result<Complex64> {
    Ok(theta_k(kind_of(i)?, lam.plus(), m)? * theta_k(kind_of(j)?, lam.minus(), m)?)
}

/// E_{1,i} = E_{i+1}² and E_{2,i} = 2E_{1,i} for i = 1, 2, 3; zero for i = 0.
pub fn eigenvalue(d: Degree, i: u8, hbar: Complex64, m: &EllipticModulus) -> Result<Complex64> {
    if i == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let e1 = lame_eigenvalue(kind_of(i)?, hbar, m)?.powi(2);
    Ok(match d {
        Degree::One => e1,
        Degree::Two => 2.0 * e1,
    })
}

fn apply_to<F>(op: &DifferenceOperator, f: F, lam: &WeightPoint) -> Result<Complex64>
where
    F: Fn(&WeightPoint) -> Result<Complex64>,
{
    op.apply(f, lam)
}

/// |M̃_d f_i(λ) − E_{d,i} f_i(λ)| / max(1, |E_{d,i} f_i(λ)|).
pub fn eigen_residual(d: Degree, i: u8, lam: &WeightPoint, hbar: Complex64, m: &EllipticModulus) -> Result<f64> {
    let op = build_m_tilde(d, hbar, *m);
    eigen_residual_with(&op, d, i, lam, m)
}

/// As [`eigen_residual`] with a prebuilt M̃_d.
pub fn eigen_residual_with(
    op: &DifferenceOperator,
    d: Degree,
    i: u8,
    lam: &WeightPoint,
    m: &EllipticModulus,
) -> Result<f64> {
    let lhs = apply_to(op, |x| basis_f(i, x, m), lam)?;
    let rhs = eigenvalue(d, i, op.step(), m)? * basis_f(i, lam, m)?;
    Ok((lhs - rhs).norm() / rhs.norm().max(1.0))
}

/// |H₊H₋ g − E_{i+1}E_{j+1} g| / max(1, |E g|) for g = θ_{i+1}(λ₊)θ_{j+1}(λ₋), i, j ∈ 1..=3.
pub fn mixed_eigen_residual(i: u8, j: u8, lam: &WeightPoint, hbar: Complex64, m: &EllipticModulus) -> Result<f64> {
    if i == 0 || j == 0 {
        return Err(Error::Constraint("mixed eigenfunctions use θ₂, θ₃, θ₄".into()));
    }
    let op = build_h_pm(PlusMinus::Plus, hbar, *m).compose(&build_h_pm(PlusMinus::Minus, hbar, *m))?;
    let e = lame_eigenvalue(kind_of(i)?, hbar, m)? * lame_eigenvalue(kind_of(j)?, hbar, m)?;
    let lhs = apply_to(&op, |x| theta_product(i, j, x, m), lam)?;
    let rhs = e * theta_product(i, j, lam, m)?;
    Ok((lhs - rhs).norm() / rhs.norm().max(1.0))
}

fn condition(a: &Matrix3<Complex64>) -> f64 {
    let s = a.svd(false, false).singular_values;
    let (hi, lo) = (s.max(), s.min());
    if lo == 0.0 {
        f64::INFINITY
    } else {
        hi / lo
    }
}

fn s_matrix(points: &[WeightPoint; 3], m: &EllipticModulus) -> Result<Matrix3<Complex64>> {
    let mut a = Matrix3::zeros();
    for (k, p) in points.iter().enumerate() {
        for (j, mu) in Dominant::ALL.iter().enumerate() {
            a[(k, j)] = s_mu(*mu, p, m)?;
        }
    }
    Ok(a)
}

/// Columns are the coordinates of M̃_d S_μ in the basis (S₀, S_{Λ₁}, S_{Λ₂}),
/// interpolated at three points.
pub fn preservation_matrix(
    op: &DifferenceOperator,
    fit: &[WeightPoint; 3],
    m: &EllipticModulus,
) -> Result<Matrix3<Complex64>> {
    let a = s_matrix(fit, m)?;
    let cond = condition(&a);
    if !(cond < MAX_CONDITION) {
        return Err(Error::IllConditioned(cond));
    }
    let lu = a.lu();
    let mut out = Matrix3::zeros();
    for (j, mu) in Dominant::ALL.iter().enumerate() {
        let mut b = Vector3::zeros();
        for (k, p) in fit.iter().enumerate() {
            b[k] = apply_to(op, |x| s_mu(*mu, x, m), p)?;
        }
        let x = lu.solve(&b).ok_or(Error::IllConditioned(f64::INFINITY))?;
        out.set_column(j, &x);
    }
    Ok(out)
}

/// Max over μ and validation points of |M̃_d S_μ − Σ c S| / max(1, |M̃_d S_μ|).
pub fn preservation_residual(
    d: Degree,
    hbar: Complex64,
    m: &EllipticModulus,
    fit: &[WeightPoint; 3],
    validate: &[WeightPoint],
) -> Result<f64> {
    let op = build_m_tilde(d, hbar, *m);
    let coeffs = preservation_matrix(&op, fit, m)?;
    let mut worst: f64 = 0.0;
    for p in validate {
        let s: Vec<Complex64> = Dominant::ALL.iter().map(|mu| s_mu(*mu, p, m)).collect::<Result<_>>()?;
        for (j, mu) in Dominant::ALL.iter().enumerate() {
            let lhs = apply_to(&op, |x| s_mu(*mu, x, m), p)?;
            let rhs: Complex64 = (0..3).map(|k| coeffs[(k, j)] * s[k]).sum();
            worst = worst.max((lhs - rhs).norm() / lhs.norm().max(1.0));
        }
    }
    Ok(worst)
}

/// Condition number of the matrix [f_i(p_k)] for i = 1, 2, 3.
pub fn basis_condition(points: &[WeightPoint; 3], m: &EllipticModulus) -> Result<f64> {
    let mut a = Matrix3::zeros();
    for (k, p) in points.iter().enumerate() {
        for i in 0..3 {
            a[(k, i)] = basis_f(i as u8 + 1, p, m)?;
        }
    }
    Ok(condition(&a))
}

/// max over α ∈ {2ε₁, 2ε₂} of |T_α f − f| and |T_{τα} f − f| at λ, where
/// T_α shifts λ_j by 1 and T_{τα} f(λ) = e^{2πi(2λ_j+τ)} f(λ_j + τ).
pub fn th1_membership_residual<F>(f: F, lam: &WeightPoint, m: &EllipticModulus) -> Result<f64>
where
    F: Fn(&WeightPoint) -> Result<Complex64>,
{
    let tau = m.tau();
    let base = f(lam)?;
    let mut worst: f64 = 0.0;
    for j in [0, 1] {
        let unit = |s: Complex64| {
            if j == 0 {
                WeightPoint::new(lam.l1 + s, lam.l2)
            } else {
                WeightPoint::new(lam.l1, lam.l2 + s)
            }
        };
        let lj = if j == 0 { lam.l1 } else { lam.l2 };
        let real = f(&unit(Complex64::new(1.0, 0.0)))?;
        let modular = (TWO_PI * I * (2.0 * lj + tau)).exp() * f(&unit(tau))?;
        worst = worst.max((real - base).norm()).max((modular - base).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn md(tau: Complex64) -> EllipticModulus {
        EllipticModulus::new(tau).unwrap()
    }

    fn points() -> Vec<WeightPoint> {
        vec![
            WeightPoint::new(c(0.27, 0.0), c(0.13, 0.1)),
            WeightPoint::new(c(0.31, 0.05), c(0.17, 0.0)),
            WeightPoint::new(c(0.41, 0.12), c(0.29, 0.02)),
            WeightPoint::new(c(0.12, 0.2), c(0.36, 0.08)),
        ]
    }

    #[test]
    fn lattice_and_product_agree() {
        for tau in [c(0.0, 1.1), c(0.3, 0.9)] {
            let m = md(tau);
            for p in points() {
                for mu in LatticeClass::ALL {
                    let a = theta_mu(mu, &p, &m, ThetaMethod::Lattice).unwrap();
                    let b = theta_mu(mu, &p, &m, ThetaMethod::Product).unwrap();
                    assert!((a - b).norm() < 1e-11, "{mu:?} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn first_class_is_odd_in_the_first_coordinate() {
        // Θ_{ε₁} sums over odd n₁, so its product form carries θ₂ in λ₁.
        let m = md(c(0.0, 1.1));
        let p = WeightPoint::new(c(0.27, 0.0), c(0.13, 0.1));
        let m2 = m.doubled();
        let want =
            theta_k(ThetaKind::Two, 2.0 * p.l1, &m2).unwrap() * theta_k(ThetaKind::Three, 2.0 * p.l2, &m2).unwrap();
        let got = theta_mu(LatticeClass::E1, &p, &m, ThetaMethod::Lattice).unwrap();
        assert!((got - want).norm() < 1e-12);
    }

    #[test]
    fn lattice_symmetries() {
        let m = md(c(0.0, 1.1));
        let p = points()[1];
        let neg = p.scaled(c(-1.0, 0.0));
        for mu in LatticeClass::ALL {
            let a = theta_mu(mu, &p, &m, ThetaMethod::Lattice).unwrap();
            let b = theta_mu(mu, &neg, &m, ThetaMethod::Lattice).unwrap();
            assert!((a - b).norm() < 1e-12);
        }
        assert_eq!(LatticeClass::from_vector((1, -1)), LatticeClass::E1E2);
        assert_eq!(LatticeClass::from_vector((-1, 0)), LatticeClass::E1);
    }

    #[test]
    fn orbit_sums() {
        let m = md(c(0.0, 1.1));
        let p = points()[2];
        let t = |mu| theta_p(mu, &p, &m).unwrap();
        use LatticeClass::*;
        assert!((s_mu(Dominant::Zero, &p, &m).unwrap() - t(Zero)).norm() < 1e-13);
        assert!((s_mu(Dominant::Lambda1, &p, &m).unwrap() - 2.0 * (t(E1) + t(E2))).norm() < 1e-12);
        assert!((s_mu(Dominant::Lambda2, &p, &m).unwrap() - 4.0 * t(E1E2)).norm() < 1e-12);
    }

    #[test]
    fn basis_factorizes() {
        let m = md(c(0.0, 1.1));
        for p in points() {
            for i in 1..=3u8 {
                let a = basis_f(i, &p, &m).unwrap();
                let b = theta_product(i, i, &p, &m).unwrap();
                assert!((a - b).norm() < 1e-11);
            }
            // With the lattice labelling the antisymmetric combination is −θ₁(λ₊)θ₁(λ₋).
            let f0 = basis_f(0, &p, &m).unwrap();
            assert!((f0 + theta_product(0, 0, &p, &m).unwrap()).norm() < 1e-11);
        }
        assert!(basis_f(0, &WeightPoint::real(0.3, 0.3), &m).unwrap().norm() < 1e-13);
        assert!(basis_f(4, &points()[0], &m).is_err());
    }

    #[test]
    fn weyl_invariance() {
        let m = md(c(0.0, 1.1));
        let p = points()[3];
        for w in WeylElement::all() {
            let q = w.act(&p);
            for i in 1..=3u8 {
                assert!((basis_f(i, &q, &m).unwrap() - basis_f(i, &p, &m).unwrap()).norm() < 1e-11);
            }
            let (a, b) = (basis_f(0, &q, &m).unwrap(), basis_f(0, &p, &m).unwrap());
            assert!((a.norm() - b.norm()).abs() < 1e-11);
        }
    }

    #[test]
    fn eigenvalue_relations() {
        let m = md(c(0.0, 1.2));
        let h = c(0.11, 0.0);
        for i in 1..=3u8 {
            let e1 = eigenvalue(Degree::One, i, h, &m).unwrap();
            let e2 = eigenvalue(Degree::Two, i, h, &m).unwrap();
            assert_eq!(e2, 2.0 * e1);
            let l = lame_eigenvalue(kind_of(i).unwrap(), h, &m).unwrap();
            assert!((e1 - l * l).norm() < 1e-13);
            let small = eigenvalue(Degree::One, i, c(1e-4, 0.0), &m).unwrap();
            assert!((small - 4.0).norm() < 1e-5);
        }
    }

    #[test]
    fn symmetric_eigenfunctions() {
        let m = md(c(0.0, 1.2));
        let h = c(0.11, 0.0);
        for d in Degree::ALL {
            for i in 1..=3u8 {
                for p in points() {
                    let r = eigen_residual(d, i, &p, h, &m).unwrap();
                    assert!(r < 1e-10, "{d:?} {i} {r}");
                }
            }
        }
    }

    #[test]
    fn antisymmetric_combination_is_not_annihilated() {
        // M̃₁ f₀ = 4Π θ₁(λ_± ± ħ)/(θ₁(λ₊)θ₁(λ₋)) up to sign, which does not vanish.
        let m = md(c(0.0, 1.2));
        let h = c(0.11, 0.0);
        let p = points()[1];
        let op = build_m_tilde(Degree::One, h, m);
        let got = op.apply(|x| basis_f(0, x, &m), &p).unwrap();
        let t = |z| crate::elliptic::theta1(z, &m).unwrap();
        let (a, b) = (p.plus(), p.minus());
        let want = -4.0 * t(a + h) * t(a - h) * t(b + h) * t(b - h) / (t(a) * t(b));
        assert!((got - want).norm() < 1e-11 * want.norm().max(1.0), "{got} {want}");
        assert!(eigen_residual(Degree::One, 0, &p, h, &m).unwrap() > 1e-3);
    }

    #[test]
    fn mixed_products_diagonalize_the_factorized_operator() {
        let m = md(c(0.0, 1.1));
        let h = c(0.1, 0.0);
        for i in 1..=3u8 {
            for j in 1..=3u8 {
                for p in points() {
                    assert!(mixed_eigen_residual(i, j, &p, h, &m).unwrap() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn preservation_and_change_of_basis() {
        let m = md(c(0.0, 1.0));
        let h = c(0.09, 0.0);
        let pts = points();
        let fit = [pts[0], pts[1], pts[2]];
        let validate = [pts[3], WeightPoint::new(c(0.2, 0.03), c(0.05, 0.1))];
        for d in Degree::ALL {
            assert!(preservation_residual(d, h, &m, &fit, &validate).unwrap() < 1e-9);
        }
        // f₁ = S_{Λ₁}/2, f₂ = S₀ + S_{Λ₂}/4, f₃ = S₀ − S_{Λ₂}/4.
        let op = build_m_tilde(Degree::One, h, m);
        let a = preservation_matrix(&op, &fit, &m).unwrap();
        let z = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        let basis = Matrix3::new(z, one, one, c(0.5, 0.0), z, z, z, c(0.25, 0.0), c(-0.25, 0.0));
        let diag = basis.try_inverse().unwrap() * a * basis;
        for r in 0..3 {
            for k in 0..3 {
                let want = if r == k { eigenvalue(Degree::One, r as u8 + 1, h, &m).unwrap() } else { z };
                assert!((diag[(r, k)] - want).norm() < 1e-8, "{r} {k} {}", diag[(r, k)]);
            }
        }
    }

    #[test]
    fn degenerate_fit_points_are_rejected() {
        let m = md(c(0.0, 1.0));
        let op = build_m_tilde(Degree::One, c(0.09, 0.0), m);
        let p = points()[0];
        let r = preservation_matrix(&op, &[p, p, p], &m);
        assert!(matches!(r, Err(Error::IllConditioned(_))));
    }

    #[test]
    fn basis_is_independent() {
        let m = md(c(0.0, 1.1));
        let p = points();
        assert!(basis_condition(&[p[0], p[1], p[2]], &m).unwrap() < 1e6);
    }

    #[test]
    fn level_one_quasi_periodicity() {
        let m = md(c(0.0, 1.1));
        let p = points()[1];
        let r0 =
            th1_membership_residual(|x| theta_mu(LatticeClass::Zero, x, &m, ThetaMethod::Lattice), &p, &m).unwrap();
        assert!(r0 < 1e-10, "{r0}");
        let r2 = th1_membership_residual(|x| basis_f(2, x, &m), &p, &m).unwrap();
        assert!(r2 < 1e-10, "{r2}");
        let bad = th1_membership_residual(|x| Ok((TWO_PI * I * x.l1).exp()), &p, &m).unwrap();
        assert!(bad > 1e-2);
    }
}
