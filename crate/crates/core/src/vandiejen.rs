//! Van Diejen's operators 𝓗₁, 𝓗₂ in σ-function form, their one-parameter
//! specialization and the gauge map relating them to M̃₁, M̃₂.

use num_complex::Complex64;
use rand::Rng;

use crate::diffops::{build_m_tilde, coefficient, op_distance, Degree, DifferenceOperator, ShiftVector};
use crate::elliptic::{nonvanishing, theta1, theta1_denominator, theta_k, HalfPeriods, ThetaKind};
use crate::error::{Error, Result};
use crate::sampling::sample_complex;
use crate::weight::WeightPoint;

/// Tolerance on Σᵣ(μᵣ + μ′ᵣ) = 0.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// π_r as index tables: π₀ = id, π₁ = (01)(23), π₂ = (02)(13), π₃ = (03)(12).
const PERM: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];

const SIGNS: [i32; 2] = [1, -1];

/// The couplings μ, μᵣ, μ′ᵣ, the step γ and the half periods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VDParams {
    mu: Complex64,
    mu_r: [Complex64; 4],
    mu_r_prime: [Complex64; 4],
    gamma: Complex64,
    hp: HalfPeriods,
}

impl VDParams {
    pub fn new(
        mu: Complex64,
        mu_r: [Complex64; 4],
        mu_r_prime: [Complex64; 4],
        gamma: Complex64,
        hp: HalfPeriods,
    ) -> Result<Self> {
        let total: Complex64 = mu_r.iter().chain(mu_r_prime.iter()).sum();
        if total.norm() > CONSTRAINT_TOL {
            return Err(Error::Constraint(format!("sum of the eight boundary couplings is {total}, not 0")));
        }
        Ok(Self { mu, mu_r, mu_r_prime, gamma, hp })
    }

    /// μ = −γ, μᵣ = μ′ᵣ = 0.
    pub fn specialized(gamma: Complex64, hp: HalfPeriods) -> Self {
        let zero = [Complex64::new(0.0, 0.0); 4];
        Self { mu: -gamma, mu_r: zero, mu_r_prime: zero, gamma, hp }
    }

    /// Couplings uniform in the complex square of half-width `radius`,
    /// with μ′₃ chosen to satisfy the constraint.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, radius: f64, gamma: Complex64, hp: HalfPeriods) -> Result<Self> {
        let mu = sample_complex(rng, radius);
        let mut mu_r = [Complex64::new(0.0, 0.0); 4];
        let mut mu_r_prime = [Complex64::new(0.0, 0.0); 4];
        for r in 0..4 {
            mu_r[r] = sample_complex(rng, radius);
            mu_r_prime[r] = sample_complex(rng, radius);
        }
        let total: Complex64 = mu_r.iter().chain(mu_r_prime.iter()).sum();
        mu_r_prime[3] -= total;
        Self::new(mu, mu_r, mu_r_prime, gamma, hp)
    }

    pub fn with_mu(mut self, mu: Complex64) -> Self {
        self.mu = mu;
        self
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    pub fn mu_r(&self) -> [Complex64; 4] {
        self.mu_r
    }

    pub fn mu_r_prime(&self) -> [Complex64; 4] {
        self.mu_r_prime
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn half_periods(&self) -> &HalfPeriods {
        &self.hp
    }
}

fn sigma(r: usize, z: Complex64, hp: &HalfPeriods) -> Result<Complex64> {
    crate::elliptic::sigma_fn(r as u8, z, hp)
}

fn sigma_den(r: usize, z: Complex64, hp: &HalfPeriods) -> Result<Complex64> {
    nonvanishing(sigma(r, z, hp)?, "sigma")
}

/// v(z) = σ(z+μ)/σ(z).
pub fn vd_v(z: Complex64, p: &VDParams) -> Result<Complex64> {
    Ok(sigma(0, z + p.mu, &p.hp)? / sigma_den(0, z, &p.hp)?)
}

/// v(z) written with θ₁: exp(η₁(2zμ+μ²)/2ω₁)·θ₁((z+μ)/2ω₁)/θ₁(z/2ω₁).
pub fn vd_v_theta(z: Complex64, p: &VDParams) -> Result<Complex64> {
    let (w, mu) = (p.hp.omega1(), p.mu);
    let m = p.hp.modulus();
    let gauss = (p.hp.eta1() * (2.0 * z * mu + mu * mu) / (2.0 * w)).exp();
    Ok(gauss * theta1((z + mu) / (2.0 * w), m)? / theta1_denominator(z / (2.0 * w), m)?)
}

/// w(z) = Πᵣ σᵣ(z+μᵣ)σᵣ(z+μ′ᵣ+γ/2) / (σᵣ(z)σᵣ(z+γ/2)).
pub fn vd_w(z: Complex64, p: &VDParams) -> Result<Complex64> {
    let hg = p.gamma / 2.0;
    let mut acc = Complex64::new(1.0, 0.0);
    for r in 0..4 {
        acc *= sigma(r, z + p.mu_r[r], &p.hp)? * sigma(r, z + p.mu_r_prime[r] + hg, &p.hp)?
            / (sigma_den(r, z, &p.hp)? * sigma_den(r, z + hg, &p.hp)?);
    }
    Ok(acc)
}

/// c_r = 2/(σ(μ)σ(μ−γ)) · Π_s σ_s(μ_{π_r(s)} − γ/2) σ_s(μ′_{π_r(s)}).
pub fn c_r(r: usize, p: &VDParams) -> Result<Complex64> {
    let hp = &p.hp;
    let mut acc = 2.0 / (sigma_den(0, p.mu, hp)? * sigma_den(0, p.mu - p.gamma, hp)?);
    for (s, &k) in PERM[r].iter().enumerate() {
        acc *= sigma(s, p.mu_r[k] - p.gamma / 2.0, hp)? * sigma(s, p.mu_r_prime[k], hp)?;
    }
    Ok(acc)
}

/// U_{{j},1} = −w(x_j) − w(−x_j).
pub fn u_single(x: Complex64, p: &VDParams) -> Result<Complex64> {
    Ok(-vd_w(x, p)? - vd_w(-x, p)?)
}

/// U_{{1,2},1} = Σᵣ c_r Π_j σᵣ(μ−γ/2+x_j)σᵣ(μ−γ/2−x_j) / (σᵣ(−γ/2+x_j)σᵣ(−γ/2−x_j)).
pub fn u_pair1(x: &WeightPoint, p: &VDParams) -> Result<Complex64> {
    let hp = &p.hp;
    let a = p.mu - p.gamma / 2.0;
    let b = -p.gamma / 2.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..4 {
        let mut term = c_r(r, p)?;
        for xj in [x.l1, x.l2] {
            term *=
                sigma(r, a + xj, hp)? * sigma(r, a - xj, hp)? / (sigma_den(r, b + xj, hp)? * sigma_den(r, b - xj, hp)?);
        }
        acc += term;
    }
    Ok(acc)
}

/// U_{{1,2},2} = Σ_{ε,ε′} w(εx₁)w(ε′x₂) v(εx₁+ε′x₂) v(−εx₁−ε′x₂−γ).
pub fn u_pair2(x: &WeightPoint, p: &VDParams) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for e in SIGNS {
        for f in SIGNS {
            let z = x.pairing(e, f);
            acc += vd_w(e as f64 * x.l1, p)? * vd_w(f as f64 * x.l2, p)? * vd_v(z, p)? * vd_v(-z - p.gamma, p)?;
        }
    }
    Ok(acc)
}

/// Coefficient of the single shift x_j → x_j + εγ, without the U prefactor.
fn single_shift(j: usize, e: i32, x: &WeightPoint, p: &VDParams) -> Result<Complex64> {
    let (a, b) = if j == 1 { (x.l1, x.l2) } else { (x.l2, x.l1) };
    let ea = e as f64 * a;
    Ok(vd_w(ea, p)? * vd_v(ea + b, p)? * vd_v(ea - b, p)?)
}

fn unit(j: usize, e: i32) -> ShiftVector {
    if j == 1 {
        ShiftVector::whole(e, 0)
    } else {
        ShiftVector::whole(0, e)
    }
}

/// 𝓗₁ or 𝓗₂ as an operator in (x₁, x₂) with step γ.
pub fn build_vd_h(k: Degree, p: VDParams) -> DifferenceOperator {
    let mut op = DifferenceOperator::zero(p.gamma, *p.hp.modulus());
    match k {
        Degree::One => {
            for j in [1, 2] {
                for e in SIGNS {
                    op = op.with_term(unit(j, e), coefficient(move |x| single_shift(j, e, x, &p)));
                }
            }
            op.with_term(ShiftVector::ZERO, coefficient(move |x| u_pair1(x, &p)))
        }
        Degree::Two => {
            for e in SIGNS {
                for f in SIGNS {
                    op = op.with_term(
                        ShiftVector::whole(e, f),
                        coefficient(move |x| {
                            let z = x.pairing(e, f);
                            Ok(vd_w(e as f64 * x.l1, &p)?
                                * vd_w(f as f64 * x.l2, &p)?
                                * vd_v(z, &p)?
                                * vd_v(z + p.gamma, &p)?)
                        }),
                    );
                }
            }
            for e in SIGNS {
                op = op
                    .with_term(unit(1, e), coefficient(move |x| Ok(u_single(x.l2, &p)? * single_shift(1, e, x, &p)?)));
                op = op
                    .with_term(unit(2, e), coefficient(move |x| Ok(u_single(x.l1, &p)? * single_shift(2, e, x, &p)?)));
            }
            op.with_term(ShiftVector::ZERO, coefficient(move |x| u_pair2(x, &p)))
        }
    }
}

/// φ(f)(x) = exp(η₁(x₁²+x₂²)/ω₁) f(x/2ω₁).
pub fn gauge_phi<F>(f: F, x: &WeightPoint, hp: &HalfPeriods) -> Result<Complex64>
where
    F: Fn(&WeightPoint) -> Result<Complex64>,
{
    let w = hp.omega1();
    let g = (hp.eta1() * (x.l1 * x.l1 + x.l2 * x.l2) / w).exp();
    Ok(g * f(&x.scaled(1.0 / (2.0 * w)))?)
}

/// φ⁻¹(g)(λ) = exp(−η₁((2ω₁λ₁)²+(2ω₁λ₂)²)/ω₁) g(2ω₁λ).
pub fn gauge_phi_inv<F>(g: F, lam: &WeightPoint, hp: &HalfPeriods) -> Result<Complex64>
where
    F: Fn(&WeightPoint) -> Result<Complex64>,
{
    let w = hp.omega1();
    let x = lam.scaled(2.0 * w);
    let e = (-hp.eta1() * (x.l1 * x.l1 + x.l2 * x.l2) / w).exp();
    Ok(e * g(&x)?)
}

/// The scalar relating φM̃_dφ⁻¹ to the specialized operators: exp(−2η₁γ²/ω₁).
pub fn identification_prefactor(gamma: Complex64, hp: &HalfPeriods) -> Complex64 {
    (-2.0 * hp.eta1() * gamma * gamma / hp.omega1()).exp()
}

/// The test panel θ_a(x₁/2ω₁)θ_b(x₂/2ω₁).
const PANEL: [(ThetaKind, ThetaKind); 6] = [
    (ThetaKind::One, ThetaKind::Two),
    (ThetaKind::Two, ThetaKind::Three),
    (ThetaKind::Three, ThetaKind::Four),
    (ThetaKind::Four, ThetaKind::One),
    (ThetaKind::Two, ThetaKind::Two),
    (ThetaKind::Three, ThetaKind::One),
];

/// Residuals of φM̃₁φ⁻¹ = c·𝓗₁ and φM̃₂φ⁻¹ = c·(𝓗₂ + 2𝓗₁) with c the
/// identification prefactor and 𝓗 built from `p`. Both sides are applied to
/// the panel at each sample x; the residual is |L − R| / max(1, |R|).
pub fn identification_residual_with(p: &VDParams, hbar: Complex64, samples: &[WeightPoint]) -> Result<(f64, f64)> {
    residual_with_prefactor(p, hbar, samples, identification_prefactor(p.gamma, &p.hp))
}

fn residual_with_prefactor(
    p: &VDParams,
    hbar: Complex64,
    samples: &[WeightPoint],
    pref: Complex64,
) -> Result<(f64, f64)> {
    let hp = p.hp;
    let gamma = p.gamma;
    if (gamma - 2.0 * hp.omega1() * hbar).norm() > 1e-14 * gamma.norm().max(1.0) {
        return Err(Error::OperatorMismatch);
    }
    let m = *hp.modulus();
    let w = hp.omega1();
    let mt = [build_m_tilde(Degree::One, hbar, m), build_m_tilde(Degree::Two, hbar, m)];
    let h1 = build_vd_h(Degree::One, *p);
    let rhs2 = build_vd_h(Degree::Two, *p).add(&h1.scale(Complex64::new(2.0, 0.0)))?;
    let rhs = [h1, rhs2];
    let mut worst = [0.0f64; 2];
    for &(a, b) in &PANEL {
        let f = move |x: &WeightPoint| Ok(theta_k(a, x.l1 / (2.0 * w), &m)? * theta_k(b, x.l2 / (2.0 * w), &m)?);
        for x in samples {
            for d in 0..2 {
                let left = gauge_phi(|lam| mt[d].apply(|mu| gauge_phi_inv(f, mu, &hp), lam), x, &hp)?;
                let right = pref * rhs[d].apply(f, x)?;
                worst[d] = worst[d].max((left - right).norm() / right.norm().max(1.0));
            }
        }
    }
    Ok((worst[0], worst[1]))
}

/// The identification at the specialization μ = −γ, μᵣ = μ′ᵣ = 0, γ = 2ω₁ħ.
pub fn identification_residual(hbar: Complex64, hp: &HalfPeriods, samples: &[WeightPoint]) -> Result<(f64, f64)> {
    let p = VDParams::specialized(2.0 * hp.omega1() * hbar, *hp);
    identification_residual_with(&p, hbar, samples)
}

/// op_distance(𝓗₁𝓗₂, 𝓗₂𝓗₁) at the given points.
pub fn vd_commutator_residual(p: &VDParams, samples: &[WeightPoint]) -> Result<f64> {
    let a = build_vd_h(Degree::One, *p);
    let b = build_vd_h(Degree::Two, *p);
    op_distance(&a.compose(&b)?, &b.compose(&a)?, samples)
}
