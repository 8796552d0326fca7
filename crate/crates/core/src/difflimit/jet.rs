//! Partial-derivative jets up to total order four and test functions that supply them.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::elliptic::{theta_derivatives, EllipticModulus, ThetaKind};
use crate::error::Result;
use crate::weight::WeightPoint;

/// Highest total derivative order carried by a jet.
pub const JET_ORDER: usize = 4;

const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * std::f64::consts::PI);

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// d[i][j] = ∂₁^i ∂₂^j f at a point, for i + j ≤ 4. Entries with i + j > 4 stay zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub d: [[Complex64; JET_ORDER + 1]; JET_ORDER + 1],
}

impl Jet {
    pub fn zero() -> Self {
        Self { d: [[Complex64::new(0.0, 0.0); JET_ORDER + 1]; JET_ORDER + 1] }
    }

    pub fn constant(v: Complex64) -> Self {
        let mut j = Self::zero();
        j.d[0][0] = v;
        j
    }

    pub fn value(&self) -> Complex64 {
        self.d[0][0]
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.d[i][j]
    }

    /// Jet of z ↦ g(λ₁ + s·λ₂) from the derivatives g, g′, …, g⁗ at λ₁ + sλ₂.
    pub fn along(derivs: &[Complex64; JET_ORDER + 1], s: f64) -> Self {
        let mut j = Self::zero();
        for a in 0..=JET_ORDER {
            for b in 0..=JET_ORDER - a {
                j.d[a][b] = derivs[a + b] * s.powi(b as i32);
            }
        }
        j
    }

    /// Jet of f(λ₂, λ₁) at (λ₁, λ₂) given the jet of f at (λ₂, λ₁).
    pub fn transposed(&self) -> Self {
        let mut j = Self::zero();
        for a in 0..=JET_ORDER {
            for b in 0..=JET_ORDER - a {
                j.d[a][b] = self.d[b][a];
            }
        }
        j
    }

    /// Jet of ∂₁^p ∂₂^q f, valid up to total order 4 − p − q.
    pub fn derivative(&self, p: usize, q: usize) -> Self {
        let mut j = Self::zero();
        for a in 0..=JET_ORDER {
            for b in 0..=JET_ORDER - a {
                if a + p + b + q <= JET_ORDER {
                    j.d[a][b] = self.d[a + p][b + q];
                }
            }
        }
        j
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut j = *self;
        for row in j.d.iter_mut() {
            for v in row.iter_mut() {
                *v *= k;
            }
        }
        j
    }
}

impl Add for Jet {
    type Output = Jet;

    fn add(self, o: Jet) -> Jet {
        let mut j = self;
        for a in 0..=JET_ORDER {
            for b in 0..=JET_ORDER {
                j.d[a][b] += o.d[a][b];
            }
        }
        j
    }
}

impl Sub for Jet {
    type Output = Jet;

    fn sub(self, o: Jet) -> Jet {
        self + o.scale(Complex64::new(-1.0, 0.0))
    }
}

/// Leibniz rule.
impl Mul for Jet {
    type Output = Jet;

    fn mul(self, o: Jet) -> Jet {
        let mut j = Jet::zero();
        for i in 0..=JET_ORDER {
            for k in 0..=JET_ORDER - i {
                let mut acc = Complex64::new(0.0, 0.0);
                for a in 0..=i {
                    for b in 0..=k {
                        acc += binomial(i, a) * binomial(k, b) * self.d[a][b] * o.d[i - a][k - b];
                    }
                }
                j.d[i][k] = acc;
            }
        }
        j
    }
}

/// A function of (λ₁, λ₂) with exact partial derivatives up to order four.
pub trait JetFunction {
    fn jet(&self, lam: &WeightPoint, m: &EllipticModulus) -> Result<Jet>;

    fn value(&self, lam: &WeightPoint, m: &EllipticModulus) -> Result<Complex64> {
        Ok(self.jet(lam, m)?.value())
    }
}

/// exp 2πi(k₁λ₁ + k₂λ₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaneWave {
    pub k1: i32,
    pub k2: i32,
}

impl PlaneWave {
    pub const ONE: PlaneWave = PlaneWave { k1: 0, k2: 0 };

    pub fn new(k1: i32, k2: i32) -> Self {
        Self { k1, k2 }
    }
}

impl JetFunction for PlaneWave {
    fn jet(&self, lam: &WeightPoint, _m: &EllipticModulus) -> Result<Jet> {
        let v = (TWO_PI_I * lam.pairing(self.k1, self.k2)).exp();
        let (a, b) = (TWO_PI_I * self.k1 as f64, TWO_PI_I * self.k2 as f64);
        let mut j = Jet::zero();
        for p in 0..=JET_ORDER {
            for q in 0..=JET_ORDER - p {
                j.d[p][q] = v * a.powi(p as i32) * b.powi(q as i32);
            }
        }
        Ok(j)
    }

    fn value(&self, lam: &WeightPoint, _m: &EllipticModulus) -> Result<Complex64> {
        Ok((TWO_PI_I * lam.pairing(self.k1, self.k2)).exp())
    }
}

/// θ_a(λ₊)θ_b(λ₋).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaPair {
    pub plus: ThetaKind,
    pub minus: ThetaKind,
}

impl ThetaPair {
    /// Δ = θ₁(λ₊)θ₁(λ₋).
    pub const DELTA: ThetaPair = ThetaPair { plus: ThetaKind::One, minus: ThetaKind::One };

    pub fn new(plus: ThetaKind, minus: ThetaKind) -> Self {
        Self { plus, minus }
    }
}

impl JetFunction for ThetaPair {
    fn jet(&self, lam: &WeightPoint, m: &EllipticModulus) -> Result<Jet> {
        let p = theta_derivatives(self.plus, lam.plus(), m, JET_ORDER as u8)?;
        let q = theta_derivatives(self.minus, lam.minus(), m, JET_ORDER as u8)?;
        Ok(Jet::along(&p, 1.0) * Jet::along(&q, -1.0))
    }

    fn value(&self, lam: &WeightPoint, m: &EllipticModulus) -> Result<Complex64> {
        let p = theta_derivatives(self.plus, lam.plus(), m, 0)?[0];
        let q = theta_derivatives(self.minus, lam.minus(), m, 0)?[0];
        Ok(p * q)
    }
}

/// f · g.
#[derive(Debug, Clone, Copy)]
pub struct Product<F, G>(pub F, pub G);

impl<F: JetFunction, G: JetFunction> JetFunction for Product<F, G> {
    fn jet(&self, lam: &WeightPoint, m: &EllipticModulus) -> Result<Jet> {
        Ok(self.0.jet(lam, m)? * self.1.jet(lam, m)?)
    }

    fn value(&self, lam: &WeightPoint, m: &EllipticModulus) -> Result<Complex64> {
        Ok(self.0.value(lam, m)? * self.1.value(lam, m)?)
    }
}

/// f(λ₁, λ₂) + f(λ₂, λ₁).
#[derive(Debug, Clone, Copy)]
pub struct Symmetrized<F>(pub F);

impl<F: JetFunction> JetFunction for Symmetrized<F> {
    fn jet(&self, lam: &WeightPoint, m: &EllipticModulus) -> Result<Jet> {
        Ok(self.0.jet(lam, m)? + self.0.jet(&lam.swapped(), m)?.transposed())
    }

    fn value(&self, lam: &WeightPoint, m: &EllipticModulus) -> Result<Complex64> {
        Ok(self.0.value(lam, m)? + self.0.value(&lam.swapped(), m)?)
    }
}
