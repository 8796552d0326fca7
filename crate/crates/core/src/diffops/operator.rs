//! Finite sums of theta-coefficient shift operators.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::elliptic::EllipticModulus;
use crate::error::{Error, Result};
use crate::weight::{WeightPoint, WeylElement};

/// A shift (k₁ħ, k₂ħ) with half-integer k, stored as (2k₁, 2k₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftVector {
    twice: (i32, i32),
}

impl ShiftVector {
    pub const ZERO: ShiftVector = ShiftVector { twice: (0, 0) };

    /// Whole-unit shift (k₁, k₂).
    pub fn whole(k1: i32, k2: i32) -> Self {
        Self { twice: (2 * k1, 2 * k2) }
    }

    /// Shift (h₁/2, h₂/2).
    pub fn halves(h1: i32, h2: i32) -> Self {
        Self { twice: (h1, h2) }
    }

    pub fn k1(&self) -> f64 {
        self.twice.0 as f64 / 2.0
    }

    pub fn k2(&self) -> f64 {
        self.twice.1 as f64 / 2.0
    }

    pub fn twice(&self) -> (i32, i32) {
        self.twice
    }

    pub fn apply(&self, lam: &WeightPoint, step: Complex64) -> WeightPoint {
        lam.shifted(self.k1(), self.k2(), step)
    }

    pub fn transformed(&self, w: &WeylElement) -> Self {
        Self { twice: w.act_vector(self.twice) }
    }
}

impl std::ops::Add for ShiftVector {
    type Output = ShiftVector;

    fn add(self, rhs: Self) -> Self {
        Self { twice: (self.twice.0 + rhs.twice.0, self.twice.1 + rhs.twice.1) }
    }
}

impl std::ops::Neg for ShiftVector {
    type Output = ShiftVector;

    fn neg(self) -> Self {
        Self { twice: (-self.twice.0, -self.twice.1) }
    }
}

impl fmt::Display for ShiftVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k1(), self.k2())
    }
}

/// Coefficient function of one shift term.
pub type Coefficient = Arc<dyn Fn(&WeightPoint) -> Result<Complex64> + Send + Sync>;

pub fn coefficient<F>(f: F) -> Coefficient
where
    F: Fn(&WeightPoint) -> Result<Complex64> + Send + Sync + 'static,
{
    Arc::new(f)
}

/// Σ c_s(λ) T_s acting by (T_s f)(λ) = f(λ + s·step).
#[derive(Clone)]
pub struct DifferenceOperator {
    terms: BTreeMap<ShiftVector, Coefficient>,
    step: Complex64,
    modulus: EllipticModulus,
}

impl fmt::Debug for DifferenceOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DifferenceOperator")
            .field("shifts", &self.terms.keys().collect::<Vec<_>>())
            .field("step", &self.step)
            .field("tau", &self.modulus.tau())
            .finish()
    }
}

impl DifferenceOperator {
    pub fn zero(step: Complex64, modulus: EllipticModulus) -> Self {
        Self { terms: BTreeMap::new(), step, modulus }
    }

    pub fn identity(step: Complex64, modulus: EllipticModulus) -> Self {
        Self::zero(step, modulus).with_term(ShiftVector::ZERO, coefficient(|_| Ok(Complex64::new(1.0, 0.0))))
    }

    /// Adds `c` to the coefficient of `shift`.
    pub fn with_term(mut self, shift: ShiftVector, c: Coefficient) -> Self {
        let merged = match self.terms.remove(&shift) {
            Some(prev) => coefficient(move |lam| Ok(prev(lam)? + c(lam)?)),
            None => c,
        };
        self.terms.insert(shift, merged);
        self
    }

    pub fn step(&self) -> Complex64 {
        self.step
    }

    pub fn modulus(&self) -> &EllipticModulus {
        &self.modulus
    }

    pub fn shifts(&self) -> impl Iterator<Item = &ShiftVector> {
        self.terms.keys()
    }

    /// Coefficient of `shift` at λ (zero when the shift does not occur).
    pub fn coefficient_at(&self, shift: &ShiftVector, lam: &WeightPoint) -> Result<Complex64> {
        match self.terms.get(shift) {
            Some(c) => c(lam),
            None => Ok(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn apply<F>(&self, f: F, lam: &WeightPoint) -> Result<Complex64>
    where
        F: Fn(&WeightPoint) -> Result<Complex64>,
    {
        let mut acc = Complex64::new(0.0, 0.0);
        for (s, c) in &self.terms {
            acc += c(lam)? * f(&s.apply(lam, self.step))?;
        }
        Ok(acc)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.step != other.step || self.modulus.tau() != other.modulus.tau() {
            return Err(Error::OperatorMismatch);
        }
        Ok(())
    }

    /// self ∘ other: terms (s + t, λ ↦ c_s(λ)·d_t(λ + s·step)).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.step, self.modulus);
        let step = self.step;
        for (s, c) in &self.terms {
            for (t, d) in &other.terms {
                let (s, c, d) = (*s, c.clone(), d.clone());
                out = out.with_term(s + *t, coefficient(move |lam| Ok(c(lam)? * d(&s.apply(lam, step))?)));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (t, d) in &other.terms {
            out = out.with_term(*t, d.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut out = Self::zero(self.step, self.modulus);
        for (s, c) in &self.terms {
            let c = c.clone();
            out.terms.insert(*s, coefficient(move |lam| Ok(k * c(lam)?)));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Multiplies every coefficient by the function `g` on the left.
    pub fn premultiply(&self, g: Coefficient) -> Self {
        let mut out = Self::zero(self.step, self.modulus);
        for (s, c) in &self.terms {
            let (c, g) = (c.clone(), g.clone());
            out.terms.insert(*s, coefficient(move |lam| Ok(g(lam)? * c(lam)?)));
        }
        out
    }

    /// w ∘ self ∘ w⁻¹ with (w·f)(λ) = f(w⁻¹λ): shift s becomes w(s) and the
    /// coefficient becomes c ∘ w⁻¹.
    pub fn conjugate_by(&self, w: &WeylElement) -> Self {
        let inv = w.inverse();
        let mut out = Self::zero(self.step, self.modulus);
        for (s, c) in &self.terms {
            let c = c.clone();
            out = out.with_term(s.transformed(w), coefficient(move |lam| c(&inv.act(lam))));
        }
        out
    }

    /// [self, other] = self ∘ other − other ∘ self.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }
}

/// max over shifts s and sample points λ of
/// |c_a(s, λ) − c_b(s, λ)| / max(1, |c_a|, |c_b|).
pub fn op_distance(a: &DifferenceOperator, b: &DifferenceOperator, samples: &[WeightPoint]) -> Result<f64> {
    a.check_compatible(b)?;
    let mut shifts: Vec<ShiftVector> = a.shifts().chain(b.shifts()).copied().collect();
    shifts.sort();
    shifts.dedup();
    let mut worst: f64 = 0.0;
    for lam in samples {
        for s in &shifts {
            let ca = a.coefficient_at(s, lam)?;
            let cb = b.coefficient_at(s, lam)?;
            let scale = ca.norm().max(cb.norm()).max(1.0);
            worst = worst.max((ca - cb).norm() / scale);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn modulus() -> EllipticModulus {
        EllipticModulus::new(c(0.0, 1.0)).unwrap()
    }

    fn sample_op() -> DifferenceOperator {
        DifferenceOperator::zero(c(0.1, 0.0), modulus())
            .with_term(ShiftVector::whole(1, 0), coefficient(|l| Ok(l.l1 * l.l2 + 1.0)))
            .with_term(ShiftVector::halves(-1, 1), coefficient(|l| Ok((l.l1 - 2.0 * l.l2).exp())))
            .with_term(ShiftVector::ZERO, coefficient(|l| Ok(l.l1.sin())))
    }

    fn pts() -> Vec<WeightPoint> {
        vec![WeightPoint::new(c(0.3, 0.1), c(0.2, -0.05)), WeightPoint::new(c(-0.4, 0.0), c(0.15, 0.2))]
    }

    #[test]
    fn identity_and_pure_shift() {
        let f = |l: &WeightPoint| Ok(l.l1 * l.l1 + 3.0 * l.l2);
        let lam = WeightPoint::new(c(0.3, 0.1), c(0.2, 0.0));
        let id = DifferenceOperator::identity(c(0.1, 0.0), modulus());
        assert_eq!(id.apply(f, &lam).unwrap(), f(&lam).unwrap());
        let t = DifferenceOperator::zero(c(0.1, 0.0), modulus())
            .with_term(ShiftVector::whole(1, 0), coefficient(|_| Ok(c(1.0, 0.0))));
        let want = f(&WeightPoint::new(lam.l1 + 0.1, lam.l2)).unwrap();
        assert!((t.apply(f, &lam).unwrap() - want).norm() < 1e-15);
    }

    #[test]
    fn composition_agrees_with_repeated_application() {
        let a = sample_op();
        let b = sample_op().conjugate_by(&WeylElement { swap: true, s1: 1, s2: -1 });
        let ab = a.compose(&b).unwrap();
        let f = |l: &WeightPoint| Ok((0.7 * l.l1 - 0.2 * l.l2).cos());
        for lam in pts() {
            let direct = ab.apply(f, &lam).unwrap();
            let nested = a.apply(|p: &WeightPoint| b.apply(f, p), &lam).unwrap();
            assert!((direct - nested).norm() < 1e-14);
        }
        let id = DifferenceOperator::identity(c(0.1, 0.0), modulus());
        assert_eq!(op_distance(&id.compose(&b).unwrap(), &b, &pts()).unwrap(), 0.0);
    }

    #[test]
    fn linearity_and_distance() {
        let a = sample_op();
        assert_eq!(op_distance(&a, &a, &pts()).unwrap(), 0.0);
        let twice = a.scale(c(2.0, 0.0));
        let sum = a.add(&a).unwrap();
        assert!(op_distance(&twice, &sum, &pts()).unwrap() < 1e-13);
        let diff = a.sub(&a).unwrap();
        let zero = DifferenceOperator::zero(c(0.1, 0.0), modulus());
        assert!(op_distance(&diff, &zero, &pts()).unwrap() < 1e-15);
    }

    #[test]
    fn conjugation_matches_its_definition() {
        let a = sample_op();
        let f = |l: &WeightPoint| Ok((0.3 * l.l1 + 1.1 * l.l2).exp());
        for w in WeylElement::all() {
            let inv = w.inverse();
            let conj = a.conjugate_by(&w);
            for lam in pts() {
                // (w A w⁻¹ f)(λ) = (A g)(w⁻¹λ) with g(μ) = f(wμ).
                let g = |mu: &WeightPoint| f(&w.act(mu));
                let want = a.apply(g, &inv.act(&lam)).unwrap();
                let got = conj.apply(f, &lam).unwrap();
                assert!((want - got).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn mismatched_operators_are_rejected() {
        let a = sample_op();
        let b = DifferenceOperator::identity(c(0.2, 0.0), modulus());
        assert!(matches!(a.compose(&b), Err(Error::OperatorMismatch)));
    }
}
