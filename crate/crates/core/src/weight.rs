//! Points of 𝔥* in the coordinates λᵢ = (λ, εᵢ) and the Weyl group of type C₂.

use num_complex::Complex64;

/// A point λ of 𝔥*, stored as (λ₁, λ₂).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightPoint {
    pub l1: Complex64,
    pub l2: Complex64,
}

impl WeightPoint {
    pub fn new(l1: Complex64, l2: Complex64) -> Self {
        Self { l1, l2 }
    }

    pub fn real(l1: f64, l2: f64) -> Self {
        Self::new(Complex64::new(l1, 0.0), Complex64::new(l2, 0.0))
    }

    /// λ_p for p = a·ε₁ + b·ε₂.
    pub fn pairing(&self, a: i32, b: i32) -> Complex64 {
        self.l1 * a as f64 + self.l2 * b as f64
    }

    /// λ₊ = λ₁ + λ₂.
    pub fn plus(&self) -> Complex64 {
        self.l1 + self.l2
    }

    /// λ₋ = λ₁ − λ₂.
    pub fn minus(&self) -> Complex64 {
        self.l1 - self.l2
    }

    /// λ + (k₁·step, k₂·step).
    pub fn shifted(&self, k1: f64, k2: f64, step: Complex64) -> Self {
        Self::new(self.l1 + k1 * step, self.l2 + k2 * step)
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self::new(self.l1 * s, self.l2 * s)
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.l2, self.l1)
    }
}

/// A signed permutation of the two coordinates: (λ₁, λ₂) ↦ (s₁λ_{π(1)}, s₂λ_{π(2)}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub swap: bool,
    pub s1: i8,
    pub s2: i8,
}

impl WeylElement {
    pub const IDENTITY: WeylElement = WeylElement { swap: false, s1: 1, s2: 1 };

    /// All eight elements.
    pub fn all() -> [WeylElement; 8] {
        let mut out = [Self::IDENTITY; 8];
        let mut i = 0;
        for swap in [false, true] {
            for s1 in [1i8, -1] {
                for s2 in [1i8, -1] {
                    out[i] = WeylElement { swap, s1, s2 };
                    i += 1;
                }
            }
        }
        out
    }

    pub fn act(&self, p: &WeightPoint) -> WeightPoint {
        let (a, b) = if self.swap { (p.l2, p.l1) } else { (p.l1, p.l2) };
        WeightPoint::new(a * self.s1 as f64, b * self.s2 as f64)
    }

    /// Action on integer coordinate vectors, same rule as on points.
    pub fn act_vector(&self, v: (i32, i32)) -> (i32, i32) {
        let (a, b) = if self.swap { (v.1, v.0) } else { v };
        (a * self.s1 as i32, b * self.s2 as i32)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        // Read off the images of the unit vectors.
        let e1 = self.act_vector(other.act_vector((1, 0)));
        let e2 = self.act_vector(other.act_vector((0, 1)));
        if e1.0 != 0 {
            WeylElement { swap: false, s1: e1.0 as i8, s2: e2.1 as i8 }
        } else {
            WeylElement { swap: true, s1: e2.0 as i8, s2: e1.1 as i8 }
        }
    }

    pub fn inverse(&self) -> WeylElement {
        *Self::all().iter().find(|w| w.compose(self) == Self::IDENTITY).expect("finite group")
    }

    pub fn determinant(&self) -> i8 {
        let sign = self.s1 * self.s2;
        if self.swap {
            -sign
        } else {
            sign
        }
    }
}
