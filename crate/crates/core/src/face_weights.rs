//! Boltzmann weights W₁₁ of the C₂⁽¹⁾ face model and the face-type Yang–Baxter equation.
//!
//! A face with corner λ carries edge labels p (top), s (left), q (right) and
//! r (bottom) from 𝒫₁ = {±ε₁, ±ε₂}; its four corners are λ, λ+2ħp, λ+2ħs and
//! λ+2ħ(p+q). In coordinates λ+2ħp moves λ₁ or λ₂ by ±ħ.

use std::collections::HashMap;
use std::ops::Neg;

use num_complex::Complex64;

use crate::elliptic::{theta1, theta1_denominator, EllipticModulus};
use crate::error::Result;
use crate::weight::WeightPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    First,
    Second,
}

/// An element of 𝒫₁.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SingleWeight {
    pub axis: Axis,
    pub positive: bool,
}

impl SingleWeight {
    pub const E1: SingleWeight = SingleWeight { axis: Axis::First, positive: true };
    pub const NEG_E1: SingleWeight = SingleWeight { axis: Axis::First, positive: false };
    pub const E2: SingleWeight = SingleWeight { axis: Axis::Second, positive: true };
    pub const NEG_E2: SingleWeight = SingleWeight { axis: Axis::Second, positive: false };

    pub const ALL: [SingleWeight; 4] = [Self::E1, Self::NEG_E1, Self::E2, Self::NEG_E2];

    pub fn sign(self) -> i32 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    /// Integer coordinates (a, b) with self = a·ε₁ + b·ε₂.
    pub fn vector(self) -> (i32, i32) {
        match self.axis {
            Axis::First => (self.sign(), 0),
            Axis::Second => (0, self.sign()),
        }
    }

    pub fn from_vector(v: (i32, i32)) -> Option<Self> {
        Self::ALL.into_iter().find(|w| w.vector() == v)
    }

    /// λ_p.
    pub fn pair(self, lam: &WeightPoint) -> Complex64 {
        let (a, b) = self.vector();
        lam.pairing(a, b)
    }
}

impl Neg for SingleWeight {
    type Output = Self;

    fn neg(self) -> Self {
        Self { positive: !self.positive, ..self }
    }
}

impl std::fmt::Display for SingleWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sign = if self.positive { "+" } else { "-" };
        let axis = match self.axis {
            Axis::First => "e1",
            Axis::Second => "e2",
        };
        write!(f, "{sign}{axis}")
    }
}

impl std::str::FromStr for SingleWeight {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "e1" | "+e1" => Ok(Self::E1),
            "-e1" => Ok(Self::NEG_E1),
            "e2" | "+e2" => Ok(Self::E2),
            "-e2" => Ok(Self::NEG_E2),
            other => Err(format!("unknown single weight {other:?}, expected one of +e1 -e1 +e2 -e2")),
        }
    }
}

fn pair_sum(lam: &WeightPoint, a: SingleWeight, b: SingleWeight) -> Complex64 {
    a.pair(lam) + b.pair(lam)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceConfig {
    pub lambda: WeightPoint,
    pub top: SingleWeight,
    pub right: SingleWeight,
    pub left: SingleWeight,
    pub bottom: SingleWeight,
    pub u: Complex64,
    pub hbar: Complex64,
    pub modulus: EllipticModulus,
}

/// The five shapes of an admissible face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceCase {
    /// All edges equal.
    Straight,
    /// top = left = p, right = bottom = q, p ≠ ±q.
    Turn,
    /// left = right = p, top = bottom = q, p ≠ ±q.
    Cross,
    /// left = p, top = q, right = −q, bottom = −p, p ≠ q.
    Reflect,
    /// top = left = p, right = bottom = −p.
    Backtrack,
}

impl FaceConfig {
    pub fn is_admissible(&self) -> bool {
        let add = |a: (i32, i32), b: (i32, i32)| (a.0 + b.0, a.1 + b.1);
        add(self.top.vector(), self.right.vector()) == add(self.left.vector(), self.bottom.vector())
    }

    pub fn classify(&self) -> Option<FaceCase> {
        if !self.is_admissible() {
            return None;
        }
        let (t, r, l, b) = (self.top, self.right, self.left, self.bottom);
        if t == r && r == l && l == b {
            Some(FaceCase::Straight)
        } else if t == l && r == b && t != r.neg() {
            Some(FaceCase::Turn)
        } else if l == r && t == b && l != t.neg() {
            Some(FaceCase::Cross)
        } else if r == t.neg() && b == l.neg() {
            Some(if l == t { FaceCase::Backtrack } else { FaceCase::Reflect })
        } else {
            None
        }
    }
}

/// W₁₁ for the face described by `cfg`; zero when the face does not close.
pub fn w11(cfg: &FaceConfig) -> Result<Complex64> {
    let Some(case) = cfg.classify() else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let m = &cfg.modulus;
    let (u, h, lam) = (cfg.u, cfg.hbar, &cfg.lambda);
    let c = -3.0 * h;
    let t = |z: Complex64| theta1(z, m);
    let d = |z: Complex64| theta1_denominator(z, m);
    Ok(match case {
        FaceCase::Straight => t(c - u)? * t(u + h)? / (d(c)? * d(h)?),
        FaceCase::Turn => {
            let l = pair_sum(lam, cfg.top, cfg.right.neg());
            t(c - u)? * t(l - u)? / (d(c)? * d(l)?)
        }
        FaceCase::Cross => {
            let l = pair_sum(lam, cfg.left, cfg.top.neg());
            t(c - u)? * t(u)? * t(l + h)? / (d(c)? * d(h)? * d(l)?)
        }
        FaceCase::Reflect => {
            let (p, q) = (cfg.left, cfg.top);
            let l = pair_sum(lam, p, q);
            let mut v = -t(u)? * t(l + h + c - u)? / (d(c)? * d(l + h)?) * t(2.0 * p.pair(lam) + 2.0 * h)?
                / d(2.0 * q.pair(lam))?;
            for r in SingleWeight::ALL {
                if r != p && r != p.neg() {
                    v *= t(pair_sum(lam, p, r) + h)?;
                }
                if r != q && r != q.neg() {
                    v /= d(pair_sum(lam, q, r))?;
                }
            }
            v
        }
        FaceCase::Backtrack => {
            let p = cfg.left;
            let a = 2.0 * p.pair(lam);
            let first = t(c - u)? * t(a + h - u)? / (d(c)? * d(a + h)?);
            let mut second = -t(u)? * t(a + h + c - u)? / (d(c)? * d(a + h)?) * t(a + 2.0 * h)? / d(a)?;
            for q in SingleWeight::ALL {
                if q != p && q != p.neg() {
                    let s = pair_sum(lam, p, q);
                    second *= t(s + h)? / d(s)?;
                }
            }
            first + second
        }
    })
}

/// Weight of the face with corners given as integer offsets from `base`
/// (in units of ħ per coordinate): `a` top-left, `b` top-right, `c`
/// bottom-left, `d` bottom-right.
fn face_by_corners(
    base: &WeightPoint,
    corners: [(i32, i32); 4],
    u: Complex64,
    hbar: Complex64,
    modulus: &EllipticModulus,
) -> Result<Complex64> {
    let [a, b, c, d] = corners;
    let edge = |from: (i32, i32), to: (i32, i32)| SingleWeight::from_vector((to.0 - from.0, to.1 - from.1));
    let (Some(top), Some(left), Some(right), Some(bottom)) = (edge(a, b), edge(a, c), edge(b, d), edge(c, d)) else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let cfg = FaceConfig {
        lambda: base.shifted(a.0 as f64, a.1 as f64, hbar),
        top,
        right,
        left,
        bottom,
        u,
        hbar,
        modulus: *modulus,
    };
    w11(&cfg)
}

/// Largest normalized discrepancy of the Yang–Baxter equation of type (1,1,1)
/// over all boundary configurations around `lambda`.
///
/// For each boundary λ → ρ → σ → κ (left then bottom) and λ → μ → ν → κ
/// (top then right) both sides sum over the interior corner η. The largest
/// difference is divided by the largest single summand met at this λ, so
/// boundaries whose sums vanish identically do not amplify rounding noise.
pub fn ybe_residual(
    lambda: &WeightPoint,
    u: Complex64,
    v: Complex64,
    w: Complex64,
    hbar: Complex64,
    modulus: &EllipticModulus,
) -> Result<f64> {
    let steps: Vec<(i32, i32)> = SingleWeight::ALL.iter().map(|s| s.vector()).collect();
    let add = |a: (i32, i32), b: (i32, i32)| (a.0 + b.0, a.1 + b.1);
    let spectral = [u - v, u - w, v - w];
    let mut cache: HashMap<([(i32, i32); 4], usize), Complex64> = HashMap::new();
    let mut weight = |corners: [(i32, i32); 4], which: usize| -> Result<Complex64> {
        if let Some(v) = cache.get(&(corners, which)) {
            return Ok(*v);
        }
        let v = face_by_corners(lambda, corners, spectral[which], hbar, modulus)?;
        cache.insert((corners, which), v);
        Ok(v)
    };
    let lam = (0, 0);
    let (mut worst_gap, mut scale) = (0.0f64, 0.0f64);
    for &a1 in &steps {
        let rho = a1;
        for &a2 in &steps {
            let sigma = add(rho, a2);
            for &a3 in &steps {
                let kappa = add(sigma, a3);
                for &a4 in &steps {
                    let mu = a4;
                    for &a5 in &steps {
                        let nu = add(mu, a5);
                        if SingleWeight::from_vector((kappa.0 - nu.0, kappa.1 - nu.1)).is_none() {
                            continue;
                        }
                        let (mut lhs, mut rhs) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
                        for &e in &steps {
                            let eta = add(rho, e);
                            let term = weight([rho, eta, sigma, kappa], 0)?
                                * weight([lam, mu, rho, eta], 1)?
                                * weight([mu, nu, eta, kappa], 2)?;
                            lhs += term;
                            scale = scale.max(term.norm());
                            let eta = add(lam, e);
                            let term = weight([lam, eta, rho, sigma], 2)?
                                * weight([eta, nu, sigma, kappa], 1)?
                                * weight([lam, mu, eta, nu], 0)?;
                            rhs += term;
                            scale = scale.max(term.norm());
                        }
                        worst_gap = worst_gap.max((lhs - rhs).norm());
                    }
                }
            }
        }
    }
    Ok(if scale > 0.0 { worst_gap / scale } else { 0.0 })
}

/// Every admissible face at `lambda` with spectral parameter `u`.
pub fn admissible_faces(
    lambda: WeightPoint,
    u: Complex64,
    hbar: Complex64,
    modulus: EllipticModulus,
) -> Vec<FaceConfig> {
    let mut out = Vec::new();
    for top in SingleWeight::ALL {
        for right in SingleWeight::ALL {
            for left in SingleWeight::ALL {
                for bottom in SingleWeight::ALL {
                    let cfg = FaceConfig { lambda, top, right, left, bottom, u, hbar, modulus };
                    if cfg.is_admissible() {
                        out.push(cfg);
                    }
                }
            }
        }
    }
    out
}

/// Agreement of the real-direction and imaginary-direction central
/// differences of W₁₁ in u (a Cauchy–Riemann check), relative to max(1, |W′|).
pub fn holomorphy_residual(cfg: &FaceConfig, step: f64) -> Result<f64> {
    let at = |du: Complex64| w11(&FaceConfig { u: cfg.u + du, ..*cfg });
    let h = Complex64::new(step, 0.0);
    let ih = Complex64::new(0.0, step);
    let real_dir = (at(h)? - at(-h)?) / (2.0 * h);
    let imag_dir = (at(ih)? - at(-ih)?) / (2.0 * ih);
    Ok((real_dir - imag_dir).norm() / real_dir.norm().max(imag_dir.norm()).max(1.0))
}
