//! Jacobi theta functions in the unit-period convention.
//!
//! With `q`-exponent `2πi·(½ n² τ)` the four series are
//!
//! * θ₁(z) = Σ exp 2πi[(z+½)(k+½) + ½(k+½)²τ]
//! * θ₂(z) = Σ exp 2πi[z(k+½) + ½(k+½)²τ]
//! * θ₃(z) = Σ exp 2πi[zk + ½k²τ]
//! * θ₄(z) = Σ exp 2πi[(z+½)k + ½k²τ]
//!
//! Every evaluation first reduces `z` into the cell |Re z| ≤ ½, |Im z| ≤ Im τ / 2
//! and then sums a symmetric window whose width comes from an explicit tail bound.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest |θ₁| accepted in a denominator.
pub const POLE_FLOOR: f64 = 1e-8;

/// Highest derivative order supported by [`theta`].
pub const MAX_ORDER: u8 = 4;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Modulus τ together with the truncation policy for all theta series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticModulus {
    tau: Complex64,
    target_abs_err: f64,
    max_terms: usize,
}

impl EllipticModulus {
    pub const DEFAULT_TARGET: f64 = 1e-14;
    pub const DEFAULT_MAX_TERMS: usize = 4001;

    pub fn new(tau: Complex64) -> Result<Self> {
        Self::with_policy(tau, Self::DEFAULT_TARGET, Self::DEFAULT_MAX_TERMS)
    }

    pub fn with_policy(tau: Complex64, target_abs_err: f64, max_terms: usize) -> Result<Self> {
        if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(Error::InvalidModulus(tau));
        }
        if !(target_abs_err > 0.0) || max_terms == 0 {
            return Err(Error::Constraint("truncation target must be positive and max_terms nonzero".into()));
        }
        Ok(Self { tau, target_abs_err, max_terms })
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn target_abs_err(&self) -> f64 {
        self.target_abs_err
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    /// The same policy at modulus 2τ.
    pub fn doubled(&self) -> Self {
        Self { tau: 2.0 * self.tau, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    One,
    Two,
    Three,
    Four,
}

impl ThetaKind {
    pub const ALL: [ThetaKind; 4] = [ThetaKind::One, ThetaKind::Two, ThetaKind::Three, ThetaKind::Four];

    pub fn index(self) -> u8 {
        match self {
            ThetaKind::One => 1,
            ThetaKind::Two => 2,
            ThetaKind::Three => 3,
            ThetaKind::Four => 4,
        }
    }

    /// `(half-integer index?, constant added to z)` for the printed series.
    fn layout(self) -> (bool, f64) {
        match self {
            ThetaKind::One => (true, 0.5),
            ThetaKind::Two => (true, 0.0),
            ThetaKind::Three => (false, 0.0),
            ThetaKind::Four => (false, 0.5),
        }
    }

    /// Sign picked up under z → z + 1.
    fn sign_real_period(self) -> f64 {
        match self {
            ThetaKind::One | ThetaKind::Two => -1.0,
            ThetaKind::Three | ThetaKind::Four => 1.0,
        }
    }

    /// Sign picked up under z → z + τ, besides the exponential factor.
    fn sign_tau_period(self) -> f64 {
        match self {
            ThetaKind::One | ThetaKind::Four => -1.0,
            ThetaKind::Two | ThetaKind::Three => 1.0,
        }
    }
}

impl TryFrom<u8> for ThetaKind {
    type Error = Error;

    fn try_from(k: u8) -> Result<Self> {
        match k {
            1 => Ok(ThetaKind::One),
            2 => Ok(ThetaKind::Two),
            3 => Ok(ThetaKind::Three),
            4 => Ok(ThetaKind::Four),
            other => Err(Error::InvalidThetaKind(other)),
        }
    }
}

/// Lattice shift removed by [`reduce_argument`]: z = z0 + m + nτ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduction {
    pub z0: Complex64,
    pub prefactor: Complex64,
    pub m: i64,
    pub n: i64,
}

/// Splits `z = z0 + m + nτ` with z0 in the fundamental cell and returns the
/// factor with θ(z) = prefactor · θ(z0).
pub fn reduce(kind: ThetaKind, z: Complex64, modulus: &EllipticModulus) -> Reduction {
    let tau = modulus.tau;
    let n = (z.im / tau.im).round();
    let w = z - n * tau;
    let m = w.re.round();
    let z0 = w - m;
    let (n, m) = (n as i64, m as i64);
    let sign =
        kind.sign_real_period().powi((m.rem_euclid(2)) as i32) * kind.sign_tau_period().powi((n.rem_euclid(2)) as i32);
    let nf = n as f64;
    let prefactor = sign * (-I * PI * nf * nf * tau - 2.0 * I * PI * nf * z0).exp();
    Reduction { z0, prefactor, m, n }
}

/// `(z0, prefactor)` with θ_kind(z) = prefactor · θ_kind(z0).
pub fn reduce_argument(kind: u8, z: Complex64, modulus: &EllipticModulus) -> Result<(Complex64, Complex64)> {
    let r = reduce(ThetaKind::try_from(kind)?, z, modulus);
    Ok((r.z0, r.prefactor))
}

/// Half-width of the summation window for a reduced argument with imaginary part `y`.
fn window(y: f64, modulus: &EllipticModulus, order: u8) -> Result<usize> {
    let t = modulus.tau.im;
    let bound = |n: f64| (-PI * t * n * n + 2.0 * PI * y.abs() * n).exp() * (2.0 * PI * n).max(1.0).powi(order as i32);
    let peak = y.abs() / t;
    let mut k = 0usize;
    loop {
        let first_omitted = k as f64 + 1.0;
        if first_omitted > peak + 1.0 {
            let b0 = bound(first_omitted);
            let rho = bound(first_omitted + 1.0) / b0;
            let tail = if rho < 1.0 { 2.0 * b0 / (1.0 - rho) } else { f64::INFINITY };
            if tail < modulus.target_abs_err {
                break;
            }
        }
        k += 1;
        if 2 * k + 2 > modulus.max_terms {
            return Err(Error::TruncationOverflow { needed: 2 * k + 2, limit: modulus.max_terms });
        }
    }
    Ok(k)
}

/// Value and derivatives of orders `0..=order` of the raw series at `z`,
/// summing indices with |n| ≤ `half_width` (+½ for θ₁, θ₂).
fn series(kind: ThetaKind, z: Complex64, tau: Complex64, half_width: usize, order: u8) -> [Complex64; 5] {
    let (half, shift) = kind.layout();
    let zs = z + shift;
    let mut out = [Complex64::new(0.0, 0.0); 5];
    let lo = -(half_width as i64) - if half { 1 } else { 0 };
    let hi = half_width as i64;
    for k in lo..=hi {
        let n = k as f64 + if half { 0.5 } else { 0.0 };
        let term = (2.0 * I * PI * (zs * n + 0.5 * n * n * tau)).exp();
        let factor = 2.0 * I * PI * n;
        let mut t = term;
        out[0] += t;
        for slot in out.iter_mut().take(order as usize + 1).skip(1) {
            t *= factor;
            *slot += t;
        }
    }
    out
}

/// θ and its derivatives of orders `0..=order` at `z` (entries above `order` are zero).
pub fn theta_derivatives(
    kind: ThetaKind,
    z: Complex64,
    modulus: &EllipticModulus,
    order: u8,
) -> Result<[Complex64; 5]> {
    if order > MAX_ORDER {
        return Err(Error::InvalidDerivativeOrder { order, min: 0, max: MAX_ORDER });
    }
    let red = reduce(kind, z, modulus);
    let k = window(red.z0.im, modulus, order)?;
    let base = series(kind, red.z0, modulus.tau, k, order);
    if red.n == 0 {
        let mut out = base;
        for v in out.iter_mut() {
            *v *= red.prefactor;
        }
        return Ok(out);
    }
    // d/dz of the prefactor is multiplication by −2πin.
    let dp = -2.0 * I * PI * red.n as f64;
    let mut out = [Complex64::new(0.0, 0.0); 5];
    for r in 0..=order as usize {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        for j in 0..=r {
            acc += binomial(r, j) * pow * base[r - j];
            pow *= dp;
        }
        out[r] = red.prefactor * acc;
    }
    Ok(out)
}

/// d^order/dz^order θ_kind(z | τ).
pub fn theta(kind: u8, z: Complex64, modulus: &EllipticModulus, order: u8) -> Result<Complex64> {
    let kind = ThetaKind::try_from(kind)?;
    Ok(theta_derivatives(kind, z, modulus, order)?[order as usize])
}

pub fn theta1(z: Complex64, modulus: &EllipticModulus) -> Result<Complex64> {
    Ok(theta_derivatives(ThetaKind::One, z, modulus, 0)?[0])
}

pub fn theta_k(kind: ThetaKind, z: Complex64, modulus: &EllipticModulus) -> Result<Complex64> {
    Ok(theta_derivatives(kind, z, modulus, 0)?[0])
}

/// θ₁(z), refused when it falls below [`POLE_FLOOR`].
pub fn theta1_denominator(z: Complex64, modulus: &EllipticModulus) -> Result<Complex64> {
    nonvanishing(theta1(z, modulus)?, "theta1")
}

/// Passes `value` through unless it is too close to zero to divide by.
pub fn nonvanishing(value: Complex64, what: &'static str) -> Result<Complex64> {
    if value.norm() < POLE_FLOOR || !value.is_finite() {
        Err(Error::PoleProximity { what, value: value.norm() })
    } else {
        Ok(value)
    }
}

/// Unreduced summation over the fixed window |n| ≤ `half_width`.
///
/// Used as an independent reference in the verification suites; it is only
/// accurate while the window covers the dominant terms for this `z`.
pub fn theta_direct(kind: ThetaKind, z: Complex64, tau: Complex64, order: u8, half_width: usize) -> Complex64 {
    series(kind, z, tau, half_width, order.min(MAX_ORDER))[order.min(MAX_ORDER) as usize]
}

/// (log θ₁)^(order)(z) for order 2, 3 or 4.
pub fn log_theta1_deriv(z: Complex64, modulus: &EllipticModulus, order: u8) -> Result<Complex64> {
    if !(2..=4).contains(&order) {
        return Err(Error::InvalidDerivativeOrder { order, min: 2, max: 4 });
    }
    let d = theta_derivatives(ThetaKind::One, z, modulus, order)?;
    let t = nonvanishing(d[0], "theta1")?;
    let a = d[1] / t;
    let b = d[2] / t;
    Ok(match order {
        2 => b - a * a,
        3 => d[3] / t - 3.0 * a * b + 2.0 * a * a * a,
        _ => {
            let c = d[3] / t;
            d[4] / t - 4.0 * a * c - 3.0 * b * b + 12.0 * a * a * b - 6.0 * a.powi(4)
        }
    })
}

/// θ₁^(k)/θ₁ for k = 0..=4 at `z` (index 0 holds θ₁ itself).
pub fn theta1_ratios(z: Complex64, modulus: &EllipticModulus) -> Result<[Complex64; 5]> {
    let d = theta_derivatives(ThetaKind::One, z, modulus, 4)?;
    let t = nonvanishing(d[0], "theta1")?;
    Ok([t, d[1] / t, d[2] / t, d[3] / t, d[4] / t])
}

fn binomial(n: usize, k: usize) -> f64 {
    const ROWS: [[f64; 5]; 5] = [
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0, 0.0],
        [1.0, 2.0, 1.0, 0.0, 0.0],
        [1.0, 3.0, 3.0, 1.0, 0.0],
        [1.0, 4.0, 6.0, 4.0, 1.0],
    ];
    ROWS[n][k]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Plain unreduced sum with a wide window, written independently of `series`.
    fn oracle(kind: u8, z: Complex64, tau: Complex64, order: i32) -> Complex64 {
        let mut s = c(0.0, 0.0);
        for k in -400i32..=400 {
            let (n, arg) = match kind {
                1 => (k as f64 + 0.5, z + 0.5),
                2 => (k as f64 + 0.5, z),
                3 => (k as f64, z),
                _ => (k as f64, z + 0.5),
            };
            let e = 2.0 * PI * I * (arg * n + 0.5 * n * n * tau);
            if e.re < -700.0 {
                continue;
            }
            s += (2.0 * PI * I * n).powi(order) * e.exp();
        }
        s
    }

    fn m(tau: Complex64) -> EllipticModulus {
        EllipticModulus::new(tau).unwrap()
    }

    #[test]
    fn theta1_is_odd_at_origin() {
        assert!(theta(1, c(0.0, 0.0), &m(c(0.0, 1.0)), 0).unwrap().norm() < 1e-15);
    }

    #[test]
    fn real_period_flips_theta1() {
        let md = m(c(0.0, 1.0));
        let z = c(0.2, 0.1);
        let a = theta(1, z + 1.0, &md, 0).unwrap();
        let b = theta(1, z, &md, 0).unwrap();
        assert!((a + b).norm() < 1e-14);
    }

    #[test]
    fn theta3_matches_wide_sum() {
        let tau = c(0.0, 0.8);
        let z = c(0.25, 0.3);
        let got = theta(3, z, &m(tau), 0).unwrap();
        let want = oracle(3, z, tau, 0);
        assert!((got - want).norm() < 1e-13, "{got} vs {want}");
        // Frozen from a 40-digit evaluation of the same series.
        let frozen = c(0.998131564737383, -0.521188954657666);
        assert!((got - frozen).norm() < 1e-13, "{got}");
    }

    #[test]
    fn derivatives_match_wide_sum_for_all_kinds() {
        let tau = c(0.13, 1.1);
        let md = m(tau);
        for kind in 1..=4u8 {
            for z in [c(0.31, 0.17), c(-0.42, -0.5), c(1.7, 2.9), c(-3.2, -4.4)] {
                for order in 0..=4u8 {
                    let got = theta(kind, z, &md, order).unwrap();
                    let want = oracle(kind, z, tau, order as i32);
                    let scale = want.norm().max(1.0);
                    assert!((got - want).norm() / scale < 1e-12, "kind {kind} z {z} order {order}: {got} vs {want}");
                }
            }
        }
    }

    #[test]
    fn reduce_argument_examples() {
        let md = m(c(0.0, 1.0));
        let (z0, p) = reduce_argument(1, c(0.3, 0.0), &md).unwrap();
        assert_eq!(z0, c(0.3, 0.0));
        assert_eq!(p, c(1.0, 0.0));

        let tau = c(0.0, 1.0);
        let z = c(0.1, 0.0);
        let (z0, p) = reduce_argument(1, z + tau, &md).unwrap();
        assert!((z0 - z).norm() < 1e-15);
        let want = -(-I * PI * tau - 2.0 * I * PI * z).exp();
        assert!((p - want).norm() < 1e-14);

        let tau = c(0.0, 1.2);
        let md = m(tau);
        // A lattice point: the product vanishes, the raw sum cancels down from |prefactor|.
        let z = 5.0 + 3.0 * tau;
        let (z0, p) = reduce_argument(1, z, &md).unwrap();
        let reduced = p * theta(1, z0, &md, 0).unwrap();
        let want = oracle(1, z, tau, 0);
        assert!((reduced - want).norm() / p.norm() < 1e-12);
        let z = z + c(0.17, 0.06);
        let (z0, p) = reduce_argument(1, z, &md).unwrap();
        let reduced = p * theta(1, z0, &md, 0).unwrap();
        let want = oracle(1, z, tau, 0);
        assert!((reduced - want).norm() / want.norm() < 1e-12);
    }

    #[test]
    fn log_derivative_parity_and_finite_difference() {
        let md = m(c(0.0, 1.0));
        let z = c(0.3, 0.2);
        let l2 = log_theta1_deriv(z, &md, 2).unwrap();
        assert!((l2 - log_theta1_deriv(-z, &md, 2).unwrap()).norm() < 1e-12);
        let l3 = log_theta1_deriv(z, &md, 3).unwrap();
        assert!((l3 + log_theta1_deriv(-z, &md, 3).unwrap()).norm() < 1e-11);

        let lt = |x: Complex64| theta(1, x, &md, 0).unwrap().ln();
        let fd = |h: f64| (lt(z + h) - 2.0 * lt(z) + lt(z - h)) / (h * h);
        let (h, h2) = (1e-3, 5e-4);
        let richardson = (4.0 * fd(h2) - fd(h)) / 3.0;
        assert!((richardson - l2).norm() / l2.norm() < 1e-7, "{richardson} vs {l2}");
    }

    #[test]
    fn truncation_overflow_is_reported() {
        let md = EllipticModulus::with_policy(c(0.0, 1e-4), 1e-14, 11).unwrap();
        assert!(matches!(theta(3, c(0.1, 0.0), &md, 0), Err(Error::TruncationOverflow { .. })));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(EllipticModulus::new(c(0.3, -1.0)).is_err());
        assert!(matches!(theta(5, c(0.0, 0.0), &m(c(0.0, 1.0)), 0), Err(Error::InvalidThetaKind(5))));
        assert!(theta(1, c(0.0, 0.0), &m(c(0.0, 1.0)), 5).is_err());
        assert!(log_theta1_deriv(c(0.2, 0.0), &m(c(0.0, 1.0)), 1).is_err());
    }
}
