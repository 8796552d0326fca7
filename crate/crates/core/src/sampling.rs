//! Random generic points with rejection near poles.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::weight::WeightPoint;

/// Attempts per point before giving up.
pub const RETRY_BUDGET: usize = 100;

/// λ uniform in Re ∈ [0.05, 0.45], Im ∈ [0, 0.3·Im τ] for both coordinates.
pub fn sample_point<R: Rng + ?Sized>(rng: &mut R, tau: Complex64) -> WeightPoint {
    let mut coord = || Complex64::new(rng.gen_range(0.05..0.45), rng.gen_range(0.0..0.3 * tau.im));
    let l1 = coord();
    let l2 = coord();
    WeightPoint::new(l1, l2)
}

/// Complex number with both parts uniform in [−r, r].
pub fn sample_complex<R: Rng + ?Sized>(rng: &mut R, r: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

/// Runs `attempt` until it succeeds, retrying on pole proximity or an
/// ill-conditioned solve. Other errors are returned immediately.
pub fn retry<R, T, F>(rng: &mut R, mut attempt: F) -> Result<T>
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> Result<T>,
{
    for _ in 0..RETRY_BUDGET {
        match attempt(rng) {
            Ok(v) => return Ok(v),
            Err(Error::PoleProximity { .. }) | Err(Error::IllConditioned(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplerExhausted(RETRY_BUDGET))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn points_lie_in_the_box() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let tau = Complex64::new(0.0, 1.1);
        for _ in 0..200 {
            let p = sample_point(&mut rng, tau);
            for z in [p.l1, p.l2] {
                assert!((0.05..0.45).contains(&z.re));
                assert!((0.0..0.33).contains(&z.im));
            }
        }
    }

    #[test]
    fn exhaustion_is_an_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r: Result<()> = retry(&mut rng, |_| Err(Error::PoleProximity { what: "x", value: 0.0 }));
        assert_eq!(r, Err(Error::SamplerExhausted(RETRY_BUDGET)));
        let r: Result<()> = retry(&mut rng, |_| Err(Error::OperatorMismatch));
        assert_eq!(r, Err(Error::OperatorMismatch));
    }
}
