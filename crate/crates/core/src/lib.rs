//! Numerical toolkit for the elliptic difference operators of type C₂.
//!
//! The crate evaluates Jacobi theta and Weierstrass functions, the face
//! weights of the C₂⁽¹⁾ face model, the commuting difference operators built
//! from them, their identification with van Diejen's operators, the spectral
//! decomposition on the level-one theta space and the differential limit.

pub mod difflimit;
pub mod diffops;
pub mod elliptic;
pub mod error;
pub mod face_weights;
pub mod sampling;
pub mod spectra;
pub mod vandiejen;
pub mod weight;

pub use error::{Error, Result};
pub use num_complex::Complex64;
