//! Theta, sigma and Weierstrass functions shared by every other module.

mod identities;
mod sigma;
mod theta;

pub use identities::{
    addition_residuals, half_period_residuals, parity_residual, quasi_periodicity_residual, sigma_law_residual,
};

pub use sigma::{eta1_const, sigma_fn, wp, HalfPeriods};
pub use theta::{
    log_theta1_deriv, nonvanishing, reduce, reduce_argument, theta, theta1, theta1_denominator, theta1_ratios,
    theta_derivatives, theta_direct, theta_k, EllipticModulus, Reduction, ThetaKind, MAX_ORDER, POLE_FLOOR,
};
