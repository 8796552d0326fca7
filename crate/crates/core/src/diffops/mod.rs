//! Elliptic difference operators in two variables and the A₁ Lamé operator.

mod lame;
mod operator;
mod system;

pub use lame::{bethe_residual, bethe_solutions, lame_eigen_residual, lame_eigenvalue, LameOperator};
pub use operator::{coefficient, op_distance, Coefficient, DifferenceOperator, ShiftVector};
pub use system::{
    build_h_pm, build_m, build_m_tilde, constant_k, f_factor, g_factor, h_factor, k_four_term_sum, lemma22_lhs,
    lemma22_residual, r_potential, u_potential, Degree, PlusMinus,
};
