//! Special functions behind the spectral invariants.
//!
//! Zeta values come back as [`ZetaValue`], carrying an a-posteriori bound on
//! the absolute error (truncation plus a floating-point rounding estimate).

mod bernoulli;
mod gamma;
mod theta;
mod zeta;

pub use bernoulli::{bernoulli_even, MAX_BERNOULLI_INDEX};
pub use gamma::{ln_gamma_complex, log_gamma};
pub use theta::{jacobi_theta2, theta2_direct, theta2_modular};
pub use zeta::{
    hurwitz_relation_gap, hurwitz_zeta, hurwitz_zeta_deriv_at_zero, hurwitz_zeta_deriv_fd,
    riemann_zeta, ZetaValue, POLE_RADIUS, RE_S_MAX, RE_S_MIN,
};
