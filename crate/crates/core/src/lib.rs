//! Numerics for the half-integer ("twisted") Fourier scale on `[0, 1]`.
//!
//! Functions on the unit interval are expanded in the modes
//! `psi_k(x) = exp(2 pi i (k + 1/2) x)`, which are antiperiodic:
//! `psi_k(x + 1) = -psi_k(x)`. On top of that basis the crate provides
//!
//! * [`transform`]: the twist `exp(i pi x)` and the forward/inverse
//!   coefficient maps on uniform grids,
//! * [`scale`]: the weighted norms with weight `(1 + |k + 1/2|^2)^s`,
//! * [`operator`]: the diagonal operator with eigenvalues `k + 1/2`, its
//!   resolvent and the antiperiodic boundary value solver,
//! * [`special`]: Riemann and Hurwitz zeta, log-gamma and theta functions,
//! * [`invariants`]: the spectral zeta function, zeta-regularized
//!   determinant and heat trace,
//! * [`flow`]: eigenvalue tracking and spectral flow for perturbed
//!   truncations,
//! * [`cli`]: the command surface behind the `halfspec` binary.

pub mod cli;
pub mod error;
pub mod flow;
pub mod invariants;
pub mod io;
pub mod operator;
pub mod scale;
pub mod special;
pub mod transform;

pub use error::{Error, Result};
pub use num_complex::Complex64;
