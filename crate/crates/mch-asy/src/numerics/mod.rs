//! Numerical kernels shared by every region evaluator.

pub mod airy;
pub mod hermite;
pub mod ode;
pub mod quad;
pub mod roots;
pub mod theta;

pub use airy::airy;
pub use quad::{
    quad, quad_band, quad_half, quad_inf, quad_line, quad_pv, quad_pv_interval, quad_real, Quad, QuadratureSpec,
};
pub use roots::find_root;
pub use theta::{jacobi_theta, jacobi_theta_prime, ThetaParams};
