//! Numerical building blocks: adaptive quadrature, the special functions the
//! outage expressions need, the Ψ kernel, and monotone interpolation.

use thiserror::Error;

pub mod interp;
pub mod psi;
pub mod quad;
pub mod special;
pub mod sum;

pub use interp::Pchip;
pub use psi::{psi_alpha2_closed, psi_kernel};
pub use quad::{
    integrate_1d, integrate_1d_with_breaks, integrate_2d_polar, integrate_2d_polar_with,
    integrate_semi_infinite, integrate_semi_infinite_with_breaks, Estimate, PolarOptions,
    QuadratureSpec,
};
pub use sum::CompensatedSum;
pub use special::{bessel_k1, exp_scaled_e1, gamma_fn, gamma_upper_inc, hyp2f1_special};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MathError {
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("quadrature did not converge (best estimate {estimate:e}, error bound {error:e})")]
    NoConvergence { estimate: f64, error: f64 },
}
