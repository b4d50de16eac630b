//! Distributions built by integration and summation by parts.
//!
//! Writing a pdf as f = -u v' and integrating by parts turns the boundary
//! terms plus `int u' v` into a new pdf; the discrete analogue works on
//! probability mass functions through summation by parts. This crate
//! provides the generic transforms, the closed-form families they generate,
//! special-function kernels (including the incomplete gamma function with
//! nonpositive first argument), random variate generation, and maximum
//! likelihood fitting with right censoring, covariate regression and a
//! stochastic-dominance test.

pub mod dist;
pub mod error;
pub mod ibp;
pub mod quad;
pub mod special;

pub use error::{Error, Result};
pub use quad::QuadratureConfig;
