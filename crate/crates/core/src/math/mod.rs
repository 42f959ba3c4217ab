//! Scalar numerics shared across the crate: the standard normal CDF and its
//! inverse, bisection root finding, and adaptive Gauss–Kronrod quadrature.

pub mod bisect;
pub mod normal;
pub mod quad;

pub use bisect::bisect;
pub use normal::{norm_cdf, norm_pdf, norm_quantile};
pub use quad::integrate;
