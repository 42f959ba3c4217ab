//! Decision-theoretic toolkit for multiple endpoint testing under an
//! equicorrelated (intraclass) normal model.
//!
//! The crate provides:
//!
//! - the intraclass normal model: closed-form precision algebra, densities,
//!   sampling, conditional distributions, and the partial-sum coordinate
//!   change ([`model`]);
//! - concrete decision procedures: step-up, a marginal-threshold baseline,
//!   and the two-endpoint strip modification `psi*` that improves on step-up
//!   ([`procedures`]);
//! - symmetric Bayes rules for finite discrete priors, with a brute-force
//!   posterior-loss oracle ([`bayes`]);
//! - vector risk (expected false rejections / false acceptances) by Monte
//!   Carlo and by exact one-dimensional quadrature ([`risk`]);
//! - a numerical admissibility checker based on partial-sum monotonicity
//!   scans, with the explicit step-up violation witness ([`admissibility`]).
//!
//! All computation is pure: values are immutable after construction and safe
//! to share across threads. The crate is `no_std` (with `alloc`); IO, file
//! formats, and the command line live in the companion `vrsp-cli` crate.

#![no_std]
// Range guards are written as negated comparisons (`!(x > 0.0)`) so that NaN
// fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod admissibility;
pub mod bayes;
pub mod math;
pub mod model;
pub mod procedures;
pub mod risk;

pub use model::{ActionVector, DecisionMass, IntraclassModel, MeanVector, PartialSums};
pub use procedures::{CriticalValues, Procedure, StripImprovement};
