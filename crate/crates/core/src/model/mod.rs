//! The equicorrelated normal model: densities, precision algebra, sampling,
//! conditional distributions, the action lattice, and the partial-sum
//! coordinate change.

mod action;
mod intraclass;
mod partial_sums;
pub(crate) mod sample;

pub use action::{ActionVector, DecisionMass, MassError, psi_from_delta};
pub use intraclass::{ConditionalNormal, IntraclassModel, MeanVector, ModelError};
pub use partial_sums::{PartialSums, partial_sums};
pub use sample::{GENERATOR_NAME, NormalSource, SUBSTREAM_BLOCK};
