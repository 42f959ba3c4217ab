//! Symmetric Bayes procedures for finite discrete priors: the Q-statistic,
//! the threshold rule, and an independent brute-force posterior-loss oracle.

mod posterior;
mod prior;

pub use posterior::{
    BayesError, BayesProcedure, PosteriorSummary, bayes_rule, posterior_oracle,
    posterior_summary, q_value,
};
pub use prior::{Atom, PriorError, SymmetricDiscretePrior};
