//! Posterior quantities of the (μ, θ) prior: the Q-statistic, the threshold
//! Bayes rule, and a brute-force posterior-loss oracle.
//!
//! Every integral is a finite sum over prior atoms. Sums run in log space
//! with max-shift accumulation, since the exponential tilts e^{z′Σ⁻¹μ} leave
//! double precision long before z or μ get large.

use alloc::vec::Vec;

use crate::model::{ActionVector, IntraclassModel, MeanVector, ModelError};
use crate::procedures::Procedure;

use super::prior::SymmetricDiscretePrior;

/// Posterior evaluation errors.
#[derive(Debug, Clone, PartialEq)]
pub enum BayesError {
    /// Dimension mismatch between prior, model, or observation.
    Dimension { expected: usize, got: usize },
    /// The marginal density degenerated (non-finite log marginal); no
    /// posterior comparison is possible.
    DegeneratePosterior { log_marginal: f64 },
    /// The 2^k action enumeration is capped at k = 12.
    EnumerationTooLarge { k: usize },
}

impl core::fmt::Display for BayesError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BayesError::Dimension { expected, got } => {
                write!(f, "expected dimension {expected}, got {got}")
            }
            BayesError::DegeneratePosterior { log_marginal } => {
                write!(f, "posterior degenerated: log marginal = {log_marginal}")
            }
            BayesError::EnumerationTooLarge { k } => {
                write!(f, "posterior oracle enumerates 2^k actions; k = {k} exceeds 12")
            }
        }
    }
}

impl core::error::Error for BayesError {}

impl From<ModelError> for BayesError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::DimensionMismatch { expected, got } => {
                BayesError::Dimension { expected, got }
            }
            other => panic!("unexpected model error in posterior evaluation: {other}"),
        }
    }
}

/// Posterior summary at one observation: the vector of Q(Ω^(i)|z) values,
/// the log marginal log f(z), P{Θ=1|z}, and the vector P{V_i=0|z}.
#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorSummary {
    pub q: Vec<f64>,
    pub log_marginal: f64,
    pub p_theta1: f64,
    pub p_v0: Vec<f64>,
}

struct LogTerm {
    log_joint: f64,
    log_cond1: f64, // without the (1−β) factor; −inf for θ=0 atoms
    mean_is_zero: u128,
    theta: u8,
}

fn log_terms(
    prior: &SymmetricDiscretePrior,
    model: &IntraclassModel,
    z: &[f64],
) -> Result<Vec<LogTerm>, BayesError> {
    if prior.k() != model.k() {
        return Err(BayesError::Dimension { expected: model.k(), got: prior.k() });
    }
    let mut terms = Vec::with_capacity(prior.atoms0().len() + prior.atoms1().len());
    let groups: [(u8, &[super::prior::Atom], f64); 2] = [
        (0, prior.atoms0(), prior.beta()),
        (1, prior.atoms1(), 1.0 - prior.beta()),
    ];
    for (theta, atoms, group_weight) in groups {
        if group_weight == 0.0 && theta == 0 {
            continue;
        }
        for atom in atoms {
            let mu = MeanVector::new(atom.mean.clone()).expect("validated at construction");
            let log_density = model.log_density(z, &mu)?;
            let log_atom = libm::log(atom.weight) + log_density;
            let mut mean_is_zero = 0u128;
            for (i, &m) in atom.mean.iter().enumerate() {
                if m == 0.0 {
                    mean_is_zero |= 1 << i;
                }
            }
            let log_joint = if group_weight > 0.0 {
                libm::log(group_weight) + log_atom
            } else {
                f64::NEG_INFINITY
            };
            terms.push(LogTerm {
                log_joint,
                log_cond1: if theta == 1 { log_atom } else { f64::NEG_INFINITY },
                mean_is_zero,
                theta,
            });
        }
    }
    Ok(terms)
}

/// Posterior summary (all Q values and posterior probabilities in one pass).
pub fn posterior_summary(
    prior: &SymmetricDiscretePrior,
    model: &IntraclassModel,
    z: &[f64],
) -> Result<PosteriorSummary, BayesError> {
    let k = model.k();
    if z.len() != k {
        return Err(BayesError::Dimension { expected: k, got: z.len() });
    }
    let terms = log_terms(prior, model, z)?;
    let shift_joint = terms
        .iter()
        .map(|t| t.log_joint)
        .fold(f64::NEG_INFINITY, f64::max);
    let shift_cond1 = terms
        .iter()
        .map(|t| t.log_cond1)
        .fold(f64::NEG_INFINITY, f64::max);
    if !shift_joint.is_finite() {
        return Err(BayesError::DegeneratePosterior { log_marginal: shift_joint });
    }

    let mut total = 0.0;
    let mut theta1 = 0.0;
    let mut numerators = alloc::vec![0.0f64; k];
    let mut denominator = 0.0;
    for term in &terms {
        let w = libm::exp(term.log_joint - shift_joint);
        total += w;
        if term.theta == 1 {
            theta1 += w;
        }
        for (i, num) in numerators.iter_mut().enumerate() {
            if term.mean_is_zero >> i & 1 == 1 {
                *num += w;
            }
        }
        if shift_cond1.is_finite() && term.log_cond1.is_finite() {
            denominator += libm::exp(term.log_cond1 - shift_cond1);
        }
    }

    let log_marginal = shift_joint + libm::log(total);
    let p_theta1 = theta1 / total;
    let p_v0: Vec<f64> = numerators.iter().map(|&n| n / total).collect();
    let q = numerators
        .iter()
        .map(|&n| {
            if denominator > 0.0 && shift_cond1.is_finite() {
                // exp(shift difference) may overflow to +inf, which keeps the
                // accept decision correct.
                n / denominator * libm::exp(shift_joint - shift_cond1)
            } else {
                // β = 1 with no ξ₁ atoms: +infinity semantics.
                f64::INFINITY
            }
        })
        .collect();
    Ok(PosteriorSummary { q, log_marginal, p_theta1, p_v0 })
}

/// Q(Ω^(i)|z): the ratio comparing the posterior mass of {μ_i = 0} to the
/// θ = 1 marginal likelihood. The Bayes comparison is `q_value < 1 − β`.
/// `i` is 0-based.
pub fn q_value(
    prior: &SymmetricDiscretePrior,
    model: &IntraclassModel,
    z: &[f64],
    i: usize,
) -> Result<f64, BayesError> {
    let summary = posterior_summary(prior, model, z)?;
    summary
        .q
        .get(i)
        .copied()
        .ok_or(BayesError::Dimension { expected: model.k(), got: i })
}

/// The Bayes procedure: reject H_i exactly when Q(Ω^(i)|z) < 1 − β.
pub fn bayes_rule(
    prior: &SymmetricDiscretePrior,
    model: &IntraclassModel,
    z: &[f64],
) -> Result<ActionVector, BayesError> {
    let summary = posterior_summary(prior, model, z)?;
    let threshold = 1.0 - prior.beta();
    let bits: Vec<bool> = summary.q.iter().map(|&q| q < threshold).collect();
    Ok(ActionVector::new(&bits))
}

/// Brute-force Bayes oracle: minimize the posterior expected loss over all
/// 2^k actions, breaking ties toward fewer rejections.
pub fn posterior_oracle(
    prior: &SymmetricDiscretePrior,
    model: &IntraclassModel,
    z: &[f64],
) -> Result<ActionVector, BayesError> {
    let k = model.k();
    if k > 12 {
        return Err(BayesError::EnumerationTooLarge { k });
    }
    if z.len() != k {
        return Err(BayesError::Dimension { expected: k, got: z.len() });
    }
    let terms = log_terms(prior, model, z)?;
    let shift = terms
        .iter()
        .map(|t| t.log_joint)
        .fold(f64::NEG_INFINITY, f64::max);
    if !shift.is_finite() {
        return Err(BayesError::DegeneratePosterior { log_marginal: shift });
    }
    // Posterior weight (up to a positive constant) and positivity pattern.
    let weighted: Vec<(f64, u128, u8)> = terms
        .iter()
        .map(|t| {
            let full = if k == 128 { !0u128 } else { (1u128 << k) - 1 };
            let v_mask = full & !t.mean_is_zero;
            (libm::exp(t.log_joint - shift), v_mask, t.theta)
        })
        .collect();

    let mut best_mask = 0u128;
    let mut best_loss = f64::INFINITY;
    let mut best_rejections = usize::MAX;
    for mask in 0..(1u128 << k) {
        let mut loss = 0.0;
        for &(w, v_mask, theta) in &weighted {
            let count = if theta == 0 {
                // false rejections: a_i = 1 with v_i = 0
                (mask & !v_mask).count_ones()
            } else {
                // false acceptances: a_i = 0 with v_i = 1
                (!mask & v_mask).count_ones()
            };
            loss += w * count as f64;
        }
        let rejections = mask.count_ones() as usize;
        if loss < best_loss || (loss == best_loss && rejections < best_rejections) {
            best_loss = loss;
            best_mask = mask;
            best_rejections = rejections;
        }
    }
    Ok(ActionVector::from_mask(best_mask, k))
}

/// A symmetric Bayes rule packaged as a [`Procedure`].
#[derive(Debug, Clone)]
pub struct BayesProcedure {
    prior: SymmetricDiscretePrior,
    model: IntraclassModel,
}

impl BayesProcedure {
    pub fn new(prior: SymmetricDiscretePrior, model: IntraclassModel) -> Result<Self, BayesError> {
        if prior.k() != model.k() {
            return Err(BayesError::Dimension { expected: model.k(), got: prior.k() });
        }
        Ok(Self { prior, model })
    }

    pub fn prior(&self) -> &SymmetricDiscretePrior {
        &self.prior
    }
}

impl Procedure for BayesProcedure {
    fn name(&self) -> &str {
        "bayes"
    }

    fn k(&self) -> usize {
        self.model.k()
    }

    fn is_permutation_equivariant(&self) -> bool {
        true
    }

    fn decide(&self, z: &[f64]) -> ActionVector {
        bayes_rule(&self.prior, &self.model, z).expect("dimensions checked at construction")
    }
}
