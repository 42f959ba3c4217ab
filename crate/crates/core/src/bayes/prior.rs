//! Finite discrete symmetric priors over (μ, θ).
//!
//! θ ∈ {0, 1} selects which loss component is active; β = P(θ = 0). The
//! conditional laws ξ₀, ξ₁ of μ are finite atom lists. Construction
//! orbit-symmetrizes each list — every atom is expanded over the distinct
//! coordinate arrangements of its mean with an equal weight split — so the
//! stored prior is permutation invariant and every posterior integral is an
//! exact finite sum.

use alloc::vec::Vec;

/// Invalid prior specification.
#[derive(Debug, Clone, PartialEq)]
pub enum PriorError {
    /// β must lie in [0, 1].
    InvalidBeta(f64),
    /// ξ₁ must be nonempty whenever β < 1.
    EmptyAlternative,
    /// ξ₀ must be nonempty whenever β > 0.
    EmptyNull,
    /// Atom weights must be strictly positive and finite.
    NonPositiveWeight { theta: u8, atom: usize, weight: f64 },
    /// Atom means must be nonnegative.
    NegativeMean { theta: u8, atom: usize, coord: usize, value: f64 },
    /// All atoms must share one dimension.
    DimensionMismatch { theta: u8, atom: usize, expected: usize, got: usize },
    /// At least one atom is required overall.
    NoAtoms,
}

impl core::fmt::Display for PriorError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PriorError::InvalidBeta(b) => write!(f, "beta must be in [0, 1], got {b}"),
            PriorError::EmptyAlternative => {
                write!(f, "xi1 must have at least one atom when beta < 1")
            }
            PriorError::EmptyNull => write!(f, "xi0 must have at least one atom when beta > 0"),
            PriorError::NonPositiveWeight { theta, atom, weight } => {
                write!(f, "atom {atom} of xi{theta} has nonpositive weight {weight}")
            }
            PriorError::NegativeMean { theta, atom, coord, value } => write!(
                f,
                "atom {atom} of xi{theta} has negative mean coordinate {coord}: {value}"
            ),
            PriorError::DimensionMismatch { theta, atom, expected, got } => write!(
                f,
                "atom {atom} of xi{theta} has dimension {got}, expected {expected}"
            ),
            PriorError::NoAtoms => write!(f, "prior must contain at least one atom"),
        }
    }
}

impl core::error::Error for PriorError {}

/// One symmetrized atom: a weight and a mean arrangement.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub weight: f64,
    pub mean: Vec<f64>,
}

/// A finite, orbit-symmetrized prior on (μ, θ).
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricDiscretePrior {
    beta: f64,
    k: usize,
    atoms0: Vec<Atom>,
    atoms1: Vec<Atom>,
}

/// Next lexicographic permutation in place; false once the sequence is
/// exhausted. Ordering is by `f64::total_cmp`.
fn next_permutation(v: &mut [f64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1].total_cmp(&v[i]) != core::cmp::Ordering::Less {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j].total_cmp(&v[i - 1]) != core::cmp::Ordering::Greater {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All distinct coordinate arrangements of `mu`.
fn distinct_arrangements(mu: &[f64]) -> Vec<Vec<f64>> {
    let mut work = mu.to_vec();
    work.sort_by(f64::total_cmp);
    let mut out = Vec::new();
    loop {
        out.push(work.clone());
        if !next_permutation(&mut work) {
            break;
        }
    }
    out
}

fn validate_group(theta: u8, atoms: &[(f64, Vec<f64>)], k: usize) -> Result<(), PriorError> {
    for (idx, (weight, mean)) in atoms.iter().enumerate() {
        if !(weight.is_finite() && *weight > 0.0) {
            return Err(PriorError::NonPositiveWeight { theta, atom: idx, weight: *weight });
        }
        if mean.len() != k {
            return Err(PriorError::DimensionMismatch {
                theta,
                atom: idx,
                expected: k,
                got: mean.len(),
            });
        }
        for (coord, &value) in mean.iter().enumerate() {
            if !(value >= 0.0) {
                return Err(PriorError::NegativeMean { theta, atom: idx, coord, value });
            }
        }
    }
    Ok(())
}

/// Symmetrize and normalize one atom list to total weight one.
fn symmetrize(atoms: &[(f64, Vec<f64>)]) -> Vec<Atom> {
    let total: f64 = atoms.iter().map(|(w, _)| w).sum();
    let mut expanded: Vec<(Vec<f64>, f64)> = Vec::new();
    for (weight, mean) in atoms {
        let arrangements = distinct_arrangements(mean);
        let share = weight / total / arrangements.len() as f64;
        for arr in arrangements {
            expanded.push((arr, share));
        }
    }
    // Merge arrangements that coincide across input atoms.
    expanded.sort_by(|a, b| {
        for (x, y) in a.0.iter().zip(&b.0) {
            match x.total_cmp(y) {
                core::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
        core::cmp::Ordering::Equal
    });
    let mut merged: Vec<Atom> = Vec::with_capacity(expanded.len());
    for (mean, weight) in expanded {
        match merged.last_mut() {
            Some(last) if last.mean == mean => last.weight += weight,
            _ => merged.push(Atom { weight, mean }),
        }
    }
    merged
}

impl SymmetricDiscretePrior {
    /// Build a prior from raw atom lists `(weight, mean)`.
    ///
    /// Weights within each list are normalized to sum to one; atoms are then
    /// expanded over coordinate arrangements.
    pub fn new(
        beta: f64,
        atoms0: Vec<(f64, Vec<f64>)>,
        atoms1: Vec<(f64, Vec<f64>)>,
    ) -> Result<Self, PriorError> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(PriorError::InvalidBeta(beta));
        }
        let k = atoms0
            .first()
            .or(atoms1.first())
            .map(|(_, m)| m.len())
            .ok_or(PriorError::NoAtoms)?;
        if beta < 1.0 && atoms1.is_empty() {
            return Err(PriorError::EmptyAlternative);
        }
        if beta > 0.0 && atoms0.is_empty() {
            return Err(PriorError::EmptyNull);
        }
        validate_group(0, &atoms0, k)?;
        validate_group(1, &atoms1, k)?;
        Ok(Self {
            beta,
            k,
            atoms0: symmetrize(&atoms0),
            atoms1: symmetrize(&atoms1),
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Symmetrized ξ₀ atoms (weights sum to one; empty only if β = 0).
    pub fn atoms0(&self) -> &[Atom] {
        &self.atoms0
    }

    /// Symmetrized ξ₁ atoms (weights sum to one; empty only if β = 1).
    pub fn atoms1(&self) -> &[Atom] {
        &self.atoms1
    }
}
