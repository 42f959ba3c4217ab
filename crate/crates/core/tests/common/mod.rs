//! Shared helpers for the integration suites: deterministic pseudo-random
//! priors, observations, and permutations.
#![allow(dead_code)] // not every suite uses every helper

use vrsp_core::bayes::SymmetricDiscretePrior;
use vrsp_core::model::{IntraclassModel, MeanVector, NormalSource};

pub struct TestRng {
    src: NormalSource,
}

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self { src: NormalSource::for_block(seed, 0) }
    }

    pub fn normal(&mut self) -> f64 {
        self.src.next_normal()
    }

    /// Uniform-ish value in [0, 1).
    pub fn unit(&mut self) -> f64 {
        let x = self.src.next_normal().abs() * std::f64::consts::FRAC_1_SQRT_2;
        x - x.floor()
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.unit() * n as f64) as usize % n
    }

    pub fn permutation(&mut self, k: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..k).collect();
        for i in (1..k).rev() {
            let j = self.below(i + 1);
            perm.swap(i, j);
        }
        perm
    }
}

/// A random symmetric discrete prior with moderate atom means, so posterior
/// ratios stay finite and well-conditioned.
///
/// The first ξ₁ atom is pinned to a mixed arrangement (a positive coordinate,
/// and a zero coordinate when k ≥ 2). This keeps the prior away from the
/// degenerate families where Q(Ω^(i)|z) collapses to the constant 1−β (an
/// exact decision tie at every z) and gives the Q-value ordering its strict
/// inequality.
pub fn random_prior(rng: &mut TestRng, k: usize) -> SymmetricDiscretePrior {
    let beta = rng.range(0.05, 0.95);
    let n0 = 1 + rng.below(3);
    let n1 = 1 + rng.below(3);
    let atom = |rng: &mut TestRng| {
        let weight = rng.range(0.2, 1.0);
        let mean: Vec<f64> = (0..k)
            .map(|_| {
                if rng.unit() < 0.4 {
                    0.0
                } else {
                    rng.range(0.1, 2.5)
                }
            })
            .collect();
        (weight, mean)
    };
    let atoms0: Vec<_> = (0..n0).map(|_| atom(rng)).collect();
    let mut atoms1: Vec<_> = (0..n1).map(|_| atom(rng)).collect();
    atoms1[0].1[0] = rng.range(0.3, 2.5);
    if k >= 2 {
        atoms1[0].1[1] = 0.0;
    }
    SymmetricDiscretePrior::new(beta, atoms0, atoms1).expect("atoms are valid")
}

/// A random model with moderate correlation, keeping posterior ratios inside
/// the range where adjacent-coordinate comparisons resolve in doubles.
pub fn random_model(rng: &mut TestRng, k: usize) -> IntraclassModel {
    let lo = if k == 1 { -0.5 } else { (-0.5f64).max(-0.9 / (k as f64 - 1.0)) };
    let rho = rng.range(lo, 0.85);
    let sigma2 = rng.range(0.5, 2.0);
    IntraclassModel::new(k, sigma2, rho).unwrap()
}

/// An observation drawn from the model at one of the prior's atoms: an
/// instance the prior considers plausible.
pub fn observation_near_prior(
    rng: &mut TestRng,
    prior: &SymmetricDiscretePrior,
    model: &IntraclassModel,
) -> Vec<f64> {
    let pool0 = prior.atoms0().len();
    let pool1 = prior.atoms1().len();
    let pick = rng.below(pool0 + pool1);
    let mean = if pick < pool0 {
        prior.atoms0()[pick].mean.clone()
    } else {
        prior.atoms1()[pick - pool0].mean.clone()
    };
    let mu = MeanVector::new(mean).expect("atom means are nonnegative");
    let seed = (rng.unit() * 1e9) as u64;
    model.sample(&mu, 1, seed).expect("dimensions match")[0].clone()
}
