//! The intraclass normal model N(μ, Σ) with Σ = σ²[(1−ρ)I + ρ𝟙𝟙′].
//!
//! Everything uses the closed-form inverse Σ⁻¹ = (σ²(1−ρ))⁻¹(I − G𝟙𝟙′) with
//! G = ρ/(1 + (k−1)ρ) and the closed-form determinant
//! |Σ| = σ^{2k}(1−ρ)^{k−1}(1 + (k−1)ρ); no matrix factorizations anywhere.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::action::ActionVector;

/// Model construction / evaluation errors.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelError {
    /// k must be at least one.
    ZeroDimension,
    /// σ² must be strictly positive.
    InvalidSigma2(f64),
    /// ρ must satisfy −1/(k−1) < ρ < 1 so that Σ is positive definite.
    InvalidRho { rho: f64, k: usize },
    /// An input vector does not have length k.
    DimensionMismatch { expected: usize, got: usize },
    /// Mean coordinates must be nonnegative.
    NegativeMean { index: usize, value: f64 },
    /// The operation is only defined for k = 2.
    NotBivariate { k: usize },
}

impl core::fmt::Display for ModelError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ModelError::ZeroDimension => write!(f, "k must be >= 1"),
            ModelError::InvalidSigma2(s) => write!(f, "sigma2 must be > 0, got {s}"),
            ModelError::InvalidRho { rho, k } => {
                write!(f, "rho = {rho} outside the positive-definite range for k = {k}")
            }
            ModelError::DimensionMismatch { expected, got } => {
                write!(f, "expected a length-{expected} vector, got length {got}")
            }
            ModelError::NegativeMean { index, value } => {
                write!(f, "mean coordinate {index} is negative: {value}")
            }
            ModelError::NotBivariate { k } => {
                write!(f, "operation requires k = 2, model has k = {k}")
            }
        }
    }
}

impl core::error::Error for ModelError {}

/// A nonnegative mean vector μ together with its hypothesis pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanVector {
    mu: Vec<f64>,
}

impl MeanVector {
    /// Validates μ_i ≥ 0 for every coordinate.
    pub fn new(mu: Vec<f64>) -> Result<Self, ModelError> {
        for (index, &value) in mu.iter().enumerate() {
            if !(value >= 0.0) {
                return Err(ModelError::NegativeMean { index, value });
            }
        }
        Ok(Self { mu })
    }

    /// The all-null mean 0 ∈ Ω.
    pub fn zeros(k: usize) -> Self {
        Self {
            mu: alloc::vec![0.0; k],
        }
    }

    pub fn k(&self) -> usize {
        self.mu.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.mu
    }

    /// Hypothesis pattern v: bit i set exactly when μ_i > 0.
    pub fn pattern(&self) -> ActionVector {
        let bits: Vec<bool> = self.mu.iter().map(|&m| m > 0.0).collect();
        ActionVector::new(&bits)
    }

    /// m, the number of strictly positive coordinates.
    pub fn positives(&self) -> usize {
        self.mu.iter().filter(|&&m| m > 0.0).count()
    }

    /// Reorder coordinates: output i takes input `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mu = perm.iter().map(|&i| self.mu[i]).collect();
        Self { mu }
    }
}

/// Mean and variance of a univariate conditional normal law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalNormal {
    pub mean: f64,
    pub variance: f64,
}

/// The equicorrelated model: k endpoints, common variance σ², common
/// correlation ρ.
#[derive(Debug, Clone, PartialEq)]
pub struct IntraclassModel {
    k: usize,
    sigma2: f64,
    rho: f64,
}

impl IntraclassModel {
    pub fn new(k: usize, sigma2: f64, rho: f64) -> Result<Self, ModelError> {
        if k == 0 {
            return Err(ModelError::ZeroDimension);
        }
        if !(sigma2 > 0.0) {
            return Err(ModelError::InvalidSigma2(sigma2));
        }
        let lower = if k == 1 { -1.0 } else { -1.0 / (k as f64 - 1.0) };
        if !(rho > lower && rho < 1.0) {
            return Err(ModelError::InvalidRho { rho, k });
        }
        Ok(Self { k, sigma2, rho })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// G = ρ / (1 + (k−1)ρ); satisfies G·k < 1.
    pub fn g(&self) -> f64 {
        self.rho / (1.0 + (self.k as f64 - 1.0) * self.rho)
    }

    /// log |Σ| = k·log σ² + (k−1)·log(1−ρ) + log(1 + (k−1)ρ).
    pub fn log_det_sigma(&self) -> f64 {
        let k = self.k as f64;
        k * libm::log(self.sigma2) + (k - 1.0) * libm::log(1.0 - self.rho)
            + libm::log(1.0 + (k - 1.0) * self.rho)
    }

    fn check_len(&self, len: usize) -> Result<(), ModelError> {
        if len != self.k {
            return Err(ModelError::DimensionMismatch {
                expected: self.k,
                got: len,
            });
        }
        Ok(())
    }

    /// Σ⁻¹x in O(k) via Σ⁻¹ = (σ²(1−ρ))⁻¹(I − G𝟙𝟙′).
    pub fn precision_apply(&self, x: &[f64]) -> Result<Vec<f64>, ModelError> {
        self.check_len(x.len())?;
        let scale = 1.0 / (self.sigma2 * (1.0 - self.rho));
        let g_sum = self.g() * x.iter().sum::<f64>();
        Ok(x.iter().map(|&xi| scale * (xi - g_sum)).collect())
    }

    /// The quadratic form x′Σ⁻¹x, allocation free.
    pub fn quad_form(&self, x: &[f64]) -> Result<f64, ModelError> {
        self.check_len(x.len())?;
        let sum: f64 = x.iter().sum();
        let sumsq: f64 = x.iter().map(|&v| v * v).sum();
        Ok((sumsq - self.g() * sum * sum) / (self.sigma2 * (1.0 - self.rho)))
    }

    /// Log density of N(μ, Σ) at z.
    pub fn log_density(&self, z: &[f64], mu: &MeanVector) -> Result<f64, ModelError> {
        self.check_len(z.len())?;
        self.check_len(mu.k())?;
        let k = self.k as f64;
        let sum: f64 = z.iter().zip(mu.coords()).map(|(&a, &b)| a - b).sum();
        let sumsq: f64 = z
            .iter()
            .zip(mu.coords())
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum();
        let quad = (sumsq - self.g() * sum * sum) / (self.sigma2 * (1.0 - self.rho));
        Ok(-0.5 * (k * libm::log(2.0 * PI) + self.log_det_sigma() + quad))
    }

    /// For k = 2: the law of Z₁ given Z₁ + Z₂ = t, which is
    /// N(t/2 + (μ₁−μ₂)/2, σ²(1−ρ)/2).
    pub fn conditional_z1_given_sum(
        &self,
        mu: &MeanVector,
        t: f64,
    ) -> Result<ConditionalNormal, ModelError> {
        if self.k != 2 {
            return Err(ModelError::NotBivariate { k: self.k });
        }
        self.check_len(mu.k())?;
        let eta = mu.coords()[0] - mu.coords()[1];
        Ok(ConditionalNormal {
            mean: 0.5 * t + 0.5 * eta,
            variance: 0.5 * self.sigma2 * (1.0 - self.rho),
        })
    }

    /// Variance of the coordinate sum T = Σ Zᵢ: k·σ²(1 + (k−1)ρ).
    pub fn sum_variance(&self) -> f64 {
        let k = self.k as f64;
        k * self.sigma2 * (1.0 + (k - 1.0) * self.rho)
    }
}
