//! Concrete decision procedures: step-up, a marginal-threshold baseline, and
//! the two-endpoint strip modification ψ* that improves on step-up.

pub(crate) mod strip;

use alloc::vec::Vec;

use crate::model::ActionVector;

pub use strip::{StripImprovement, w_value};

/// Procedure evaluation errors.
#[derive(Debug, Clone, PartialEq)]
pub enum ProcedureError {
    /// Observation length does not match the procedure's dimension.
    Dimension { expected: usize, got: usize },
    /// Critical values must be strictly increasing.
    NotIncreasing { index: usize },
    /// At least one critical value is required.
    Empty,
    /// Strip cutoffs must satisfy c1 < c2.
    InvalidStrip { c1: f64, c2: f64 },
    /// Strip model parameters must satisfy σ² > 0 and −1 < ρ < 1.
    InvalidStripModel { sigma2: f64, rho: f64 },
    /// t must lie strictly inside the strip (2C₁, C₁+C₂).
    OutsideStrip { t: f64, lo: f64, hi: f64 },
    /// The Table-1 evaluation requires D(t) > 0.
    NonPositiveD { t: f64, d: f64 },
    /// C* must satisfy C* ≥ t/2.
    BadCStar { cstar: f64, t: f64 },
}

impl core::fmt::Display for ProcedureError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ProcedureError::Dimension { expected, got } => {
                write!(f, "expected a length-{expected} observation, got {got}")
            }
            ProcedureError::NotIncreasing { index } => {
                write!(f, "critical values must be strictly increasing (violated at index {index})")
            }
            ProcedureError::Empty => write!(f, "critical values must be nonempty"),
            ProcedureError::InvalidStrip { c1, c2 } => {
                write!(f, "strip cutoffs must satisfy c1 < c2, got ({c1}, {c2})")
            }
            ProcedureError::InvalidStripModel { sigma2, rho } => {
                write!(f, "strip model needs sigma2 > 0 and -1 < rho < 1, got ({sigma2}, {rho})")
            }
            ProcedureError::OutsideStrip { t, lo, hi } => {
                write!(f, "t = {t} outside the open strip ({lo}, {hi})")
            }
            ProcedureError::NonPositiveD { t, d } => {
                write!(f, "D({t}) = {d} is not positive")
            }
            ProcedureError::BadCStar { cstar, t } => {
                write!(f, "C* = {cstar} below t/2 = {}", t / 2.0)
            }
        }
    }
}

impl core::error::Error for ProcedureError {}

/// Strictly increasing step-up cutoffs C₁ < C₂ < … < C_k.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalValues {
    c: Vec<f64>,
}

impl CriticalValues {
    pub fn new(c: Vec<f64>) -> Result<Self, ProcedureError> {
        if c.is_empty() {
            return Err(ProcedureError::Empty);
        }
        for (index, w) in c.windows(2).enumerate() {
            if !(w[0] < w[1]) {
                return Err(ProcedureError::NotIncreasing { index: index + 1 });
            }
        }
        Ok(Self { c })
    }

    pub fn k(&self) -> usize {
        self.c.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.c
    }
}

/// The step-up procedure: scan order statistics from smallest upward; the
/// first exceedance Z₍ⱼ₎ > C_j rejects the hypotheses of Z₍ⱼ₎, …, Z₍ₖ₎.
/// A boundary tie Z₍ⱼ₎ = C_j counts as accept.
pub fn step_up(c: &CriticalValues, z: &[f64]) -> Result<ActionVector, ProcedureError> {
    let k = c.k();
    if z.len() != k {
        return Err(ProcedureError::Dimension { expected: k, got: z.len() });
    }
    let cs = c.coords();
    if k == 2 {
        // Hot path for the bivariate Monte Carlo loops.
        let (lo, hi) = if z[0] <= z[1] { (0usize, 1usize) } else { (1, 0) };
        let mask = if z[lo] > cs[0] {
            0b11
        } else if z[hi] > cs[1] {
            1u128 << hi
        } else {
            0
        };
        return Ok(ActionVector::from_mask(mask, 2));
    }
    let mut order: Vec<usize> = (0..k).collect();
    // Stable sort keeps original index order on ties.
    order.sort_by(|&a, &b| z[a].partial_cmp(&z[b]).unwrap_or(core::cmp::Ordering::Equal));
    let mut mask = 0u128;
    let mut rejecting = false;
    for (j, &i) in order.iter().enumerate() {
        if !rejecting && z[i] > cs[j] {
            rejecting = true;
        }
        if rejecting {
            mask |= 1 << i;
        }
    }
    Ok(ActionVector::from_mask(mask, k))
}

/// The per-coordinate baseline: reject H_i exactly when z_i > c.
pub fn marginal(c: f64, z: &[f64]) -> ActionVector {
    let mut mask = 0u128;
    for (i, &zi) in z.iter().enumerate() {
        if zi > c {
            mask |= 1 << i;
        }
    }
    ActionVector::from_mask(mask, z.len())
}

/// A deterministic nonrandomized decision rule z ↦ a.
///
/// `decide` expects `z.len() == self.k()`; library entry points validate the
/// dimension once before entering evaluation loops.
pub trait Procedure {
    fn name(&self) -> &str;
    fn k(&self) -> usize;
    /// Declared equivariance: rule(gz) = g·rule(z) for coordinate
    /// permutations g.
    fn is_permutation_equivariant(&self) -> bool;
    fn decide(&self, z: &[f64]) -> ActionVector;
}

/// Step-up as a [`Procedure`].
#[derive(Debug, Clone)]
pub struct StepUp {
    c: CriticalValues,
}

impl StepUp {
    pub fn new(c: CriticalValues) -> Self {
        Self { c }
    }

    pub fn critical_values(&self) -> &CriticalValues {
        &self.c
    }
}

impl Procedure for StepUp {
    fn name(&self) -> &str {
        "step-up"
    }

    fn k(&self) -> usize {
        self.c.k()
    }

    fn is_permutation_equivariant(&self) -> bool {
        true
    }

    fn decide(&self, z: &[f64]) -> ActionVector {
        step_up(&self.c, z).expect("dimension checked by caller")
    }
}

/// The marginal baseline as a [`Procedure`].
#[derive(Debug, Clone)]
pub struct Marginal {
    threshold: f64,
    k: usize,
}

impl Marginal {
    pub fn new(threshold: f64, k: usize) -> Self {
        Self { threshold, k }
    }
}

impl Procedure for Marginal {
    fn name(&self) -> &str {
        "marginal"
    }

    fn k(&self) -> usize {
        self.k
    }

    fn is_permutation_equivariant(&self) -> bool {
        true
    }

    fn decide(&self, z: &[f64]) -> ActionVector {
        marginal(self.threshold, z)
    }
}

/// ψ* as a [`Procedure`] (k = 2).
#[derive(Debug, Clone)]
pub struct PsiStar {
    strip: StripImprovement,
}

impl PsiStar {
    pub fn new(strip: StripImprovement) -> Self {
        Self { strip }
    }

    pub fn strip(&self) -> &StripImprovement {
        &self.strip
    }
}

impl Procedure for PsiStar {
    fn name(&self) -> &str {
        "psi-star"
    }

    fn k(&self) -> usize {
        2
    }

    fn is_permutation_equivariant(&self) -> bool {
        true
    }

    fn decide(&self, z: &[f64]) -> ActionVector {
        self.strip.psi_star(z).expect("dimension checked by caller")
    }
}

/// Rejects everything; used as an exact-risk control.
#[derive(Debug, Clone)]
pub struct AlwaysReject {
    pub k: usize,
}

impl Procedure for AlwaysReject {
    fn name(&self) -> &str {
        "always-reject"
    }

    fn k(&self) -> usize {
        self.k
    }

    fn is_permutation_equivariant(&self) -> bool {
        true
    }

    fn decide(&self, _z: &[f64]) -> ActionVector {
        ActionVector::reject_all(self.k)
    }
}

/// Accepts everything; used as an exact-risk control.
#[derive(Debug, Clone)]
pub struct AlwaysAccept {
    pub k: usize,
}

impl Procedure for AlwaysAccept {
    fn name(&self) -> &str {
        "always-accept"
    }

    fn k(&self) -> usize {
        self.k
    }

    fn is_permutation_equivariant(&self) -> bool {
        true
    }

    fn decide(&self, _z: &[f64]) -> ActionVector {
        ActionVector::accept_all(self.k)
    }
}
