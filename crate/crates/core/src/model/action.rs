//! The action lattice Γ = {0,1}^k and decision masses over it.

use alloc::vec::Vec;

/// One point of the action lattice: bit i set means "reject hypothesis i".
///
/// The same type doubles as the hypothesis pattern of a mean vector (bit i
/// set means "mean i is positive"). Stored as a bit mask, so k ≤ 128.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionVector {
    mask: u128,
    k: u8,
}

impl ActionVector {
    /// Build from explicit per-coordinate bits.
    pub fn new(bits: &[bool]) -> Self {
        assert!(bits.len() <= 128, "action vectors support k <= 128");
        let mut mask = 0u128;
        for (i, &b) in bits.iter().enumerate() {
            if b {
                mask |= 1 << i;
            }
        }
        Self {
            mask,
            k: bits.len() as u8,
        }
    }

    /// Build from a bit mask; bit i is coordinate i.
    pub fn from_mask(mask: u128, k: usize) -> Self {
        assert!(k <= 128 && (k == 128 || mask >> k == 0));
        Self { mask, k: k as u8 }
    }

    /// All-accept action 0…0.
    pub fn accept_all(k: usize) -> Self {
        Self::from_mask(0, k)
    }

    /// All-reject action 1…1.
    pub fn reject_all(k: usize) -> Self {
        let mask = if k == 128 { !0 } else { (1u128 << k) - 1 };
        Self { mask, k: k as u8 }
    }

    pub fn len(&self) -> usize {
        self.k as usize
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    /// Whether hypothesis `i` is rejected.
    #[inline]
    pub fn rejects(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        self.mask >> i & 1 == 1
    }

    /// Number of rejected hypotheses.
    pub fn rejections(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn as_mask(&self) -> u128 {
        self.mask
    }

    /// Coordinates as 0/1 values.
    pub fn bits(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len()).map(|i| self.rejects(i) as u8)
    }

    /// Apply a coordinate permutation: output coordinate i takes the value
    /// of input coordinate `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.len());
        let mut mask = 0u128;
        for (i, &src) in perm.iter().enumerate() {
            if self.rejects(src) {
                mask |= 1 << i;
            }
        }
        Self { mask, k: self.k }
    }
}

impl core::fmt::Debug for ActionVector {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("a(")?;
        for i in 0..self.len() {
            write!(f, "{}", self.rejects(i) as u8)?;
        }
        f.write_str(")")
    }
}

/// A probability mass function over the action lattice for one fixed
/// observation: δ(a | z).
#[derive(Debug, Clone)]
pub struct DecisionMass {
    k: usize,
    entries: Vec<(ActionVector, f64)>,
}

/// Invalid decision mass.
#[derive(Debug, Clone, PartialEq)]
pub enum MassError {
    /// Weights must be nonnegative.
    NegativeWeight { index: usize, weight: f64 },
    /// Weights must sum to one within 1e-12.
    NotNormalized { total: f64 },
    /// All actions must share one dimension.
    MixedDimensions,
}

impl core::fmt::Display for MassError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MassError::NegativeWeight { index, weight } => {
                write!(f, "weight {index} is negative: {weight}")
            }
            MassError::NotNormalized { total } => {
                write!(f, "weights sum to {total}, expected 1 within 1e-12")
            }
            MassError::MixedDimensions => write!(f, "actions have mixed dimensions"),
        }
    }
}

impl core::error::Error for MassError {}

impl DecisionMass {
    pub fn new(entries: Vec<(ActionVector, f64)>) -> Result<Self, MassError> {
        let k = entries.first().map_or(0, |(a, _)| a.len());
        let mut total = 0.0;
        for (index, (a, w)) in entries.iter().enumerate() {
            if a.len() != k {
                return Err(MassError::MixedDimensions);
            }
            if *w < 0.0 {
                return Err(MassError::NegativeWeight { index, weight: *w });
            }
            total += w;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(MassError::NotNormalized { total });
        }
        Ok(Self { k, entries })
    }

    /// Point mass on a single action.
    pub fn point(action: ActionVector) -> Self {
        Self {
            k: action.len(),
            entries: alloc::vec![(action, 1.0)],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[(ActionVector, f64)] {
        &self.entries
    }
}

/// Marginal rejection probabilities ψ_i = Σ_{a: a_i = 1} δ(a).
pub fn psi_from_delta(delta: &DecisionMass) -> Vec<f64> {
    let mut psi = alloc::vec![0.0; delta.k()];
    for (action, weight) in delta.entries() {
        for (i, p) in psi.iter_mut().enumerate() {
            if action.rejects(i) {
                *p += weight;
            }
        }
    }
    psi
}
