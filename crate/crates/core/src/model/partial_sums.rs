//! The partial-sum coordinate change t_j = Σ_{i=j..k} z_i and the region S
//! of strictly ascending observations.

use alloc::vec::Vec;

/// Tail partial sums of an observation vector: t_j = z_j + z_{j+1} + … + z_k
/// (1-based j; stored 0-based). The conventions t_{k+1} = 0 and t_0 = −∞ are
/// implicit in the reconstruction and membership formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSums {
    t: Vec<f64>,
}

/// Forward transform z ↦ t.
pub fn partial_sums(z: &[f64]) -> PartialSums {
    let mut t = alloc::vec![0.0; z.len()];
    let mut acc = 0.0;
    for j in (0..z.len()).rev() {
        acc += z[j];
        t[j] = acc;
    }
    PartialSums { t }
}

impl PartialSums {
    /// Wrap raw partial-sum coordinates.
    pub fn from_coords(t: Vec<f64>) -> Self {
        Self { t }
    }

    pub fn k(&self) -> usize {
        self.t.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.t
    }

    /// Inverse transform t ↦ z with z_j = t_j − t_{j+1}.
    pub fn to_observations(&self) -> Vec<f64> {
        let k = self.t.len();
        (0..k)
            .map(|j| self.t[j] - if j + 1 < k { self.t[j + 1] } else { 0.0 })
            .collect()
    }

    /// Membership in S = {t : t_k > t_{k−1} − t_k > … > t_1 − t_2}, i.e. the
    /// observations are strictly ascending.
    pub fn in_region_s(&self) -> bool {
        let z = self.to_observations();
        z.windows(2).all(|w| w[0] < w[1])
    }
}
