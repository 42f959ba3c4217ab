//! Numerical checker for the partial-sum monotonicity condition that every
//! admissible symmetric procedure must satisfy, plus the explicit step-up
//! violation witness.
//!
//! On every line in S that varies one partial sum t_j (j ≥ 2) with the
//! others fixed, the j-th rejection indicator of an admissible symmetric
//! procedure must be nondecreasing in t_j. The scanner samples such a line,
//! evaluates the procedure in the sorted-coordinate frame, and reports each
//! adjacent 1 → 0 step. A finite scan can certify violations, never
//! admissibility: an empty report means "no violation found".

use alloc::vec::Vec;

use crate::model::sample::NormalSource;
use crate::model::{ActionVector, PartialSums};
use crate::procedures::{CriticalValues, Procedure};

/// Scan and witness construction errors.
#[derive(Debug, Clone, PartialEq)]
pub enum ScanError {
    /// The scanned index must satisfy 2 ≤ j ≤ k.
    BadIndex { j: usize, k: usize },
    /// The line must fix exactly k−1 partial sums.
    BadFixedLength { expected: usize, got: usize },
    /// The range must satisfy lo < hi.
    BadRange { lo: f64, hi: f64 },
    /// At least two grid points are required.
    BadResolution { resolution: usize },
    /// Fewer than two grid points landed inside S.
    LineExitsS { valid: usize },
    /// The procedure is not permutation equivariant (declared or observed).
    NotEquivariant,
    /// Witness construction needs 0 < ε < (C_k − C_{k−1})/2.
    EpsilonOutOfRange { epsilon: f64, max: f64 },
    /// Witness construction needs k ≥ 2.
    KTooSmall { k: usize },
}

impl core::fmt::Display for ScanError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ScanError::BadIndex { j, k } => write!(f, "scan index j = {j} outside 2..={k}"),
            ScanError::BadFixedLength { expected, got } => {
                write!(f, "expected {expected} fixed partial sums, got {got}")
            }
            ScanError::BadRange { lo, hi } => write!(f, "invalid scan range [{lo}, {hi}]"),
            ScanError::BadResolution { resolution } => {
                write!(f, "resolution must be at least 2, got {resolution}")
            }
            ScanError::LineExitsS { valid } => {
                write!(f, "only {valid} grid points landed in S; need at least 2")
            }
            ScanError::NotEquivariant => {
                write!(f, "procedure is not permutation equivariant")
            }
            ScanError::EpsilonOutOfRange { epsilon, max } => {
                write!(f, "epsilon = {epsilon} outside (0, {max})")
            }
            ScanError::KTooSmall { k } => write!(f, "witness needs k >= 2, got {k}"),
        }
    }
}

impl core::error::Error for ScanError {}

/// Default grid density for line scans.
pub const DEFAULT_RESOLUTION: usize = 512;

/// One scan line: vary t_j over `range` while the other k−1 partial sums are
/// held at `fixed` (listed in ascending index order, skipping j).
#[derive(Debug, Clone, PartialEq)]
pub struct LineSpec {
    /// 1-based index of the varying partial sum, in 2..=k.
    pub j: usize,
    /// The fixed partial sums t_i, i ≠ j, ascending in i.
    pub fixed: Vec<f64>,
    /// Scanned interval of t_j values (inclusive endpoints; points outside S
    /// are skipped).
    pub range: (f64, f64),
    /// Number of grid points.
    pub resolution: usize,
}

/// A certified monotonicity violation: the j-th rejection indicator steps
/// from 1 down to 0 between two adjacent in-S grid points.
#[derive(Debug, Clone)]
pub struct Violation {
    /// 1-based index of the varying partial sum.
    pub j: usize,
    pub t_low: PartialSums,
    pub t_high: PartialSums,
    pub z_low: Vec<f64>,
    pub z_high: Vec<f64>,
    /// Full decisions at the two points; the j-th indicator is 1 at `low`
    /// and 0 at `high`.
    pub action_low: ActionVector,
    pub action_high: ActionVector,
}

fn spot_check_equivariance(proc: &dyn Procedure) -> bool {
    const PROBES: usize = 12;
    let k = proc.k();
    let mut src = NormalSource::for_block(0x5EED_05CA, 0);
    let mut z = alloc::vec![0.0f64; k];
    let mut perm: Vec<usize> = (0..k).collect();
    for _ in 0..PROBES {
        for zi in z.iter_mut() {
            *zi = 1.5 * src.next_normal();
        }
        // Fisher–Yates off the same stream.
        for i in (1..k).rev() {
            let r = (src.next_normal().abs() * 1e6) as usize % (i + 1);
            perm.swap(i, r);
        }
        let permuted: Vec<f64> = perm.iter().map(|&i| z[i]).collect();
        let direct = proc.decide(&permuted);
        let pushed = proc.decide(&z).permuted(&perm);
        if direct != pushed {
            return false;
        }
    }
    true
}

/// Scan one line for violations of the monotonicity condition.
///
/// The procedure must be permutation equivariant (declared and verified by
/// random spot tests). Grid points outside S are skipped; it is an error if
/// fewer than two points remain.
pub fn monotonicity_scan(
    proc: &dyn Procedure,
    line: &LineSpec,
) -> Result<Vec<Violation>, ScanError> {
    let k = proc.k();
    if line.j < 2 || line.j > k {
        return Err(ScanError::BadIndex { j: line.j, k });
    }
    if line.fixed.len() != k - 1 {
        return Err(ScanError::BadFixedLength { expected: k - 1, got: line.fixed.len() });
    }
    if !(line.range.0 < line.range.1) {
        return Err(ScanError::BadRange { lo: line.range.0, hi: line.range.1 });
    }
    if line.resolution < 2 {
        return Err(ScanError::BadResolution { resolution: line.resolution });
    }
    if !proc.is_permutation_equivariant() || !spot_check_equivariance(proc) {
        return Err(ScanError::NotEquivariant);
    }

    let (lo, hi) = line.range;
    let steps = line.resolution;
    let mut t_coords = alloc::vec![0.0f64; k];
    let mut next_fixed = 0usize;
    for (i, slot) in t_coords.iter_mut().enumerate() {
        if i + 1 != line.j {
            *slot = line.fixed[next_fixed];
            next_fixed += 1;
        }
    }

    let mut violations = Vec::new();
    let mut previous: Option<(PartialSums, Vec<f64>, ActionVector)> = None;
    let mut valid = 0usize;
    for idx in 0..steps {
        let tj = lo + (hi - lo) * idx as f64 / (steps - 1) as f64;
        t_coords[line.j - 1] = tj;
        let t = PartialSums::from_coords(t_coords.clone());
        if !t.in_region_s() {
            continue;
        }
        // In S the reconstructed observations are strictly ascending, so the
        // coordinate at position j−1 is the j-th smallest.
        let z = t.to_observations();
        let action = proc.decide(&z);
        valid += 1;
        if let Some((prev_t, prev_z, prev_action)) = &previous {
            if prev_action.rejects(line.j - 1) && !action.rejects(line.j - 1) {
                violations.push(Violation {
                    j: line.j,
                    t_low: prev_t.clone(),
                    t_high: t.clone(),
                    z_low: prev_z.clone(),
                    z_high: z.clone(),
                    action_low: *prev_action,
                    action_high: action,
                });
            }
        }
        previous = Some((t, z, action));
    }
    if valid < 2 {
        return Err(ScanError::LineExitsS { valid });
    }
    Ok(violations)
}

/// Largest admissible ε for the witness construction, (C_k − C_{k−1})/2.
/// Zero when there are fewer than two cutoffs (no witness exists).
pub fn witness_epsilon_bound(c: &CriticalValues) -> f64 {
    let cs = c.coords();
    let k = cs.len();
    if k < 2 {
        return 0.0;
    }
    0.5 * (cs[k - 1] - cs[k - 2])
}

/// Default witness ε, (C_k − C_{k−1})/4.
pub fn default_witness_epsilon(c: &CriticalValues) -> f64 {
    0.5 * witness_epsilon_bound(c)
}

/// The explicit pair certifying that step-up violates the necessary
/// condition: z*_j = C_j − ε (all accepted; in particular the largest), and
/// z̄ with the top two coordinates moved to their midpoint minus ε (top two
/// rejected), preserving z_{k−1} + z_k.
pub fn step_up_violation_witness(
    c: &CriticalValues,
    epsilon: f64,
) -> Result<(Vec<f64>, Vec<f64>), ScanError> {
    let k = c.k();
    if k < 2 {
        return Err(ScanError::KTooSmall { k });
    }
    let max = witness_epsilon_bound(c);
    if !(epsilon > 0.0 && epsilon < max) {
        return Err(ScanError::EpsilonOutOfRange { epsilon, max });
    }
    let cs = c.coords();
    let z_star: Vec<f64> = cs.iter().map(|&cj| cj - epsilon).collect();
    let mut z_bar = z_star.clone();
    let mid = 0.5 * (cs[k - 1] + cs[k - 2]) - epsilon;
    z_bar[k - 2] = mid;
    z_bar[k - 1] = mid;
    Ok((z_star, z_bar))
}

/// The `corollary-4.4` preset: the scan line instrumenting the witness.
/// Fix z₁ … z_{k−2}
/// and z_{k−1} + z_k at their z* values, and vary t_k = z_k from the
/// midpoint (t_{k−1}/2) up to z*_k.
pub fn corollary_preset(
    c: &CriticalValues,
    epsilon: f64,
    resolution: usize,
) -> Result<LineSpec, ScanError> {
    let (z_star, _) = step_up_violation_witness(c, epsilon)?;
    let k = z_star.len();
    let t_star = crate::model::partial_sums(&z_star);
    let fixed: Vec<f64> = t_star.coords()[..k - 1].to_vec();
    let t_k_minus_1 = t_star.coords()[k - 2];
    Ok(LineSpec {
        j: k,
        fixed,
        range: (0.5 * t_k_minus_1, z_star[k - 1]),
        resolution,
    })
}

/// Convenience: scan step-up with its own `corollary-4.4` preset line.
pub fn step_up_self_check(
    c: &CriticalValues,
    epsilon: f64,
    resolution: usize,
) -> Result<Vec<Violation>, ScanError> {
    let line = corollary_preset(c, epsilon, resolution)?;
    let proc = crate::procedures::StepUp::new(c.clone());
    monotonicity_scan(&proc, &line)
}

/// Re-evaluate a reported violation from scratch; true when the decreasing
/// indicator pair reproduces.
pub fn confirm_violation(proc: &dyn Procedure, violation: &Violation) -> bool {
    let low = proc.decide(&violation.z_low);
    let high = proc.decide(&violation.z_high);
    low.rejects(violation.j - 1) && !high.rejects(violation.j - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::procedures::{Marginal, StepUp, step_up};
    use alloc::vec;

    #[test]
    fn witness_k2_matches_hand_trace() {
        let c = CriticalValues::new(vec![1.0, 2.0]).unwrap();
        let (z_star, z_bar) = step_up_violation_witness(&c, 0.25).unwrap();
        assert_eq!(z_star, vec![0.75, 1.75]);
        assert_eq!(z_bar, vec![1.25, 1.25]);
        let su_star = step_up(&c, &z_star).unwrap();
        assert_eq!(su_star.rejections(), 0);
        let su_bar = step_up(&c, &z_bar).unwrap();
        assert_eq!(su_bar.rejections(), 2);
        assert_eq!(z_star[0] + z_star[1], z_bar[0] + z_bar[1]);
        assert!(z_bar[1] < z_star[1]);
    }

    #[test]
    fn witness_k3_matches_hand_trace() {
        let c = CriticalValues::new(vec![1.0, 2.0, 3.0]).unwrap();
        let (z_star, z_bar) = step_up_violation_witness(&c, 0.25).unwrap();
        assert_eq!(z_star, vec![0.75, 1.75, 2.75]);
        assert_eq!(z_bar, vec![0.75, 2.25, 2.25]);
        assert_eq!(step_up(&c, &z_star).unwrap().rejections(), 0);
        let bar = step_up(&c, &z_bar).unwrap();
        assert!(!bar.rejects(0) && bar.rejects(1) && bar.rejects(2));
        // t2 preserved
        assert_eq!(z_bar[1] + z_bar[2], z_star[1] + z_star[2]);
    }

    #[test]
    fn witness_epsilon_bounds() {
        let c = CriticalValues::new(vec![1.0, 2.0]).unwrap();
        assert!(matches!(
            step_up_violation_witness(&c, 0.5),
            Err(ScanError::EpsilonOutOfRange { .. })
        ));
        assert!(step_up_violation_witness(&c, 0.499).is_ok());
        assert!(step_up_violation_witness(&c, 0.0).is_err());
        let c1 = CriticalValues::new(vec![1.0]).unwrap();
        assert!(matches!(
            step_up_violation_witness(&c1, 0.1),
            Err(ScanError::KTooSmall { k: 1 })
        ));
    }

    #[test]
    fn step_up_violates_its_preset() {
        let c = CriticalValues::new(vec![1.0, 2.0]).unwrap();
        let violations = step_up_self_check(&c, 0.25, DEFAULT_RESOLUTION).unwrap();
        assert!(!violations.is_empty());
        let proc = StepUp::new(c);
        for v in &violations {
            assert!(confirm_violation(&proc, v));
            assert!(v.t_low.in_region_s() && v.t_high.in_region_s());
            let tj_low = v.t_low.coords()[v.j - 1];
            let tj_high = v.t_high.coords()[v.j - 1];
            assert!(tj_low < tj_high);
        }
    }

    #[test]
    fn marginal_passes_preset() {
        let c = CriticalValues::new(vec![1.0, 2.0]).unwrap();
        let line = corollary_preset(&c, 0.25, DEFAULT_RESOLUTION).unwrap();
        let proc = Marginal::new(1.0, 2);
        let violations = monotonicity_scan(&proc, &line).unwrap();
        assert!(violations.is_empty());
    }

    #[test]
    fn scan_validates_line() {
        let proc = Marginal::new(1.0, 2);
        let bad_j = LineSpec { j: 1, fixed: vec![2.5], range: (0.0, 1.0), resolution: 16 };
        assert!(matches!(
            monotonicity_scan(&proc, &bad_j),
            Err(ScanError::BadIndex { .. })
        ));
        let bad_fixed = LineSpec { j: 2, fixed: vec![], range: (0.0, 1.0), resolution: 16 };
        assert!(matches!(
            monotonicity_scan(&proc, &bad_fixed),
            Err(ScanError::BadFixedLength { .. })
        ));
        let bad_range = LineSpec { j: 2, fixed: vec![2.5], range: (1.0, 1.0), resolution: 16 };
        assert!(matches!(
            monotonicity_scan(&proc, &bad_range),
            Err(ScanError::BadRange { .. })
        ));
        // A line entirely below the S diagonal: t2 < t1/2 means z2 < z1.
        let off_s = LineSpec { j: 2, fixed: vec![10.0], range: (0.0, 1.0), resolution: 16 };
        assert!(matches!(
            monotonicity_scan(&proc, &off_s),
            Err(ScanError::LineExitsS { .. })
        ));
    }

    #[test]
    fn non_equivariant_procedure_is_rejected() {
        struct FirstCoordinate;
        impl Procedure for FirstCoordinate {
            fn name(&self) -> &str {
                "first-coordinate"
            }
            fn k(&self) -> usize {
                2
            }
            fn is_permutation_equivariant(&self) -> bool {
                true // lies; the spot test must catch it
            }
            fn decide(&self, z: &[f64]) -> ActionVector {
                ActionVector::new(&[z[0] > 0.0, false])
            }
        }
        let line = LineSpec { j: 2, fixed: vec![0.0], range: (0.0, 2.0), resolution: 16 };
        assert!(matches!(
            monotonicity_scan(&FirstCoordinate, &line),
            Err(ScanError::NotEquivariant)
        ));
    }
}
