//! The strip modification of step-up for k = 2.
//!
//! Step-up violates the partial-sum monotonicity condition exactly on the
//! strip 2C₁ < z₁ + z₂ < C₁ + C₂. On each line z₁ + z₂ = t inside the strip,
//! ψ* replaces step-up's decisions by a three-region rule whose inner cutoff
//! C*(t) balances the conditional rejection probabilities under μ₁ = μ₂,
//! making the swap risk-free on the diagonal and an improvement off it.

use crate::math::{bisect::bisect, normal::norm_cdf};
use crate::model::ActionVector;

use super::{CriticalValues, ProcedureError, step_up};

/// Parameters of the strip construction: step-up cutoffs c1 < c2 plus the
/// bivariate model constants that set the conditional scale √(2σ²(1−ρ)).
#[derive(Debug, Clone, PartialEq)]
pub struct StripImprovement {
    c1: f64,
    c2: f64,
    rho: f64,
    sigma2: f64,
}

/// One constant piece of the two procedures along a line z₁ + z₂ = t.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LineSegment {
    pub lo: f64,
    pub hi: f64,
    pub su: ActionVector,
    pub star: ActionVector,
}

impl StripImprovement {
    pub fn new(c1: f64, c2: f64, rho: f64, sigma2: f64) -> Result<Self, ProcedureError> {
        if !(c1 < c2) {
            return Err(ProcedureError::InvalidStrip { c1, c2 });
        }
        if !(sigma2 > 0.0) || !(rho > -1.0 && rho < 1.0) {
            return Err(ProcedureError::InvalidStripModel { sigma2, rho });
        }
        Ok(Self { c1, c2, rho, sigma2 })
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    /// The open strip (2C₁, C₁+C₂) in t = z₁+z₂.
    pub fn strip(&self) -> (f64, f64) {
        (2.0 * self.c1, self.c1 + self.c2)
    }

    pub fn contains(&self, t: f64) -> bool {
        let (lo, hi) = self.strip();
        t > lo && t < hi
    }

    /// The conditional scale s = √(2σ²(1−ρ)).
    pub fn scale(&self) -> f64 {
        libm::sqrt(2.0 * self.sigma2 * (1.0 - self.rho))
    }

    /// The step-up cutoffs as a [`CriticalValues`] pair.
    pub fn critical_values(&self) -> CriticalValues {
        CriticalValues::new(alloc::vec![self.c1, self.c2]).expect("c1 < c2 checked")
    }

    fn require_in_strip(&self, t: f64) -> Result<(), ProcedureError> {
        if !self.contains(t) {
            let (lo, hi) = self.strip();
            return Err(ProcedureError::OutsideStrip { t, lo, hi });
        }
        Ok(())
    }

    /// D(t) = Φ((2C₂−t)/s) − 2Φ((t−2C₁)/s) + ½ for t inside the strip.
    ///
    /// D is strictly decreasing, positive near 2C₁, negative near C₁+C₂, and
    /// satisfies |D(t)| < ½.
    pub fn d_of_t(&self, t: f64) -> Result<f64, ProcedureError> {
        self.require_in_strip(t)?;
        let s = self.scale();
        Ok(norm_cdf((2.0 * self.c2 - t) / s) - 2.0 * norm_cdf((t - 2.0 * self.c1) / s) + 0.5)
    }

    /// The unique C* ≥ t/2 with Φ((2C*−t)/s) − ½ = |D(t)|, found by bisection
    /// on [t/2, t/2 + 10s].
    pub fn c_star(&self, t: f64) -> Result<f64, ProcedureError> {
        let d = self.d_of_t(t)?.abs();
        let s = self.scale();
        let lo = 0.5 * t;
        let hi = lo + 10.0 * s;
        let root = bisect(
            |c| norm_cdf((2.0 * c - t) / s) - 0.5 - d,
            lo,
            hi,
            1e-12,
            200,
        )
        .expect("0 <= |D| < 1/2 guarantees a bracketed root");
        Ok(root)
    }

    /// Evaluate ψ* at a bivariate observation.
    ///
    /// Off the closed strip ψ* is step-up. Inside, the line z₁+z₂ = t is cut
    /// at t−C*(t) and C*(t); the middle region is (0,0) when D(t) > 0 and
    /// (1,1) when D(t) < 0 (empty when D(t) = 0). Region boundaries resolve
    /// to the region on the side of smaller z₁.
    pub fn psi_star(&self, z: &[f64]) -> Result<ActionVector, ProcedureError> {
        if z.len() != 2 {
            return Err(ProcedureError::Dimension { expected: 2, got: z.len() });
        }
        let t = z[0] + z[1];
        if !self.contains(t) {
            return step_up(&self.critical_values(), z);
        }
        let d = self.d_of_t(t)?;
        let cstar = self.c_star(t)?;
        let z1 = z[0];
        let mask = if z1 <= t - cstar {
            0b10 // (0, 1)
        } else if d > 0.0 && z1 <= cstar {
            0b00 // (0, 0)
        } else if d < 0.0 && z1 <= cstar {
            0b11 // (1, 1)
        } else {
            0b01 // (1, 0)
        };
        Ok(ActionVector::from_mask(mask, 2))
    }

    /// Step-up along the line z₁ + z₂ = t for t inside the strip, as a
    /// function of z₁ (the five-piece display).
    fn su_on_line(&self, t: f64, z1: f64) -> ActionVector {
        let mask = if z1 < t - self.c2 {
            0b10
        } else if z1 < self.c1 {
            0b00
        } else if z1 < t - self.c1 {
            0b11
        } else if z1 < self.c2 {
            0b00
        } else {
            0b01
        };
        ActionVector::from_mask(mask, 2)
    }

    /// ψ* along the same line given C* and the sign of D.
    fn star_on_line(&self, t: f64, cstar: f64, d_positive: bool, z1: f64) -> ActionVector {
        let mask = if z1 < t - cstar {
            0b10
        } else if z1 < cstar {
            if d_positive { 0b00 } else { 0b11 }
        } else {
            0b01
        };
        ActionVector::from_mask(mask, 2)
    }

    /// The refinement of the line z₁ + z₂ = t into maximal intervals on which
    /// both step-up and ψ* are constant. Degenerate (inverted or empty)
    /// intervals are dropped, which is exactly the clipping needed when
    /// C* ≥ t − C₁.
    pub(crate) fn line_segments(
        &self,
        t: f64,
        cstar: f64,
        d_positive: bool,
    ) -> alloc::vec::Vec<LineSegment> {
        let mut cuts = [
            t - self.c2,
            self.c1,
            t - cstar,
            cstar,
            t - self.c1,
            self.c2,
        ];
        cuts.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
        let mut segments = alloc::vec::Vec::with_capacity(7);
        let mut lo = f64::NEG_INFINITY;
        for i in 0..=cuts.len() {
            let hi = if i < cuts.len() { cuts[i] } else { f64::INFINITY };
            if hi > lo {
                let mid = if lo == f64::NEG_INFINITY {
                    hi - 1.0
                } else if hi == f64::INFINITY {
                    lo + 1.0
                } else {
                    0.5 * (lo + hi)
                };
                segments.push(LineSegment {
                    lo,
                    hi,
                    su: self.su_on_line(t, mid),
                    star: self.star_on_line(t, cstar, d_positive, mid),
                });
                lo = hi;
            }
        }
        segments
    }
}

/// W(z; v) = (ψ_SU(z) − ψ*(z))′(𝟙 − (b+1)v) at z = (z₁, t−z₁), located among
/// the Table-1 intervals of the line z₁ + z₂ = t.
///
/// Requires t inside the strip, D(t) > 0, and C* ≥ t/2. Interval boundaries
/// resolve to the interval on the side of smaller z₁.
pub fn w_value(
    z1: f64,
    t: f64,
    v: &ActionVector,
    b: f64,
    strip: &StripImprovement,
    cstar: f64,
) -> Result<f64, ProcedureError> {
    let d = strip.d_of_t(t)?;
    if !(d > 0.0) {
        return Err(ProcedureError::NonPositiveD { t, d });
    }
    if !(cstar >= 0.5 * t) {
        return Err(ProcedureError::BadCStar { cstar, t });
    }
    let segments = strip.line_segments(t, cstar, true);
    let seg = segments
        .iter()
        .find(|s| z1 <= s.hi)
        .expect("segments cover the line");
    Ok(w_inner(&seg.su, &seg.star, v, b))
}

/// (su − star)′(𝟙 − (b+1)v) for bivariate actions.
pub(crate) fn w_inner(su: &ActionVector, star: &ActionVector, v: &ActionVector, b: f64) -> f64 {
    let mut acc = 0.0;
    for i in 0..2 {
        let diff = su.rejects(i) as i8 - star.rejects(i) as i8;
        let weight = 1.0 - (b + 1.0) * v.rejects(i) as u8 as f64;
        acc += diff as f64 * weight;
    }
    acc
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen reference digits
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn strip01() -> StripImprovement {
        StripImprovement::new(1.0, 2.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn validation() {
        assert!(StripImprovement::new(2.0, 1.0, 0.0, 1.0).is_err());
        assert!(StripImprovement::new(1.0, 2.0, 1.0, 1.0).is_err());
        assert!(StripImprovement::new(1.0, 2.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn d_reference_value() {
        // Frozen from a 50-digit evaluation of the D formula at t = 2.5.
        let s = strip01();
        let d = s.d_of_t(2.5).unwrap();
        assert!((d - 0.079251426658520633).abs() < 5e-4);
        assert!((d - 0.079251426658520633).abs() < 1e-13, "got {d}");
    }

    #[test]
    fn d_is_rejected_outside_strip() {
        let s = strip01();
        assert!(s.d_of_t(2.0).is_err());
        assert!(s.d_of_t(3.0).is_err());
        assert!(s.d_of_t(2.0 + 1e-9).is_ok());
    }

    #[test]
    fn d_endpoint_limits() {
        let s = strip01();
        let sc = s.scale();
        // t -> 2C1+: D -> Phi(2(C2-C1)/s) - 1/2 > 0
        let d_lo = s.d_of_t(2.0 + 1e-9).unwrap();
        let want_lo = norm_cdf(2.0 / sc) - 0.5;
        assert!((d_lo - want_lo).abs() < 1e-6);
        assert!(d_lo > 0.0);
        // t -> (C1+C2)-: D -> 1/2 - Phi((C2-C1)/s) < 0
        let d_hi = s.d_of_t(3.0 - 1e-9).unwrap();
        let want_hi = 0.5 - norm_cdf(1.0 / sc);
        assert!((d_hi - want_hi).abs() < 1e-6);
        assert!(d_hi < 0.0);
    }

    #[test]
    fn c_star_reference_value() {
        let s = strip01();
        let c = s.c_star(2.5).unwrap();
        assert!((c - 1.3914063788499241).abs() < 1e-10, "got {c}");
        assert!(c > 1.25 && c < 1.5);
        // residual of the defining equation
        let resid = norm_cdf((2.0 * c - 2.5) / s.scale()) - 0.5 - s.d_of_t(2.5).unwrap().abs();
        assert!(resid.abs() <= 1e-10);
    }

    #[test]
    fn psi_star_examples() {
        let s = strip01();
        // outside the strip: equals step-up
        let a = s.psi_star(&[0.0, 0.0]).unwrap();
        assert_eq!(a.bits().collect::<Vec<_>>(), alloc::vec![0, 0]);
        // inside, middle region: (0,0) where step-up says (1,1)
        let a = s.psi_star(&[1.2, 1.3]).unwrap();
        assert_eq!(a.bits().collect::<Vec<_>>(), alloc::vec![0, 0]);
        let su = step_up(&s.critical_values(), &[1.2, 1.3]).unwrap();
        assert_eq!(su.bits().collect::<Vec<_>>(), alloc::vec![1, 1]);
        // z1 above C*: (1,0)
        let a = s.psi_star(&[1.45, 1.05]).unwrap();
        assert_eq!(a.bits().collect::<Vec<_>>(), alloc::vec![1, 0]);
    }

    #[test]
    fn psi_star_dimension_check() {
        let s = strip01();
        assert!(s.psi_star(&[1.0]).is_err());
    }

    #[test]
    fn w_value_table_rows() {
        let s = strip01();
        let t = 2.5;
        let cstar = s.c_star(t).unwrap();
        let b = 0.7;
        // middle interval, v = (0,0): W = 2
        let v00 = ActionVector::from_mask(0b00, 2);
        let w = w_value(0.5 * (t - cstar + cstar), t, &v00, b, &s, cstar).unwrap();
        assert_eq!(w, 2.0);
        // (t-C2, C1) row, v = (1,0): W = -1
        let v10 = ActionVector::from_mask(0b01, 2);
        let w = w_value(0.75, t, &v10, b, &s, cstar).unwrap();
        assert_eq!(w, -1.0);
        // middle interval, v = (1,1): W = -2b
        let v11 = ActionVector::from_mask(0b11, 2);
        let w = w_value(1.25, t, &v11, b, &s, cstar).unwrap();
        assert!((w - (-2.0 * b)).abs() < 1e-15);
        // outer intervals: W = 0
        let w = w_value(-5.0, t, &v00, b, &s, cstar).unwrap();
        assert_eq!(w, 0.0);
        let w = w_value(5.0, t, &v11, b, &s, cstar).unwrap();
        assert_eq!(w, 0.0);
    }

    #[test]
    fn w_value_rejects_negative_d() {
        let s = strip01();
        let t = 2.95; // D(t) < 0 here
        assert!(s.d_of_t(t).unwrap() < 0.0);
        let cstar = s.c_star(t).unwrap();
        let v = ActionVector::from_mask(0, 2);
        assert!(matches!(
            w_value(1.4, t, &v, 1.0, &s, cstar),
            Err(ProcedureError::NonPositiveD { .. })
        ));
    }

    #[test]
    fn segments_partition_the_line() {
        let s = strip01();
        for &t in &[2.1, 2.5, 2.9] {
            let cstar = s.c_star(t).unwrap();
            let d_pos = s.d_of_t(t).unwrap() > 0.0;
            let segs = s.line_segments(t, cstar, d_pos);
            assert!(segs.len() >= 5 && segs.len() <= 7);
            assert_eq!(segs[0].lo, f64::NEG_INFINITY);
            assert_eq!(segs.last().unwrap().hi, f64::INFINITY);
            for w in segs.windows(2) {
                assert_eq!(w[0].hi, w[1].lo);
                assert!(w[0].lo < w[0].hi);
            }
            // segment values agree with direct evaluation at interior points
            for seg in &segs {
                let z1 = if seg.lo == f64::NEG_INFINITY {
                    seg.hi - 0.01
                } else if seg.hi == f64::INFINITY {
                    seg.lo + 0.01
                } else {
                    0.5 * (seg.lo + seg.hi)
                };
                let su = step_up(&s.critical_values(), &[z1, t - z1]).unwrap();
                assert_eq!(su, seg.su, "t={t} z1={z1}");
                let star = s.psi_star(&[z1, t - z1]).unwrap();
                assert_eq!(star, seg.star, "t={t} z1={z1}");
            }
        }
    }
}
