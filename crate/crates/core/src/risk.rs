//! The vector risk (R₀, R₁): expected false rejections and expected false
//! acceptances, estimated by Monte Carlo, plus the exact one-dimensional
//! conditional quadrature used to verify that ψ* dominates step-up.

use alloc::vec::Vec;

use crate::math::bisect::bisect;
use crate::math::normal::norm_cdf;
use crate::math::quad::{QuadError, integrate};
use crate::model::{ActionVector, IntraclassModel, MeanVector, ModelError};
use crate::procedures::strip::w_inner;
use crate::procedures::{Procedure, ProcedureError, PsiStar, StepUp, StripImprovement};

/// Risk evaluation errors.
#[derive(Debug, Clone, PartialEq)]
pub enum RiskError {
    /// Monte Carlo estimates need at least 100 draws.
    TooFewDraws { n: usize },
    /// The loss multiplier b must be strictly positive.
    InvalidB(f64),
    /// The quadrature did not reach its tolerance.
    Quadrature(QuadError),
    Model(ModelError),
    Procedure(ProcedureError),
}

impl core::fmt::Display for RiskError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            RiskError::TooFewDraws { n } => write!(f, "need n >= 100 draws, got {n}"),
            RiskError::InvalidB(b) => write!(f, "b must be > 0, got {b}"),
            RiskError::Quadrature(e) => write!(f, "{e}"),
            RiskError::Model(e) => write!(f, "{e}"),
            RiskError::Procedure(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for RiskError {}

impl From<ModelError> for RiskError {
    fn from(e: ModelError) -> Self {
        RiskError::Model(e)
    }
}

impl From<ProcedureError> for RiskError {
    fn from(e: ProcedureError) -> Self {
        RiskError::Procedure(e)
    }
}

impl From<QuadError> for RiskError {
    fn from(e: QuadError) -> Self {
        RiskError::Quadrature(e)
    }
}

/// Monte Carlo estimate of the vector risk at one μ.
#[derive(Debug, Clone)]
pub struct RiskReport {
    pub mu: MeanVector,
    /// Estimated R₀ = Σ_{i: v_i=0} E ψ_i (expected false rejections).
    pub r0: f64,
    /// Estimated R₁ = Σ_{i: v_i=1} E(1 − ψ_i) (expected false acceptances).
    pub r1: f64,
    pub se0: f64,
    pub se1: f64,
    pub n: usize,
    pub seed: u64,
}

fn check_mc_inputs(
    proc: &dyn Procedure,
    model: &IntraclassModel,
    mu: &MeanVector,
    n: usize,
) -> Result<(), RiskError> {
    if n < 100 {
        return Err(RiskError::TooFewDraws { n });
    }
    if proc.k() != model.k() {
        return Err(RiskError::Model(ModelError::DimensionMismatch {
            expected: model.k(),
            got: proc.k(),
        }));
    }
    if mu.k() != model.k() {
        return Err(RiskError::Model(ModelError::DimensionMismatch {
            expected: model.k(),
            got: mu.k(),
        }));
    }
    Ok(())
}

/// Estimate (R₀, R₁) for one procedure at one μ.
pub fn vector_risk_mc(
    proc: &dyn Procedure,
    model: &IntraclassModel,
    mu: &MeanVector,
    n: usize,
    seed: u64,
) -> Result<RiskReport, RiskError> {
    check_mc_inputs(proc, model, mu, n)?;
    let v = mu.pattern();
    let v_mask = v.as_mask();
    let mut s0 = 0.0;
    let mut s0_sq = 0.0;
    let mut s1 = 0.0;
    let mut s1_sq = 0.0;
    model.for_each_draw(mu, n, seed, |z| {
        let a = proc.decide(z).as_mask();
        // a has bits only below k, so the complement mask needs no clipping.
        let false_rejections = (a & !v_mask).count_ones() as f64;
        let false_acceptances = (!a & v_mask).count_ones() as f64;
        s0 += false_rejections;
        s0_sq += false_rejections * false_rejections;
        s1 += false_acceptances;
        s1_sq += false_acceptances * false_acceptances;
    })?;
    let nf = n as f64;
    let r0 = s0 / nf;
    let r1 = s1 / nf;
    let var0 = (s0_sq / nf - r0 * r0).max(0.0);
    let var1 = (s1_sq / nf - r1 * r1).max(0.0);
    Ok(RiskReport {
        mu: mu.clone(),
        r0,
        r1,
        se0: libm::sqrt(var0 / nf),
        se1: libm::sqrt(var1 / nf),
        n,
        seed,
    })
}

/// Per-endpoint risks R_(i) = (1−v_i)·Eψ_i + v_i·(1 − Eψ_i), on the same
/// draws as [`vector_risk_mc`] for the same seed.
pub fn component_risks(
    proc: &dyn Procedure,
    model: &IntraclassModel,
    mu: &MeanVector,
    n: usize,
    seed: u64,
) -> Result<Vec<f64>, RiskError> {
    check_mc_inputs(proc, model, mu, n)?;
    let k = model.k();
    let mut reject_counts = alloc::vec![0.0f64; k];
    model.for_each_draw(mu, n, seed, |z| {
        let a = proc.decide(z);
        for (i, c) in reject_counts.iter_mut().enumerate() {
            if a.rejects(i) {
                *c += 1.0;
            }
        }
    })?;
    let nf = n as f64;
    Ok(mu
        .coords()
        .iter()
        .zip(&reject_counts)
        .map(|(&m, &c)| {
            let psi = c / nf;
            if m > 0.0 { 1.0 - psi } else { psi }
        })
        .collect())
}

/// The linear combination R₀ + b·R₁ with its propagated standard error
/// √(se₀² + b²·se₁²).
pub fn linear_combo_risk(report: &RiskReport, b: f64) -> Result<(f64, f64), RiskError> {
    if !(b > 0.0) {
        return Err(RiskError::InvalidB(b));
    }
    let value = report.r0 + b * report.r1;
    let se = libm::sqrt(report.se0 * report.se0 + b * b * report.se1 * report.se1);
    Ok((value, se))
}

/// Mass of (lo, hi) under N(mean, sd²); endpoints may be infinite.
fn normal_interval_mass(lo: f64, hi: f64, mean: f64, sd: f64) -> f64 {
    let upper = if hi == f64::INFINITY { 1.0 } else { norm_cdf((hi - mean) / sd) };
    let lower = if lo == f64::NEG_INFINITY { 0.0 } else { norm_cdf((lo - mean) / sd) };
    (upper - lower).max(0.0)
}

/// E{W(Z; v) | Z₁+Z₂ = t} for an arbitrary hypothesis pattern v and mean
/// difference η = μ₁ − μ₂: a finite sum of Table-1 interval masses under the
/// conditional law N(t/2 + η/2, σ²(1−ρ)/2).
pub fn conditional_w_mean(
    strip: &StripImprovement,
    b: f64,
    v: &ActionVector,
    eta: f64,
    t: f64,
) -> Result<f64, RiskError> {
    if !(b > 0.0) {
        return Err(RiskError::InvalidB(b));
    }
    if v.len() != 2 {
        return Err(RiskError::Model(ModelError::DimensionMismatch {
            expected: 2,
            got: v.len(),
        }));
    }
    let d = strip.d_of_t(t)?;
    let cstar = strip.c_star(t)?;
    let cond_mean = 0.5 * t + 0.5 * eta;
    let cond_sd = 0.5 * strip.scale();
    let mut acc = 0.0;
    for seg in strip.line_segments(t, cstar, d > 0.0) {
        let w = w_inner(&seg.su, &seg.star, v, b);
        if w != 0.0 {
            acc += w * normal_interval_mass(seg.lo, seg.hi, cond_mean, cond_sd);
        }
    }
    Ok(acc)
}

/// E_μ{W(Z; v(μ)) | Z₁+Z₂ = t}: the conditional expected Table-1 value at μ.
pub fn conditional_w_expectation(
    strip: &StripImprovement,
    b: f64,
    mu: &MeanVector,
    t: f64,
) -> Result<f64, RiskError> {
    if mu.k() != 2 {
        return Err(RiskError::Model(ModelError::DimensionMismatch {
            expected: 2,
            got: mu.k(),
        }));
    }
    let eta = mu.coords()[0] - mu.coords()[1];
    conditional_w_mean(strip, b, &mu.pattern(), eta, t)
}

/// The t at which D changes sign inside the strip.
pub fn d_sign_change(strip: &StripImprovement) -> f64 {
    let (lo, hi) = strip.strip();
    let pad = 1e-9 * (hi - lo);
    bisect(
        |t| strip.d_of_t(t).expect("interior of the strip"),
        lo + pad,
        hi - pad,
        1e-12,
        200,
    )
    .expect("D is positive near 2C1 and negative near C1+C2")
}

/// Δ(μ) = (R₀ + bR₁ of step-up) − (R₀ + bR₁ of ψ*) by adaptive quadrature
/// of the conditional expectation over the strip, splitting panels at the
/// D(t) sign change. Absolute tolerance 1e-8.
pub fn risk_difference_quadrature(
    strip: &StripImprovement,
    b: f64,
    mu: &MeanVector,
) -> Result<f64, RiskError> {
    if mu.k() != 2 {
        return Err(RiskError::Model(ModelError::DimensionMismatch {
            expected: 2,
            got: mu.k(),
        }));
    }
    if !(b > 0.0) {
        return Err(RiskError::InvalidB(b));
    }
    const TOL: f64 = 1e-8;
    let (lo, hi) = strip.strip();
    let t0 = d_sign_change(strip);
    let eta = mu.coords()[0] - mu.coords()[1];
    let v = mu.pattern();
    // T = Z1 + Z2 ~ N(mu1 + mu2, 2 sigma^2 (1 + rho))
    let t_mean = mu.coords()[0] + mu.coords()[1];
    let t_sd = libm::sqrt(2.0 * strip.sigma2() * (1.0 + strip.rho()));
    let integrand = |t: f64| {
        let w = conditional_w_mean(strip, b, &v, eta, t).expect("t inside the strip");
        let u = (t - t_mean) / t_sd;
        w * libm::exp(-0.5 * u * u) / (t_sd * libm::sqrt(2.0 * core::f64::consts::PI))
    };
    let left = integrate(integrand, lo, t0, 0.5 * TOL)?;
    let right = integrate(integrand, t0, hi, 0.5 * TOL)?;
    Ok(left + right)
}

/// Common-random-number Monte Carlo estimate of Δ(μ, b) for each b: the same
/// draw stream evaluates both procedures, so the difference has low variance.
/// Returns one `(delta, se)` per entry of `bs`.
pub fn risk_difference_mc(
    strip: &StripImprovement,
    mu: &MeanVector,
    bs: &[f64],
    n: usize,
    seed: u64,
) -> Result<Vec<(f64, f64)>, RiskError> {
    if n < 100 {
        return Err(RiskError::TooFewDraws { n });
    }
    for &b in bs {
        if !(b > 0.0) {
            return Err(RiskError::InvalidB(b));
        }
    }
    let model = IntraclassModel::new(2, strip.sigma2(), strip.rho())?;
    if mu.k() != 2 {
        return Err(RiskError::Model(ModelError::DimensionMismatch {
            expected: 2,
            got: mu.k(),
        }));
    }
    let su = StepUp::new(strip.critical_values());
    let star = PsiStar::new(strip.clone());
    let v_mask = mu.pattern().as_mask();
    // Per draw: dr0 = false-rejection difference, da = rejection difference
    // on the positive coordinates; delta(b) = E[dr0] - b E[da].
    let (mut s_r0, mut s_r0_sq) = (0.0, 0.0);
    let (mut s_a, mut s_a_sq) = (0.0, 0.0);
    let mut s_cross = 0.0;
    model.for_each_draw(mu, n, seed, |z| {
        let t = z[0] + z[1];
        if !strip.contains(t) {
            return; // psi* equals step-up off the strip
        }
        let a_su = su.decide(z).as_mask();
        let a_star = star.decide(z).as_mask();
        if a_su == a_star {
            return;
        }
        let mut dr0 = 0.0;
        let mut da = 0.0;
        for i in 0..2 {
            let diff = ((a_su >> i & 1) as i8 - (a_star >> i & 1) as i8) as f64;
            if v_mask >> i & 1 == 1 {
                da += diff;
            } else {
                dr0 += diff;
            }
        }
        s_r0 += dr0;
        s_r0_sq += dr0 * dr0;
        s_a += da;
        s_a_sq += da * da;
        s_cross += dr0 * da;
    })?;
    let nf = n as f64;
    let m_r0 = s_r0 / nf;
    let m_a = s_a / nf;
    let var_r0 = (s_r0_sq / nf - m_r0 * m_r0).max(0.0);
    let var_a = (s_a_sq / nf - m_a * m_a).max(0.0);
    let cov = s_cross / nf - m_r0 * m_a;
    Ok(bs
        .iter()
        .map(|&b| {
            let delta = m_r0 - b * m_a;
            let var = (var_r0 + b * b * var_a - 2.0 * b * cov).max(0.0);
            (delta, libm::sqrt(var / nf))
        })
        .collect())
}
