//! Bisection for monotone scalar equations.

/// Error from [`bisect`].
#[derive(Debug, Clone, PartialEq)]
pub enum BisectError {
    /// The bracket endpoints are not ordered `lo < hi`.
    EmptyBracket { lo: f64, hi: f64 },
    /// `f(lo)` and `f(hi)` have the same sign, so no root is bracketed.
    NoSignChange { f_lo: f64, f_hi: f64 },
}

impl core::fmt::Display for BisectError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BisectError::EmptyBracket { lo, hi } => {
                write!(f, "empty bracket [{lo}, {hi}]")
            }
            BisectError::NoSignChange { f_lo, f_hi } => {
                write!(f, "no sign change over bracket: f(lo) = {f_lo}, f(hi) = {f_hi}")
            }
        }
    }
}

impl core::error::Error for BisectError {}

/// Find the root of a continuous function with a sign change on `[lo, hi]`.
///
/// Halves the bracket until its width drops below `tol` or `max_iter`
/// iterations have run, then returns the midpoint. Exact zeros at either
/// endpoint are returned immediately.
pub fn bisect<F: Fn(f64) -> f64>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<f64, BisectError> {
    if !(lo < hi) {
        return Err(BisectError::EmptyBracket { lo, hi });
    }
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let f_hi = f(hi);
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(BisectError::NoSignChange { f_lo, f_hi });
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let root = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14, 200).unwrap();
        assert!((root - core::f64::consts::SQRT_2).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_brackets() {
        assert!(matches!(
            bisect(|x| x, 1.0, 0.0, 1e-12, 200),
            Err(BisectError::EmptyBracket { .. })
        ));
        assert!(matches!(
            bisect(|x| x + 10.0, 0.0, 1.0, 1e-12, 200),
            Err(BisectError::NoSignChange { .. })
        ));
    }

    #[test]
    fn endpoint_roots_short_circuit() {
        assert_eq!(bisect(|x| x, 0.0, 1.0, 1e-12, 200).unwrap(), 0.0);
        assert_eq!(bisect(|x| x - 1.0, 0.0, 1.0, 1e-12, 200).unwrap(), 1.0);
    }
}
