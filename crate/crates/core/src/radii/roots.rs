//! Least-positive-root search: a uniform sign scan followed by bisection.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Left end of the default search interval.
pub const SCAN_LO: f64 = 1e-12;
/// Right end of the default search interval, just inside the pole at `r = 1`.
pub const SCAN_HI: f64 = 1.0 - 1e-9;
pub const SCAN_STEP: f64 = 1e-4;
/// Bracket width at which bisection stops.
pub const BRACKET_TOL: f64 = 1e-13;

/// A refined root together with its final bracket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootResult {
    pub root: f64,
    /// `f(root)`.
    pub residual: f64,
    pub bracket: (f64, f64),
    /// Bisection steps taken after the scan.
    pub iterations: u32,
}

fn sample<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_nan() {
        Err(Error::NonFinite(format!("f({x}) is NaN")))
    } else {
        Ok(y)
    }
}

/// Smallest root of `f` in `[lo, hi]`.
///
/// Scans at `scan_step` for the first point whose sign differs from `f(lo)`
/// (or where `f` vanishes), then bisects that cell until it is at most `tol`
/// wide. Roots closer together than `scan_step` may be missed; the smallest
/// detected sign change always wins.
pub fn least_positive_root<F>(
    f: F,
    lo: f64,
    hi: f64,
    scan_step: f64,
    tol: f64,
) -> Result<RootResult>
where
    F: Fn(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidArgument(format!("bad interval [{lo}, {hi}]")));
    }
    if !(scan_step > 0.0 && tol > 0.0) {
        return Err(Error::InvalidArgument(
            "scan step and tolerance must be positive".into(),
        ));
    }
    let f_lo = sample(&f, lo)?;
    if f_lo == 0.0 {
        return Err(Error::DegenerateLeftEndpoint { lo });
    }
    let positive = f_lo > 0.0;
    let crossed = |y: f64| y == 0.0 || (y > 0.0) != positive;

    let steps = ((hi - lo) / scan_step).ceil() as u64;
    let mut a = lo;
    let mut b = None;
    for i in 1..=steps {
        let x = if i == steps {
            hi
        } else {
            lo + i as f64 * scan_step
        };
        if crossed(sample(&f, x)?) {
            b = Some(x);
            break;
        }
        a = x;
    }
    let mut b = b.ok_or(Error::NoRoot { lo, hi })?;

    let mut iterations = 0;
    while b - a > tol {
        let mid = a + 0.5 * (b - a);
        if mid <= a || mid >= b {
            break;
        }
        if crossed(sample(&f, mid)?) {
            b = mid;
        } else {
            a = mid;
        }
        iterations += 1;
    }
    let root = a + 0.5 * (b - a);
    Ok(RootResult {
        root,
        residual: f(root),
        bracket: (a, b),
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_simple_roots() {
        let r = least_positive_root(|x| x - 0.5, 0.0, 1.0, SCAN_STEP, BRACKET_TOL).unwrap();
        assert!((r.root - 0.5).abs() < 1e-13);
        let r = least_positive_root(|x| 0.5 - x, 0.0, 1.0, SCAN_STEP, BRACKET_TOL).unwrap();
        assert!((r.root - 0.5).abs() < 1e-13);
        assert!(r.bracket.0 < r.root && r.root < r.bracket.1);
        assert!(r.bracket.1 - r.bracket.0 <= BRACKET_TOL);
    }

    #[test]
    fn returns_the_least_root() {
        let r = least_positive_root(|x| (x - 0.2) * (x - 0.7), 0.0, 1.0, SCAN_STEP, BRACKET_TOL)
            .unwrap();
        assert!((r.root - 0.2).abs() < 1e-12);
    }

    #[test]
    fn reports_missing_and_degenerate_roots() {
        assert_eq!(
            least_positive_root(|x| 1.0 + x, 0.0, 1.0, SCAN_STEP, BRACKET_TOL),
            Err(Error::NoRoot { lo: 0.0, hi: 1.0 })
        );
        assert_eq!(
            least_positive_root(|x| x, 0.0, 1.0, SCAN_STEP, BRACKET_TOL),
            Err(Error::DegenerateLeftEndpoint { lo: 0.0 })
        );
        assert!(least_positive_root(|x| x, 1.0, 0.0, SCAN_STEP, BRACKET_TOL).is_err());
        assert!(least_positive_root(|x| x, 0.0, 1.0, 0.0, BRACKET_TOL).is_err());
        assert!(least_positive_root(|_| f64::NAN, 0.0, 1.0, 0.1, BRACKET_TOL).is_err());
    }

    #[test]
    fn exact_zero_on_the_scan_grid() {
        // the scan lands on 0.25 exactly
        let r = least_positive_root(|x| 0.25 - x, 0.0, 1.0, 0.125, 1e-14).unwrap();
        assert!((r.root - 0.25).abs() < 1e-14);
    }
}
