//! Coefficient estimates for bounded polyanalytic functions.
//!
//! On the circle `|z| = r` the function `F(z) = Σ a_{n,k} z̄^k z^n` is a
//! trigonometric polynomial whose mode `e^{ijθ}` collects the coefficients
//! with `n − k = j`. Its mean square therefore equals the sum of squared mode
//! amplitudes, and under the argument condition every cross term inside a
//! mode is non-negative, so the diagonal `Σ |a_{n,k}|² r^{2(n+k)}` is a lower
//! bound. Letting `r → 1` yields `Σ |a_{n,k}|² ≤ M²` and the individual
//! coefficient bounds checked here.

use std::f64::consts::{SQRT_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::polyfn::{excess_over_floor, CoefficientGrid, Normalization};
use crate::{Error, Result};

/// Absolute slack allowed on every inequality.
pub const BOUND_TOLERANCE: f64 = 1e-12;

/// Tolerance used to decide whether a grid carries the requested normalization.
const NORMALIZATION_TOLERANCE: f64 = 1e-10;

/// Default sample count for [`circle_mean_square`].
pub const DEFAULT_CIRCLE_SAMPLES: usize = 4096;

/// `λ₀(M) = √2 / (√(M²−1) + √(M²+1))`, the lower bound for `λ_F(0)` under
/// the Jacobian normalization.
pub fn lambda0(m: f64) -> Result<f64> {
    let below = excess_over_floor(m, 1.0)?;
    Ok(SQRT_2 / (below.sqrt() + (m * m + 1.0).sqrt()))
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "radius {r} must lie in (0, 1)"
        )))
    }
}

/// Mean of `|F(r e^{iθ})|²` over `n_samples` equally spaced angles.
///
/// This is the composite trapezoid rule for a periodic integrand and is exact
/// for trigonometric polynomials of degree below `n_samples / 2`.
pub fn circle_mean_square(f: &CoefficientGrid, r: f64, n_samples: usize) -> Result<f64> {
    check_radius(r)?;
    if n_samples < 16 || !n_samples.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "n_samples = {n_samples} must be a power of two and at least 16"
        )));
    }
    let mut total = 0.0;
    for j in 0..n_samples {
        let theta = TAU * j as f64 / n_samples as f64;
        total += f.evaluate(Complex64::from_polar(r, theta))?.norm_sqr();
    }
    Ok(total / n_samples as f64)
}

/// Amplitude of the Fourier mode `e^{ijθ}` of `F(r e^{iθ})`.
fn mode_amplitude(f: &CoefficientGrid, j: i64, r: f64) -> Complex64 {
    (0..f.alpha())
        .filter_map(|k| {
            let n = j + k as i64;
            (0..=f.n_max() as i64)
                .contains(&n)
                .then(|| f.coeff(n as usize, k) * r.powi((j + 2 * k as i64) as i32))
        })
        .sum()
}

/// Sum of squared mode amplitudes for `r ∈ (0, 1]`.
pub(crate) fn mode_sum(f: &CoefficientGrid, r: f64) -> f64 {
    let lowest = -(f.alpha() as i64 - 1);
    (lowest..=f.n_max() as i64)
        .map(|j| mode_amplitude(f, j, r).norm_sqr())
        .sum()
}

/// Mean square of `F` on `|z| = r` computed mode by mode from the grid.
pub fn parseval_sum(f: &CoefficientGrid, r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(mode_sum(f, r))
}

/// `Σ |a_{n,k}|² r^{2(n+k)}`, the diagonal part of the mode sum.
pub fn diagonal_sum(f: &CoefficientGrid, r: f64) -> f64 {
    f.entries()
        .map(|(n, k, a)| a.norm_sqr() * r.powi(2 * (n + k) as i32))
        .sum()
}

/// Which way an inequality points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

/// One evaluated inequality `lhs <= rhs` or `lhs >= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub inequality: String,
    pub index: Option<(usize, usize)>,
    pub relation: Relation,
    pub lhs: f64,
    pub rhs: f64,
    /// Non-negative when the inequality holds.
    pub slack: f64,
}

impl BoundEntry {
    fn new(
        tag: &str,
        index: Option<(usize, usize)>,
        relation: Relation,
        lhs: f64,
        rhs: f64,
    ) -> Self {
        let slack = match relation {
            Relation::AtMost => rhs - lhs,
            Relation::AtLeast => lhs - rhs,
        };
        Self {
            inequality: tag.to_string(),
            index,
            relation,
            lhs,
            rhs,
            slack,
        }
    }

    pub fn holds(&self) -> bool {
        self.slack >= -BOUND_TOLERANCE
    }
}

/// Outcome of checking the coefficient estimates against a grid and a bound `M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub case: Normalization,
    /// `Σ |a_{n,k}|²`.
    pub parseval_total: f64,
    pub bound_m_squared: f64,
    /// `λ_F(0)`, recorded for the Jacobian and stretch normalizations.
    pub stretch_at_origin: Option<f64>,
    /// `λ₀(M)`, recorded for the Jacobian normalization.
    pub lambda0: Option<f64>,
    pub entries: Vec<BoundEntry>,
    pub violations: Vec<BoundEntry>,
    pub passed: bool,
}

impl BoundReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn is_zero(a: Complex64) -> bool {
    a.norm() <= NORMALIZATION_TOLERANCE
}

fn validate_normalization(f: &CoefficientGrid, case: Normalization) -> Result<()> {
    let origin = Complex64::new(0.0, 0.0);
    match case {
        Normalization::DerivativeNormalized => {
            if f.n_max() < 1 {
                return Err(Error::Normalization(
                    "grid has no linear coefficients".into(),
                ));
            }
            for k in 0..f.alpha() {
                if !is_zero(f.coeff(0, k)) {
                    return Err(Error::Normalization(format!("a(0,{k}) must vanish")));
                }
                if !is_zero(f.coeff(1, k) - 1.0) {
                    return Err(Error::Normalization(format!("a(1,{k}) must equal 1")));
                }
            }
        }
        Normalization::JacobianNormalized | Normalization::StretchNormalized => {
            if !is_zero(f.coeff(0, 0)) {
                return Err(Error::Normalization("F(0) must vanish".into()));
            }
            let value = if case == Normalization::JacobianNormalized {
                f.jacobian(origin)?.abs()
            } else {
                f.stretch(origin)?.small_lambda
            };
            if (value - 1.0).abs() > NORMALIZATION_TOLERANCE {
                let name = if case == Normalization::JacobianNormalized {
                    "|J_F(0)|"
                } else {
                    "λ_F(0)"
                };
                return Err(Error::Normalization(format!(
                    "{name} = {value}, expected 1"
                )));
            }
        }
    }
    Ok(())
}

/// Evaluates every coefficient estimate applicable to `case`.
///
/// The argument condition is recorded as the first entry; the remaining
/// entries are only guaranteed when it holds.
pub fn check_theorem23(f: &CoefficientGrid, m: f64, case: Normalization) -> Result<BoundReport> {
    validate_normalization(f, case)?;
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::InvalidArgument(format!("M = {m} must be positive")));
    }
    let m_sq = m * m;
    let total: f64 = f.entries().map(|(_, _, a)| a.norm_sqr()).sum();
    let mut entries = Vec::new();

    let arg_ok = f.satisfies_arg_condition();
    entries.push(BoundEntry::new(
        "arg_condition",
        None,
        Relation::AtLeast,
        if arg_ok { 1.0 } else { 0.0 },
        1.0,
    ));
    entries.push(BoundEntry::new(
        "diagonal",
        None,
        Relation::AtMost,
        total,
        mode_sum(f, 1.0),
    ));
    entries.push(BoundEntry::new(
        "energy",
        None,
        Relation::AtMost,
        total,
        m_sq,
    ));

    let mut stretch_at_origin = None;
    let mut lambda0_value = None;
    match case {
        Normalization::DerivativeNormalized => {
            let alpha = f.alpha() as f64;
            entries.push(BoundEntry::new(
                "m_floor",
                None,
                Relation::AtLeast,
                m,
                alpha.sqrt(),
            ));
            let bound = (m_sq - alpha).max(0.0).sqrt();
            for (n, k, a) in f.entries().filter(|&(n, _, _)| n >= 2) {
                entries.push(BoundEntry::new(
                    "coefficient",
                    Some((n, k)),
                    Relation::AtMost,
                    a.norm(),
                    bound,
                ));
            }
        }
        Normalization::JacobianNormalized | Normalization::StretchNormalized => {
            let a10 = f.coeff(1, 0).norm();
            let a01 = f.coeff(0, 1).norm();
            entries.push(BoundEntry::new(
                "linear_energy",
                None,
                Relation::AtLeast,
                a10 * a10 + a01 * a01,
                1.0,
            ));
            entries.push(BoundEntry::new("m_floor", None, Relation::AtLeast, m, 1.0));
            let bound = (m_sq - 1.0).max(0.0).sqrt();
            for (n, k, a) in f.entries() {
                if (n, k) == (1, 0) || (n, k) == (0, 1) {
                    continue;
                }
                entries.push(BoundEntry::new(
                    "coefficient",
                    Some((n, k)),
                    Relation::AtMost,
                    a.norm(),
                    bound,
                ));
            }
            let small = f.stretch(Complex64::new(0.0, 0.0))?.small_lambda;
            stretch_at_origin = Some(small);
            if case == Normalization::JacobianNormalized {
                // the weaker of the two linear coefficients
                let (minor, index) = if a10 <= a01 {
                    (a10, (1, 0))
                } else {
                    (a01, (0, 1))
                };
                entries.push(BoundEntry::new(
                    "conjugate_floor",
                    Some(index),
                    Relation::AtMost,
                    minor,
                    ((m_sq - 1.0).max(0.0) / 2.0).sqrt(),
                ));
                let floor = lambda0(m).unwrap_or(0.0);
                lambda0_value = Some(floor);
                entries.push(BoundEntry::new(
                    "stretch_floor",
                    None,
                    Relation::AtLeast,
                    small,
                    floor,
                ));
            }
        }
    }

    let violations: Vec<BoundEntry> = entries.iter().filter(|e| !e.holds()).cloned().collect();
    Ok(BoundReport {
        case,
        parseval_total: total,
        bound_m_squared: m_sq,
        stretch_at_origin,
        lambda0: lambda0_value,
        passed: violations.is_empty(),
        entries,
        violations,
    })
}

/// Rigidity outcome when `|F| ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rigidity {
    /// `F(z) = γ z` with `|γ| = 1`.
    RotationAnalytic,
    /// `F(z) = γ z̄` with `|γ| = 1`.
    RotationConjugate,
    Neither,
}

/// Classifies a grid as a unimodular multiple of `z`, of `z̄`, or neither.
pub fn classify_corollary24(f: &CoefficientGrid) -> Rigidity {
    const TOL: f64 = 1e-12;
    let nonzero: Vec<(usize, usize, Complex64)> =
        f.entries().filter(|(_, _, a)| a.norm() > TOL).collect();
    match nonzero.as_slice() {
        [(1, 0, a)] if (a.norm() - 1.0).abs() <= TOL => Rigidity::RotationAnalytic,
        [(0, 1, a)] if (a.norm() - 1.0).abs() <= TOL => Rigidity::RotationConjugate,
        _ => Rigidity::Neither,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfn::random_admissible;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lambda0_values() {
        assert_eq!(lambda0(1.0).unwrap(), 1.0);
        // √2 / (√3 + √5)
        assert!((lambda0(2.0).unwrap() - 0.356394).abs() < 1e-6);
        assert!((lambda0(10.0).unwrap() - 0.0707).abs() < 1e-3);
        assert!(matches!(lambda0(0.99), Err(Error::BelowFloor { .. })));
    }

    #[test]
    fn lambda0_is_decreasing_and_bounded() {
        let mut prev = lambda0(1.0).unwrap();
        for i in 1..200 {
            let v = lambda0(1.0 + 0.05 * i as f64).unwrap();
            assert!(v > 0.0 && v <= 1.0 && v < prev);
            prev = v;
        }
    }

    #[test]
    fn circle_mean_square_examples() {
        let z = CoefficientGrid::build(1, 1, [(1, 0, c(1.0, 0.0))]).unwrap();
        assert!((circle_mean_square(&z, 0.5, 64).unwrap() - 0.25).abs() < 1e-15);
        let z_plus_conj =
            CoefficientGrid::build(2, 1, [(1, 0, c(1.0, 0.0)), (0, 1, c(1.0, 0.0))]).unwrap();
        assert!((circle_mean_square(&z_plus_conj, 0.5, 64).unwrap() - 0.5).abs() < 1e-15);
        let constant = CoefficientGrid::build(2, 3, [(0, 0, c(0.3, -0.4))]).unwrap();
        assert!((circle_mean_square(&constant, 0.9, 16).unwrap() - 0.25).abs() < 1e-15);

        assert!(circle_mean_square(&z, 1.0, 64).is_err());
        assert!(circle_mean_square(&z, 0.5, 48).is_err());
        assert!(circle_mean_square(&z, 0.5, 8).is_err());
    }

    #[test]
    fn parseval_single_modes() {
        let z = CoefficientGrid::build(1, 1, [(1, 0, c(1.0, 0.0))]).unwrap();
        assert!((parseval_sum(&z, 0.5).unwrap() - 0.25).abs() < 1e-15);
        let conj = CoefficientGrid::build(2, 0, [(0, 1, c(1.0, 0.0))]).unwrap();
        assert!((parseval_sum(&conj, 0.5).unwrap() - 0.25).abs() < 1e-15);
        assert!(parseval_sum(&z, 0.0).is_err());
    }

    #[test]
    fn parseval_matches_quadrature_on_random_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let entries: Vec<_> = (0..3)
            .flat_map(|k| (0..=5).map(move |n| (n, k)))
            .map(|(n, k)| {
                (
                    n,
                    k,
                    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                )
            })
            .collect();
        let g = CoefficientGrid::build(3, 5, entries).unwrap();
        let modes = parseval_sum(&g, 0.7).unwrap();
        let quad = circle_mean_square(&g, 0.7, 4096).unwrap();
        assert!((modes - quad).abs() <= 1e-10, "{modes} vs {quad}");
    }

    #[test]
    fn identity_passes_case_one() {
        let z = CoefficientGrid::build(1, 1, [(1, 0, c(1.0, 0.0))]).unwrap();
        let report = check_theorem23(&z, 1.0, Normalization::DerivativeNormalized).unwrap();
        assert_eq!(report.parseval_total, 1.0);
        assert!(report.passed, "{:?}", report.violations);
    }

    #[test]
    fn injected_coefficient_violation_is_flagged() {
        let m = 2.0;
        let alpha = 2;
        let base = random_admissible(alpha, m, 4, 5, Normalization::DerivativeNormalized).unwrap();
        let bound = (m * m - alpha as f64).sqrt();
        let entries = base.entries().map(|(n, k, a)| {
            if (n, k) == (2, 0) {
                (n, k, c(bound + 0.1, 0.0))
            } else {
                (n, k, a)
            }
        });
        let bad = CoefficientGrid::build(alpha, 4, entries).unwrap();
        let report = check_theorem23(&bad, m, Normalization::DerivativeNormalized).unwrap();
        assert!(!report.passed);
        assert!(report
            .violations
            .iter()
            .any(|v| v.inequality == "coefficient" && v.index == Some((2, 0))));
    }

    #[test]
    fn jacobian_normalized_grids_respect_lambda0() {
        for seed in 0..100 {
            let g = random_admissible(3, 2.0, 5, seed, Normalization::JacobianNormalized).unwrap();
            let report = check_theorem23(&g, 2.0, Normalization::JacobianNormalized).unwrap();
            assert!(report.passed, "seed {seed}: {:?}", report.violations);
            assert!(report.stretch_at_origin.unwrap() >= 0.356394 - 1e-9);
            assert_eq!(report.lambda0, Some(lambda0(2.0).unwrap()));
        }
    }

    #[test]
    fn admissible_grids_pass_their_case() {
        for seed in 0..50 {
            for (kind, alpha, m) in [
                (Normalization::DerivativeNormalized, 3, 2.0),
                (Normalization::StretchNormalized, 4, 1.7),
            ] {
                let g = random_admissible(alpha, m, 6, seed, kind).unwrap();
                let report = check_theorem23(&g, m, kind).unwrap();
                assert!(
                    report.passed,
                    "{kind:?} seed {seed}: {:?}",
                    report.violations
                );
            }
        }
    }

    #[test]
    fn normalization_mismatch_is_an_error() {
        let conj = CoefficientGrid::build(2, 1, [(0, 1, c(1.0, 0.0))]).unwrap();
        assert!(matches!(
            check_theorem23(&conj, 2.0, Normalization::DerivativeNormalized),
            Err(Error::Normalization(_))
        ));
        let scaled = CoefficientGrid::build(1, 1, [(1, 0, c(2.0, 0.0))]).unwrap();
        assert!(check_theorem23(&scaled, 2.0, Normalization::JacobianNormalized).is_err());
        assert!(check_theorem23(&scaled, 2.0, Normalization::StretchNormalized).is_err());
        assert!(check_theorem23(&conj, 2.0, Normalization::StretchNormalized).is_ok());
    }

    #[test]
    fn report_serializes_entries() {
        let z = CoefficientGrid::build(1, 2, [(1, 0, c(1.0, 0.0))]).unwrap();
        let report = check_theorem23(&z, 1.5, Normalization::DerivativeNormalized).unwrap();
        let value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        let first = &value["entries"][0];
        for field in ["inequality", "index", "lhs", "rhs", "slack"] {
            assert!(first.get(field).is_some(), "missing {field}");
        }
    }

    #[test]
    fn rigidity_classes() {
        let iz = CoefficientGrid::build(1, 1, [(1, 0, c(0.0, 1.0))]).unwrap();
        assert_eq!(classify_corollary24(&iz), Rigidity::RotationAnalytic);
        let conj = CoefficientGrid::build(2, 0, [(0, 1, c(1.0, 0.0))]).unwrap();
        assert_eq!(classify_corollary24(&conj), Rigidity::RotationConjugate);
        let other =
            CoefficientGrid::build(1, 2, [(1, 0, c(1.0, 0.0)), (2, 0, c(0.5, 0.0))]).unwrap();
        assert_eq!(classify_corollary24(&other), Rigidity::Neither);
        let long = CoefficientGrid::build(1, 1, [(1, 0, c(0.5, 0.0))]).unwrap();
        assert_eq!(classify_corollary24(&long), Rigidity::Neither);
    }

    #[test]
    fn mean_square_grows_with_radius_for_vanishing_constants() {
        for seed in 0..20 {
            let g =
                random_admissible(3, 2.5, 6, seed, Normalization::DerivativeNormalized).unwrap();
            let mut prev = 0.0;
            for i in 1..100 {
                let v = parseval_sum(&g, i as f64 / 100.0).unwrap();
                assert!(v >= prev);
                prev = v;
            }
        }
    }
}
