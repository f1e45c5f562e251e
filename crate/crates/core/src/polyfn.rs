//! Truncated polyanalytic functions `F(z) = Σ_{k=0}^{α-1} z̄^k A_k(z)` with
//! `A_k(z) = Σ_{n=0}^{n_max} a_{n,k} z^n`.

use std::collections::HashSet;
use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Coefficients `a_{n,k}` of a polyanalytic function of order `alpha`,
/// truncated at degree `n_max` in `z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridFile", into = "GridFile")]
pub struct CoefficientGrid {
    alpha: usize,
    n_max: usize,
    /// Row-major by `k`: entry `(n, k)` lives at `k * (n_max + 1) + n`.
    coeffs: Vec<Complex64>,
}

/// On-disk layout: one row per `k`, each row holding `n_max + 1` `[re, im]` pairs.
#[derive(Serialize, Deserialize)]
struct GridFile {
    alpha: usize,
    n_max: usize,
    coeffs: Vec<Vec<[f64; 2]>>,
}

impl TryFrom<GridFile> for CoefficientGrid {
    type Error = Error;

    fn try_from(file: GridFile) -> Result<Self> {
        if file.coeffs.len() != file.alpha {
            return Err(Error::Format(format!(
                "expected {} rows, found {}",
                file.alpha,
                file.coeffs.len()
            )));
        }
        let mut grid = CoefficientGrid::zeros(file.alpha, file.n_max)?;
        for (k, row) in file.coeffs.iter().enumerate() {
            if row.len() != file.n_max + 1 {
                return Err(Error::Format(format!(
                    "row {k} has {} entries, expected {}",
                    row.len(),
                    file.n_max + 1
                )));
            }
            for (n, &[re, im]) in row.iter().enumerate() {
                let c = Complex64::new(re, im);
                check_finite(c)?;
                grid.coeffs[k * (file.n_max + 1) + n] = c;
            }
        }
        Ok(grid)
    }
}

impl From<CoefficientGrid> for GridFile {
    fn from(grid: CoefficientGrid) -> Self {
        let coeffs = grid
            .coeffs
            .chunks(grid.n_max + 1)
            .map(|row| row.iter().map(|c| [c.re, c.im]).collect())
            .collect();
        GridFile {
            alpha: grid.alpha,
            n_max: grid.n_max,
            coeffs,
        }
    }
}

fn check_finite(c: Complex64) -> Result<()> {
    if c.re.is_finite() && c.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("{c}")))
    }
}

fn check_in_disk(z: Complex64) -> Result<()> {
    check_finite(z)?;
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideDisk { re: z.re, im: z.im })
    }
}

impl CoefficientGrid {
    /// The zero function of the given shape.
    pub fn zeros(alpha: usize, n_max: usize) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::InvalidArgument("alpha must be at least 1".into()));
        }
        Ok(Self {
            alpha,
            n_max,
            coeffs: vec![Complex64::new(0.0, 0.0); alpha * (n_max + 1)],
        })
    }

    /// Builds a grid from sparse `(n, k, a_{n,k})` entries; unlisted entries are zero.
    pub fn build<I>(alpha: usize, n_max: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Complex64)>,
    {
        let mut grid = Self::zeros(alpha, n_max)?;
        let mut seen = HashSet::new();
        for (n, k, c) in entries {
            if n > n_max || k >= alpha {
                return Err(Error::IndexOutOfRange { n, k });
            }
            check_finite(c)?;
            if !seen.insert((n, k)) {
                return Err(Error::DuplicateIndex { n, k });
            }
            grid.coeffs[k * (n_max + 1) + n] = c;
        }
        Ok(grid)
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `a_{n,k}`; zero outside the truncation.
    pub fn coeff(&self, n: usize, k: usize) -> Complex64 {
        if n > self.n_max || k >= self.alpha {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[k * (self.n_max + 1) + n]
    }

    /// All entries as `(n, k, a_{n,k})`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        let width = self.n_max + 1;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i % width, i / width, c))
    }

    fn row(&self, k: usize) -> &[Complex64] {
        let width = self.n_max + 1;
        &self.coeffs[k * width..(k + 1) * width]
    }

    /// Entrywise sum of two grids of equal shape.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.alpha != other.alpha || self.n_max != other.n_max {
            return Err(Error::InvalidArgument(format!(
                "shape mismatch: ({}, {}) vs ({}, {})",
                self.alpha, self.n_max, other.alpha, other.n_max
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            alpha: self.alpha,
            n_max: self.n_max,
            coeffs,
        })
    }

    /// `A_k(z)` by Horner's scheme.
    fn analytic_part(&self, k: usize, z: Complex64) -> Complex64 {
        self.row(k)
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    /// `A_k'(z)` by Horner's scheme on `n a_{n,k}`.
    fn analytic_part_derivative(&self, k: usize, z: Complex64) -> Complex64 {
        self.row(k)
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (n, &a)| {
                acc * z + a * n as f64
            })
    }

    /// `F(z)`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        check_in_disk(z)?;
        let zb = z.conj();
        Ok((0..self.alpha)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, k| {
                acc * zb + self.analytic_part(k, z)
            }))
    }

    /// Wirtinger derivative `F_z = Σ_k z̄^k A_k'(z)`.
    pub fn d_z(&self, z: Complex64) -> Result<Complex64> {
        check_in_disk(z)?;
        let zb = z.conj();
        Ok((0..self.alpha)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, k| {
                acc * zb + self.analytic_part_derivative(k, z)
            }))
    }

    /// Wirtinger derivative `F_z̄ = Σ_{k≥1} k z̄^{k-1} A_k(z)`.
    pub fn d_zbar(&self, z: Complex64) -> Result<Complex64> {
        check_in_disk(z)?;
        let zb = z.conj();
        Ok((1..self.alpha)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, k| {
                acc * zb + self.analytic_part(k, z) * k as f64
            }))
    }

    /// Maximal and minimal stretching at `z`.
    pub fn stretch(&self, z: Complex64) -> Result<StretchPair> {
        let fz = self.d_z(z)?.norm();
        let fzb = self.d_zbar(z)?.norm();
        Ok(StretchPair {
            big_lambda: fz + fzb,
            small_lambda: (fz - fzb).abs(),
        })
    }

    /// `J_F = |F_z|² − |F_z̄|²`.
    pub fn jacobian(&self, z: Complex64) -> Result<f64> {
        Ok(self.d_z(z)?.norm_sqr() - self.d_zbar(z)?.norm_sqr())
    }

    /// `f(z) = e^{F(z)}`, the log-α-analytic function whose logarithm is `F`.
    pub fn exp_evaluate(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.evaluate(z)?.exp())
    }

    /// Whether every pair of distinct non-zero coefficients satisfies
    /// `Re(a · conj(b)) ≥ 0`, i.e. `|arg(a/b)| ≤ π/2`.
    ///
    /// The check runs over all pairs, which covers every cross term of the
    /// Fourier-mode sum.
    pub fn satisfies_arg_condition(&self) -> bool {
        let nonzero: Vec<Complex64> = self
            .coeffs
            .iter()
            .copied()
            .filter(|c| c.re != 0.0 || c.im != 0.0)
            .collect();
        nonzero.iter().enumerate().all(|(i, a)| {
            nonzero[i + 1..].iter().all(|b| {
                // relative slack absorbs rounding at exactly π/2
                (a * b.conj()).re >= -1e-12 * a.norm() * b.norm()
            })
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("finite grid serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

/// Maximal (`Λ_F`) and minimal (`λ_F`) stretching at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StretchPair {
    pub big_lambda: f64,
    pub small_lambda: f64,
}

/// The three normalizations under which coefficient estimates hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `a_{0,k} = 0` and `a_{1,k} = 1` for every `k`.
    DerivativeNormalized,
    /// `F(0) = 0` and `|J_F(0)| = 1`.
    JacobianNormalized,
    /// `F(0) = 0` and `λ_F(0) = 1`.
    StretchNormalized,
}

/// `M² − floor`, snapping values within a few ulps of zero to exactly zero so
/// that `M = √floor` behaves as the boundary case.
pub(crate) fn excess_over_floor(m: f64, floor: f64) -> Result<f64> {
    if !m.is_finite() {
        return Err(Error::NonFinite(format!("M = {m}")));
    }
    let m_sq = m * m;
    let excess = m_sq - floor;
    let slack = 8.0 * f64::EPSILON * m_sq.max(floor);
    if excess < -slack {
        Err(Error::BelowFloor {
            m,
            floor: floor.sqrt(),
        })
    } else if excess <= slack {
        Ok(0.0)
    } else {
        Ok(excess)
    }
}

fn random_phase(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.random_range(-FRAC_PI_4..=FRAC_PI_4))
}

/// Fills every slot not listed in `fixed` with random coefficients whose
/// squared moduli sum to at most `budget`, arguments in `[-π/4, π/4]`.
fn fill_remaining(
    grid: &mut CoefficientGrid,
    fixed: &[(usize, usize)],
    budget: f64,
    rng: &mut ChaCha8Rng,
) {
    let free: Vec<(usize, usize)> = (0..grid.alpha)
        .flat_map(|k| (0..=grid.n_max).map(move |n| (n, k)))
        .filter(|idx| !fixed.contains(idx))
        .collect();
    let weights: Vec<f64> = free
        .iter()
        .map(|_| {
            let u: f64 = rng.random();
            u * u
        })
        .collect();
    let total: f64 = weights.iter().map(|w| w * w).sum();
    let share: f64 = 1.0 - rng.random::<f64>();
    if total == 0.0 || budget <= 0.0 {
        return;
    }
    let scale = (share * budget / total).sqrt();
    let width = grid.n_max + 1;
    for (&(n, k), w) in free.iter().zip(&weights) {
        grid.coeffs[k * width + n] = random_phase(rng) * (w * scale);
    }
}

/// Deterministic random grid satisfying the coefficient hypotheses of the
/// selected normalization with bound `m`.
///
/// Squared moduli of the free coefficients sum to at most what `|F| ≤ m`
/// permits, so each individual coefficient bound holds as well. All
/// arguments lie in `[-π/4, π/4]`, hence the grid satisfies the argument
/// condition.
pub fn random_admissible(
    alpha: usize,
    m: f64,
    n_max: usize,
    seed: u64,
    kind: Normalization,
) -> Result<CoefficientGrid> {
    if alpha == 0 {
        return Err(Error::InvalidArgument("alpha must be at least 1".into()));
    }
    if n_max == 0 {
        return Err(Error::InvalidArgument(
            "n_max must be at least 1 to hold linear coefficients".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut grid = CoefficientGrid::zeros(alpha, n_max)?;
    let width = n_max + 1;
    match kind {
        Normalization::DerivativeNormalized => {
            let budget = excess_over_floor(m, alpha as f64)?;
            let mut fixed = Vec::with_capacity(2 * alpha);
            for k in 0..alpha {
                grid.coeffs[k * width + 1] = Complex64::new(1.0, 0.0);
                fixed.push((0, k));
                fixed.push((1, k));
            }
            fill_remaining(&mut grid, &fixed, budget, &mut rng);
        }
        Normalization::JacobianNormalized | Normalization::StretchNormalized => {
            let spare = excess_over_floor(m, 1.0)?;
            let has_conjugate = alpha >= 2;
            let minor_max = if !has_conjugate {
                0.0
            } else if kind == Normalization::JacobianNormalized {
                (spare / 2.0).sqrt()
            } else {
                ((2.0 * m * m - 1.0).max(1.0).sqrt() - 1.0) / 2.0
            };
            let minor = minor_max * rng.random::<f64>();
            let major = if kind == Normalization::JacobianNormalized {
                (1.0 + minor * minor).sqrt()
            } else {
                1.0 + minor
            };
            let orientation_reversed = has_conjugate && rng.random::<bool>();
            let (a10, a01) = if orientation_reversed {
                (minor, major)
            } else {
                (major, minor)
            };
            grid.coeffs[1] = random_phase(&mut rng) * a10;
            if has_conjugate {
                grid.coeffs[width] = random_phase(&mut rng) * a01;
            }
            let budget = (m * m - major * major - minor * minor).max(0.0);
            let mut fixed = vec![(0, 0), (1, 0)];
            if has_conjugate {
                fixed.push((0, 1));
            }
            fill_remaining(&mut grid, &fixed, budget, &mut rng);
        }
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn identity() -> CoefficientGrid {
        CoefficientGrid::build(1, 1, [(1, 0, c(1.0, 0.0))]).unwrap()
    }

    fn conjugate() -> CoefficientGrid {
        CoefficientGrid::build(2, 0, [(0, 1, c(1.0, 0.0))]).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn build_rejects_bad_entries() {
        assert_eq!(
            CoefficientGrid::build(1, 1, [(2, 0, c(1.0, 0.0))]),
            Err(Error::IndexOutOfRange { n: 2, k: 0 })
        );
        assert_eq!(
            CoefficientGrid::build(2, 1, [(0, 2, c(1.0, 0.0))]),
            Err(Error::IndexOutOfRange { n: 0, k: 2 })
        );
        assert_eq!(
            CoefficientGrid::build(1, 1, [(1, 0, c(1.0, 0.0)), (1, 0, c(2.0, 0.0))]),
            Err(Error::DuplicateIndex { n: 1, k: 0 })
        );
        assert!(matches!(
            CoefficientGrid::build(1, 1, [(1, 0, c(f64::NAN, 0.0))]),
            Err(Error::NonFinite(_))
        ));
        assert!(CoefficientGrid::zeros(0, 3).is_err());
    }

    #[test]
    fn evaluates_small_examples() {
        assert_eq!(identity().evaluate(c(0.5, 0.0)).unwrap(), c(0.5, 0.0));
        assert_eq!(conjugate().evaluate(c(0.0, 0.5)).unwrap(), c(0.0, -0.5));
        let mixed =
            CoefficientGrid::build(2, 2, [(1, 0, c(1.0, 0.0)), (2, 1, c(1.0, 0.0))]).unwrap();
        assert!(close(
            mixed.evaluate(c(0.5, 0.0)).unwrap(),
            c(0.625, 0.0),
            1e-15
        ));
    }

    #[test]
    fn rejects_points_outside_disk() {
        assert!(matches!(
            identity().evaluate(c(1.0, 0.0)),
            Err(Error::OutsideDisk { .. })
        ));
        assert!(conjugate().evaluate(c(0.0, 1.0)).is_err());
        assert!(identity().d_z(c(0.8, 0.8)).is_err());
        assert!(identity().d_zbar(c(f64::INFINITY, 0.0)).is_err());
    }

    #[test]
    fn wirtinger_derivatives_of_monomials() {
        // F = z̄ z²
        let f = CoefficientGrid::build(2, 2, [(2, 1, c(1.0, 0.0))]).unwrap();
        assert!(close(f.d_z(c(0.5, 0.0)).unwrap(), c(0.5, 0.0), 1e-15));
        assert!(close(f.d_zbar(c(0.5, 0.0)).unwrap(), c(0.25, 0.0), 1e-15));

        let z = c(0.3, -0.4);
        assert_eq!(identity().d_z(z).unwrap(), c(1.0, 0.0));
        assert_eq!(identity().d_zbar(z).unwrap(), c(0.0, 0.0));
        assert_eq!(conjugate().d_z(z).unwrap(), c(0.0, 0.0));
        assert_eq!(conjugate().d_zbar(z).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn stretch_and_jacobian() {
        let f = CoefficientGrid::build(2, 1, [(1, 0, c(2.0, 0.0)), (0, 1, c(1.0, 0.0))]).unwrap();
        let zero = c(0.0, 0.0);
        let s = f.stretch(zero).unwrap();
        assert_eq!((s.big_lambda, s.small_lambda), (3.0, 1.0));
        assert_eq!(f.jacobian(zero).unwrap(), 3.0);

        let s = identity().stretch(zero).unwrap();
        assert_eq!((s.big_lambda, s.small_lambda), (1.0, 1.0));
        let s = conjugate().stretch(zero).unwrap();
        assert_eq!((s.big_lambda, s.small_lambda), (1.0, 1.0));
        assert_eq!(identity().jacobian(c(0.2, 0.7)).unwrap(), 1.0);
        assert_eq!(conjugate().jacobian(c(-0.5, 0.1)).unwrap(), -1.0);
    }

    #[test]
    fn arg_condition() {
        let ok = CoefficientGrid::build(1, 1, [(0, 0, c(1.0, 0.0)), (1, 0, c(1.0, 1.0))]).unwrap();
        assert!(ok.satisfies_arg_condition());
        let bad =
            CoefficientGrid::build(1, 1, [(0, 0, c(1.0, 0.0)), (1, 0, c(-1.0, 0.0))]).unwrap();
        assert!(!bad.satisfies_arg_condition());
        assert!(identity().satisfies_arg_condition());
        // exactly orthogonal is allowed
        let edge =
            CoefficientGrid::build(2, 1, [(1, 0, c(1.0, 0.0)), (0, 1, c(0.0, 2.0))]).unwrap();
        assert!(edge.satisfies_arg_condition());
    }

    #[test]
    fn exponentiated_evaluation() {
        let zero = CoefficientGrid::zeros(3, 2).unwrap();
        assert_eq!(zero.exp_evaluate(c(0.4, 0.1)).unwrap(), c(1.0, 0.0));
        let two = identity().exp_evaluate(c(2f64.ln(), 0.0)).unwrap();
        assert!(close(two, c(2.0, 0.0), 1e-15));
        assert_eq!(conjugate().exp_evaluate(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn random_admissible_is_deterministic_and_normalized() {
        let kinds = [
            Normalization::DerivativeNormalized,
            Normalization::JacobianNormalized,
            Normalization::StretchNormalized,
        ];
        for kind in kinds {
            let a = random_admissible(3, 2.0, 5, 42, kind).unwrap();
            let b = random_admissible(3, 2.0, 5, 42, kind).unwrap();
            assert_eq!(a, b);
            assert!(a.satisfies_arg_condition());
            assert_ne!(a, random_admissible(3, 2.0, 5, 43, kind).unwrap());
        }
        let g = random_admissible(3, 2.0, 5, 7, Normalization::DerivativeNormalized).unwrap();
        for k in 0..3 {
            assert_eq!(g.coeff(1, k), c(1.0, 0.0));
            assert_eq!(g.coeff(0, k), c(0.0, 0.0));
        }
        let bound = (4.0f64 - 3.0).sqrt();
        assert!(g
            .entries()
            .filter(|e| e.0 >= 2)
            .all(|e| e.2.norm() <= bound));
    }

    #[test]
    fn random_admissible_floors() {
        assert!(matches!(
            random_admissible(3, 1.5, 4, 0, Normalization::DerivativeNormalized),
            Err(Error::BelowFloor { .. })
        ));
        assert!(random_admissible(2, 0.9, 4, 0, Normalization::JacobianNormalized).is_err());
        assert!(
            random_admissible(2, 2f64.sqrt(), 4, 0, Normalization::DerivativeNormalized).is_ok()
        );
    }

    #[test]
    fn jacobian_and_stretch_normalizations_hold() {
        for seed in 0..50 {
            let g = random_admissible(3, 2.0, 4, seed, Normalization::JacobianNormalized).unwrap();
            let j = g.jacobian(c(0.0, 0.0)).unwrap();
            assert!((j.abs() - 1.0).abs() < 1e-12, "seed {seed}: J = {j}");
            let minor = g.coeff(1, 0).norm().min(g.coeff(0, 1).norm());
            assert!(minor <= (1.5f64).sqrt() + 1e-12);

            let g = random_admissible(3, 2.0, 4, seed, Normalization::StretchNormalized).unwrap();
            let s = g.stretch(c(0.0, 0.0)).unwrap();
            assert!((s.small_lambda - 1.0).abs() < 1e-12);
            assert_eq!(g.coeff(0, 0), c(0.0, 0.0));
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let g = random_admissible(4, 3.0, 6, 11, Normalization::JacobianNormalized).unwrap();
        let text = g.to_json();
        assert_eq!(CoefficientGrid::from_json(&text).unwrap(), g);
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["coeffs"].as_array().unwrap().len(), 4);
        assert_eq!(parsed["coeffs"][0].as_array().unwrap().len(), 7);
    }

    #[test]
    fn json_rejects_bad_shape() {
        let text = r#"{"alpha":2,"n_max":1,"coeffs":[[[0,0],[1,0]]]}"#;
        assert!(matches!(
            CoefficientGrid::from_json(text),
            Err(Error::Format(_))
        ));
        let text = r#"{"alpha":1,"n_max":1,"coeffs":[[[0,0]]]}"#;
        assert!(CoefficientGrid::from_json(text).is_err());
    }

    #[test]
    fn real_coefficients_commute_with_conjugation() {
        let f = CoefficientGrid::build(
            1,
            3,
            [
                (0, 0, c(0.2, 0.0)),
                (1, 0, c(1.0, 0.0)),
                (3, 0, c(-0.4, 0.0)),
            ],
        )
        .unwrap();
        let z = c(0.3, 0.45);
        assert!(close(
            f.evaluate(z.conj()).unwrap(),
            f.evaluate(z).unwrap().conj(),
            1e-15
        ));
    }

    fn grid_strategy(alpha: usize, n_max: usize) -> impl Strategy<Value = CoefficientGrid> {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), alpha * (n_max + 1)).prop_map(
            move |vals| {
                let entries = vals
                    .into_iter()
                    .enumerate()
                    .map(|(i, (re, im))| (i % (n_max + 1), i / (n_max + 1), c(re, im)));
                CoefficientGrid::build(alpha, n_max, entries).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn evaluation_is_linear(
            (f, g) in (1usize..4, 0usize..6).prop_flat_map(|(a, n)| (grid_strategy(a, n), grid_strategy(a, n))),
            rho in 0.0..0.95f64,
            theta in 0.0..std::f64::consts::TAU,
        ) {
            let z = Complex64::from_polar(rho, theta);
            let sum = f.checked_add(&g).unwrap().evaluate(z).unwrap();
            let parts = f.evaluate(z).unwrap() + g.evaluate(z).unwrap();
            prop_assert!((sum - parts).norm() <= 1e-12);
        }

        #[test]
        fn stretch_product_is_abs_jacobian(
            f in (1usize..5, 0usize..8).prop_flat_map(|(a, n)| grid_strategy(a, n)),
            rho in 0.0..0.95f64,
            theta in 0.0..std::f64::consts::TAU,
        ) {
            let z = Complex64::from_polar(rho, theta);
            let s = f.stretch(z).unwrap();
            let j = f.jacobian(z).unwrap();
            prop_assert!(s.small_lambda <= s.big_lambda);
            prop_assert!((s.big_lambda * s.small_lambda - j.abs()).abs() <= 1e-12 * (1.0 + j.abs()));
        }
    }
}
