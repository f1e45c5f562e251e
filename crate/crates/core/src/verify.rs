//! Sampling checks that tie the solved radii back to concrete functions.
//!
//! Every check is deterministic for a given seed. A report's `margin` is the
//! worst slack found; `passed` compares it against the kind's tolerance.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeff_bounds::{
    check_theorem23, circle_mean_square, diagonal_sum, lambda0, parseval_sum,
    DEFAULT_CIRCLE_SAMPLES,
};
use crate::logmap::{
    g_sigma, g_sigma_prime, inclusion_margin, schlicht_disk, weighted_decreasing_check,
};
use crate::polyfn::{random_admissible, CoefficientGrid, Normalization};
use crate::radii::{
    ah_equation, ah_search_limit, geometric_identities, least_positive_root, phi, phi_raw, psi,
    psi_raw, solve_theorem31, BRACKET_TOL, SCAN_HI, SCAN_LO, SCAN_STEP,
};
use crate::{Error, Result};

/// Slack allowed on sampled inequalities.
pub const MARGIN_TOLERANCE: f64 = 1e-12;
/// Image distance below which two lattice points count as colliding.
pub const COLLISION_DISTANCE: f64 = 1e-12;
/// Lattice points closer than this are not compared.
pub const SEPARATION_DISTANCE: f64 = 1e-6;
pub const MAX_SCAN_GRID: usize = 64;
pub const MIN_ORACLE_GRID: usize = 10_000;
const ORACLE_BISECTIONS: u32 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyKind {
    Distortion,
    Covering,
    Univalence,
    RootOracle,
    Identities,
    Lemma22,
    Parseval,
    Derivatives,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub kind: VerifyKind,
    pub margin: f64,
    pub samples: u64,
    pub seed: u64,
    pub passed: bool,
}

impl VerifyReport {
    fn new(kind: VerifyKind, margin: f64, samples: u64, seed: u64) -> Self {
        let passed = match kind {
            VerifyKind::Univalence => margin > COLLISION_DISTANCE,
            _ => margin >= -MARGIN_TOLERANCE,
        };
        Self {
            kind,
            margin,
            samples,
            seed,
            passed,
        }
    }

    /// Worst of several reports of the same kind.
    fn combine(kind: VerifyKind, seed: u64, reports: &[VerifyReport]) -> Self {
        let margin = reports
            .iter()
            .map(|r| r.margin)
            .fold(f64::INFINITY, f64::min);
        let samples = reports.iter().map(|r| r.samples).sum();
        let mut out = Self::new(kind, margin, samples, seed);
        out.passed = reports.iter().all(|r| r.passed);
        out
    }
}

/// Uniform point in the open disk of radius `r`.
fn point_in_disk(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    let rho = r * rng.random::<f64>().sqrt();
    Complex64::from_polar(rho, rng.random_range(0.0..TAU))
}

/// Minimum over random pairs in `𝔻_r` of `|F(z₁) − F(z₂)|/|z₁ − z₂| − φ(r)`.
///
/// `F` must be derivative-normalized, satisfy the coefficient estimates for
/// bound `M`, and `r` must lie strictly inside the solved radius `r₁`.
pub fn distortion_margin(
    f: &CoefficientGrid,
    r: f64,
    m: f64,
    alpha: usize,
    n_pairs: usize,
    seed: u64,
) -> Result<VerifyReport> {
    if f.alpha() != alpha {
        return Err(Error::InvalidArgument(format!(
            "grid has order {} but alpha = {alpha}",
            f.alpha()
        )));
    }
    let report = check_theorem23(f, m, Normalization::DerivativeNormalized)?;
    if !report.passed {
        let tags: Vec<&str> = report
            .violations
            .iter()
            .map(|v| v.inequality.as_str())
            .collect();
        return Err(Error::InvalidArgument(format!(
            "grid violates the coefficient estimates: {}",
            tags.join(", ")
        )));
    }
    let r1 = solve_theorem31(m, alpha)?.r;
    if !(r > 0.0 && r < r1) {
        return Err(Error::InvalidArgument(format!(
            "r = {r} must lie in (0, {r1})"
        )));
    }
    let bound = phi(r, m, alpha)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    let mut done = 0;
    while done < n_pairs {
        let z1 = point_in_disk(&mut rng, r);
        let z2 = point_in_disk(&mut rng, r);
        let dz = (z1 - z2).norm();
        if dz < SEPARATION_DISTANCE {
            continue;
        }
        let q = (f.evaluate(z1)? - f.evaluate(z2)?).norm() / dz;
        worst = worst.min(q - bound);
        done += 1;
    }
    Ok(VerifyReport::new(
        VerifyKind::Distortion,
        worst,
        n_pairs as u64,
        seed,
    ))
}

/// Minimum of `|F(w) − F(0)| − σ` over `n_theta` equally spaced `|w| = r`.
pub fn covering_margin(
    f: &CoefficientGrid,
    r: f64,
    sigma: f64,
    n_theta: usize,
) -> Result<VerifyReport> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "r = {r} must lie in (0, 1)"
        )));
    }
    if sigma.is_nan() || sigma <= 0.0 || n_theta == 0 {
        return Err(Error::InvalidArgument(format!(
            "need sigma > 0 and n_theta > 0, got {sigma}, {n_theta}"
        )));
    }
    let centre = f.evaluate(Complex64::new(0.0, 0.0))?;
    let mut worst = f64::INFINITY;
    for j in 0..n_theta {
        let w = Complex64::from_polar(r, TAU * j as f64 / n_theta as f64);
        worst = worst.min((f.evaluate(w)? - centre).norm() - sigma);
    }
    Ok(VerifyReport::new(
        VerifyKind::Covering,
        worst,
        n_theta as u64,
        0,
    ))
}

/// Brute-force injectivity check on the cell-centred `grid_n × grid_n`
/// lattice restricted to `𝔻_r`. The margin is the smallest image distance
/// between separated lattice points.
pub fn univalence_scan(f: &CoefficientGrid, r: f64, grid_n: usize) -> Result<VerifyReport> {
    if !(2..=MAX_SCAN_GRID).contains(&grid_n) {
        return Err(Error::InvalidArgument(format!(
            "grid_n = {grid_n} must lie in [2, {MAX_SCAN_GRID}]"
        )));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "r = {r} must lie in (0, 1)"
        )));
    }
    let cell = 2.0 * r / grid_n as f64;
    let mut points = Vec::with_capacity(grid_n * grid_n);
    for i in 0..grid_n {
        for j in 0..grid_n {
            let z = Complex64::new(-r + (i as f64 + 0.5) * cell, -r + (j as f64 + 0.5) * cell);
            if z.norm() < r {
                points.push((z, f.evaluate(z)?));
            }
        }
    }
    let mut worst = f64::INFINITY;
    let mut pairs = 0u64;
    for (i, &(z1, w1)) in points.iter().enumerate() {
        for &(z2, w2) in &points[i + 1..] {
            if (z1 - z2).norm() > SEPARATION_DISTANCE {
                worst = worst.min((w1 - w2).norm());
                pairs += 1;
            }
        }
    }
    Ok(VerifyReport::new(VerifyKind::Univalence, worst, pairs, 0))
}

/// First sign change of `f` on a uniform grid of `grid_n` cells over
/// `[lo, hi]`, refined by 200 halvings. Independent of
/// [`least_positive_root`] so the two can cross-check each other.
pub fn root_oracle<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, grid_n: usize) -> Result<f64> {
    if grid_n < MIN_ORACLE_GRID {
        return Err(Error::InvalidArgument(format!(
            "grid_n = {grid_n} must be at least {MIN_ORACLE_GRID}"
        )));
    }
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::InvalidArgument(format!("bad interval [{lo}, {hi}]")));
    }
    let x_at = |i: usize| lo + (hi - lo) * (i as f64 / grid_n as f64);
    let mut left = lo;
    let mut f_left = f(lo);
    let mut right = None;
    for i in 1..=grid_n {
        let x = x_at(i);
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() != f_left.signum() {
            right = Some(x);
            break;
        }
        left = x;
        f_left = fx;
    }
    let mut right = right.ok_or(Error::NoRoot { lo, hi })?;
    for _ in 0..ORACLE_BISECTIONS {
        let mid = 0.5 * (left + right);
        if mid <= left || mid >= right {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == f_left.signum() {
            left = mid;
            f_left = fm;
        } else {
            right = mid;
        }
    }
    Ok(0.5 * (left + right))
}

/// Suites exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Identities,
    Lemma22,
    Coeff,
    Distortion,
    Covering,
    Oracle,
    All,
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<Vec<VerifyReport>> {
    Ok(match suite {
        Suite::Identities => vec![identity_suite()?],
        Suite::Lemma22 => vec![lemma22_suite(seed)?],
        Suite::Coeff => vec![parseval_suite(seed)?, derivative_suite(seed)?],
        Suite::Distortion => vec![distortion_suite(seed)?],
        Suite::Covering => vec![covering_suite(seed)?],
        Suite::Oracle => vec![oracle_suite()?],
        Suite::All => {
            let mut out = Vec::new();
            for s in [
                Suite::Identities,
                Suite::Lemma22,
                Suite::Coeff,
                Suite::Distortion,
                Suite::Covering,
                Suite::Oracle,
            ] {
                out.extend(run_suite(s, seed)?);
            }
            out
        }
    })
}

/// Radii at which the simplified and raw defining functions are compared.
pub fn identity_radii() -> Vec<f64> {
    let mut rs = vec![0.001, 0.01];
    rs.extend((1..=19).map(|i| i as f64 * 0.05));
    rs
}

/// Bounds `M` used with order `alpha` in the identity grid.
pub fn identity_bounds(alpha: usize) -> [f64; 5] {
    [(alpha as f64).sqrt() + 0.01, 1.5, 2.0, 3.0, 5.0]
}

pub const PHI_IDENTITY_TOLERANCE: f64 = 1e-11;
pub const GEOMETRIC_TOLERANCE: f64 = 1e-15;

/// Largest `|φ − φ_raw|`, `|ψ − ψ_raw|` and geometric-sum disagreement over the grid.
pub fn identity_errors() -> Result<(f64, f64, f64, u64)> {
    let mut phi_err: f64 = 0.0;
    let mut psi_err: f64 = 0.0;
    let mut geo_err: f64 = 0.0;
    let mut samples = 0;
    for r in identity_radii() {
        for alpha in 1..=6 {
            for m in identity_bounds(alpha) {
                if m * m >= alpha as f64 {
                    phi_err = phi_err.max((phi(r, m, alpha)? - phi_raw(r, m, alpha)?).abs());
                    samples += 1;
                }
                if alpha >= 2 {
                    let lam = lambda0(m)?;
                    for l in [lam, 1.0] {
                        psi_err =
                            psi_err.max((psi(r, m, alpha, l)? - psi_raw(r, m, alpha, l)?).abs());
                        samples += 1;
                    }
                }
            }
        }
        for m in 0..=8 {
            let g = geometric_identities(r, m)?;
            geo_err = geo_err
                .max((g.sum_rk - g.raw_sum_rk).abs())
                .max((g.sum_k1_rk - g.raw_sum_k1_rk).abs())
                .max((g.sum_k2_rk1 - g.raw_sum_k2_rk1).abs());
            samples += 1;
        }
    }
    Ok((phi_err, psi_err, geo_err, samples))
}

fn identity_suite() -> Result<VerifyReport> {
    let (phi_err, psi_err, geo_err, samples) = identity_errors()?;
    let margin = (PHI_IDENTITY_TOLERANCE - phi_err)
        .min(PHI_IDENTITY_TOLERANCE - psi_err)
        .min(GEOMETRIC_TOLERANCE - geo_err);
    let mut report = VerifyReport::new(VerifyKind::Identities, margin, samples, 0);
    report.passed = margin >= 0.0;
    Ok(report)
}

/// `σ ∈ {0.05, 0.10, …, 1.00}`.
pub fn lemma22_sigmas() -> Vec<f64> {
    (1..=20).map(|i| i as f64 * 0.05).collect()
}

fn lemma22_suite(seed: u64) -> Result<VerifyReport> {
    let mut margin = f64::INFINITY;
    let mut samples = 0;
    let mut ok = true;
    for s in lemma22_sigmas() {
        margin = margin.min(inclusion_margin(s, 10_001)?);
        for i in 0..2001 {
            let x = -s + 2.0 * s * i as f64 / 2000.0;
            margin = margin.min(g_sigma(s, x)?);
        }
        let check = weighted_decreasing_check(
            |x| g_sigma(s, x).unwrap_or(f64::NAN),
            |x| g_sigma_prime(s, x).unwrap_or(f64::NAN),
            s,
            2001,
        )?;
        ok &= check.passed();
        samples += 10_001 + 2 * 2001;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in [0.25, 0.5, 1.0] {
        let disk = schlicht_disk(s)?;
        let rad = disk.radius * (1.0 - 1e-9);
        for _ in 0..10_000 {
            let w = Complex64::new(disk.center, 0.0) + point_in_disk(&mut rng, rad);
            margin = margin.min(s - w.ln().norm());
            samples += 1;
        }
    }
    let mut report = VerifyReport::new(VerifyKind::Lemma22, margin, samples, seed);
    report.passed &= ok;
    Ok(report)
}

/// Grid with independent complex coefficients, decaying like `1/(1+n+k)`.
/// Phases are unrestricted, so the argument condition usually fails.
pub fn random_grid(alpha: usize, n_max: usize, seed: u64) -> Result<CoefficientGrid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::new();
    for k in 0..alpha {
        for n in 0..=n_max {
            let scale = 1.0 / (1.0 + (n + k) as f64);
            let c =
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * scale;
            entries.push((n, k, c));
        }
    }
    CoefficientGrid::build(alpha, n_max, entries)
}

/// The 200 grids of the Parseval suite: even seeds are admissible, odd ones unconstrained.
pub fn parseval_grid(i: u64, seed: u64) -> Result<CoefficientGrid> {
    let alpha = 1 + (i % 4) as usize;
    let n_max = 3 + (i % 6) as usize;
    let s = seed.wrapping_add(i);
    if i.is_multiple_of(2) {
        let kinds = [
            Normalization::DerivativeNormalized,
            Normalization::JacobianNormalized,
            Normalization::StretchNormalized,
        ];
        let m = (alpha as f64).sqrt() + 0.5 + (i % 5) as f64 * 0.5;
        random_admissible(alpha, m, n_max, s, kinds[(i / 2 % 3) as usize])
    } else {
        random_grid(alpha, n_max, s)
    }
}

pub const PARSEVAL_RADII: [f64; 4] = [0.25, 0.5, 0.75, 0.95];
pub const PARSEVAL_TOLERANCE: f64 = 1e-10;

fn parseval_suite(seed: u64) -> Result<VerifyReport> {
    let mut margin = f64::INFINITY;
    let mut samples = 0;
    for i in 0..200 {
        let f = parseval_grid(i, seed)?;
        let arg_ok = f.satisfies_arg_condition();
        for r in PARSEVAL_RADII {
            let sum = parseval_sum(&f, r)?;
            let mean = circle_mean_square(&f, r, DEFAULT_CIRCLE_SAMPLES)?;
            margin = margin.min(PARSEVAL_TOLERANCE - (sum - mean).abs());
            if arg_ok {
                margin = margin.min(sum - diagonal_sum(&f, r) + MARGIN_TOLERANCE);
            }
            samples += 1;
        }
    }
    let mut report = VerifyReport::new(VerifyKind::Parseval, margin, samples, seed);
    report.passed = margin >= 0.0;
    Ok(report)
}

pub const FD_STEP: f64 = 1e-5;
pub const FD_TOLERANCE: f64 = 1e-6;

/// Largest deviation of `F_z`, `F_z̄` from central differences of `F` at `z`.
pub fn derivative_fd_error(f: &CoefficientGrid, z: Complex64, h: f64) -> Result<f64> {
    let fx = (f.evaluate(z + h)? - f.evaluate(z - h)?) / (2.0 * h);
    let ih = Complex64::new(0.0, h);
    let fy = (f.evaluate(z + ih)? - f.evaluate(z - ih)?) / (2.0 * h);
    let i = Complex64::new(0.0, 1.0);
    let dz = (fx - i * fy) / 2.0;
    let dzb = (fx + i * fy) / 2.0;
    Ok((f.d_z(z)? - dz).norm().max((f.d_zbar(z)? - dzb).norm()))
}

fn derivative_suite(seed: u64) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut worst: f64 = 0.0;
    for i in 0..50u64 {
        let f = random_grid(
            1 + (i % 5) as usize,
            2 + (i % 7) as usize,
            seed.wrapping_add(1000 + i),
        )?;
        for _ in 0..20 {
            let z = point_in_disk(&mut rng, 0.9);
            worst = worst.max(derivative_fd_error(&f, z, FD_STEP)?);
        }
    }
    let margin = FD_TOLERANCE - worst;
    let mut report = VerifyReport::new(VerifyKind::Derivatives, margin, 1000, seed);
    report.passed = margin >= 0.0;
    Ok(report)
}

/// `(M, α)` families of the distortion and covering suites.
pub const PROPERTY_FAMILIES: [(f64, usize); 4] = [(1.5, 2), (2.0, 2), (2.0, 3), (3.0, 3)];
pub const GRIDS_PER_FAMILY: u64 = 100;
pub const PROPERTY_N_MAX: usize = 6;

/// The `i`-th admissible derivative-normalized grid of a family.
pub fn family_grid(m: f64, alpha: usize, i: u64, seed: u64) -> Result<CoefficientGrid> {
    random_admissible(
        alpha,
        m,
        PROPERTY_N_MAX,
        seed.wrapping_mul(1_000_003).wrapping_add(i),
        Normalization::DerivativeNormalized,
    )
}

fn distortion_suite(seed: u64) -> Result<VerifyReport> {
    let mut reports = Vec::new();
    for (m, alpha) in PROPERTY_FAMILIES {
        let r = 0.9 * solve_theorem31(m, alpha)?.r;
        for i in 0..GRIDS_PER_FAMILY {
            let f = family_grid(m, alpha, i, seed)?;
            reports.push(distortion_margin(
                &f,
                r,
                m,
                alpha,
                200,
                seed.wrapping_add(i),
            )?);
        }
    }
    Ok(VerifyReport::combine(
        VerifyKind::Distortion,
        seed,
        &reports,
    ))
}

fn covering_suite(seed: u64) -> Result<VerifyReport> {
    let mut reports = Vec::new();
    for (m, alpha) in PROPERTY_FAMILIES {
        let res = solve_theorem31(m, alpha)?;
        for i in 0..GRIDS_PER_FAMILY {
            let f = family_grid(m, alpha, i, seed)?;
            reports.push(covering_margin(&f, res.r, res.sigma, 256)?);
        }
    }
    Ok(VerifyReport::combine(VerifyKind::Covering, seed, &reports))
}

/// A defining function whose least positive root is a solver output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleTarget {
    Phi { m: f64, alpha: usize },
    Psi { m: f64, alpha: usize },
    Ah { m: f64, alpha: usize },
}

impl OracleTarget {
    pub fn eval(&self, r: f64) -> f64 {
        let value = match *self {
            OracleTarget::Phi { m, alpha } => phi(r, m, alpha),
            OracleTarget::Psi { m, alpha } => lambda0(m).and_then(|lam| psi(r, m, alpha, lam)),
            OracleTarget::Ah { m, alpha } => ah_equation(r, m, alpha),
        };
        value.unwrap_or(f64::NAN)
    }

    pub fn search_limit(&self) -> f64 {
        match *self {
            OracleTarget::Ah { alpha, .. } => ah_search_limit(alpha),
            _ => SCAN_HI,
        }
    }
}

/// The 34 configurations compared against the independent oracle.
pub fn oracle_targets() -> Vec<OracleTarget> {
    let mut out = Vec::new();
    for m in [1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0] {
        out.push(OracleTarget::Phi { m, alpha: 2 });
    }
    for m in [2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5] {
        out.push(OracleTarget::Phi { m, alpha: 3 });
    }
    for alpha in [3, 4, 5] {
        for m in [1.5, 2.0, 3.0, 5.0] {
            out.push(OracleTarget::Psi { m, alpha });
        }
    }
    for alpha in [2, 3, 4] {
        for m in [2.0, 3.0] {
            out.push(OracleTarget::Ah { m, alpha });
        }
    }
    out
}

pub const ORACLE_GRID: usize = 100_000;
pub const ORACLE_TOLERANCE: f64 = 1e-6;

/// `|oracle − solver|` for one target.
pub fn oracle_gap(target: &OracleTarget) -> Result<f64> {
    let hi = target.search_limit();
    let solver = least_positive_root(|r| target.eval(r), SCAN_LO, hi, SCAN_STEP, BRACKET_TOL)?;
    let oracle = root_oracle(|r| target.eval(r), SCAN_LO, hi, ORACLE_GRID)?;
    Ok((solver.root - oracle).abs())
}

fn oracle_suite() -> Result<VerifyReport> {
    let targets = oracle_targets();
    let mut worst: f64 = 0.0;
    for t in &targets {
        worst = worst.max(oracle_gap(t)?);
    }
    let margin = ORACLE_TOLERANCE - worst;
    let mut report = VerifyReport::new(VerifyKind::RootOracle, margin, targets.len() as u64, 0);
    report.passed = margin >= 0.0;
    Ok(report)
}
