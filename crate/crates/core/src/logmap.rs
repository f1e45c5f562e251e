//! Schlicht disks for `f = e^F` with `F` polyanalytic.
//!
//! If `F` is univalent on `𝔻_r` and `F(𝔻_r) ⊃ 𝔻_σ` with `0 < σ ≤ 1`, then
//! `f(𝔻_r)` contains the disk centred at `cosh σ` of radius `sinh σ`. The
//! inclusion reduces to `g_σ(x) = cosh x − cosh σ · cos √(σ² − x²) ≥ 0` on
//! `[−σ, σ]`, which follows from `e^{−x²/2} g_σ` being nonincreasing.

use serde::{Deserialize, Serialize};

use crate::radii::{
    solve_cor34, solve_cor34_unit, solve_cor35, solve_cor35_unit, solve_theorem31, solve_theorem33,
    solve_theorem36, RadiusResult, TheoremId,
};
use crate::{Error, Result};

/// Slack allowed in the sampled inequalities.
pub const CHECK_TOLERANCE: f64 = 1e-12;

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma.is_finite() && sigma > 0.0 && sigma <= 1.0 {
        Ok(())
    } else {
        Err(Error::SigmaOutOfRange(sigma))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchlichtDisk {
    pub center: f64,
    pub radius: f64,
}

impl SchlichtDisk {
    pub fn contains(&self, w: num_complex::Complex64) -> bool {
        (w - self.center).norm() < self.radius
    }
}

/// `(cosh σ, sinh σ)` for `σ ∈ (0, 1]`.
pub fn schlicht_disk(sigma: f64) -> Result<SchlichtDisk> {
    check_sigma(sigma)?;
    Ok(SchlichtDisk {
        center: sigma.cosh(),
        radius: sigma.sinh(),
    })
}

fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

fn check_x(sigma: f64, x: f64) -> Result<()> {
    check_sigma(sigma)?;
    if x.is_finite() && x.abs() <= sigma {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "|x| = {} exceeds sigma = {sigma}",
            x.abs()
        )))
    }
}

/// `cosh x − cosh σ · cos √(σ² − x²)` for `|x| ≤ σ`.
pub fn g_sigma(sigma: f64, x: f64) -> Result<f64> {
    check_x(sigma, x)?;
    let u = (sigma * sigma - x * x).max(0.0).sqrt();
    Ok(x.cosh() - sigma.cosh() * u.cos())
}

/// Derivative of [`g_sigma`] in `x`: `sinh x − cosh σ · x · sin(u)/u`, `u = √(σ² − x²)`.
pub fn g_sigma_prime(sigma: f64, x: f64) -> Result<f64> {
    check_x(sigma, x)?;
    let u = (sigma * sigma - x * x).max(0.0).sqrt();
    Ok(x.sinh() - sigma.cosh() * x * sinc(u))
}

/// Outcome of [`weighted_decreasing_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedCheck {
    /// `f'(x)/x ≤ f(x)` at every interior sample.
    pub hypothesis: bool,
    /// `e^{−x²/2} f(x)` nonincreasing along the closed grid.
    pub decreasing: bool,
}

impl WeightedCheck {
    pub fn passed(&self) -> bool {
        self.hypothesis && self.decreasing
    }
}

/// Samples `f'(x)/x ≤ f(x)` on the interior of `[0, a]` and the monotonicity
/// of `e^{−x²/2} f(x)` on the closed grid of `n_samples` points.
pub fn weighted_decreasing_check<F, D>(
    f: F,
    df: D,
    a: f64,
    n_samples: usize,
) -> Result<WeightedCheck>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    if !(a.is_finite() && a > 0.0) || n_samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "need a > 0 and n_samples >= 2, got a = {a}, n_samples = {n_samples}"
        )));
    }
    let step = a / (n_samples - 1) as f64;
    let xs: Vec<f64> = (0..n_samples)
        .map(|i| {
            if i + 1 == n_samples {
                a
            } else {
                i as f64 * step
            }
        })
        .collect();

    let hypothesis = xs[1..n_samples - 1]
        .iter()
        .all(|&x| df(x) / x <= f(x) + CHECK_TOLERANCE);

    let weighted: Vec<f64> = xs.iter().map(|&x| (-x * x / 2.0).exp() * f(x)).collect();
    let decreasing = weighted.windows(2).all(|w| w[1] <= w[0] + CHECK_TOLERANCE);

    Ok(WeightedCheck {
        hypothesis,
        decreasing,
    })
}

/// Minimum of `cosh(σ cos θ) − cosh σ · cos(σ sin θ)` over `n_theta` equally
/// spaced `θ ∈ [0, π]`, endpoints included. Nonnegative exactly when the
/// image boundary `∂e^{𝔻_σ}` stays outside [`schlicht_disk`]`(σ)`.
pub fn inclusion_margin(sigma: f64, n_theta: usize) -> Result<f64> {
    check_sigma(sigma)?;
    if n_theta < 8 {
        return Err(Error::InvalidArgument(format!(
            "n_theta = {n_theta} must be at least 8"
        )));
    }
    let ch = sigma.cosh();
    let step = std::f64::consts::PI / (n_theta - 1) as f64;
    Ok((0..n_theta)
        .map(|i| {
            let theta = i as f64 * step;
            (sigma * theta.cos()).cosh() - ch * (sigma * theta.sin()).cos()
        })
        .fold(f64::INFINITY, f64::min))
}

/// Statements about `f = e^F`, each built on a radius pair for `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LogTheoremId {
    /// Derivative-normalized, via `r₁`, `σ₁`.
    T41,
    /// Jacobian-normalized, via `r₂`, `σ₂`.
    T42,
    /// Stretch-normalized, via `r₃`, `σ₃`.
    T43,
    /// Order-2 Jacobian closed form.
    C44,
    /// Order-3 Jacobian closed form.
    C45,
    /// Order-2 stretch closed form.
    C46,
    /// Order-3 stretch closed form.
    C47,
}

impl LogTheoremId {
    pub const ALL: [LogTheoremId; 7] = [
        LogTheoremId::T41,
        LogTheoremId::T42,
        LogTheoremId::T43,
        LogTheoremId::C44,
        LogTheoremId::C45,
        LogTheoremId::C46,
        LogTheoremId::C47,
    ];

    /// Order fixed by the statement, if any.
    pub fn fixed_alpha(self) -> Option<usize> {
        match self {
            LogTheoremId::C44 | LogTheoremId::C46 => Some(2),
            LogTheoremId::C45 | LogTheoremId::C47 => Some(3),
            _ => None,
        }
    }
}

/// Radius pair for `F = log f` and the resulting disk in the range of `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogRadiusResult {
    pub theorem: LogTheoremId,
    pub base: RadiusResult,
    pub disk: SchlichtDisk,
}

#[derive(Serialize)]
struct LogRadiusJson {
    theorem: LogTheoremId,
    #[serde(rename = "M")]
    m: f64,
    alpha: usize,
    r: f64,
    sigma: f64,
    w: f64,
    mu: f64,
}

impl Serialize for LogRadiusResult {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        LogRadiusJson {
            theorem: self.theorem,
            m: self.base.m,
            alpha: self.base.alpha,
            r: self.base.r,
            sigma: self.base.sigma,
            w: self.disk.center,
            mu: self.disk.radius,
        }
        .serialize(serializer)
    }
}

/// Solves the radius pair for `log f` and converts it to a disk in the range
/// of `f`. With `M = 1` the pair degenerates to `(1, 1)` and the disk is
/// `(cosh 1, sinh 1)`.
pub fn solve_log_theorem(theorem: LogTheoremId, m: f64, alpha: usize) -> Result<LogRadiusResult> {
    if let Some(fixed) = theorem.fixed_alpha() {
        if alpha != fixed {
            return Err(Error::InvalidArgument(format!(
                "{theorem:?} is stated for alpha = {fixed}, got {alpha}"
            )));
        }
    }
    let base = match theorem {
        LogTheoremId::T41 => solve_theorem31(m, alpha)?,
        LogTheoremId::T42 => solve_theorem33(m, alpha)?,
        LogTheoremId::T43 if m == 1.0 && alpha >= 3 => RadiusResult {
            theorem: TheoremId::T36,
            m,
            alpha,
            r: 1.0,
            sigma: 1.0,
            degenerate: true,
            root: None,
        },
        LogTheoremId::T43 => solve_theorem36(m, alpha)?,
        LogTheoremId::C44 => solve_cor34(m)?,
        LogTheoremId::C45 => solve_cor35(m)?,
        LogTheoremId::C46 => solve_cor34_unit(m)?,
        LogTheoremId::C47 => solve_cor35_unit(m)?,
    };
    let disk = schlicht_disk(base.sigma)?;
    Ok(LogRadiusResult {
        theorem,
        base,
        disk,
    })
}
