//! Univalence radii and schlicht-disk radii.
//!
//! Each Landau-type statement comes with a defining function that equals 1
//! (or `λ`) at `r = 0` and decreases to `−∞` as `r → 1`; the univalence
//! radius is its least positive root and the covering radius is a second
//! explicit function evaluated at that root.
//!
//! * `phi` covers functions with `A_k(0) = 0`, `A_k'(0) = 1` for every `k`.
//! * `psi` covers `F(0) = 0` with either `|J_F(0)| = 1` (`λ = λ₀(M)`) or
//!   `λ_F(0) = 1` (`λ = 1`).
//! * For orders 2 and 3, `psi` collapses to `λ − c √(M²−1) r(2−r)/(1−r)²`
//!   with `c = 2, 3`, which has a closed-form root.
//! * The Abdulhadi–Hajj radius for `A_k` each bounded by `M` is kept as a
//!   baseline.

mod roots;
mod tables;

pub use roots::{least_positive_root, RootResult, BRACKET_TOL, SCAN_HI, SCAN_LO, SCAN_STEP};
pub use tables::{make_table, to_csv, TableId, TableRow, CSV_HEADER, DISCREPANCY_THRESHOLD};

use serde::{Deserialize, Serialize};

use crate::coeff_bounds::lambda0;
use crate::dd::Dd;
use crate::polyfn::excess_over_floor;
use crate::{Error, Result};

fn check_radius_closed(r: f64) -> Result<()> {
    if r.is_finite() && (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "r = {r} must lie in [0, 1)"
        )))
    }
}

fn check_radius_open(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "r = {r} must lie in (0, 1)"
        )))
    }
}

fn check_lambda(lam: f64) -> Result<()> {
    if lam > 0.0 && lam <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "lambda = {lam} must lie in (0, 1]"
        )))
    }
}

fn check_alpha(alpha: usize, min: usize) -> Result<()> {
    if alpha >= min {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "alpha = {alpha} must be at least {min}"
        )))
    }
}

/// Sums appearing in the simplification of the defining functions, each in
/// closed form and by direct summation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometricIdentities {
    /// `Σ_{k=0}^{m+1} r^k = (1 − r^{m+2})/(1 − r)`.
    pub sum_rk: f64,
    /// `Σ_{k=1}^{m} (k+1) r^k = (1 − (m+2) r^{m+1} + (m+1) r^{m+2})/(1 − r)² − 1`.
    pub sum_k1_rk: f64,
    /// `Σ_{k=1}^{m} (k+2) r^{k+1}`, the previous sum shifted by one order.
    pub sum_k2_rk1: f64,
    pub raw_sum_rk: f64,
    pub raw_sum_k1_rk: f64,
    pub raw_sum_k2_rk1: f64,
}

/// Weighted power sum `Σ_{k=1}^{m} (k+1) r^k` in closed form.
fn weighted_power_sum(r: Dd, m: u32) -> Dd {
    let om = 1.0 - r;
    let mf = m as f64;
    (1.0 - (mf + 2.0) * r.powi(m + 1) + (mf + 1.0) * r.powi(m + 2)) / (om * om) - 1.0
}

pub fn geometric_identities(r: f64, m: u32) -> Result<GeometricIdentities> {
    check_radius_closed(r)?;
    let rd = Dd::from(r);
    let om = 1.0 - rd;

    let closed_rk = (1.0 - rd.powi(m + 2)) / om;
    let closed_k1 = weighted_power_sum(rd, m);
    // Σ_{k=1}^{m} (k+2) r^{k+1} = Σ_{k=1}^{m+1} (k+1) r^k − 2r
    let closed_k2 = weighted_power_sum(rd, m + 1) - 2.0 * rd;

    let raw_rk = (0..=m + 1).fold(Dd::ZERO, |acc, k| acc + rd.powi(k));
    let raw_k1 = (1..=m).fold(Dd::ZERO, |acc, k| acc + (k as f64 + 1.0) * rd.powi(k));
    let raw_k2 = (1..=m).fold(Dd::ZERO, |acc, k| acc + (k as f64 + 2.0) * rd.powi(k + 1));

    Ok(GeometricIdentities {
        sum_rk: closed_rk.to_f64(),
        sum_k1_rk: closed_k1.to_f64(),
        sum_k2_rk1: closed_k2.to_f64(),
        raw_sum_rk: raw_rk.to_f64(),
        raw_sum_k1_rk: raw_k1.to_f64(),
        raw_sum_k2_rk1: raw_k2.to_f64(),
    })
}

/// `√(M² − α)`, rejecting `M < √α`.
fn excess_root(m: f64, alpha: usize) -> Result<f64> {
    Ok(excess_over_floor(m, alpha as f64)?.sqrt())
}

/// Defining function for the derivative-normalized class, simplified form:
///
/// `2 − [1 − (α+1) r^α + α r^{α+1}]/(1−r)² − √(M²−α) r/(1−r)³ [2 + r^α (α r − (α+2))]`.
pub fn phi(r: f64, m: f64, alpha: usize) -> Result<f64> {
    check_radius_closed(r)?;
    check_alpha(alpha, 1)?;
    let s = excess_root(m, alpha)?;
    let a = alpha as u32;
    let af = alpha as f64;
    let rd = Dd::from(r);
    let om = 1.0 - rd;
    let ra = rd.powi(a);
    let head = (1.0 - (af + 1.0) * ra + af * ra * rd) / (om * om);
    let tail = s * rd * (2.0 + ra * (af * rd - (af + 2.0))) / (om * om * om);
    Ok((2.0 - head - tail).to_f64())
}

/// [`phi`] before simplification, as the term-by-term bound on the
/// difference quotient.
pub fn phi_raw(r: f64, m: f64, alpha: usize) -> Result<f64> {
    check_radius_closed(r)?;
    check_alpha(alpha, 1)?;
    let s = excess_root(m, alpha)?;
    let rd = Dd::from(r);
    let om2 = (1.0 - rd) * (1.0 - rd);
    let mut value = 1.0 - s * (2.0 * rd - rd * rd) / om2;
    for k in 1..alpha as u32 {
        let kf = k as f64;
        let inner = 1.0 + kf + ((kf + 2.0) * rd - (kf + 1.0) * rd * rd) / om2 * s;
        value = value - rd.powi(k) * inner;
    }
    Ok(value.to_f64())
}

/// Covering radius paired with [`phi`]:
/// `r − (r² − r^{α+1})/(1−r) − √(M²−α) (1 − r^α) r²/(1−r)²`.
pub fn sigma1(r: f64, m: f64, alpha: usize) -> Result<f64> {
    check_radius_open(r)?;
    check_alpha(alpha, 1)?;
    let s = excess_root(m, alpha)?;
    let om = 1.0 - r;
    let ra = r.powi(alpha as i32);
    Ok(r - (r * r - ra * r) / om - s * (1.0 - ra) * r * r / (om * om))
}

fn psi_checks(r: f64, m: f64, alpha: usize, lam: f64) -> Result<f64> {
    check_radius_closed(r)?;
    check_alpha(alpha, 2)?;
    check_lambda(lam)?;
    Ok(excess_over_floor(m, 1.0)?.sqrt())
}

/// Defining function for the Jacobian- and stretch-normalized classes:
///
/// `λ + √(M²−1) − √(M²−1)/(1−r)³ [r(2−r)(1−r) + 1 + r + r^{α−1}((α−2) r − α)]`.
///
/// Pass `λ₀(M)` for `|J_F(0)| = 1` and `1` for `λ_F(0) = 1`.
pub fn psi(r: f64, m: f64, alpha: usize, lam: f64) -> Result<f64> {
    let s = psi_checks(r, m, alpha, lam)?;
    let af = alpha as f64;
    let rd = Dd::from(r);
    let om = 1.0 - rd;
    let bracket =
        rd * (2.0 - rd) * om + 1.0 + rd + rd.powi(alpha as u32 - 1) * ((af - 2.0) * rd - af);
    Ok((Dd::from(lam) + s - s * bracket / (om * om * om)).to_f64())
}

/// [`psi`] before simplification.
pub fn psi_raw(r: f64, m: f64, alpha: usize, lam: f64) -> Result<f64> {
    let s = psi_checks(r, m, alpha, lam)?;
    let rd = Dd::from(r);
    let om = 1.0 - rd;
    let om2 = om * om;
    let mut total = (2.0 * rd - rd * rd) / om2 + rd / om;
    for k in 1..alpha as u32 {
        total = total + rd.powi(k) / om2;
    }
    for k in 2..alpha as u32 {
        total = total + (k as f64) * rd.powi(k - 1) / om;
    }
    Ok((lam - s * total).to_f64())
}

/// Covering radius paired with [`psi`]:
/// `λ r − √(M²−1) [2r²(1 − r^{α−2})/(1−r) + r^α + r²(1 − r^α)/(1−r)²]`.
pub fn sigma2(r: f64, m: f64, alpha: usize, lam: f64) -> Result<f64> {
    check_radius_open(r)?;
    check_alpha(alpha, 3)?;
    check_lambda(lam)?;
    let s = excess_over_floor(m, 1.0)?.sqrt();
    let om = 1.0 - r;
    let ra = r.powi(alpha as i32);
    let r2 = r * r;
    let bracket =
        2.0 * r2 * (1.0 - r.powi(alpha as i32 - 2)) / om + ra + r2 * (1.0 - ra) / (om * om);
    Ok(lam * r - s * bracket)
}

/// Abdulhadi–Hajj defining function, each `A_k` bounded by `M`:
/// `1 − M [ρ(2−ρ)/(1−ρ)² + Σ_{k=1}^{α−1} ρ^k (1 + k − kρ)/(1 − kρ)²]`.
pub fn ah_equation(rho: f64, m: f64, alpha: usize) -> Result<f64> {
    check_radius_closed(rho)?;
    check_alpha(alpha, 2)?;
    let om = 1.0 - rho;
    let tail: f64 = (1..alpha)
        .map(|k| {
            let kf = k as f64;
            rho.powi(k as i32) * (1.0 + kf - kf * rho) / (1.0 - kf * rho).powi(2)
        })
        .sum();
    Ok(1.0 - m * (rho * (2.0 - rho) / (om * om) + tail))
}

/// Abdulhadi–Hajj covering radius
/// `ρ − ρ²(1 − ρ^{α−1})/(1−ρ) − M Σ_{k=0}^{α−1} ρ^{k+2}/(1−ρ)`.
pub fn ah_cover(rho: f64, m: f64, alpha: usize) -> Result<f64> {
    check_radius_open(rho)?;
    check_alpha(alpha, 2)?;
    let om = 1.0 - rho;
    let tail: f64 = (0..alpha).map(|k| rho.powi(k as i32 + 2)).sum();
    Ok(rho - rho * rho * (1.0 - rho.powi(alpha as i32 - 1)) / om - m * tail / om)
}

/// Which statement a radius pair comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    /// Derivative normalization, `r₁`, `σ₁`.
    T31,
    /// Jacobian normalization, `r₂`, `σ₂`.
    T33,
    /// Order-2 closed form with `λ₀(M)`.
    C34,
    /// Order-3 closed form with `λ₀(M)`.
    C35,
    /// Stretch normalization, `r₃`, `σ₃`.
    T36,
    /// Order-2 closed form with `λ = 1`.
    #[serde(rename = "C34U")]
    C34Unit,
    /// Order-3 closed form with `λ = 1`.
    #[serde(rename = "C35U")]
    C35Unit,
    /// Abdulhadi–Hajj baseline `ρ₁`, `R₁`.
    AH11,
}

impl TheoremId {
    pub fn label(self) -> &'static str {
        match self {
            TheoremId::T31 => "T31",
            TheoremId::T33 => "T33",
            TheoremId::C34 => "C34",
            TheoremId::C35 => "C35",
            TheoremId::T36 => "T36",
            TheoremId::C34Unit => "C34U",
            TheoremId::C35Unit => "C35U",
            TheoremId::AH11 => "AH11",
        }
    }
}

/// A solved univalence radius `r` and covering radius `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub theorem: TheoremId,
    #[serde(rename = "M")]
    pub m: f64,
    pub alpha: usize,
    pub r: f64,
    pub sigma: f64,
    /// The boundary case where the function class reduces to rotations and
    /// `(r, σ) = (1, 1)`.
    pub degenerate: bool,
    /// Root-search metadata; absent for closed forms and degenerate cases.
    pub root: Option<RootResult>,
}

impl RadiusResult {
    fn degenerate(theorem: TheoremId, m: f64, alpha: usize) -> Self {
        Self {
            theorem,
            m,
            alpha,
            r: 1.0,
            sigma: 1.0,
            degenerate: true,
            root: None,
        }
    }
}

fn default_root<F: Fn(f64) -> f64>(f: F, hi: f64) -> Result<RootResult> {
    least_positive_root(f, SCAN_LO, hi, SCAN_STEP, BRACKET_TOL)
}

/// Radii for the derivative-normalized class (`M ≥ √α`).
pub fn solve_theorem31(m: f64, alpha: usize) -> Result<RadiusResult> {
    check_alpha(alpha, 1)?;
    let excess = excess_over_floor(m, alpha as f64)?;
    if excess == 0.0 && alpha == 1 {
        // φ ≡ 1: F is a rotation of the disk
        return Ok(RadiusResult::degenerate(TheoremId::T31, m, alpha));
    }
    let root = default_root(|r| phi(r, m, alpha).unwrap_or(f64::NAN), SCAN_HI)?;
    Ok(RadiusResult {
        theorem: TheoremId::T31,
        m,
        alpha,
        r: root.root,
        sigma: sigma1(root.root, m, alpha)?,
        degenerate: false,
        root: Some(root),
    })
}

fn solve_psi(theorem: TheoremId, m: f64, alpha: usize, lam: f64) -> Result<RadiusResult> {
    let root = default_root(|r| psi(r, m, alpha, lam).unwrap_or(f64::NAN), SCAN_HI)?;
    Ok(RadiusResult {
        theorem,
        m,
        alpha,
        r: root.root,
        sigma: sigma2(root.root, m, alpha, lam)?,
        degenerate: false,
        root: Some(root),
    })
}

/// Radii for `F(0) = 0`, `|J_F(0)| = 1` (`α ≥ 3`, `M ≥ 1`).
pub fn solve_theorem33(m: f64, alpha: usize) -> Result<RadiusResult> {
    check_alpha(alpha, 3)?;
    if excess_over_floor(m, 1.0)? == 0.0 {
        return Ok(RadiusResult::degenerate(TheoremId::T33, m, alpha));
    }
    solve_psi(TheoremId::T33, m, alpha, lambda0(m)?)
}

/// Radii for `F(0) = 0`, `λ_F(0) = 1` (`α ≥ 3`, `M > 1`).
pub fn solve_theorem36(m: f64, alpha: usize) -> Result<RadiusResult> {
    check_alpha(alpha, 3)?;
    if excess_over_floor(m, 1.0)? == 0.0 {
        return Err(Error::BelowFloor { m, floor: 1.0 });
    }
    solve_psi(TheoremId::T36, m, alpha, 1.0)
}

/// Root of `λ − c √(M²−1) r(2−r)/(1−r)²` and its covering radius
/// `λ r − c √(M²−1) r²/(1−r)`.
fn closed_form(
    theorem: TheoremId,
    m: f64,
    alpha: usize,
    factor: f64,
    lam: f64,
) -> Result<RadiusResult> {
    let excess = excess_over_floor(m, 1.0)?;
    if excess == 0.0 {
        return Ok(RadiusResult::degenerate(theorem, m, alpha));
    }
    let cs = factor * excess.sqrt();
    let r = 1.0 - (cs / (lam + cs)).sqrt();
    let sigma = lam * r - cs * r * r / (1.0 - r);
    Ok(RadiusResult {
        theorem,
        m,
        alpha,
        r,
        sigma,
        degenerate: false,
        root: None,
    })
}

/// Order-2 closed form with `λ₀(M)` (`M ≥ 1`).
pub fn solve_cor34(m: f64) -> Result<RadiusResult> {
    closed_form(TheoremId::C34, m, 2, 2.0, lambda0(m)?)
}

/// Order-3 closed form with `λ₀(M)` (`M ≥ 1`).
pub fn solve_cor35(m: f64) -> Result<RadiusResult> {
    closed_form(TheoremId::C35, m, 3, 3.0, lambda0(m)?)
}

/// Order-2 closed form with `λ = 1`, the stretch-normalized analogue of [`solve_cor34`].
pub fn solve_cor34_unit(m: f64) -> Result<RadiusResult> {
    excess_over_floor(m, 1.0)?;
    closed_form(TheoremId::C34Unit, m, 2, 2.0, 1.0)
}

/// Order-3 closed form with `λ = 1`.
pub fn solve_cor35_unit(m: f64) -> Result<RadiusResult> {
    excess_over_floor(m, 1.0)?;
    closed_form(TheoremId::C35Unit, m, 3, 3.0, 1.0)
}

/// Right end of the Abdulhadi–Hajj search, left of the first pole `ρ = 1/(α−1)`.
pub fn ah_search_limit(alpha: usize) -> f64 {
    if alpha <= 2 {
        SCAN_HI
    } else {
        1.0 / (alpha as f64 - 1.0) - 1e-9
    }
}

/// Abdulhadi–Hajj baseline radii (`α ≥ 2`, `M > 1`).
pub fn solve_ah(m: f64, alpha: usize) -> Result<RadiusResult> {
    check_alpha(alpha, 2)?;
    if !(m.is_finite() && m > 1.0) {
        return Err(Error::BelowFloor { m, floor: 1.0 });
    }
    let root = default_root(
        |rho| ah_equation(rho, m, alpha).unwrap_or(f64::NAN),
        ah_search_limit(alpha),
    )?;
    Ok(RadiusResult {
        theorem: TheoremId::AH11,
        m,
        alpha,
        r: root.root,
        sigma: ah_cover(root.root, m, alpha)?,
        degenerate: false,
        root: Some(root),
    })
}
