//! Landau-type theorems for bounded polyanalytic and log-α-analytic functions.
//!
//! The crate is organised bottom-up:
//!
//! * [`polyfn`] holds truncated polyanalytic functions `F(z) = Σ z̄^k A_k(z)`
//!   and evaluates them together with their Wirtinger derivatives,
//!   stretchings and Jacobian.
//! * [`coeff_bounds`] checks the coefficient estimates for bounded
//!   polyanalytic functions via the Fourier-mode (Parseval) sum.
//! * [`radii`] evaluates the defining functions of the univalence radii,
//!   solves for their least positive roots and reproduces the published
//!   tables.
//! * [`logmap`] turns a covering radius σ into the schlicht disk
//!   `D(cosh σ, sinh σ)` of the exponentiated function.
//! * [`verify`] samples concrete functions to check the solved radii.
//! * [`cli`] is the command-line front end.

pub mod cli;
pub mod coeff_bounds;
mod dd;
mod error;
pub mod logmap;
pub mod polyfn;
pub mod radii;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Round to six significant digits, the precision used by all textual output.
pub fn round_sig6(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}
