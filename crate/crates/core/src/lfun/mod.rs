//! L-function evaluation and approximation: the Hurwitz-zeta oracle, finite
//! Euler products, prime-sum approximations of log L, Gauss sums, the
//! smoothed approximate functional equation at the central point, mollifier
//! coefficients, and argument-principle zero counting in rectangles.
//!
//! Precision targets are fixed constants of the module: 1e-12 absolute for
//! the Hurwitz kernel and 1e-10 for oracle L-values at q up to 10^4.
//! A precision failure is reported through `est_error`/errors, never
//! silently degraded.

mod afe;
mod euler;
mod gamma;
mod gauss;
mod hurwitz;
mod mollifier;
mod oracle;
mod zeros;

pub use afe::{afe_eval_half, AfeEvaluator};
pub use euler::{finite_euler_product, lambda_sum, lambda_sum_by_scan, prime_sum};
pub use gamma::{gamma, ln_gamma};
pub use gauss::{gauss_sum, root_number};
pub use hurwitz::{hurwitz_zeta, HurwitzValue};
pub use mollifier::{mollifier_coeffs, mollifier_poly};
pub use oracle::{l_oracle, ZetaRow};
pub use zeros::{critical_line_zero_count, zero_count_in, zero_count_rect};

use num_complex::Complex64;

/// How an L-value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LValueMethod {
    Oracle,
    EulerProduct,
    Afe,
    PrimeSum,
}

/// An evaluated L-value together with a bound on the truncation error of
/// the method that produced it.
#[derive(Debug, Clone, Copy)]
pub struct LValue {
    pub s: Complex64,
    pub value: Complex64,
    pub method: LValueMethod,
    pub est_error: f64,
}

/// Configuration for the smoothed approximate functional equation.
///
/// `sharpness` is the exponent parameter A in the smoothing function
/// G(u) = cos(pi u / 4A)^{-4A}; larger A buys faster decay of the
/// V-weights. `contour_height` truncates the vertical-line integral
/// defining V; `series_cutoff` ends each smoothed series at
/// `series_cutoff * sqrt(q)` terms.
#[derive(Debug, Clone, Copy)]
pub struct AfeConfig {
    pub sharpness: u32,
    pub contour_height: f64,
    pub series_cutoff: f64,
}

impl Default for AfeConfig {
    fn default() -> Self {
        AfeConfig { sharpness: 4, contour_height: 40.0, series_cutoff: 120.0 }
    }
}

/// Result of a rectangle zero count via the argument principle.
#[derive(Debug, Clone, Copy)]
pub struct ZeroCountReport {
    /// Requested left edge of the rectangle.
    pub sigma: f64,
    /// Requested height: zeros with |Im s| <= t are counted.
    pub t: f64,
    /// Left edge actually used after any contour nudges.
    pub effective_sigma: f64,
    /// Height actually used after any contour nudges.
    pub effective_t: f64,
    /// Number of zeros inside [effective_sigma, 1.5] x [-effective_t, effective_t].
    pub count: u64,
    /// Smallest |L| seen along the contour: the observed clearance.
    pub contour_margin: f64,
}
