//! The resonance pipelines: pick a completely multiplicative (or
//! congruence-counting) coefficient system R, form the quadratic-form
//! ratio of weighted and unweighted second moments over a subgroup of
//! characters, and read off a lower bound on the extreme L-value that the
//! exhaustive maximum must dominate.
//!
//! All chains are verified as exact finite-q inequalities: the principal
//! character is excluded from the ratios (so that a weighted mean over the
//! target set really is a lower bound on its maximum) and the excluded
//! term plus all series truncations are folded into a computed
//! `truncation_error` budget, never into asymptotic hand-waving.

mod exceptional;
mod forms;
mod gcdlcm;
mod half_line;
mod product;
mod resonator;
mod sigma_pipelines;
mod w0;

pub use exceptional::{exceptional_characters, exceptional_members_direct, ExceptionalSetReport};
pub use forms::{resonator_sum, s2_character_form, s2_kernel_form};
pub use gcdlcm::gcd_lcm_correlation;
pub use half_line::{central_moment_identity, resonance_half_line, HalfLineReport};
pub use product::{resonator_mass_product, ProductComparison};
pub use resonator::{
    build_resonant_set, build_resonator, default_blocks, prime_factor_ceiling, resonator_from_set,
    BlockSpec, ResonantSet, Resonator, ResonatorMode, ResonatorParams,
};
pub use sigma_pipelines::{resonance_sigma1, resonance_sigma_interior};
pub use w0::{w0_weight, W0Table};

use num_complex::Complex64;

use crate::error::Error;
use crate::{iter_log, Result};

/// Which pipeline produced a [`ResonanceReport`]. The role of the two
/// quadratic forms swaps in half-line mode (there S1 is the resonator
/// mass and the ratio is S2/S1); the tag keeps that unambiguous.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResonanceMode {
    SigmaOne,
    SigmaInterior,
    HalfLine,
}

/// Fixed parameters of the resonance constructions.
#[derive(Debug, Clone, Copy)]
pub struct ResonanceConfig {
    /// subgroup-size exponent margin delta > 0
    pub delta: f64,
    /// resonator length coefficient; must satisfy
    /// 0 < kappa < delta / ((1+delta) ln 4)
    pub kappa: f64,
    /// exceptional-set exponent; must satisfy 1 + 6 eta < (1+delta)(1 - kappa ln 4)
    pub eta: f64,
    /// exceptional-set threshold exponent, 0 < c < 2
    pub c: f64,
    /// cutoff X2 for the finite Euler products standing in for L(1, chi; q^4)
    pub euler_cutoff: f64,
    /// truncation bound for materializing resonator supports
    pub resonator_cutoff: u64,
    /// prime-sum length X for the interior-sigma pipeline
    pub prime_sum_cutoff: f64,
}

impl Default for ResonanceConfig {
    fn default() -> Self {
        ResonanceConfig {
            delta: 1.0,
            kappa: 0.3,
            eta: 0.02,
            c: 1.0,
            euler_cutoff: 1e6,
            resonator_cutoff: 100_000,
            prime_sum_cutoff: 1e5,
        }
    }
}

impl ResonanceConfig {
    pub fn validate(&self) -> Result<()> {
        let ln4 = 4.0f64.ln();
        if !(self.delta > 0.0) {
            return Err(Error::BadParameter("delta must be positive".into()));
        }
        if !(self.kappa > 0.0 && self.kappa < self.delta / ((1.0 + self.delta) * ln4)) {
            return Err(Error::BadParameter(format!(
                "kappa = {} violates 0 < kappa < delta/((1+delta) ln 4) = {}",
                self.kappa,
                self.delta / ((1.0 + self.delta) * ln4)
            )));
        }
        if !(self.eta > 0.0 && 1.0 + 6.0 * self.eta < (1.0 + self.delta) * (1.0 - self.kappa * ln4))
        {
            return Err(Error::BadParameter(format!(
                "eta = {} violates 1 + 6 eta < (1+delta)(1 - kappa ln 4)",
                self.eta
            )));
        }
        if !(self.c > 0.0 && self.c < 2.0) {
            return Err(Error::BadParameter("c must lie in (0, 2)".into()));
        }
        if self.euler_cutoff < 2.0 || self.resonator_cutoff < 1 || self.prime_sum_cutoff < 2.0 {
            return Err(Error::BadParameter("cutoffs too small".into()));
        }
        Ok(())
    }

    /// Resonator length X = kappa (log H)(log_2 H) with iterated-log floors.
    pub fn sigma_one_length(&self, subgroup_order: u64) -> f64 {
        let h = subgroup_order as f64;
        self.kappa * iter_log(h, 1) * iter_log(h, 2)
    }

    /// Resonator length Y = 0.5 kappa (log H)(log_2 H).
    pub fn interior_length(&self, subgroup_order: u64) -> f64 {
        0.5 * self.sigma_one_length(subgroup_order)
    }
}

/// Two circulating forms of the subgroup-size exponent b(sigma) disagree
/// by a factor (1 - sigma); both are selectable and the choice is always
/// recorded next to the derived threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BSigmaForm {
    Theorem,
    Proof,
}

/// b(sigma): Theorem form 8(1-sigma)/(2 sigma - 1), proof form 8/(2 sigma - 1).
pub fn b_sigma(sigma: f64, form: BSigmaForm) -> f64 {
    match form {
        BSigmaForm::Theorem => 8.0 * (1.0 - sigma) / (2.0 * sigma - 1.0),
        BSigmaForm::Proof => 8.0 / (2.0 * sigma - 1.0),
    }
}

/// Outcome of one resonance run over one subgroup.
#[derive(Debug, Clone)]
pub struct ResonanceReport {
    pub mode: ResonanceMode,
    pub subgroup_order: u64,
    /// Weighted quadratic form (over the non-principal target set).
    pub s1: Complex64,
    /// Unweighted quadratic form (over the non-principal target set).
    pub s2: f64,
    /// |S1|/S2 in the prime-weight modes, S2/S1 in half-line mode.
    pub ratio: f64,
    /// The analytic lower bound the ratio must dominate (prime-weight
    /// modes); unused (0) in half-line mode.
    pub lower_bound: f64,
    /// Exponent of the character attaining the exhaustive maximum.
    pub witness_exponent: u64,
    /// The exhaustive maximum itself.
    pub witness_value: f64,
    /// Computed error budget: resonator-truncation effects plus the
    /// removed principal-character term.
    pub truncation_error: f64,
    /// X, Y or h, whichever drives the mode.
    pub resonator_length: f64,
    /// Resonator length fell below 3: the construction degenerates to a
    /// (near-)trivial resonator but every inequality still holds.
    pub degenerate: bool,
    /// No non-principal character in the target set; nothing to verify.
    pub vacuous: bool,
    /// All chain inequalities held at the stated budget.
    pub verified: bool,
}
