//! The half-line pipeline: over the even subgroup H+ of order H/2, with a
//! congruence-count resonator built from a structured integer set M,
//!
//!   max_{chi in H+ \ chi0} |L(1/2, chi)|^2 >= S2 / S1,
//!
//! where S1 = sum |R(chi)|^2 and S2 = sum |L(1/2,chi)|^2 |R(chi)|^2, both
//! over H+ \ {chi0} (note the swapped roles of S1/S2 relative to the
//! sigma pipelines; the report's mode tag records this). The companion
//! bounds S1 <= (q-1) h, sum r(m)^2 = #M <= h and
//! |R(chi0)|^2 <= min(q-1, h) h are checked exactly.

use num_complex::Complex64;

use super::forms::resonator_sum;
use super::resonator::{build_resonant_set, default_blocks, resonator_from_set, BlockSpec};
use super::w0::W0Table;
use super::{ResonanceMode, ResonanceReport};
use crate::characters::{Character, CharacterSet};
use crate::error::Error;
use crate::lfun::ZetaRow;
use crate::modarith::ModulusContext;
use crate::Result;

const FP_SLACK: f64 = 1e-9;

/// Half-line resonance outcome: the chain report plus the structured-set
/// bookkeeping the companion bounds refer to.
#[derive(Debug, Clone)]
pub struct HalfLineReport {
    pub base: ResonanceReport,
    /// #M actually constructed (<= target h).
    pub set_size: u64,
    /// sum_m r(m)^2; equals set_size exactly.
    pub weight_sq_sum: f64,
    /// |R(chi0)|^2.
    pub principal_weight: f64,
    /// min(q-1, h) * h, the bound |R(chi0)|^2 must respect.
    pub principal_bound: f64,
    /// (q-1) * h, the bound S1 must respect.
    pub s1_bound: f64,
    /// target h requested.
    pub h_target: u64,
}

/// Run the half-line pipeline on the even subgroup of the order-`order`
/// subgroup, aiming for a structured set of size `h`. Pass `blocks = None`
/// to use the automatic dyadic construction.
pub fn resonance_half_line(
    ctx: &ModulusContext,
    order: u64,
    h: u64,
    blocks: Option<&[BlockSpec]>,
) -> Result<HalfLineReport> {
    if h > ctx.q {
        return Err(Error::ResonatorTooLarge { h, q: ctx.q });
    }
    if h < 1 {
        return Err(Error::BadParameter("half-line pipeline needs h >= 1".into()));
    }
    let plus = CharacterSet::even_subgroup_plus(ctx, order)?;
    let derived;
    let blocks = match blocks {
        Some(b) => b,
        None => {
            derived = default_blocks(h);
            &derived
        }
    };
    let (set, set_size) = build_resonant_set(h, blocks)?;
    let resonator = resonator_from_set(ctx, &set)?;

    let row = ZetaRow::new(ctx, Complex64::new(0.5, 0.0))?;
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    let mut oracle_error = 0.0;
    let mut principal_weight = 0.0;
    let mut witness_exponent = 0u64;
    let mut witness_value = f64::NEG_INFINITY;
    let mut target_count = 0u64;
    for &e in plus.exponents() {
        let rsq = resonator_sum(ctx, e, &resonator).norm_sqr();
        if e == 0 {
            principal_weight = rsq;
            continue;
        }
        target_count += 1;
        let chi = Character::new(ctx, e);
        let lv = row.l_value(&chi)?;
        let central_sq = lv.value.norm_sqr();
        s1 += rsq;
        s2 += central_sq * rsq;
        oracle_error += 2.0 * lv.value.norm() * lv.est_error * rsq;
        if central_sq > witness_value {
            witness_value = central_sq;
            witness_exponent = e;
        }
    }

    let vacuous = target_count == 0;
    let ratio = if s1 > 0.0 { s2 / s1 } else { 0.0 };
    let truncation_error = if s1 > 0.0 { oracle_error / s1 } else { 0.0 };
    let s1_bound = (ctx.q - 1) as f64 * h as f64;
    let principal_bound = (ctx.q - 1).min(h) as f64 * h as f64;

    let counting_ok = (resonator.weight_sq_sum - set_size as f64).abs() < 1e-9
        && set_size <= h
        && principal_weight <= principal_bound + FP_SLACK * principal_bound.max(1.0)
        && s1 <= s1_bound + FP_SLACK * s1_bound;
    let max_ok = vacuous
        || witness_value >= ratio - truncation_error - FP_SLACK * (1.0 + ratio);

    let base = ResonanceReport {
        mode: ResonanceMode::HalfLine,
        subgroup_order: order,
        s1: Complex64::new(s1, 0.0),
        s2: ratio * s1,
        ratio,
        lower_bound: 0.0,
        witness_exponent,
        witness_value: if vacuous { 0.0 } else { witness_value },
        truncation_error,
        resonator_length: h as f64,
        degenerate: false,
        vacuous,
        verified: counting_ok && max_ok,
    };
    Ok(HalfLineReport {
        base,
        set_size,
        weight_sq_sum: resonator.weight_sq_sum,
        principal_weight,
        principal_bound,
        s1_bound,
        h_target: h,
    })
}

/// Second-moment identity for an even non-principal character:
/// 2 sum_{k,l} chi(k) conj(chi)(l) (k l)^{-1/2} W0(pi k l / q) reproduces
/// |L(1/2, chi)|^2. The double series is truncated where the weight tail
/// drops below `tail_tol`.
pub fn central_moment_identity(
    ctx: &ModulusContext,
    e: u64,
    tail_tol: f64,
) -> Result<f64> {
    let chi = Character::new(ctx, e);
    if chi.is_principal() || !chi.is_even() {
        return Err(Error::BadParameter(
            "moment identity needs an even non-principal character".into(),
        ));
    }
    let table = W0Table::new();
    let q = ctx.q as f64;
    // find the product cutoff: W0 decays superpolynomially, so scan up
    let mut n_max = ctx.q;
    loop {
        let w = table.eval(std::f64::consts::PI * n_max as f64 / q)?;
        if w.abs() < tail_tol {
            break;
        }
        n_max *= 2;
        if n_max > 100_000_000 {
            return Err(Error::QuadratureDiverged("W0 cutoff scan ran away".into()));
        }
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..=n_max {
        if k % ctx.q == 0 {
            continue;
        }
        let ck = chi.eval(k);
        let lmax = n_max / k;
        for l in 1..=lmax {
            if l % ctx.q == 0 {
                continue;
            }
            let x = std::f64::consts::PI * (k * l) as f64 / q;
            let w = table.eval(x)?;
            sum += ck * chi.eval(l).conj() * w / ((k * l) as f64).sqrt();
        }
    }
    Ok(2.0 * sum.re)
}
