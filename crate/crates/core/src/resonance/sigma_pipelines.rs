//! The two prime-weight resonance pipelines.
//!
//! At s = 1 the weighted form uses finite Euler products L(1, chi; X2);
//! for sigma in (1/2, 1) it uses truncated prime sums S_chi(sigma, X).
//! In both, the chain
//!
//!   max over non-principal chi >= |S1|/S2 >= lower_bound - truncation_error
//!
//! is verified as an exact finite-q statement: the first inequality is a
//! weighted-mean bound over the target set, and the second carries an
//! explicit budget for the removed principal term plus the resonator
//! truncation (2 H Lmax Rmax T / S2, with T the materialization tail).

use num_complex::Complex64;

use super::forms::resonator_sum;
use super::resonator::{build_resonator, ResonatorParams};
use super::{ResonanceConfig, ResonanceMode, ResonanceReport};
use crate::characters::{Character, CharacterSet};
use crate::lfun::{finite_euler_product, prime_sum};
use crate::modarith::{ModulusContext, PrimeTable};
use crate::Result;

/// Relative floating-point slack granted when flagging `verified`.
const FP_SLACK: f64 = 1e-9;

struct ChainInputs {
    /// per-character weighted values over the whole subgroup, principal first
    weighted: Vec<(u64, Complex64)>,
    resonator_sq: Vec<f64>,
    prod_bound: f64,
    length: f64,
}

fn run_chain(
    ctx: &ModulusContext,
    mode: ResonanceMode,
    subgroup: &CharacterSet,
    inputs: ChainInputs,
    full_mass: f64,
    tail: f64,
) -> ResonanceReport {
    let order = subgroup.order();
    let mut s1 = Complex64::new(0.0, 0.0);
    let mut s2 = 0.0;
    let mut l0 = 0.0;
    let mut w0 = 0.0;
    let mut lmax_all: f64 = 0.0;
    let mut witness_exponent = 0;
    let mut witness_value = f64::NEG_INFINITY;
    for (&(e, lv), &rsq) in inputs.weighted.iter().zip(&inputs.resonator_sq) {
        let mag = lv.norm();
        lmax_all = lmax_all.max(mag);
        if e == 0 {
            l0 = mag;
            w0 = rsq;
        } else {
            s1 += lv * rsq;
            s2 += rsq;
            if mag > witness_value {
                witness_value = mag;
                witness_exponent = e;
            }
        }
    }
    let vacuous = order <= 1;
    let degenerate = inputs.length < 3.0;
    if vacuous {
        return ResonanceReport {
            mode,
            subgroup_order: order,
            s1,
            s2,
            ratio: 0.0,
            lower_bound: inputs.prod_bound,
            witness_exponent: 0,
            witness_value: 0.0,
            truncation_error: 0.0,
            resonator_length: inputs.length,
            degenerate,
            vacuous,
            verified: true,
        };
    }
    let ratio = s1.norm() / s2;
    let principal_correction = (l0 - inputs.prod_bound).max(0.0) * w0;
    let truncation_term = 2.0 * order as f64 * lmax_all * full_mass * tail;
    let truncation_error = (principal_correction + truncation_term) / s2;
    let chain_ok = ratio >= inputs.prod_bound - truncation_error - FP_SLACK * (1.0 + ratio);
    let max_ok = witness_value >= ratio - truncation_error - FP_SLACK * (1.0 + ratio);
    let _ = ctx;
    ResonanceReport {
        mode,
        subgroup_order: order,
        s1,
        s2,
        ratio,
        lower_bound: inputs.prod_bound,
        witness_exponent,
        witness_value,
        truncation_error,
        resonator_length: inputs.length,
        degenerate,
        vacuous,
        verified: chain_ok && max_ok,
    }
}

/// Resonance at s = 1 over the subgroup of order `order`.
/// The weighted form uses L(1, chi; X2) with X2 = cfg.euler_cutoff; the
/// chain is verified against that finite product itself, so the cutoff
/// never needs to chase the astronomically long ideal product.
pub fn resonance_sigma1(
    ctx: &ModulusContext,
    order: u64,
    cfg: &ResonanceConfig,
    primes: &PrimeTable,
) -> Result<ResonanceReport> {
    cfg.validate()?;
    let subgroup = CharacterSet::subgroup(ctx, order)?;
    let x = cfg.sigma_one_length(order);
    let resonator =
        build_resonator(ctx, &ResonatorParams::SigmaOne { x }, cfg.resonator_cutoff)?;

    let mut weighted = Vec::with_capacity(order as usize);
    let mut resonator_sq = Vec::with_capacity(order as usize);
    for &e in subgroup.exponents() {
        let chi = Character::new(ctx, e);
        let lv = finite_euler_product(primes, &chi, 1.0, cfg.euler_cutoff)?;
        weighted.push((e, lv.value));
        resonator_sq.push(resonator_sum(ctx, e, &resonator).norm_sqr());
    }
    // product lower bound prod_{p <= X} (1 - r_p/p)^{-1}
    let prod_bound: f64 = resonator
        .prime_weights
        .iter()
        .map(|&(p, rp)| 1.0 / (1.0 - rp / p as f64))
        .product();

    Ok(run_chain(
        ctx,
        ResonanceMode::SigmaOne,
        &subgroup,
        ChainInputs { weighted, resonator_sq, prod_bound, length: x },
        resonator.full_mass,
        resonator.tail_bound,
    ))
}

/// Resonance at real sigma in (1/2, 1): weighted form uses the truncated
/// prime sums S_chi(sigma, X) with X = cfg.prime_sum_cutoff, the resonator
/// carries weight 1/2 on primes up to Y = 0.5 kappa (log H)(log_2 H).
pub fn resonance_sigma_interior(
    ctx: &ModulusContext,
    order: u64,
    sigma: f64,
    cfg: &ResonanceConfig,
    primes: &PrimeTable,
) -> Result<ResonanceReport> {
    cfg.validate()?;
    if !(0.5 < sigma && sigma < 1.0) {
        return Err(crate::error::Error::BadParameter(format!(
            "sigma = {sigma} outside (1/2, 1)"
        )));
    }
    let subgroup = CharacterSet::subgroup(ctx, order)?;
    let y = cfg.interior_length(order);
    let resonator =
        build_resonator(ctx, &ResonatorParams::SigmaInterior { y }, cfg.resonator_cutoff)?;

    let x = cfg.prime_sum_cutoff;
    let mut weighted = Vec::with_capacity(order as usize);
    let mut resonator_sq = Vec::with_capacity(order as usize);
    for &e in subgroup.exponents() {
        let chi = Character::new(ctx, e);
        weighted.push((e, prime_sum(primes, &chi, sigma, x)?));
        resonator_sq.push(resonator_sum(ctx, e, &resonator).norm_sqr());
    }
    // lower bound sum_{p <= min(X, Y), p != q} r_p p^{-sigma}
    let prod_bound: f64 = resonator
        .prime_weights
        .iter()
        .filter(|&&(p, _)| (p as f64) <= x && p != ctx.q)
        .map(|&(p, rp)| rp * (p as f64).powf(-sigma))
        .sum();

    Ok(run_chain(
        ctx,
        ResonanceMode::SigmaInterior,
        &subgroup,
        ChainInputs { weighted, resonator_sq, prod_bound, length: y },
        resonator.full_mass,
        resonator.tail_bound,
    ))
}
