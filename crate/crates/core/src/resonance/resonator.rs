//! Resonator coefficient systems.
//!
//! Two prime-weight modes, extended completely multiplicatively and
//! materialized on their smooth support up to a cutoff
//! (sigma-one: r_p = 1 - p/X for p <= X; interior: r_1 = 1 and r_p = 1/2
//! for p <= Y), and one congruence-counting mode for the half-line pipeline, where
//! r(m)^2 counts the elements of a structured integer set M that reduce
//! to the representative m mod q.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::modarith::{sieve_primes, ModulusContext};
use crate::{iter_log, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResonatorMode {
    /// r_p = 1 - p/X, the shape used at s = 1.
    SigmaOne,
    /// r_p = 1/2 up to Y, the shape used for sigma in (1/2, 1).
    SigmaInterior,
    /// residue-count weights r(m)^2 = #{n in M : n = m mod q}.
    HalfLine,
}

/// Materialized resonator: sparse `(m, r_m)` support plus the bookkeeping
/// needed for honest truncation error reporting.
#[derive(Debug, Clone)]
pub struct Resonator {
    pub mode: ResonatorMode,
    /// Largest index carrying a nonzero coefficient after truncation.
    pub support_bound: u64,
    /// (m, r_m), ascending in m.
    pub terms: Vec<(u64, f64)>,
    /// (p, r_p) for the prime-weight modes; empty in half-line mode.
    pub prime_weights: Vec<(u64, f64)>,
    /// sum of r_m over the materialized support.
    pub weight_sum: f64,
    /// sum of r_m^2 over the materialized support.
    pub weight_sq_sum: f64,
    /// bound on sum_{m > cutoff} r_m (zero when the support is exact).
    pub tail_bound: f64,
    /// full untruncated mass prod (1 - r_p)^{-1}; equals weight_sum + tail.
    pub full_mass: f64,
}

/// Parameters for [`build_resonator`].
#[derive(Debug, Clone)]
pub enum ResonatorParams {
    SigmaOne { x: f64 },
    SigmaInterior { y: f64 },
    HalfLine { h: u64, blocks: Vec<BlockSpec> },
}

/// One dyadic prime block of the structured-set construction: choose
/// `take` distinct primes from (lo, hi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockSpec {
    pub lo: u64,
    pub hi: u64,
    pub take: usize,
}

/// The structured integer set M of the half-line pipeline, together with
/// its residue-count resonator.
#[derive(Debug, Clone)]
pub struct ResonantSet {
    pub elements: Vec<u64>,
    pub blocks: Vec<BlockSpec>,
    /// largest prime factor ceiling that the construction respected
    pub prime_ceiling: u64,
}

fn prime_weight_terms(weights: &[(u64, f64)], cutoff: u64) -> Result<(Vec<(u64, f64)>, f64)> {
    if cutoff < 1 {
        return Err(Error::CutoffTooSmall(cutoff));
    }
    // depth-first enumeration of the smooth support, ascending primes
    let mut terms: Vec<(u64, f64)> = vec![(1, 1.0)];
    let mut stack: Vec<(usize, u64, f64)> = vec![(0, 1, 1.0)];
    while let Some((i, m, r)) = stack.pop() {
        for (j, &(p, rp)) in weights.iter().enumerate().skip(i) {
            if rp == 0.0 {
                continue;
            }
            match m.checked_mul(p) {
                Some(next) if next <= cutoff => {
                    let rn = r * rp;
                    terms.push((next, rn));
                    stack.push((j, next, rn));
                }
                _ => {}
            }
        }
    }
    terms.sort_unstable_by_key(|&(m, _)| m);
    let full_mass: f64 = weights
        .iter()
        .filter(|&&(_, rp)| rp > 0.0)
        .map(|&(_, rp)| 1.0 / (1.0 - rp))
        .product();
    Ok((terms, full_mass))
}

/// Build a resonator in any mode. `cutoff` truncates the multiplicative
/// support for the prime-weight modes and is ignored by the half-line mode
/// (whose support is the finite residue set itself).
pub fn build_resonator(
    ctx: &ModulusContext,
    params: &ResonatorParams,
    cutoff: u64,
) -> Result<Resonator> {
    match params {
        ResonatorParams::SigmaOne { x } => {
            let x = *x;
            if !(x > 0.0) {
                return Err(Error::BadParameter(format!("sigma-one resonator needs X > 0, got {x}")));
            }
            let weights: Vec<(u64, f64)> = sieve_primes(x.floor() as u64)
                .into_iter()
                .map(|p| (p, 1.0 - p as f64 / x))
                .collect();
            finish_prime_mode(ResonatorMode::SigmaOne, weights, cutoff)
        }
        ResonatorParams::SigmaInterior { y } => {
            let y = *y;
            if !(y > 0.0) {
                return Err(Error::BadParameter(format!("interior resonator needs Y > 0, got {y}")));
            }
            let weights: Vec<(u64, f64)> =
                sieve_primes(y.floor() as u64).into_iter().map(|p| (p, 0.5)).collect();
            finish_prime_mode(ResonatorMode::SigmaInterior, weights, cutoff)
        }
        ResonatorParams::HalfLine { h, blocks } => {
            let (set, _) = build_resonant_set(*h, blocks)?;
            resonator_from_set(ctx, &set)
        }
    }
}

fn finish_prime_mode(
    mode: ResonatorMode,
    weights: Vec<(u64, f64)>,
    cutoff: u64,
) -> Result<Resonator> {
    let (terms, full_mass) = prime_weight_terms(&weights, cutoff)?;
    let weight_sum: f64 = terms.iter().map(|&(_, r)| r).sum();
    let weight_sq_sum: f64 = terms.iter().map(|&(_, r)| r * r).sum();
    let support_bound = terms.last().map_or(1, |&(m, _)| m);
    let tail_bound = (full_mass - weight_sum).max(0.0);
    Ok(Resonator {
        mode,
        support_bound,
        terms,
        prime_weights: weights,
        weight_sum,
        weight_sq_sum,
        tail_bound,
        full_mass,
    })
}

/// Largest-prime-factor ceiling for the structured set at target size `h`:
/// exp((log_2 h)^gamma) * (log h) * (log_2 h) with the iterated-log floor
/// convention and gamma = 1/2.
pub fn prime_factor_ceiling(h: u64) -> u64 {
    let hf = (h.max(2)) as f64;
    let l1 = iter_log(hf, 1);
    let l2 = iter_log(hf, 2);
    (l2.sqrt().exp() * l1 * l2).ceil() as u64
}

/// Derive dyadic block parameters for a target cardinality `h`: walk the
/// dyadic blocks (2^i, 2^{i+1}] upward under the prime ceiling, taking the
/// balanced count floor(n/2) from each (maximal choices, maximal
/// one-prime-swap pairs), and stop once the product of binomials reaches
/// `h`. Small primes first is what makes the gcd/lcm correlation of the
/// resulting set grow with h.
pub fn default_blocks(h: u64) -> Vec<BlockSpec> {
    if h <= 1 {
        return Vec::new();
    }
    let ceiling = prime_factor_ceiling(h);
    let primes = sieve_primes(ceiling);
    let choose = |n: u64, t: u64| -> f64 {
        (0..t).map(|i| (n - i) as f64 / (i + 1) as f64).product()
    };
    let mut blocks = Vec::new();
    let mut total: f64 = 1.0;
    let mut lo = 2u64;
    while lo < ceiling && total < h as f64 {
        let hi = (2 * lo).min(ceiling);
        let count = primes.iter().filter(|&&p| p > lo && p <= hi).count() as u64;
        if count >= 2 {
            let balanced = count / 2;
            // the last block only needs enough choices to reach h
            let mut take = 1;
            while take < balanced && total * choose(count, take) < h as f64 {
                take += 1;
            }
            total *= choose(count, take);
            blocks.push(BlockSpec { lo, hi, take: take as usize });
        }
        lo = hi;
    }
    blocks
}

fn combinations(pool: &[u64], take: usize) -> Vec<u64> {
    // products of `take` distinct primes from the pool
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..take).collect();
    if take == 0 {
        return vec![1];
    }
    if take > pool.len() {
        return out;
    }
    loop {
        let mut prod: u64 = 1;
        let mut ok = true;
        for &i in &idx {
            prod = match prod.checked_mul(pool[i]) {
                Some(v) => v,
                None => {
                    ok = false;
                    break;
                }
            };
        }
        if ok {
            out.push(prod);
        }
        // next combination
        let mut i = take;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + pool.len() - take {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..take {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Build the structured set M: products of distinct primes, one batch per
/// dyadic block, truncated to the `h` smallest products. Returns the set
/// and the blocks actually used.
pub fn build_resonant_set(h: u64, blocks: &[BlockSpec]) -> Result<(ResonantSet, u64)> {
    if h < 1 {
        return Err(Error::BadParameter("resonant set needs h >= 1".into()));
    }
    if h == 1 || blocks.is_empty() {
        return Ok((
            ResonantSet { elements: vec![1], blocks: blocks.to_vec(), prime_ceiling: prime_factor_ceiling(h) },
            1,
        ));
    }
    let ceiling = blocks.iter().map(|b| b.hi).max().unwrap_or(2);
    let primes = sieve_primes(ceiling);
    let mut products: Vec<u64> = vec![1];
    for b in blocks {
        let pool: Vec<u64> =
            primes.iter().copied().filter(|&p| p > b.lo && p <= b.hi).collect();
        let choices = combinations(&pool, b.take);
        if choices.is_empty() {
            return Err(Error::EmptyResonantSet);
        }
        let mut next = Vec::with_capacity(products.len() * choices.len());
        for &a in &products {
            for &c in &choices {
                match a.checked_mul(c) {
                    Some(v) => next.push(v),
                    None => return Err(Error::BadParameter("resonant set product overflow".into())),
                }
            }
        }
        products = next;
    }
    products.sort_unstable();
    products.dedup();
    products.truncate(h as usize);
    if products.is_empty() {
        return Err(Error::EmptyResonantSet);
    }
    let size = products.len() as u64;
    Ok((
        ResonantSet { elements: products, blocks: blocks.to_vec(), prime_ceiling: ceiling },
        size,
    ))
}

/// Residue-count resonator of a structured set: support on the distinct
/// residues mod q, with r(m) = sqrt(#{n in M : n = m mod q}).
pub fn resonator_from_set(ctx: &ModulusContext, set: &ResonantSet) -> Result<Resonator> {
    let q = ctx.q;
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &n in &set.elements {
        let r = n % q;
        if r == 0 {
            continue; // elements divisible by q contribute nothing
        }
        *counts.entry(r).or_insert(0) += 1;
    }
    if counts.is_empty() {
        return Err(Error::EmptyResonantSet);
    }
    let terms: Vec<(u64, f64)> =
        counts.iter().map(|(&m, &c)| (m, (c as f64).sqrt())).collect();
    let weight_sum: f64 = terms.iter().map(|&(_, r)| r).sum();
    let weight_sq_sum: f64 = terms.iter().map(|&(_, r)| r * r).sum();
    let support_bound = terms.last().map_or(1, |&(m, _)| m);
    Ok(Resonator {
        mode: ResonatorMode::HalfLine,
        support_bound,
        terms,
        prime_weights: Vec::new(),
        weight_sum,
        weight_sq_sum,
        tail_bound: 0.0,
        full_mass: weight_sum,
    })
}
