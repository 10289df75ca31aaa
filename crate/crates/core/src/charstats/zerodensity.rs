//! Zero-density aggregation over a subgroup: per-character rectangle
//! counts summed against the two-case envelope
//!   H^{(7-6s)/(6-4s)}                          for H >= q^{2/3},
//!   H^{(4-3s)/(6-4s)} q^{(1-s)/(3-2s)}          for H <  q^{2/3},
//! (unit constant). The two expressions agree at the crossover.

use crate::characters::{Character, CharacterSet};
use crate::error::Error;
use crate::lfun::zero_count_rect;
use crate::modarith::ModulusContext;
use crate::Result;

#[derive(Debug, Clone)]
pub struct ZeroDensityAggregate {
    pub sigma: f64,
    pub t: f64,
    /// (exponent, zero count) per character in the subgroup
    pub per_char: Vec<(u64, u64)>,
    pub total: u64,
    pub bound_envelope: f64,
}

/// The theorem's envelope with unit constant.
pub fn zero_density_envelope(q: u64, h: u64, sigma: f64) -> f64 {
    let qf = q as f64;
    let hf = h as f64;
    if hf >= qf.powf(2.0 / 3.0) {
        hf.powf((7.0 - 6.0 * sigma) / (6.0 - 4.0 * sigma))
    } else {
        hf.powf((4.0 - 3.0 * sigma) / (6.0 - 4.0 * sigma))
            * qf.powf((1.0 - sigma) / (3.0 - 2.0 * sigma))
    }
}

/// Count zeros with Re s >= sigma, |Im s| <= t for every character of the
/// order-`order` subgroup. Runtime guards keep this at desk scale.
pub fn zero_density_aggregate(
    ctx: &ModulusContext,
    order: u64,
    sigma: f64,
    t: f64,
) -> Result<ZeroDensityAggregate> {
    if !(sigma > 0.5) {
        return Err(Error::BadParameter(format!("zero density needs sigma > 1/2, got {sigma}")));
    }
    if !(t > 0.0 && t <= 10.0) {
        return Err(Error::BadParameter(format!("height {t} outside (0, 10]")));
    }
    if ctx.q > 500 {
        return Err(Error::BadParameter(format!(
            "zero-density aggregation is limited to q <= 500, got {}",
            ctx.q
        )));
    }
    let subgroup = CharacterSet::subgroup(ctx, order)?;
    let mut per_char = Vec::with_capacity(order as usize);
    let mut total = 0u64;
    for &e in subgroup.exponents() {
        let chi = Character::new(ctx, e);
        let rep = zero_count_rect(&chi, sigma, t)?;
        total += rep.count;
        per_char.push((e, rep.count));
    }
    Ok(ZeroDensityAggregate {
        sigma,
        t,
        per_char,
        total,
        bound_envelope: zero_density_envelope(ctx.q, order, sigma),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_continuous_at_crossover() {
        // the two case expressions coincide at H = q^{2/3}
        for q in [101u64, 1009, 65537] {
            let h = (q as f64).powf(2.0 / 3.0);
            for sigma in [0.55, 0.6, 0.75, 0.9] {
                let upper = h.powf((7.0 - 6.0 * sigma) / (6.0 - 4.0 * sigma));
                let lower = h.powf((4.0 - 3.0 * sigma) / (6.0 - 4.0 * sigma))
                    * (q as f64).powf((1.0 - sigma) / (3.0 - 2.0 * sigma));
                assert!((upper - lower).abs() < 1e-9 * upper, "q={q} sigma={sigma}");
            }
        }
    }

    #[test]
    fn exponent_stays_nontrivial() {
        // (7-6s)/(6-4s) < 1 for every s > 1/2
        for sigma in [0.5 + 1e-6, 0.6, 0.75, 0.99] {
            assert!((7.0 - 6.0 * sigma) / (6.0 - 4.0 * sigma) < 1.0);
        }
    }

    #[test]
    fn small_subgroup_is_zero_free_off_the_line() {
        let ctx = ModulusContext::new(101).unwrap();
        let agg = zero_density_aggregate(&ctx, 5, 0.6, 5.0).unwrap();
        assert_eq!(agg.total, 0);
        assert!(agg.per_char.iter().all(|&(_, c)| c == 0));
        assert!(agg.bound_envelope > 0.0);
    }

    #[test]
    fn guards() {
        let ctx = ModulusContext::new(101).unwrap();
        assert!(zero_density_aggregate(&ctx, 5, 0.5, 5.0).is_err());
        assert!(zero_density_aggregate(&ctx, 5, 0.6, 11.0).is_err());
        let big = ModulusContext::new(1009).unwrap();
        assert!(zero_density_aggregate(&big, 4, 0.6, 5.0).is_err());
    }
}
