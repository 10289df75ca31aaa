//! The two evaluation routes for the resonator quadratic form
//! S_2 = sum_{chi in H} |R(chi)|^2: the direct character sum, and the
//! kernel-congruence double sum
//! S_2 = H sum_{k in Ker H} sum_{k m = n mod q} r_m r_n.
//! Orthogonality makes them equal exactly; keeping both routes alive is a
//! standing cross-check on the character machinery.

use num_complex::Complex64;

use super::resonator::Resonator;
use crate::characters::{kernel, CharacterSet};
use crate::modarith::ModulusContext;
use crate::Result;

/// R(chi) = sum_m r_m chi(m) over the materialized support.
pub fn resonator_sum(ctx: &ModulusContext, e: u64, r: &Resonator) -> Complex64 {
    let q = ctx.q;
    let mut acc = Complex64::new(0.0, 0.0);
    for &(m, rm) in &r.terms {
        let rem = m % q;
        if rem == 0 {
            continue;
        }
        acc += rm * ctx.root_of_unity(e * ctx.index_of(rem) as u64);
    }
    acc
}

/// S_2 by direct summation over the subgroup.
pub fn s2_character_form(ctx: &ModulusContext, subgroup: &CharacterSet, r: &Resonator) -> f64 {
    subgroup
        .exponents()
        .iter()
        .map(|&e| resonator_sum(ctx, e, r).norm_sqr())
        .sum()
}

/// S_2 by the kernel-congruence identity, sharing one residue-weight pass:
/// w(res) = sum over n in the support with n = res mod q of r_n, then
/// S_2 = H sum_{k in Ker} sum_m r_m w(k m mod q).
pub fn s2_kernel_form(ctx: &ModulusContext, order: u64, r: &Resonator) -> Result<f64> {
    let q = ctx.q;
    let ker = kernel(ctx, order)?;
    let mut w = vec![0.0f64; q as usize];
    for &(n, rn) in &r.terms {
        w[(n % q) as usize] += rn;
    }
    let mut total = 0.0;
    for &k in &ker {
        let mut inner = 0.0;
        for &(m, rm) in &r.terms {
            inner += rm * w[((k * (m % q)) % q) as usize];
        }
        total += inner;
    }
    Ok(order as f64 * total)
}
