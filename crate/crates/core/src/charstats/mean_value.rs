//! Mean values of coefficiented character sums over a set of characters,
//! reported against the doubling-aware envelope
//! K^{1/2} (N^{1/2} + A^{-1/2} N + A^{-3/8} N^{1/2} q^{1/4}).
//! The envelope carries unit constant; its ratio to the exact value is
//! data, never a theorem.

use num_complex::Complex64;

use crate::characters::CharacterSet;
use crate::error::Error;
use crate::modarith::ModulusContext;
use crate::Result;

#[derive(Debug, Clone, Copy)]
pub struct MeanValueReport {
    pub a: u64,
    pub n: u64,
    /// exact mean value M(alpha, A, N)
    pub m: f64,
    /// multiplicative doubling of the set
    pub k: f64,
    /// unit-constant envelope
    pub envelope: f64,
}

impl MeanValueReport {
    pub fn ratio(&self) -> f64 {
        self.m / self.envelope
    }
}

/// Exact M(alpha, A, N) = (1/A) sum_{chi in A} |sum_{n<=N} alpha_n chi(n)|.
/// Coefficients must satisfy |alpha_n| <= 1; `alpha` may be empty to mean
/// alpha = 1 identically.
pub fn mean_value(
    ctx: &ModulusContext,
    set: &CharacterSet,
    n: u64,
    alpha: &[Complex64],
) -> Result<MeanValueReport> {
    let q = ctx.q;
    if n < 1 || n > q {
        return Err(Error::LengthExceedsModulus { n, q });
    }
    if !alpha.is_empty() && (alpha.len() as u64) < n {
        return Err(Error::BadParameter("coefficient list shorter than N".into()));
    }
    for (i, c) in alpha.iter().enumerate().take(n as usize) {
        if c.norm() > 1.0 + 1e-12 {
            return Err(Error::CoefficientBound(i + 1));
        }
    }
    let a_card = set.order();
    assert!(a_card > 0, "mean value over an empty character set");

    let mut total = 0.0;
    for &e in set.exponents() {
        let mut inner = Complex64::new(0.0, 0.0);
        for k in 1..=n {
            if k % q == 0 {
                continue;
            }
            let coeff = alpha.get(k as usize - 1).copied().unwrap_or(Complex64::new(1.0, 0.0));
            inner += coeff * ctx.root_of_unity(e * ctx.index_of(k) as u64);
        }
        total += inner.norm();
    }
    let m = total / a_card as f64;
    let k_doubling = set.product_set(ctx).k();
    let af = a_card as f64;
    let nf = n as f64;
    let qf = q as f64;
    let envelope =
        k_doubling.sqrt() * (nf.sqrt() + nf / af.sqrt() + af.powf(-0.375) * nf.sqrt() * qf.powf(0.25));
    Ok(MeanValueReport { a: a_card, n, m, k: k_doubling, envelope })
}
