//! The double character-sum moment
//! sum_{r,s} |sum_{n<=N} alpha_n chi_r(n) conj(chi_s)(n)|^2
//! over a list of distinct characters, with the three-term envelope
//! N^2 R + N R^2 + N R^{5/4} q^{1/2} (unit constant).

use num_complex::Complex64;
use std::collections::HashMap;

use crate::error::Error;
use crate::modarith::ModulusContext;
use crate::Result;

#[derive(Debug, Clone, Copy)]
pub struct DoubleSumReport {
    pub r: u64,
    pub n: u64,
    pub exact: f64,
    pub envelope: f64,
}

impl DoubleSumReport {
    pub fn ratio(&self) -> f64 {
        self.exact / self.envelope
    }
}

/// Exact double sum; the inner sums are cached per difference character,
/// so the cost is O(#distinct differences * N) instead of O(R^2 N).
pub fn hb_double_sum(
    ctx: &ModulusContext,
    exponents: &[u64],
    n: u64,
    alpha: &[Complex64],
) -> Result<DoubleSumReport> {
    let q = ctx.q;
    if n < 1 || n > q {
        return Err(Error::LengthExceedsModulus { n, q });
    }
    let mut seen = std::collections::HashSet::new();
    for &e in exponents {
        if !seen.insert(e % (q - 1)) {
            return Err(Error::DuplicateCharacters(e));
        }
    }
    for (i, c) in alpha.iter().enumerate().take(n as usize) {
        if c.norm() > 1.0 + 1e-12 {
            return Err(Error::CoefficientBound(i + 1));
        }
    }
    let qm1 = q - 1;
    let mut cache: HashMap<u64, f64> = HashMap::new();
    let mut exact = 0.0;
    for &er in exponents {
        for &es in exponents {
            let diff = ((er % qm1) + qm1 - (es % qm1)) % qm1;
            let sq = *cache.entry(diff).or_insert_with(|| {
                let mut inner = Complex64::new(0.0, 0.0);
                for k in 1..=n {
                    if k % q == 0 {
                        continue;
                    }
                    let coeff =
                        alpha.get(k as usize - 1).copied().unwrap_or(Complex64::new(1.0, 0.0));
                    inner += coeff * ctx.root_of_unity(diff * ctx.index_of(k) as u64);
                }
                inner.norm_sqr()
            });
            exact += sq;
        }
    }
    let rf = exponents.len() as f64;
    let nf = n as f64;
    let envelope = nf * nf * rf + nf * rf * rf + nf * rf.powf(1.25) * (q as f64).sqrt();
    Ok(DoubleSumReport { r: exponents.len() as u64, n, exact, envelope })
}
