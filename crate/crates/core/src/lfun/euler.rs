//! Finite Euler products and truncated prime sums: the objects the
//! resonance pipelines maximise. The prime p = q is always excluded, and
//! every sum runs in ascending prime order so results are reproducible
//! bit for bit.

use num_complex::Complex64;

use super::{LValue, LValueMethod};
use crate::characters::Character;
use crate::modarith::{von_mangoldt, PrimeTable};
use crate::Result;

/// Product over p <= x, p != q of (1 - chi(p) p^{-sigma})^{-1}: an exact
/// finite object, not an approximation scheme.
pub fn finite_euler_product(
    primes: &PrimeTable,
    chi: &Character<'_>,
    sigma: f64,
    x: f64,
) -> Result<LValue> {
    let bound = x.max(0.0).floor() as u64;
    let mut value = Complex64::new(1.0, 0.0);
    for &p in primes.range_to(bound)? {
        if p == chi.ctx.q {
            continue;
        }
        value /= Complex64::new(1.0, 0.0) - chi.eval(p) * (p as f64).powf(-sigma);
    }
    Ok(LValue {
        s: Complex64::new(sigma, 0.0),
        value,
        method: LValueMethod::EulerProduct,
        est_error: 1e-15 * value.norm() * primes.range_to(bound)?.len() as f64,
    })
}

/// Truncated prime sum S_chi(sigma, x) = sum_{p <= x, p != q} chi(p) p^{-sigma}.
pub fn prime_sum(primes: &PrimeTable, chi: &Character<'_>, sigma: f64, x: f64) -> Result<Complex64> {
    let bound = x.max(0.0).floor() as u64;
    let mut sum = Complex64::new(0.0, 0.0);
    for &p in primes.range_to(bound)? {
        if p == chi.ctx.q {
            continue;
        }
        sum += chi.eval(p) * (p as f64).powf(-sigma);
    }
    Ok(sum)
}

/// sum_{2 <= n <= x} Lambda(n) chi(n) / (n^{sigma+it} log n), i.e. the
/// prime-power sum sum_{p^k <= x} chi(p^k) / (k p^{k(sigma+it)}).
pub fn lambda_sum(
    primes: &PrimeTable,
    chi: &Character<'_>,
    sigma: f64,
    t: f64,
    x: f64,
) -> Result<Complex64> {
    let bound = x.max(0.0).floor() as u64;
    if bound < 2 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let s = Complex64::new(sigma, t);
    let mut sum = Complex64::new(0.0, 0.0);
    for &p in primes.range_to(bound)? {
        if p == chi.ctx.q {
            continue;
        }
        let mut pk = p;
        let mut k = 1u32;
        loop {
            sum += chi.eval(pk) * (-s * (pk as f64).ln()).exp() / k as f64;
            if pk > bound / p {
                break;
            }
            pk *= p;
            k += 1;
        }
    }
    Ok(sum)
}

/// Brute-force twin of `lambda_sum` driven by the von Mangoldt function
/// directly; kept for cross-checks.
pub fn lambda_sum_by_scan(chi: &Character<'_>, sigma: f64, t: f64, x: u64) -> Complex64 {
    let s = Complex64::new(sigma, t);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 2..=x {
        if n % chi.ctx.q == 0 {
            continue;
        }
        if let Some((p, _)) = von_mangoldt(n) {
            let w = (p as f64).ln() / (n as f64).ln();
            sum += chi.eval(n) * (-s * (n as f64).ln()).exp() * w;
        }
    }
    sum
}
