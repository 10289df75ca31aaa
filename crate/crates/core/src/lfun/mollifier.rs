//! Mollifier coefficients a_n = sum_{d | n, d <= X} mu(d) and the short
//! Dirichlet polynomial M_X(s, chi) = sum_{n <= X} mu(n) chi(n) n^{-s}.

use num_complex::Complex64;

use crate::characters::Character;
use crate::modarith::mobius;

/// a_1..a_n as exact integers, by a divisor-style sieve over d <= x.
pub fn mollifier_coeffs(x: u64, n: u64) -> Vec<i64> {
    let mut a = vec![0i64; n as usize + 1];
    for d in 1..=x.min(n) {
        let mu = mobius(d) as i64;
        if mu == 0 {
            continue;
        }
        let mut m = d as usize;
        while m <= n as usize {
            a[m] += mu;
            m += d as usize;
        }
    }
    a.remove(0);
    a
}

/// M_X(s, chi), exact finite polynomial value.
pub fn mollifier_poly(chi: &Character<'_>, s: Complex64, x: u64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..=x {
        let mu = mobius(n);
        if mu == 0 {
            continue;
        }
        sum += mu as f64 * chi.eval(n) * (-s * (n as f64).ln()).exp();
    }
    sum
}
