//! Gauss sums tau(chi) = sum_n chi(n) e(n/q) and the derived root number
//! used by the functional equation.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::characters::Character;

/// tau(chi) by direct summation over the q-1 units.
pub fn gauss_sum(chi: &Character<'_>) -> Complex64 {
    let q = chi.ctx.q;
    let tau = 2.0 * PI / q as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..q {
        sum += chi.eval(n) * Complex64::from_polar(1.0, tau * n as f64);
    }
    sum
}

/// Root number epsilon(chi) = tau(chi) / (i^a sqrt q), a = 0 for even chi
/// and 1 for odd chi. Unimodular for non-principal chi mod a prime.
pub fn root_number(chi: &Character<'_>) -> Complex64 {
    let tau = gauss_sum(chi);
    let i_a = if chi.is_even() {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 1.0)
    };
    tau / (i_a * (chi.ctx.q as f64).sqrt())
}
