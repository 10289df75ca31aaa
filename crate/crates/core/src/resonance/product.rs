//! Exact evaluation of log prod_{p <= X} (1 - r_p^2)^{-1} with
//! r_p = 1 - p/X, against its main term (2 - log 4) X / log X. The
//! comparison quantifies how quickly the squared-resonator mass approaches
//! its leading asymptotic at desk scale.

use crate::error::Error;
use crate::modarith::for_each_prime_in;
use crate::Result;

#[derive(Debug, Clone, Copy)]
pub struct ProductComparison {
    /// sum_{p <= x} -log(1 - (1 - p/x)^2), exact over a prime walk
    pub exact: f64,
    /// (2 - log 4) x / log x
    pub main_term: f64,
}

impl ProductComparison {
    pub fn relative_deviation(&self) -> f64 {
        (self.exact - self.main_term).abs() / self.main_term
    }
}

/// Requires x >= 2 (the main term needs log x bounded away from 0).
pub fn resonator_mass_product(x: f64) -> Result<ProductComparison> {
    if !(x >= 2.0) {
        return Err(Error::BadParameter(format!("resonator mass product needs x >= 2, got {x}")));
    }
    let bound = x.floor() as u64;
    let mut exact = 0.0;
    let mut comp = 0.0; // Kahan, the sum has ~ x/log x terms
    for_each_prime_in(0, bound, |p| {
        let r = 1.0 - p as f64 / x;
        let term = -(1.0 - r * r).ln();
        let y = term - comp;
        let t = exact + y;
        comp = (t - exact) - y;
        exact = t;
    });
    let main_term = (2.0 - 4.0f64.ln()) * x / x.ln();
    Ok(ProductComparison { exact, main_term })
}
