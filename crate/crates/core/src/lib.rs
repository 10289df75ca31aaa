//! Numerical laboratory for Dirichlet L-functions over subgroups of the
//! character group mod a prime: resonance-type extreme-value searches,
//! character-sum mean values over sets with small multiplicative doubling,
//! zero counting in rectangles, and spacing statistics of primitive-root
//! powers.
//!
//! Everything is organised around a [`ModulusContext`]: a prime `q`, its
//! smallest primitive root `g`, and the full index (discrete log) table,
//! from which characters are evaluated as roots of unity. All floating
//! point work is `f64`; summation orders are fixed so that repeated runs
//! are bit-identical.

pub mod charstats;
pub mod characters;
pub mod error;
pub mod lfun;
pub mod modarith;
pub mod resonance;

pub use characters::{Character, CharacterSet, CoverReport, DoublingReport};
pub use error::Error;
pub use lfun::{AfeConfig, LValue, LValueMethod, ZeroCountReport};
pub use modarith::{ModulusContext, PrimeTable};
pub use resonance::{ResonanceConfig, ResonanceMode, ResonanceReport, Resonator, ResonatorMode};

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Iterated logarithm with the floor-at-2 convention: `iter_log(z, 1)` is
/// `max(2, ln z)` and each further level takes `max(2, ln ·)` of the
/// previous one. Keeps small-argument parameter formulas well defined.
pub fn iter_log(z: f64, level: u32) -> f64 {
    assert!(level >= 1);
    let mut v = z;
    for _ in 0..level {
        v = v.ln().max(2.0);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::iter_log;

    #[test]
    fn iter_log_floors_at_two() {
        assert_eq!(iter_log(1.0, 1), 2.0);
        assert_eq!(iter_log(4.0, 1), 4.0f64.ln().max(2.0));
        // ln 4 < 2, so the floor engages at the first level.
        assert_eq!(iter_log(4.0, 1), 2.0);
        assert_eq!(iter_log(1.0e9, 2), (1.0e9f64.ln()).ln().max(2.0));
        // every level of a huge number stays above the floor
        let x = 1.0e300;
        assert!(iter_log(x, 1) > 2.0 && iter_log(x, 2) > 2.0);
        assert_eq!(iter_log(x, 3), 2.0); // ln ln ln 1e300 = ln ln 690.7 ≈ 1.88
    }
}
