use thiserror::Error;

/// Errors surfaced by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("modulus {0} must be an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{h} does not divide q-1 = {qm1}")]
    NotDivisor { h: u64, qm1: u64 },
    #[error("subgroup order {0} must be even")]
    OddSubgroupOrder(u64),
    #[error("L(s, chi_0) has a pole at s = 1")]
    PrincipalPole,
    #[error("hurwitz zeta: pole at s = 1")]
    ZetaPole,
    #[error("hurwitz zeta: requires Re s > 0 (got {0})")]
    ZetaDomain(f64),
    #[error("hurwitz zeta: shift parameter must lie in (0, 1] (got {0})")]
    ZetaShift(f64),
    #[error("quadrature did not converge: {0}")]
    QuadratureDiverged(String),
    #[error("contour repeatedly passed within {0:e} of a zero; giving up after retries")]
    ContourThroughZero(f64),
    #[error("accumulated argument {0} turns is not within 0.1 of an integer winding")]
    WindingAmbiguous(f64),
    #[error("duplicate characters in list (exponent {0})")]
    DuplicateCharacters(u64),
    #[error("coefficient bound |alpha_n| <= 1 violated at n = {0}")]
    CoefficientBound(usize),
    #[error("length N = {n} exceeds the modulus q = {q}")]
    LengthExceedsModulus { n: u64, q: u64 },
    #[error("resonator target h = {h} exceeds q = {q}")]
    ResonatorTooLarge { h: u64, q: u64 },
    #[error("resonator construction produced an empty set")]
    EmptyResonantSet,
    #[error("resonator cutoff {0} is too small to hold any term")]
    CutoffTooSmall(u64),
    #[error("prime table limit {limit} is below the requested bound {needed}")]
    PrimeTableTooSmall { limit: u64, needed: u64 },
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("greedy cover exhausted all candidate characters without covering the set")]
    CoverSearchFailed,
    #[error("t = {0} outside the supported strip |t| <= 10")]
    HeightOutOfRange(f64),
}
