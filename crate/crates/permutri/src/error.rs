use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("extension degree {0} outside supported range 1..=24")]
    UnsupportedDegree(u32),
    #[error("modulus {0:#x} is not an irreducible polynomial of degree {1}")]
    ReducibleModulus(u64, u32),
    #[error("inverse of zero")]
    InvertZero,
    #[error("{n} does not divide the group order {order}")]
    NotADivisor { n: u64, order: u64 },
    #[error("field size {q} exceeds the desk-scale guard {limit}")]
    GuardExceeded { q: u64, limit: u64 },
    #[error("gcd({d}, {modulus}) != 1")]
    GcdViolation { d: u64, modulus: u64 },
    #[error("exponents are not congruent modulo {w}; no Zieve form with s = {s}")]
    NoZieveForm { s: u64, w: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate degree-one map (ad = bc)")]
    DegenerateMap,
    #[error("denominator vanishes on mu_(q+1) at element {0:#x}")]
    DenominatorVanishes(u64),
    #[error("shift criterion requires the base Zieve form to permute the units first")]
    ShiftPrecondition,
    #[error("{0}")]
    BadParameter(String),
    #[error("QM chain broken between {left} and {right}: no witness found")]
    ChainBroken { left: String, right: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
