use crate::exactmath::{BigInt, BigRat};

pub type Result<T> = std::result::Result<T, Error>;

/// Failures of the enumeration pipeline.
///
/// Apart from [`Error::Unsupported`], every variant means an internal
/// invariant broke: the recursions are exact and the tables they produce
/// are constrained enough that no legitimate input reaches these paths.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("H_{darts}({m}, {n}, {lambda}) = {value} is not an integer")]
    NonIntegerResult {
        darts: u32,
        m: u32,
        n: u32,
        lambda: u32,
        value: BigRat,
    },

    #[error("interpolated coefficient of m^{v} n^{e} λ^{f} is not an integer: {value}")]
    NonIntegerCoefficient {
        v: u32,
        e: u32,
        f: u32,
        value: BigRat,
    },

    #[error("coefficient table is not symmetric at ({v}, {e}, {f}): {found} vs {expected}")]
    AsymmetryDetected {
        v: u32,
        e: u32,
        f: u32,
        found: BigInt,
        expected: BigInt,
    },

    #[error("negative coefficient {value} at ({v}, {e}, {f})")]
    NegativeCoefficient {
        v: u32,
        e: u32,
        f: u32,
        value: BigInt,
    },

    #[error("brute-force bucket ({v}, {e}, {f}) holds {count} pairs, not a multiple of {divisor}")]
    NonDivisibleBucket {
        v: u32,
        e: u32,
        f: u32,
        count: u64,
        divisor: u64,
    },

    #[error("unsupported input: {0}")]
    Unsupported(String),
}
