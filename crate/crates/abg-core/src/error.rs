//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AbgError {
    /// A free-magma component is larger than the configured monomial cap.
    #[error("magma component ({d} generators, degree {n}) has {size} monomials, over the cap {cap}")]
    MagmaCap { d: u32, n: u32, size: u128, cap: u64 },

    /// A chain space is larger than the configured chain cap.
    #[error("chain space (r={r}, degree {n}) has {size} words, over the cap {cap}")]
    ChainCap { r: u32, n: u32, size: u64, cap: u64 },

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: u32, got: u32 },

    #[error("generator index {index} out of range for {d} generators")]
    GeneratorRange { index: u32, d: u32 },

    /// A cache file exists but cannot be used (wrong format tag, wrong key, or corrupt).
    #[error("cache: {0}")]
    Cache(String),

    /// Character-ring input that is not a genuine virtual character.
    #[error("decompose: leading support point ({0}, {1}) is not dominant")]
    NotACharacter(i64, i64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
