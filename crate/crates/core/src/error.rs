//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by group construction, transforms, and operator machinery.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// Group order would exceed the 2^63 - 1 construction cap.
    #[error("group order overflows the 2^63 - 1 cap")]
    OrderOverflow,

    /// A group function over this order would be too large to materialize.
    #[error("group order {0} exceeds the dense-function cap of {1}")]
    FunctionTooLarge(u64, u64),

    /// Element length or residues do not match the owning group.
    #[error("element shape does not match group {context}")]
    ShapeMismatch { context: String },

    /// Homomorphism matrix violates the generator relation m_i | n_j * M[i][j].
    #[error("matrix entry at row {row}, col {col} does not induce a homomorphism")]
    InvalidHom { row: usize, col: usize },

    /// A homomorphism required to be surjective is not.
    #[error("homomorphism is not surjective (image size {image} of {order})")]
    NotSurjective { image: u64, order: u64 },

    /// A map required to be injective is not.
    #[error("map is not injective ({pairs} pairs, {image} distinct targets)")]
    NotInjective { pairs: usize, image: usize },

    /// An exponent p outside the supported range.
    #[error("norm exponent p = {0} is not supported here")]
    InvalidExponent(f64),

    /// The character set must be nonempty for this operation.
    #[error("empty character set")]
    EmptyCharSet,

    /// An integer count would overflow 64 bits.
    #[error("count overflow: {0}")]
    CountOverflow(String),

    /// Input spectrum has mass outside the operator's permitted support.
    #[error("spectrum leaks outside the support set (max |coeff| = {0:.3e})")]
    SpectrumLeakage(f64),

    /// The domain of a spectral reindexing map does not match the given set.
    #[error("map domain does not match the given character set")]
    DomainMismatch,

    /// Exhaustive search requested beyond its size cap.
    #[error("exhaustive mode supports at most {cap} points, got {got}")]
    SizeCap { cap: usize, got: usize },

    /// A fit or sweep was handed degenerate data.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
