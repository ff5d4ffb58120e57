//! MDS array codes over GF(2)^b built from superregular matrices.
//!
//! An `[m+k, k, m+1]` array code treats each codeword as `n = m + k` symbols
//! of `b` bits. The parity-check matrix is `H = [psi(A) | I]`, where `A` is an
//! `m x k` superregular matrix over GF(2^b) (Vandermonde or Cauchy in
//! practice) and `psi` replaces each entry `alpha^s` by the `s`-th power of
//! the Frobenius companion matrix of the field's primitive polynomial. The
//! decoders in [`decoder`] locate and correct one, two, or three whole-symbol
//! errors at unknown positions from the syndrome alone, with closed-form fast
//! paths when `A` is Vandermonde.
//!
//! Modules:
//!
//! * [`field`] - exact GF(2^b) arithmetic: log/antilog tables, Zech
//!   logarithms, companion-matrix realization.
//! * [`matrix`] - Vandermonde/Cauchy exponent grids and superregularity
//!   checks (element-wise and b-block).
//! * [`code`] - code assembly, systematic encoding, syndromes.
//! * [`decoder`] - the decoding algorithms plus two independent oracle
//!   decoders.
//! * [`harness`] - Monte-Carlo and exhaustive drivers with operation
//!   counters.
//! * [`stripe`] - RAID-like file striping into `n` shards with a manifest.
//! * [`config`] - textual code-configuration files.

pub mod bitmat;
pub mod code;
pub mod config;
pub mod decoder;
pub mod field;
pub mod harness;
pub mod matrix;
pub mod ops;
pub mod stripe;

mod comb;

use thiserror::Error;

/// Size the global worker pool for row- and trial-parallel operations.
/// Later calls are ignored once a pool exists.
#[cfg(feature = "parallel")]
pub fn configure_thread_pool(threads: usize) {
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
}

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed polynomial: {0}")]
    MalformedPolynomial(String),
    #[error("x does not have order 2^b - 1 modulo the polynomial")]
    NotPrimitive,
    #[error("division by zero in GF(2^b)")]
    DivisionByZero,
    #[error("Zech logarithm undefined at n = 0 (mod 2^b - 1)")]
    UndefinedZech,
    #[error("duplicate evaluation point in Vandermonde spec")]
    DuplicateEvaluationPoint,
    #[error("duplicate point in Cauchy spec")]
    DuplicatePoint,
    #[error("Cauchy pair with x_i + y_j = 0")]
    SingularPair,
    #[error("instance too large for exhaustive check: {0}")]
    TooLarge(String),
    #[error("operation requires a Vandermonde matrix spec")]
    WrongMatrixKind,
    #[error("matrix is not superregular")]
    NotSuperregular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular linear system (superregularity violated)")]
    SingularSystem,
    #[error("degenerate coefficient relation for this error-position triple")]
    DegenerateRelation,
    #[error("decoder radius {radius} unsupported for m = {m}")]
    UnsupportedRadius { radius: usize, m: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid shard data: {0}")]
    Shard(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
