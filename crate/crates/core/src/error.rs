//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration: bad parameter combinations, mismatched grids,
    /// unsupported dimensions.
    #[error("configuration error: {0}")]
    Config(String),

    /// A numeric domain violation (e.g. Lebesgue exponent below 1).
    #[error("domain error: {0}")]
    Domain(String),

    /// A precondition of an operation failed on otherwise valid inputs.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The frequency support of an input leaks outside the certified region.
    #[error("spectral leakage: {leaked:.3e} of total mass lies outside the covered region (tolerance {tol:.1e})")]
    SpectralLeakage { leaked: f64, tol: f64 },

    /// Partition construction found a frequency not covered by any window.
    #[error("covering gap: no window is positive near xi = {worst_xi:?}")]
    CoveringGap { worst_xi: Vec<f64> },

    /// The verification grid cannot resolve the smallest window.
    #[error("grid too coarse: frequency spacing {dxi:.6} exceeds radius/{required_ratio} = {max_dxi:.6}; need period L >= {required_period:.1} and N >= {required_samples}")]
    GridTooCoarse {
        dxi: f64,
        required_ratio: f64,
        max_dxi: f64,
        required_period: f64,
        required_samples: usize,
    },

    /// A symbol was rejected because it is not twice continuously
    /// differentiable.
    #[error("symbol not C^2: {0}")]
    SymbolNotC2(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    /// CLI exit code for this error class: 2 for configuration and
    /// precondition problems, 3 for internal numerical flags.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
