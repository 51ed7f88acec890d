//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

/// Everything that can go wrong while building states, evolving them, or
/// running scenarios.
#[derive(Debug, Error)]
pub enum Error {
    /// A state or spinor that must be normalized is not.
    #[error("state is not normalized: |psi|^2 = {norm:.17e} (expected 1 within {tol:.1e})")]
    NotNormalized { norm: f64, tol: f64 },

    /// A basis label lies outside the lattice.
    #[error("position {x} is outside the lattice [-{half_width}, {half_width}]")]
    PositionOutOfRange { x: i64, half_width: usize },

    /// The light cone of the walk would cross the lattice edge. Amplitudes
    /// are never silently truncated; enlarge the lattice instead.
    #[error(
        "walker light cone would cross the lattice boundary: step needs radius {needed}, \
         lattice half-width is {half_width}"
    )]
    BoundaryContact { half_width: usize, needed: usize },

    /// The dense-matrix oracle refuses instances whose full step operator
    /// cannot reasonably be materialized.
    #[error(
        "oracle evolution is limited to lattice half-width <= {max_half_width} and \
         <= {max_steps} steps (requested half-width {half_width}, {steps} steps)"
    )]
    OracleTooLarge {
        half_width: usize,
        steps: u64,
        max_half_width: usize,
        max_steps: u64,
    },

    /// The implicit-shift eigenvalue iteration did not converge. Carries
    /// enough context to reproduce the failure.
    #[error(
        "spectral iteration failed to converge: eigenvalue block starting at index {block} \
         of a {size}x{size} tridiagonal matrix exceeded {iterations} iterations"
    )]
    SpectralNonConvergence {
        block: usize,
        size: usize,
        iterations: usize,
    },

    /// The least-squares exponent fit is undefined for the given window.
    #[error("exponent fit undefined: {0}")]
    FitUndefined(String),

    /// A scenario configuration failed validation before any simulation ran.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// An internal invariant of the simulation was violated. This indicates
    /// a bug, not a user error.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    /// File I/O failure, with the offending path.
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Attach path context to a raw I/O error.
    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Error {
        let path = path.into();
        move |source| Error::Io { path, source }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
