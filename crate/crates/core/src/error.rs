use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Numeric routines return structured variants instead of panicking so the
/// CLI can map them onto exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("expected dimension {expected}, got {got}")]
    BadDimension { expected: usize, got: usize },

    #[error("matrix is not X-shaped: entry ({row},{col}) has magnitude {magnitude:.3e}")]
    NotXShaped {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("pairing has imaginary part {imag:.3e}, expected a real value")]
    NonRealPairing { imag: f64 },

    #[error("vector has (near-)zero norm")]
    ZeroVector,

    #[error("gram matrix of the basis states is numerically singular")]
    SingularGram,

    #[error("not a state: {0}")]
    NotAState(String),

    #[error("bad segment endpoints: {0}")]
    BadEndpoints(String),

    #[error("facet index set is empty")]
    EmptyFacet,
}

pub type Result<T> = std::result::Result<T, Error>;
