use thiserror::Error;

/// Errors raised by the library.
///
/// [`Error::Internal`] marks a violated identity (a theorem-level
/// contradiction or an implementation bug); every other variant is a
/// domain or input error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("arrow {arrow} is a loop at vertex {vertex}")]
    Loop { arrow: usize, vertex: usize },
    #[error("vertex {vertex} out of range 1..={vertices}")]
    VertexOutOfRange { vertex: usize, vertices: usize },
    #[error("quiver is not connected")]
    NotConnected,
    #[error("vertex {0} has no incident arrow")]
    IsolatedVertex(usize),
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("not a unit form: {0}")]
    NotUnitForm(String),
    #[error("form is not connected")]
    FormNotConnected,
    #[error("form is not non-negative")]
    NotNonNegative,
    #[error("not Dynkin type A: {0}")]
    NotTypeA(String),
    #[error("not a type-A Coxeter polynomial for this corank: {0}")]
    NotCoxeterPolynomial(String),
    #[error("canonicalization failed: {0}")]
    CanonicalizationFailed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("integer {0} does not fit the wire format")]
    OutOfRange(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for violated identities, as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
