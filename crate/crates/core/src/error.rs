//! Error type shared across the library.

use thiserror::Error;

/// Unified error for all library operations.
///
/// Variant names are stable: the CLI prints them verbatim in diagnostics, so
/// renaming one is a breaking change.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation's documented precondition does not hold for the inputs.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// No periodic pseudoorbit exists among the given points at this epsilon.
    #[error("no periodic pseudoorbit: {0}")]
    NoPseudoorbit(String),

    /// A search completed without locating the requested object.
    #[error("not found: {0}")]
    NotFound(String),

    /// A matrix that must be invertible is singular or too ill-conditioned.
    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    /// An enumeration or allocation would exceed the configured size cap.
    #[error("too large: {0}")]
    TooLarge(String),

    /// A set or function fails a required invariance property.
    #[error("not invariant: {0}")]
    NotInvariant(String),

    /// The target point is not on the stable set of the base point.
    #[error("not on stable set: {0}")]
    NotOnStableSet(String),

    /// The target point is not on the unstable set of the base point.
    #[error("not on unstable set: {0}")]
    NotOnUnstableSet(String),

    /// An iteration whose increments must decay is growing instead.
    #[error("diverging: {0}")]
    Diverging(String),

    /// The pair of points is not a homoclinic pair for the given orbit.
    #[error("not homoclinic: {0}")]
    NotHomoclinic(String),

    /// The cocycle fails the fiber-bunching inequality needed here.
    #[error("not bunched: {0}")]
    NotBunched(String),

    /// An iterative scheme exhausted its budget without meeting tolerance.
    #[error("not converged: {0}")]
    NotConverged(String),

    /// The matrix is not a scaled rotation (no complex eigenvalue pair).
    #[error("not a rotation fixed point: {0}")]
    NotRotationFixedPoint(String),

    /// A computation produced or received an empty collection.
    #[error("empty: {0}")]
    Empty(String),

    /// Vector or matrix dimensions are inconsistent.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A geometric object is degenerate (zero volume, parallel directions).
    #[error("degenerate: {0}")]
    Degenerate(String),
}

/// Name of the variant, as printed by the CLI in error diagnostics.
impl Error {
    pub fn variant_name(&self) -> &'static str {
        match self {
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::NoPseudoorbit(_) => "NoPseudoorbit",
            Error::NotFound(_) => "NotFound",
            Error::SingularMatrix(_) => "SingularMatrix",
            Error::TooLarge(_) => "TooLarge",
            Error::NotInvariant(_) => "NotInvariant",
            Error::NotOnStableSet(_) => "NotOnStableSet",
            Error::NotOnUnstableSet(_) => "NotOnUnstableSet",
            Error::Diverging(_) => "Diverging",
            Error::NotHomoclinic(_) => "NotHomoclinic",
            Error::NotBunched(_) => "NotBunched",
            Error::NotConverged(_) => "NotConverged",
            Error::NotRotationFixedPoint(_) => "NotRotationFixedPoint",
            Error::Empty(_) => "Empty",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Degenerate(_) => "Degenerate",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
