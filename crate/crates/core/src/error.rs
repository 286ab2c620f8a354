use thiserror::Error;

/// Errors raised by the library.
///
/// `Display` yields only the message; [`Error::kind`] gives the stable
/// variant name used by the CLI's `Kind: message` error lines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no simple Lie type {0}")]
    InvalidType(String),
    #[error("Weyl group of {lie_type} has order {order}, above the limit {limit}")]
    WeylGroupTooLarge {
        lie_type: String,
        order: u128,
        limit: u128,
    },
    #[error("expected {expected} coordinates, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("highest weight {0} is not dominant")]
    NotDominant(String),
    #[error("{what} exceeds the configured bound {limit}")]
    ResourceLimit { what: &'static str, limit: usize },
    #[error("trace form is not an integer multiple of the basic form")]
    NotScalar,
    #[error("the bilinear form is degenerate at level {0}")]
    DegenerateTwist(i64),
    #[error("character {0} is singular")]
    SingularInput(String),
    #[error("rho is singular at level {0}")]
    NoIdentity(i64),
    #[error("{0}")]
    NonIntegral(String),
    #[error("shift of {0} is singular")]
    SingularShift(String),
    #[error("expected a class of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidType(_) => "InvalidType",
            Error::WeylGroupTooLarge { .. } => "WeylGroupTooLarge",
            Error::RankMismatch { .. } => "RankMismatch",
            Error::NotDominant(_) => "NotDominant",
            Error::ResourceLimit { .. } => "ResourceLimit",
            Error::NotScalar => "NotScalar",
            Error::DegenerateTwist(_) => "DegenerateTwist",
            Error::SingularInput(_) => "SingularInput",
            Error::NoIdentity(_) => "NoIdentity",
            Error::NonIntegral(_) => "NonIntegral",
            Error::SingularShift(_) => "SingularShift",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
