use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("stable stem {0} is outside the supported range (k <= 3)")]
    UnsupportedStem(i64),

    #[error("unsupported morphism group: {0}")]
    UnsupportedMorphismGroup(String),

    #[error("non-integral dimension: {0}")]
    NonIntegralDimension(String),

    #[error("missing flow count from {source_id} to {target}")]
    MissingFlowCounts { source_id: String, target: String },

    #[error("invalid Morse data: {0}")]
    InvalidMorseData(String),

    #[error("attachment from level {0} is unresolved")]
    UnresolvedAttachment(i64),

    #[error("extension problem is ambiguous: {0}")]
    AmbiguousExtension(String),

    #[error("class is not canonically determined: {0}")]
    NonCanonicalLift(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid Brieskorn parameter r = {0}")]
    InvalidBrieskornParameter(i64),

    #[error("invalid lens space parameters n = {n}, k = {k}")]
    InvalidLensParameter { n: i64, k: i64 },

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("invalid group element: {0}")]
    InvalidGroupElement(String),

    #[error("parameters p = {p}, q = {q} are not coprime")]
    NonCoprimeParameters { p: i64, q: i64 },

    #[error("pairing {pairing} has the wrong parity for N = {n}")]
    ParityViolation { n: i64, pairing: i64 },

    #[error("serialization error: {0}")]
    Serialization(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI error document.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnsupportedStem(_) => "UnsupportedStem",
            Error::UnsupportedMorphismGroup(_) => "UnsupportedMorphismGroup",
            Error::NonIntegralDimension(_) => "NonIntegralDimension",
            Error::MissingFlowCounts { .. } => "MissingFlowCounts",
            Error::InvalidMorseData(_) => "InvalidMorseData",
            Error::UnresolvedAttachment(_) => "UnresolvedAttachment",
            Error::AmbiguousExtension(_) => "AmbiguousExtension",
            Error::NonCanonicalLift(_) => "NonCanonicalLift",
            Error::InvalidPresentation(_) => "InvalidPresentation",
            Error::InvalidBrieskornParameter(_) => "InvalidBrieskornParameter",
            Error::InvalidLensParameter { .. } => "InvalidLensParameter",
            Error::BasisMismatch(_) => "BasisMismatch",
            Error::DegreeMismatch(_) => "DegreeMismatch",
            Error::InvalidGroupElement(_) => "InvalidGroupElement",
            Error::NonCoprimeParameters { .. } => "NonCoprimeParameters",
            Error::ParityViolation { .. } => "ParityViolation",
            Error::Serialization(_) => "Serialization",
        }
    }
}
