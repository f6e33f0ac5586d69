use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polytope is not full-dimensional (affine dimension {affine_dim} in ambient dimension {ambient_dim})")]
    DimensionDeficient { affine_dim: usize, ambient_dim: usize },
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("empty point set")]
    EmptyInput,
    #[error("body is not 0-symmetric with the origin in its interior")]
    NotSymmetric,
    #[error("point is not a vertex of the polytope")]
    NotAVertex,
    #[error("vertex cone is not smooth (|det| = {det})")]
    SingularVertex { det: String },
    #[error("moment polytope has a non-simple vertex cone")]
    NotAmplePolytope,
    #[error("moment polytope must have integer vertices")]
    NonLatticeVertex,
    #[error("negative parameter: {0}")]
    NegativeParameter(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("eps profile mixes exact values and brackets")]
    MixedProfile,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("instance generation failed after {0} attempts")]
    GenerationFailed(usize),
}

impl Error {
    /// Stable snake_case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::DimensionDeficient { .. } => "dimension_deficient",
            Error::ZeroVector => "zero_vector",
            Error::EmptyInput => "empty_input",
            Error::NotSymmetric => "not_symmetric",
            Error::NotAVertex => "not_a_vertex",
            Error::SingularVertex { .. } => "singular_vertex",
            Error::NotAmplePolytope => "not_ample_polytope",
            Error::NonLatticeVertex => "non_lattice_vertex",
            Error::NegativeParameter(_) => "negative_parameter",
            Error::InvalidWeights(_) => "invalid_weights",
            Error::MixedProfile => "mixed_profile",
            Error::Parse(_) => "parse",
            Error::GenerationFailed(_) => "generation_failed",
        }
    }
}
