use thiserror::Error;

/// Errors raised by the engine.
///
/// The CLI maps these onto exit codes through [`KqError::exit_code`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KqError {
    #[error("invalid root system type {letter}{rank}: {reason}")]
    InvalidRootSystem {
        letter: char,
        rank: usize,
        reason: String,
    },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("elements belong to different root systems")]
    SystemMismatch,
    #[error("classes live on different spaces")]
    SpaceMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource cap exceeded: {what} requires {required}, cap is {cap}")]
    ResourceCap {
        what: String,
        required: u128,
        cap: u128,
    },
    #[error("non-exact division in the character ring: {0}")]
    NonExactDivision(String),
    #[error("coefficient overflow in exact arithmetic")]
    Overflow,
    #[error("internal consistency alarm: {0}")]
    Consistency(String),
    #[error("catalog error: {0}")]
    Catalog(String),
    #[error("catalog incomplete: {0}")]
    CatalogIncomplete(String),
    #[error("degree {degree} of {space} lies in the disputed band ({detail})")]
    DisputedBand {
        space: String,
        degree: u32,
        detail: String,
    },
    #[error("membership criterion only covers the chart v_(-n) = 1")]
    Chart,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a subbundle: {0}")]
    NotSubbundle(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl KqError {
    /// Process exit code: 1 usage, 2 catalog/validation, 3 resource cap,
    /// 4 internal-consistency alarm.
    pub fn exit_code(&self) -> i32 {
        match self {
            KqError::InvalidRootSystem { .. }
            | KqError::RankMismatch { .. }
            | KqError::SystemMismatch
            | KqError::SpaceMismatch
            | KqError::InvalidArgument(_)
            | KqError::Chart
            | KqError::Shape(_)
            | KqError::Unsupported(_) => 1,
            KqError::Catalog(_)
            | KqError::CatalogIncomplete(_)
            | KqError::DisputedBand { .. }
            | KqError::Io(_)
            | KqError::NotSubbundle(_) => 2,
            KqError::ResourceCap { .. } => 3,
            KqError::NonExactDivision(_) | KqError::Overflow | KqError::Consistency(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, KqError>;
