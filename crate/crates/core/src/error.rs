use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("InvalidCharacteristic: {0} is not an odd prime below 2^31")]
    InvalidCharacteristic(u32),

    #[error("AmbientMismatch: expected rank {expected}, found {found}")]
    AmbientMismatch { expected: usize, found: usize },

    #[error("RingMismatch: operands live over different rings")]
    RingMismatch,

    #[error("NotAGroebnerBasis: S-polynomial of pair ({0}, {1}) does not reduce to zero")]
    NotAGroebnerBasis(usize, usize),

    #[error("NotWellDefined: column {column} does not send relations into relations")]
    NotWellDefined { column: usize },

    #[error("PowerExhausted: no power up to {k_max} annihilates the required Ext modules (nonfree locus ideal: [{nonfree_locus}])")]
    PowerExhausted { k_max: u32, nonfree_locus: String },

    #[error("NotSplit: the identity has no preimage under Hom(right, mid) -> Hom(right, right)")]
    NotSplit,

    #[error("InternalSplitFailure: a split guaranteed by the annihilation hypothesis failed at step {step}")]
    InternalSplitFailure { step: usize },

    #[error("NotRegular: {0}")]
    NotRegular(String),

    #[error("NotFiniteLengthLeaf: Koszul homology H_{index} has infinite F_p-dimension")]
    NotFiniteLengthLeaf { index: usize },

    #[error("DegreeMismatch: {0}")]
    DegreeMismatch(String),

    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),

    #[error("Parse: {0}")]
    Parse(String),
}

impl Error {
    /// The short error name used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidCharacteristic(_) => "InvalidCharacteristic",
            Error::AmbientMismatch { .. } => "AmbientMismatch",
            Error::RingMismatch => "RingMismatch",
            Error::NotAGroebnerBasis(..) => "NotAGroebnerBasis",
            Error::NotWellDefined { .. } => "NotWellDefined",
            Error::PowerExhausted { .. } => "PowerExhausted",
            Error::NotSplit => "NotSplit",
            Error::InternalSplitFailure { .. } => "InternalSplitFailure",
            Error::NotRegular(_) => "NotRegular",
            Error::NotFiniteLengthLeaf { .. } => "NotFiniteLengthLeaf",
            Error::DegreeMismatch(_) => "DegreeMismatch",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "Parse",
        }
    }
}
