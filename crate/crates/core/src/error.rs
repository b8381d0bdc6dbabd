use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("expected a unit quaternion, got norm {0}")]
    NonUnit(String),

    #[error("{0} is not an element of the golden root system")]
    NotInSigma(String),

    #[error("expected {expected}, found {found}")]
    WrongFamily { expected: String, found: String },

    #[error("level {requested} exceeds the configured maximum {max}")]
    LevelGuard { requested: u32, max: u32 },

    #[error("value does not fit in the range of f64")]
    FloatOverflow,

    #[error("every candidate chamber witness is degenerate for level {0}")]
    DegenerateWitness(u32),

    #[error("root {0} carries no generation record")]
    MissingProvenance(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
