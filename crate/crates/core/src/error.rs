use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at offset {offset}: expected {expected}, found {found}")]
    Parse {
        offset: usize,
        expected: String,
        found: String,
    },
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("invalid position: {0}")]
    InvalidPosition(String),
    #[error("cut positions are not strictly increasing")]
    NonIncreasingCuts,
    #[error("level {level} exceeds the configured maximum {max}")]
    LevelTooHigh { level: u32, max: u32 },
    #[error("invalid cap configuration: {0}")]
    InvalidCaps(String),
    #[error("Hausdorff rank {rank} exceeds the configured maximum {max}")]
    RankTooHigh { rank: u32, max: u32 },
    #[error("operation requires positive Hausdorff rank")]
    RankZero,
    #[error("operation requires Hausdorff rank 1, got {0}")]
    NotRankOne(u32),
    #[error("order is not simple")]
    NotSimple,
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("schedule violation: {0}")]
    ScheduleViolation(String),
    #[error("unknown variant `{0}`")]
    UnknownVariant(String),
    #[error("malformed relation table: {0}")]
    MalformedTable(String),
    #[error("scott sentence metadata missing")]
    MissingMetadata,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("io: {0}")]
    Io(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
