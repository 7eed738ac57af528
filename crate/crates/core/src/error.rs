use thiserror::Error;

/// Errors produced while loading data, counting, or estimating.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid motif: {0}")]
    Motif(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("instance count overflowed 64 bits")]
    Overflow,

    #[error("counter contract violated: {0}")]
    Contract(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("edge stream out of order at position {position}: ({t}, {seq}) does not follow ({prev_t}, {prev_seq})")]
    StreamOrder {
        position: usize,
        t: i64,
        seq: u64,
        prev_t: i64,
        prev_seq: u64,
    },

    #[error("enumeration work budget of {budget} steps exceeded")]
    BudgetExceeded { budget: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
