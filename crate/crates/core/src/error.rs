use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("infinite support: element has nonzero shift {shift}")]
    InfiniteSupport { shift: i64 },

    #[error("enumeration too large: {what} at level {level} exceeds cap {cap}")]
    EnumerationTooLarge {
        what: &'static str,
        level: u32,
        cap: u32,
    },

    #[error("level mismatch: expected {expected}, found {found}")]
    LevelMismatch { expected: u32, found: u32 },

    #[error("K_{i} not a designated subgroup of this factor (level {level})")]
    NotDesignatedSubgroup { i: u32, level: u32 },

    #[error("not in K_{i}")]
    NotInK { i: u32 },

    #[error("not in H_{i}")]
    NotInH { i: u32 },

    #[error("invalid element at level {level}: {reason}")]
    InvalidElement { level: u32, reason: String },

    #[error("window empty: level {i} needs i >= 2")]
    WindowEmpty { i: u32 },

    #[error("ball too large: projected {projected} vertices (budget {budget})")]
    BallTooLarge { projected: u128, budget: u128 },

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("landau argument {m} above cap {cap}")]
    LandauCap { m: u32, cap: u32 },

    #[error("empty range: i_min {i_min} > i_max {i_max}")]
    EmptyRange { i_min: u32, i_max: u32 },

    #[error("level {i} out of range: {reason}")]
    LevelOutOfRange { i: u32, reason: String },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("config error: {0}")]
    Config(String),
}
