use thiserror::Error;

/// Errors raised by the dyadic model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("resolution {0} outside the supported range 0..=30")]
    BadResolution(u32),
    #[error("resolution mismatch: {left} vs {right}")]
    ResolutionMismatch { left: u32, right: u32 },
    #[error("level {level} exceeds resolution {resolution}")]
    LevelTooDeep { level: u32, resolution: u32 },
    #[error("index {index} is not resolvable at resolution {resolution}")]
    IndexTooLarge { index: usize, resolution: u32 },
    #[error("cell index {cell} out of range at resolution {resolution}")]
    CellOutOfRange { cell: usize, resolution: u32 },
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("order must be positive")]
    ZeroOrder,
    #[error("exponent p = {0} not allowed here")]
    BadExponent(f64),
    #[error("empty family")]
    EmptyFamily,
    #[error("multiplicity condition violated: alpha_{component} takes value {value} {count} times (bound {bound})")]
    Multiplicity {
        component: u8,
        value: usize,
        count: usize,
        bound: usize,
    },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
