use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not an odd prime below 2^31")]
    InvalidCharacteristic(u64),
    #[error("bad numeric literal {0:?}")]
    BadLiteral(String),
    #[error("operands belong to different rings")]
    MixedRings,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("twist mismatch: {0}")]
    TwistMismatch(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("target is not in the image of the given map")]
    NotLiftable,
    #[error("ring is not Cohen-Macaulay: {0}")]
    NotCohenMacaulay(String),
    #[error("ring is not artinian")]
    NotArtinian,
    #[error("no nonzero value found below bound {0}")]
    WindowInsufficient(usize),
    #[error("zero module")]
    ZeroModule,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
