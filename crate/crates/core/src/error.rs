use thiserror::Error;

/// Errors raised by the exact arithmetic, model bookkeeping and braiding layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot move an element of Q(zeta_{from}) into Q(zeta_{to})")]
    IncompatibleOrder { from: u32, to: u32 },

    #[error("invalid minimal model ({p},{q}): {reason}")]
    InvalidModel { p: u32, q: u32, reason: String },

    #[error("label ({m},{n}) is out of range for the ({p},{q}) model")]
    InvalidLabel { m: i64, n: i64, p: u32, q: u32 },

    #[error("labels belong to different models: ({0},{1}) vs ({2},{3})")]
    ModelMismatch(u32, u32, u32, u32),

    #[error("model ({p},{q}) is not unitary (q must equal p+1)")]
    NonUnitaryModel { p: u32, q: u32 },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("sign exponent is not an integer: {0}")]
    NonIntegerExponent(String),

    #[error("weight conventions disagree: {0}")]
    ConventionMismatch(String),

    #[error("no representative choice is compatible with the fusion rules: {0}")]
    NoCompatibleRepresentative(String),

    #[error("degenerate system: {0}")]
    DegenerateSystem(String),

    #[error("no module of weight {weight} in the ({p},{q}) model")]
    UnknownWeight { weight: String, p: u32, q: u32 },

    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
