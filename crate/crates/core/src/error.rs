use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WzwError {
    #[error("invalid algebra spec: {0}")]
    InvalidSpec(String),
    #[error("weyl group order {order} exceeds bound {bound}")]
    WeylBoundExceeded { order: u64, bound: u64 },
    #[error("alcove size {size} exceeds bound {bound}")]
    AlcoveBoundExceeded { size: usize, bound: usize },
    #[error("fusion ring invariant violated: {0}")]
    InvariantViolation(String),
    #[error("monodromy of {x} with {g} is not quantized: {value}")]
    NonQuantizedMonodromy { g: String, x: String, value: String },
    #[error("automorphism search exceeded {0} nodes")]
    SearchBoundExceeded(u64),
    #[error("no self-braiding closed form for current {0}")]
    UnsupportedCurrent(String),
    #[error("not a unit: {n} mod {m}")]
    NonUnit { n: i64, m: i64 },
    #[error("pole at evaluation point")]
    Pole,
    #[error("no automorphism found: {0}")]
    NotFound(String),
    #[error("no consistent labeling: {0}")]
    NoConsistentLabeling(String),
}

pub type Result<T> = std::result::Result<T, WzwError>;
