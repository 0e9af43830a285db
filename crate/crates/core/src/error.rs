use thiserror::Error;

/// Errors raised by the library. Promise violations are not errors here:
/// `classify` reports them through [`crate::ring::Classification::Invalid`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ring half-size N must be at least 3, got {0}")]
    HalfSizeTooSmall(u32),

    #[error("dot {value} is outside the ring of {modulus} dots")]
    DotOutOfRange { value: u32, modulus: u32 },

    #[error("points live on different rings ({left} vs {right} dots)")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("pair (x={x}, y={y}) violates the jump / no-jump promise")]
    PromiseViolated { x: u32, y: u32 },

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
