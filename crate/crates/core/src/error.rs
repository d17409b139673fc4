use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("k must be at least {min}, got {got}")]
    KTooSmall { min: u64, got: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("mismatched sequence parameters: k = {0} vs k = {1}")]
    MismatchedK(u64, u64),
    #[error("root triple is not minimal (z < 3xy)")]
    RootNotMinimal,
    #[error("root triple has nonpositive m = {0}")]
    NonpositiveM(BigInt),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
