use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// B(m,g) is even, so the product defining e_{m,g} contains a zero factor.
    #[error("zero element: B({m},{g}) = binom({n},{g}) is even, e_{{{m},{g}}} would vanish")]
    ZeroElement { m: u64, g: u64, n: u64 },

    #[error("out of degree: m + 2g = {needed} exceeds r = {r}")]
    OutOfDegree { needed: u64, r: u64 },

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("cost bound exceeded: {size} weight-space words, bound is {bound}")]
    CostBound { size: u128, bound: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
