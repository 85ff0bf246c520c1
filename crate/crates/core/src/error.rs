use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument falls outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operands have different fields (p = {0} and p = {1})")]
    FieldMismatch(u64, u64),
    #[error("series orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    /// Fourier inversion grid too small to separate `n + 1` frequencies.
    #[error("grid of {grid} points aliases a degree-{n} trigonometric polynomial")]
    Aliasing { n: usize, grid: usize },
    #[error("enumeration of {size} polynomials exceeds the budget of {limit}")]
    Budget { size: u128, limit: u64 },
    #[error("invalid input: {0}")]
    Parse(String),
    /// A mathematical invariant that must hold was observed to fail.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
