use thiserror::Error;

/// Error type shared by every module in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph needs at least one vertex")]
    EmptyGraph,
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleOrder(usize),
    #[error("path needs at least 2 vertices, got {0}")]
    PathOrder(usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexRange { vertex: usize, order: usize },
    #[error("edge list line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error("{d} does not divide {n}")]
    NotADivisor { n: u64, d: u64 },
    #[error("{d} is not a proper divisor of {n}")]
    NotProperDivisor { n: u64, d: u64 },
    #[error("adjacency matrix is not circulant")]
    NotCirculant,
    #[error("operand orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("connector order must factor as 2^u * m with u >= 3 and odd m >= 3, got {0}")]
    ConnectorOrder(usize),
    #[error("connector divisor choice must be a nonempty subset of the divisors of {m}")]
    ConnectorDivisors { m: u64 },
    #[error("operation requires a regular graph")]
    NotRegular,
    #[error("self-join needs at least one copy")]
    ZeroCopies,
    #[error("copy index must be 0 or 1, got {0}")]
    CopyIndex(usize),
    #[error("state transfer requires two distinct vertices")]
    SameVertex,
    #[error("amplitude product needs at least one factor")]
    NoFactors,
    #[error("2-adic valuation of zero is undefined")]
    ZeroValuation,
    #[error("connected cone requires a base of regularity >= 1")]
    ConeRegularity,
}

pub type Result<T> = std::result::Result<T, Error>;
