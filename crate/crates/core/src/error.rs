use thiserror::Error;

use crate::lattice::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid size {0}: sizes start at 1")]
    InvalidSize(i32),
    #[error("cell ({t}, {p}) is outside the size-{n} triangle")]
    InvalidCell { n: i32, t: i32, p: i32 },
    #[error("vertex ({}, {}) is outside the size-{n} region", .vertex.i, .vertex.j)]
    InvalidVertex { n: i32, vertex: Vertex },
    #[error("{{({}, {}), ({}, {})}} is not an ambient edge of the size-{n} region", .u.i, .u.j, .v.i, .v.j)]
    NotAnEdge { n: i32, u: Vertex, v: Vertex },
    #[error("region parameters out of range: {0}")]
    InvalidRegion(String),
    #[error("grove is invalid: {0}")]
    InvalidGrove(String),
    #[error("search space guard exceeded: {0}")]
    LimitExceeded(String),
    #[error("input does not satisfy the precondition: {0}")]
    PreconditionViolated(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("division is not exact")]
    NotDivisible,
    #[error("recurrence at ({0}, {1}, {2}) produced an inexact division")]
    NotLaurent(i64, i64, i64),
    #[error("point ({0}, {1}, {2}) lies below the initial levels")]
    OutOfRange(i64, i64, i64),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
