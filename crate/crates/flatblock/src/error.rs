//! Crate-wide error type. One flat enum keeps the CLI exit-code mapping simple.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars live in different fields: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(u64, u64),
    #[error("edge ({0}.{1}) is glued to ({2}.{3}) but the edge vectors are not opposite")]
    NonParallelGluing(usize, usize, usize, usize),
    #[error("face {0} is not strictly convex and counterclockwise")]
    NonConvexFace(usize),
    #[error("surface is not connected")]
    Disconnected,
    #[error("bad gluing data: {0}")]
    BadGluing(String),
    #[error("unknown builtin surface `{0}`")]
    UnknownBuiltin(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("permutation pair does not act transitively")]
    NotTransitive,
    #[error("cover sheets are not connected by the given edge shifts")]
    DisconnectedCover,
    #[error("matrix determinant is not positive")]
    NonPositiveDeterminant,
    #[error("cos(pi*{0}/{1}) is not representable in Q(sqrt({2}))")]
    FieldInsufficient(i64, i64, u64),
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("tracing from a vertex requires a corner sector")]
    SectorRequired,
    #[error("unfolding tree node guard exceeded ({0} nodes)")]
    BudgetTooLarge(usize),
    #[error("surface has no singular or marked vertices")]
    NoSingularities,
    #[error("budget exhausted before the computation could be decided")]
    BudgetExhausted,
    #[error("blocking set contains an endpoint of the instance")]
    ContainsEndpoint,
    #[error("surface carries no covering-map data")]
    NoCoverData,
    #[error("operation not applicable to this surface")]
    NotApplicable,
    #[error("holonomy group is discrete but of rank < 2")]
    DegenerateRank,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
