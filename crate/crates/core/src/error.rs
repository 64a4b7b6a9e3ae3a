use thiserror::Error;

use crate::exactnum::Rational;

/// Errors raised by the engines. Parse errors live in [`crate::io::ParseError`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("period must be positive, got {0}")]
    NonPositivePeriod(Rational),
    #[error("period mismatch: {} vs {}", .0.0, .0.1)]
    PeriodMismatch(Box<(Rational, Rational)>),
    #[error("diameter must be positive, got {0}")]
    NonPositiveDiameter(Rational),
    #[error("erosion by the empty set is rejected")]
    EmptyStructuringSet,
    #[error("empty set has no representative")]
    EmptySet,
    #[error("element {0} out of range for a quotient of order {1}")]
    ElementOutOfRange(usize, usize),
    #[error("degenerate polygon with {0} vertices")]
    DegeneratePolygon(usize),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("set does not belong to this space")]
    ForeignSet,
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("invalid Szlam data: {0}")]
    InvalidSzlamData(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("{0} colors exceed the ordering guard of {1}")]
    OrderGuard(usize, usize),
    #[error("internal defect: {0}")]
    Defect(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
