use std::fmt;

use thiserror::Error;

/// Which limit stopped a closure computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CapKind {
    Dimension,
    Rounds,
    Degree,
}

impl fmt::Display for CapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CapKind::Dimension => "dimension",
            CapKind::Rounds => "rounds",
            CapKind::Degree => "degree",
        })
    }
}

/// Syntax error in a coefficient or vector-field expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where parsing stopped.
    pub position: usize,
    /// Tokens that would have been accepted at `position`.
    pub expected: Vec<String>,
    /// What was actually found there.
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at position {}: expected one of [{}], found {}",
            self.position,
            self.expected.join(", "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("substitution leaves the coefficient ring: {0}")]
    SubstitutionOutsideRing(String),

    #[error("total polynomial degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },

    #[error("variable contexts differ: [{left}] vs [{right}]")]
    ContextMismatch { left: String, right: String },

    #[error("invalid variable context: {0}")]
    InvalidContext(String),

    #[error("invalid coordinate change: {0}")]
    InvalidCoordinateChange(String),

    #[error("vector is not in the span of the basis")]
    NotInSpan,

    #[error("no generators supplied")]
    EmptyGenerators,

    #[error("closure exceeded the {kind} cap {limit} (dimension {dim} after {rounds} rounds)")]
    ClosureCapExceeded {
        kind: CapKind,
        limit: u64,
        dim: usize,
        rounds: usize,
    },

    #[error("projection hypothesis violated: component {component} of basis element {element} depends on dropped variable {variable}")]
    ProjectionHypothesisViolated {
        element: usize,
        component: String,
        variable: String,
    },

    #[error("invalid variable subset: {0}")]
    InvalidVariableSubset(String),

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("the Lie algebra is not nilpotent")]
    NotNilpotent,

    #[error("the operator is not nilpotent on the subspace")]
    NotNilpotentOperator,

    #[error("the subspace is not invariant under the operator")]
    NotInvariant,

    #[error("the ideal is not abelian")]
    IdealNotAbelian,

    #[error("invalid recipe specification: {0}")]
    InvalidSpec(String),

    #[error("unsupported variable context: {0}")]
    UnsupportedContext(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SubstitutionOutsideRing(_) => "SubstitutionOutsideRing",
            Error::DegreeCapExceeded { .. } => "DegreeCapExceeded",
            Error::ContextMismatch { .. } => "ContextMismatch",
            Error::InvalidContext(_) => "InvalidContext",
            Error::InvalidCoordinateChange(_) => "InvalidCoordinateChange",
            Error::NotInSpan => "NotInSpan",
            Error::EmptyGenerators => "EmptyGenerators",
            Error::ClosureCapExceeded { .. } => "ClosureCapExceeded",
            Error::ProjectionHypothesisViolated { .. } => "ProjectionHypothesisViolated",
            Error::InvalidVariableSubset(_) => "InvalidVariableSubset",
            Error::NotAnIdeal(_) => "NotAnIdeal",
            Error::NotNilpotent => "NotNilpotent",
            Error::NotNilpotentOperator => "NotNilpotentOperator",
            Error::NotInvariant => "NotInvariant",
            Error::IdealNotAbelian => "IdealNotAbelian",
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::UnsupportedContext(_) => "UnsupportedContext",
            Error::InvariantViolated(_) => "InvariantViolated",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
