use alloc::string::String;

/// What went wrong while reading an equation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown variable '{0}'")]
    UnknownVariable(char),
    #[error("negative exponent")]
    NegativeExponent,
}

/// A parse failure at a byte offset of the original input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at position {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Self {
            pos,
            kind: ParseErrorKind::Syntax(msg.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(
        "polynomial is not weighted-homogeneous of degree 10 (found a term of degree {found})"
    )]
    NotHomogeneous { found: u32 },
    #[error("the equation has no w^2 term")]
    MissingW2,
    #[error("terms linear in w remain; complete the square first")]
    ResidualWTerms,
    #[error("ill-conditioned configuration: two root clusters at chordal distance {distance:e}")]
    IllConditioned { distance: f64 },
    #[error("tolerance breakdown: {0}")]
    ToleranceBreakdown(String),
    #[error("infinite automorphism group: input violates validity assumptions")]
    InfiniteGroup,
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input text.
    Usage,
    /// Well-formed but not an admissible surface.
    InvalidSurface,
    /// Floating-point tolerances could not separate the data.
    Numerical,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) => ErrorClass::Usage,
            Error::IllConditioned { .. } | Error::ToleranceBreakdown(_) => ErrorClass::Numerical,
            Error::NotHomogeneous { .. }
            | Error::MissingW2
            | Error::ResidualWTerms
            | Error::InfiniteGroup
            | Error::Invalid(_) => ErrorClass::InvalidSurface,
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
