//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors raised by the algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter is outside the operation's domain (e.g. a quotient
    /// exponent `m < 2`, or operands from different ambient algebras).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The input value violates a precondition (e.g. a nonzero constant
    /// term where an element of the zero-constant-term algebra is required).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An operation that needs a nonempty input received zero / the unit.
    #[error("empty input: {0}")]
    EmptyInput(String),

    /// A parameter combination the implementation deliberately rejects.
    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    /// Text input does not conform to the grammar. `pos` is a byte offset.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// An invariant that should hold mathematically was violated; this is a
    /// bug in the implementation, never a property of the inputs.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Validates the quotient exponent shared by most operations.
pub(crate) fn check_m(m: u32) -> Result<()> {
    if m < 2 {
        Err(Error::InvalidParameter(format!("m must be >= 2, got {m}")))
    } else {
        Ok(())
    }
}
