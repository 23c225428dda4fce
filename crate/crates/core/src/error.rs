use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation was called outside its domain (wrong form degree,
    /// mismatched variable counts, division by a zero degree, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// A foliation specification is inconsistent.
    #[error("spec error: {0}")]
    Spec(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("variable x{index} out of range for {nvars} variables")]
    VariableRange { index: usize, nvars: usize },

    /// Degree `a = 0` slices of the unfolding module are not defined.
    #[error("unsupported degree {0}: unfolding slices need a >= 1")]
    UnsupportedDegree(i64),

    /// `a = e` is the one degree where the comparison map is singular.
    #[error("singular index: a = e = {0} is excluded")]
    SingularIndex(i64),

    /// A subspace expected to contain another does not.
    #[error("containment error: {0}")]
    Containment(String),

    /// An identity that must hold for the given input failed exactly.
    #[error("falsification: {0}")]
    Falsification(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn spec(msg: impl Into<String>) -> Self {
        Error::Spec(msg.into())
    }

    pub fn falsification(msg: impl Into<String>) -> Self {
        Error::Falsification(msg.into())
    }

    /// True for errors that signal a violated identity rather than bad input.
    pub fn is_falsification(&self) -> bool {
        matches!(self, Error::Falsification(_) | Error::Containment(_))
    }
}
