use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    Dimension {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("table is not commutative at entry ({i}, {j}, {k})")]
    NotCommutative { i: usize, j: usize, k: usize },

    #[error("table is not associative on basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },

    #[error("subspace is not an ideal: e_{basis} times ideal vector {vector} leaves the subspace")]
    NotIdeal { basis: usize, vector: usize },

    /// A structural hypothesis or a precondition of a construction does not hold.
    #[error("hypothesis failed: {name}: {detail}")]
    Hypothesis { name: &'static str, detail: String },

    /// A verifier found the input map does not satisfy its defining identity.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("enumeration needs {candidates} candidates, budget is {budget}")]
    Budget { candidates: String, budget: u64 },
}

impl Error {
    /// True for malformed input (bad files, shapes, parameters) or an
    /// exhausted enumeration budget, as opposed to a mathematical rejection.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Field(_)
                | Error::Dimension { .. }
                | Error::Input(_)
                | Error::Parse { .. }
                | Error::Budget { .. }
        )
    }

    pub(crate) fn hypothesis(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Hypothesis {
            name,
            detail: detail.into(),
        }
    }

    pub(crate) fn check_len(context: &'static str, expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::Dimension {
                context,
                expected,
                found,
            })
        }
    }
}
