use thiserror::Error;

/// Errors raised while building or evaluating morphisms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two morphisms were composed or compared across different objects.
    #[error("boundary mismatch: expected {expected}, found {found}")]
    Boundary { expected: String, found: String },

    /// An enumeration or image computation exceeded the element budget.
    #[error("resource exceeded: {what} needs more than {budget} elements")]
    Resource { what: String, budget: usize },

    /// The requested operation is not defined for this instance or object.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Malformed user input (group tables, manifests, configuration).
    #[error("config error: {0}")]
    Config(String),

    /// Input data violates a structural precondition (not a group, not a function, ...).
    #[error("invalid data: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn boundary(expected: impl ToString, found: impl ToString) -> Self {
        Error::Boundary {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub fn resource(what: impl Into<String>, budget: usize) -> Self {
        Error::Resource {
            what: what.into(),
            budget,
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}
