use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An element was used with a group it does not belong to.
    #[error("element {element} does not belong to group {group}")]
    GroupMismatch { element: String, group: String },

    /// A string could not be parsed; `token` is the offending piece of input.
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    /// An internal identity failed. Always an implementation bug.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    /// An enumeration oracle refused to run because it would exceed its budget.
    #[error("enumeration of {needed} items exceeds the budget of {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}
