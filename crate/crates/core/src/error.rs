use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A group presentation or literal that does not describe anything valid.
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    /// Operands that live in different groups, or an index outside the group.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("not a subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("capacity exceeded: {what} is {actual}, limit is {limit}{}", hint_suffix(.hint))]
    Capacity {
        what: String,
        actual: u128,
        limit: u128,
        hint: Option<String>,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("generation error: {0}")]
    Generation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("worker pool: {0}")]
    Workers(String),
}

fn hint_suffix(hint: &Option<String>) -> String {
    match hint {
        Some(h) => format!(" ({h})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn capacity(what: &str, actual: u128, limit: u128) -> Self {
        Error::Capacity {
            what: what.to_string(),
            actual,
            limit,
            hint: None,
        }
    }

    pub(crate) fn with_hint(self, text: &str) -> Self {
        match self {
            Error::Capacity {
                what,
                actual,
                limit,
                ..
            } => Error::Capacity {
                what,
                actual,
                limit,
                hint: Some(text.to_string()),
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
