use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("a finite sum needs at least 2 summands, got {0}")]
    Arity(usize),

    #[error("the repeat block of an omega-sum must be nonempty")]
    ZeroRepeat,

    #[error("{0} is undefined for the empty chain")]
    ZeroInput(&'static str),

    #[error("{0}")]
    Domain(String),

    #[error("enumeration guard exceeded: {0}")]
    Guard(String),

    #[error("missing T({0}, B) in the supplied spectrum")]
    MissingSpectrum(usize),

    #[error("{0}")]
    MixedKinds(String),
}

impl Error {
    /// Stable machine-readable code, used in CLI error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax_error",
            Error::Arity(_) => "arity_error",
            Error::ZeroRepeat => "zero_repeat",
            Error::ZeroInput(_) => "zero_input",
            Error::Domain(_) => "domain_error",
            Error::Guard(_) => "guard_violation",
            Error::MissingSpectrum(_) => "missing_spectrum",
            Error::MixedKinds(_) => "mixed_kinds",
        }
    }

    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
