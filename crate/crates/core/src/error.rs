use thiserror::Error;

use crate::parser::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("variable {0} is not bound by the substitution")]
    UnboundVariable(String),

    #[error("interpretation is inconsistent: it contains both {0} and its complement")]
    Inconsistent(String),

    #[error("literal {0} is not ground")]
    NonGround(String),

    #[error("rule has an empty head and an empty body")]
    EmptyRule,

    #[error("literal {0} has {1} arguments but its predicate has arity {2}")]
    ArityMismatch(String, usize, usize),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("label collision on `{0}`")]
    LabelCollision(String),

    #[error("no external ASP solver is configured")]
    SolverNotConfigured,

    #[error("external solver failed: {0}")]
    SolverFailure(String),

    #[error("program contains builtins, which strict meta mode does not accept")]
    StrictModeBuiltins,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
