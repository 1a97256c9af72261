use std::fmt;

use thiserror::Error;

/// Calls nested deeper than this fail with [`EvalError::CallDepthExceeded`].
pub const MAX_CALL_DEPTH: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("`{name}` expects {expected} arguments, got {found}")]
    ArityMismatch { name: String, expected: usize, found: usize },
    #[error("swap markers at the call site do not match the parameters of `{name}`")]
    SwapArityMismatch { name: String },
    #[error("type error: {0}")]
    TypeError(String),
    #[error("index {index} out of bounds for length {len}")]
    IndexOutOfBounds { index: i64, len: usize },
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("step budget of {0} exceeded")]
    StepBudgetExceeded(u64),
    #[error("call depth limit of {0} exceeded")]
    CallDepthExceeded(usize),
    #[error("no zero-argument `main` function")]
    NoMain,
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("cannot write output: {0}")]
    Output(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl EvalError {
    pub(crate) fn type_error(msg: impl Into<String>) -> Self {
        EvalError::TypeError(msg.into())
    }
}

/// An evaluation error together with where it was raised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuntimeError {
    pub kind: EvalError,
    pub function: Option<String>,
    pub block: Option<String>,
}

impl RuntimeError {
    pub fn new(kind: EvalError) -> Self {
        RuntimeError { kind, function: None, block: None }
    }
}

impl From<EvalError> for RuntimeError {
    fn from(kind: EvalError) -> Self {
        RuntimeError::new(kind)
    }
}

impl fmt::Display for RuntimeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.function, &self.block) {
            (Some(func), Some(block)) => write!(f, "in {func} ({block}): {}", self.kind),
            (Some(func), None) => write!(f, "in {func}: {}", self.kind),
            _ => write!(f, "{}", self.kind),
        }
    }
}

impl std::error::Error for RuntimeError {}
