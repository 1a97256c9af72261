use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct LexError {
    pub line: u32,
    pub column: u32,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("`&` must be applied to a variable or a field/index path")]
    SwapOnNonPath,
    #[error("`&` is only allowed on call arguments and parameters")]
    MisplacedSwap,
    #[error("`break` outside of a loop")]
    StrayBreak,
    #[error("`continue` outside of a loop")]
    StrayContinue,
    #[error("function `{0}` is defined more than once")]
    DuplicateFunction(String),
    #[error("parameter `{0}` is declared more than once")]
    DuplicateParam(String),
    #[error("field `{0}` appears more than once in a record literal")]
    DuplicateField(String),
    #[error("`{0}` is bound more than once in one destructuring")]
    DuplicateBinding(String),
    #[error("`{0}` is a builtin name and cannot be rebound")]
    ReservedName(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` may be used before it is assigned")]
    MaybeUnassigned(String),
    #[error("builtin `{0}` can only be called, not used as a value")]
    BuiltinAsValue(String),
    #[error("statement is unreachable")]
    Unreachable,
    #[error("top-level statements cannot be mixed with an explicit `main`")]
    MainConflict,
    #[error("variable `{0}` is swapped more than once in a single call")]
    RepeatedSwap(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: u32,
    pub column: u32,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrontendError {
    #[error("lex error at {0}")]
    Lex(LexError),
    #[error("parse error at {0}")]
    Parse(ParseError),
}

impl FrontendError {
    pub fn position(&self) -> (u32, u32) {
        match self {
            FrontendError::Lex(e) => (e.line, e.column),
            FrontendError::Parse(e) => (e.line, e.column),
        }
    }

    pub fn parse_kind(&self) -> Option<&ParseErrorKind> {
        match self {
            FrontendError::Parse(e) => Some(&e.kind),
            FrontendError::Lex(_) => None,
        }
    }
}
