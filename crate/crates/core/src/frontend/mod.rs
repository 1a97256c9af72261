//! Turns surface source text into a resolved syntax tree.

pub mod ast;
mod error;
mod lexer;
mod parser;
mod pretty;
pub(crate) use pretty::write_quoted;
mod resolve;
pub mod visit;

pub use error::{FrontendError, LexError, ParseError, ParseErrorKind};
pub use lexer::{tokenize, Keyword, Punct, Token, TokenKind};
pub use parser::{parse, parse_syntax};
pub use pretty::{pretty_print, print_expr};
pub use resolve::resolve;

/// Parses `source` and resolves the names in it.
pub fn parse_source(source: &str) -> Result<ast::Program, FrontendError> {
    parse(&tokenize(source)?)
}
