//! A small imperative language with value semantics.
//!
//! Source is desugared into a core subset and lowered to functional block
//! form, which runs on an interpreter that updates aggregates in place
//! whenever reference counts show that no one else can observe the change.
//!
//! ```
//! let out = swapl::run_source(
//!     "fn main() {\n  xs = [1, 2]\n  ys = xs\n  append(&xs, 3)\n  print(xs, ys)\n}",
//!     swapl::runtime::EvalConfig::default(),
//! )
//! .unwrap();
//! assert_eq!(out.output, "[1, 2, 3] [1, 2]\n");
//! ```

pub mod builtin;
pub mod desugar;
pub mod frontend;
pub mod oracle;
pub mod runtime;
pub mod ssa;
pub mod transforms;

use thiserror::Error;

use desugar::DesugarError;
use frontend::FrontendError;
use runtime::{EvalConfig, RunOutcome, RuntimeError};
use ssa::{Diagnostic, IrProgram, LoweringError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Frontend(#[from] FrontendError),
    #[error(transparent)]
    Desugar(#[from] DesugarError),
    #[error(transparent)]
    Lowering(#[from] LoweringError),
    #[error("invalid IR: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error(transparent)]
    Runtime(#[from] RuntimeError),
    #[error(transparent)]
    Transform(#[from] transforms::TransformError),
}

/// Compiles `source` down to validated block form.
pub fn compile(source: &str) -> Result<IrProgram, Error> {
    let program = frontend::parse_source(source)?;
    let core = desugar::desugar(&program)?;
    let ir = ssa::lower_program(&core)?;
    let diagnostics = ssa::validate_ir(&ir);
    if !diagnostics.is_empty() {
        return Err(Error::Invalid(diagnostics));
    }
    Ok(ir)
}

/// Compiles `source` and runs its `main`.
pub fn run_source(source: &str, config: EvalConfig) -> Result<RunOutcome, Error> {
    Ok(runtime::run_program(&compile(source)?, config)?)
}

/// The guide's chapters, so their Rust snippets run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/language.md")]
    mod language {}
    #[doc = include_str!("../../../book/src/value-semantics.md")]
    mod value_semantics {}
    #[doc = include_str!("../../../book/src/desugaring.md")]
    mod desugaring {}
    #[doc = include_str!("../../../book/src/block-form.md")]
    mod block_form {}
    #[doc = include_str!("../../../book/src/reuse.md")]
    mod reuse {}
    #[doc = include_str!("../../../book/src/transforms.md")]
    mod transforms {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/testing.md")]
    mod testing {}
}
