//! Block-form intermediate representation: lowering, validation and
//! printing.

pub mod ir;
mod lower;
mod print;
mod validate;

pub use ir::*;
pub use lower::{lower_function, lower_program, LoweringError};
pub use print::{print_function, print_ir};
pub use validate::{validate_function_alone, validate_ir, Diagnostic};
