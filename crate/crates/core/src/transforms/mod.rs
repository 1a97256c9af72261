//! Program transformations over block form: a gate that checks input is
//! fit for transformation, and forward-mode differentiation.

mod diff;
mod purity;

use thiserror::Error;

pub use diff::{derivative_name, forward_diff};
pub use purity::purity_gate;

use crate::runtime::{self, EvalConfig, RuntimeError, Value};
use crate::ssa::{Diagnostic, IrProgram};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("input rejected: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Rejected(Vec<Diagnostic>),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("`{function}` has {count} parameters, no parameter {index}")]
    BadParameter { function: String, index: usize, count: usize },
    #[error("{function} ({block}): cannot differentiate through {op}")]
    NonDifferentiableOp { function: String, block: String, op: String },
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GradientError {
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Runtime(#[from] RuntimeError),
    #[error("derivative returned {0}, expected a (value, derivative) pair")]
    Shape(String),
}

/// Evaluates `name` and its derivative with respect to parameter `wrt` at
/// `args`. Returns `(value, derivative)`.
pub fn gradient(program: &IrProgram, name: &str, wrt: usize, args: Vec<Value>) -> Result<(Value, Value), GradientError> {
    let derived = forward_diff(program, name, wrt)?;
    let out = runtime::call(&derived, &derivative_name(name), args, EvalConfig::default())?;
    match &out.result {
        Value::Tuple(pair) if pair.len() == 2 => Ok((pair[0].clone(), pair[1].clone())),
        other => Err(GradientError::Shape(other.render())),
    }
}
