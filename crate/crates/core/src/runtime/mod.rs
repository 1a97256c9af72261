mod error;
mod interp;
mod stats;
mod value;

pub use error::{EvalError, RuntimeError, MAX_CALL_DEPTH};
pub use interp::{call, run_program, CallOutcome, Interpreter, RunOutcome};
pub use stats::{EvalConfig, ReuseStats};
pub use value::{live_cells, ClosureData, Value};
