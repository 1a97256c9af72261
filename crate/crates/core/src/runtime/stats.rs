use std::fmt;

use serde::Serialize;

/// Counters describing how aggregate cells were created and updated.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ReuseStats {
    /// New aggregate cells, including copies and array capacity growth.
    pub allocations: u64,
    /// Updates that had to copy a shared (or, with reuse off, any) cell.
    pub copies: u64,
    /// Updates applied directly to a uniquely held cell.
    pub in_place: u64,
}

impl fmt::Display for ReuseStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "allocations={} copies={} in_place={}", self.allocations, self.copies, self.in_place)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalConfig {
    pub reuse_enabled: bool,
    /// Log every executed instruction to the trace sink.
    pub trace: bool,
    /// Upper bound on executed instructions and transfers.
    pub max_steps: Option<u64>,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { reuse_enabled: true, trace: false, max_steps: None }
    }
}
