use crate::ssa::{validate_ir, Callee, Diagnostic, IrProgram, Op};

/// Checks that `program` is in the form transforms accept. Beyond plain
/// validation, direct calls must match their callee's parameters and closures
/// may not capture more values than their function takes.
///
/// Every instruction the IR can express is a pure function of its operands
/// except `print`, whose output transforms keep in program order. Returns
/// no diagnostics for acceptable input.
pub fn purity_gate(program: &IrProgram) -> Vec<Diagnostic> {
    let mut out = validate_ir(program);
    for f in program.functions.values() {
        for b in &f.blocks {
            for i in &b.instrs {
                match &i.op {
                    Op::Call { callee: Callee::Function(g), swapped, .. } => {
                        if let Some(target) = program.function(g) {
                            if target.swap_signature() != *swapped {
                                out.push(Diagnostic::CallSignature {
                                    function: f.name.clone(),
                                    block: b.id,
                                    value: i.dest,
                                    callee: g.clone(),
                                });
                            }
                        }
                    }
                    Op::MakeClosure { func, captured } => {
                        if let Some(target) = program.function(func) {
                            if captured.len() > target.params.len() {
                                out.push(Diagnostic::ClosureCapture {
                                    function: f.name.clone(),
                                    block: b.id,
                                    value: i.dest,
                                    callee: func.clone(),
                                });
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    out
}
