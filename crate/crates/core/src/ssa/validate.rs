//! Structural checks on block-form programs.

use std::collections::HashSet;
use std::fmt;

use super::ir::*;
use crate::builtin::Builtin;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    /// An id is defined more than once.
    MultipleAssignment { function: String, value: ValueId },
    /// An operand is not defined by a dominating definition.
    UseBeforeDef { function: String, block: BlockId, value: ValueId },
    /// A transfer passes the wrong number of arguments.
    EdgeArity { function: String, block: BlockId, target: BlockId, expected: usize, found: usize },
    UnknownBlock { function: String, block: BlockId, target: BlockId },
    /// A primitive applied to the wrong number of operands.
    PrimArity { function: String, block: BlockId, value: ValueId },
    /// The swap flags do not line up with the arguments or the swap destinations.
    MalformedCall { function: String, block: BlockId, value: ValueId },
    /// The entry block's parameters differ from the function's.
    EntryParams { function: String },
    /// A return carries the wrong number of swapped-parameter finals.
    ReturnArity { function: String, block: BlockId },
    /// A call or closure names a function that does not exist.
    UnknownFunction { function: String, callee: String },
    /// A direct call's swap markers differ from the callee's parameters.
    CallSignature { function: String, block: BlockId, value: ValueId, callee: String },
    /// A closure captures more values than its function takes.
    ClosureCapture { function: String, block: BlockId, value: ValueId, callee: String },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::MultipleAssignment { function, value } => {
                write!(f, "{function}: {value} is assigned more than once")
            }
            Diagnostic::UseBeforeDef { function, block, value } => {
                write!(f, "{function}: {value} is used in {block} without a dominating definition")
            }
            Diagnostic::EdgeArity { function, block, target, expected, found } => {
                write!(f, "{function}: {block} passes {found} arguments to {target}, which takes {expected}")
            }
            Diagnostic::UnknownBlock { function, block, target } => {
                write!(f, "{function}: {block} transfers to missing {target}")
            }
            Diagnostic::PrimArity { function, block, value } => {
                write!(f, "{function}: {value} in {block} applies a primitive to the wrong number of operands")
            }
            Diagnostic::MalformedCall { function, block, value } => {
                write!(f, "{function}: call {value} in {block} has inconsistent swap positions")
            }
            Diagnostic::EntryParams { function } => {
                write!(f, "{function}: entry block parameters differ from the function parameters")
            }
            Diagnostic::ReturnArity { function, block } => {
                write!(f, "{function}: return in {block} has the wrong number of swapped-parameter values")
            }
            Diagnostic::UnknownFunction { function, callee } => {
                write!(f, "{function}: reference to unknown function `{callee}`")
            }
            Diagnostic::CallSignature { function, block, value, callee } => {
                write!(f, "{function}: call {value} in {block} does not match the parameters of `{callee}`")
            }
            Diagnostic::ClosureCapture { function, block, value, callee } => {
                write!(f, "{function}: closure {value} in {block} captures more values than `{callee}` takes")
            }
        }
    }
}

/// Checks every function of `program`. Returns no diagnostics for a
/// well-formed program.
pub fn validate_ir(program: &IrProgram) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for f in program.functions.values() {
        validate_function(f, Some(program), &mut out);
    }
    out
}

/// Checks one function in isolation; references to other functions are
/// not resolved.
pub fn validate_function_alone(f: &IrFunction) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    validate_function(f, None, &mut out);
    out
}

fn validate_function(f: &IrFunction, program: Option<&IrProgram>, out: &mut Vec<Diagnostic>) {
    let name = || f.name.clone();
    let n = f.blocks.len();
    let block_ok = |b: BlockId| b.index() < n;

    if !block_ok(f.entry) {
        out.push(Diagnostic::UnknownBlock { function: name(), block: f.entry, target: f.entry });
        return;
    }
    let entry = f.block(f.entry);
    if entry.params != f.params.iter().map(|p| p.value).collect::<Vec<_>>() {
        out.push(Diagnostic::EntryParams { function: name() });
    }

    // Single assignment, and where each id is defined.
    let mut def_block: Vec<Option<usize>> = Vec::new();
    let mut define = |v: ValueId, b: usize, out: &mut Vec<Diagnostic>| {
        if def_block.len() <= v.index() {
            def_block.resize(v.index() + 1, None);
        }
        if def_block[v.index()].is_some() {
            out.push(Diagnostic::MultipleAssignment { function: name(), value: v });
        } else {
            def_block[v.index()] = Some(b);
        }
    };
    for (bi, b) in f.blocks.iter().enumerate() {
        for p in &b.params {
            define(*p, bi, out);
        }
        for i in &b.instrs {
            for d in i.defs() {
                define(d, bi, out);
            }
        }
    }

    // Per-instruction shape.
    let swapped_params = f.params.iter().filter(|p| p.swapped).count();
    for b in &f.blocks {
        for i in &b.instrs {
            match &i.op {
                Op::Prim(op, args) if args.len() != op.arity() => {
                    out.push(Diagnostic::PrimArity { function: name(), block: b.id, value: i.dest });
                }
                Op::Call { callee, args, swapped, swap_dests } => {
                    let count = swapped.iter().filter(|s| **s).count();
                    if swapped.len() != args.len() || count != swap_dests.len() {
                        out.push(Diagnostic::MalformedCall { function: name(), block: b.id, value: i.dest });
                    }
                    if let Callee::Builtin(builtin) = callee {
                        if *builtin != Builtin::ExpectLen && !builtin.accepts(swapped) {
                            out.push(Diagnostic::MalformedCall { function: name(), block: b.id, value: i.dest });
                        }
                    }
                    if let (Callee::Function(g), Some(p)) = (callee, program) {
                        if p.function(g).is_none() {
                            out.push(Diagnostic::UnknownFunction { function: name(), callee: g.clone() });
                        }
                    }
                }
                Op::MakeClosure { func, .. } => {
                    if let Some(p) = program {
                        if p.function(func).is_none() {
                            out.push(Diagnostic::UnknownFunction { function: name(), callee: func.clone() });
                        }
                    }
                }
                _ => {}
            }
        }
        for e in b.terminator.edges() {
            if !block_ok(e.target) {
                out.push(Diagnostic::UnknownBlock { function: name(), block: b.id, target: e.target });
                continue;
            }
            let expected = f.block(e.target).params.len();
            if expected != e.args.len() {
                out.push(Diagnostic::EdgeArity {
                    function: name(),
                    block: b.id,
                    target: e.target,
                    expected,
                    found: e.args.len(),
                });
            }
        }
        if let Terminator::Return { finals, .. } = &b.terminator {
            if finals.len() != swapped_params {
                out.push(Diagnostic::ReturnArity { function: name(), block: b.id });
            }
        }
    }

    // Dominance of every use.
    let doms = dominators(f);
    for (bi, b) in f.blocks.iter().enumerate() {
        let Some(my_doms) = &doms[bi] else { continue };
        let mut local: HashSet<ValueId> = b.params.iter().copied().collect();
        let check = |v: ValueId, local: &HashSet<ValueId>, out: &mut Vec<Diagnostic>| {
            let ok = local.contains(&v)
                || match def_block.get(v.index()).copied().flatten() {
                    Some(d) => d != bi && my_doms.contains(&d),
                    None => false,
                };
            if !ok {
                out.push(Diagnostic::UseBeforeDef { function: name(), block: b.id, value: v });
            }
        };
        for i in &b.instrs {
            for v in i.op.operands() {
                check(v, &local, out);
            }
            local.extend(i.defs());
        }
        for v in b.terminator.operands() {
            check(v, &local, out);
        }
    }
}

/// Dominator sets per block; `None` for blocks unreachable from the entry.
fn dominators(f: &IrFunction) -> Vec<Option<HashSet<usize>>> {
    let n = f.blocks.len();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut reachable = vec![false; n];
    let mut stack = vec![f.entry.index()];
    while let Some(b) = stack.pop() {
        if std::mem::replace(&mut reachable[b], true) {
            continue;
        }
        for e in f.blocks[b].terminator.edges() {
            if e.target.index() < n {
                preds[e.target.index()].push(b);
                stack.push(e.target.index());
            }
        }
    }
    let all: HashSet<usize> = (0..n).filter(|b| reachable[*b]).collect();
    let mut doms: Vec<Option<HashSet<usize>>> =
        (0..n).map(|b| reachable[b].then(|| all.clone())).collect();
    let entry = f.entry.index();
    doms[entry] = Some(HashSet::from([entry]));
    let mut changed = true;
    while changed {
        changed = false;
        for b in 0..n {
            if b == entry || !reachable[b] {
                continue;
            }
            let mut new: Option<HashSet<usize>> = None;
            for p in &preds[b] {
                let Some(pd) = &doms[*p] else { continue };
                new = Some(match new {
                    None => pd.clone(),
                    Some(acc) => acc.intersection(pd).copied().collect(),
                });
            }
            let mut new = new.unwrap_or_default();
            new.insert(b);
            if doms[b].as_ref() != Some(&new) {
                doms[b] = Some(new);
                changed = true;
            }
        }
    }
    doms
}
