//! Forward-mode differentiation by dual numbers.
//!
//! Every value of the source function gets a tangent id next to it. Values
//! that cannot depend on the differentiated parameter (found by a forward
//! activity analysis) share a unit tangent, and every block parameter is
//! doubled with a tangent parameter. Callees reached with tangent-carrying
//! arguments get a variant `g##jvp.<mask>` that takes the tangents of the
//! marked parameters as extra arguments and returns `(primal, tangent)`.

use std::collections::{HashSet, VecDeque};

use super::{purity_gate, TransformError};
use crate::builtin::Builtin;
use crate::ssa::{Block, Callee, Const, Edge, Instr, IrFunction, IrParam, IrProgram, Op, PrimOp, Terminator, ValueId};

/// Name of the derivative of `name` produced by [`forward_diff`].
pub fn derivative_name(name: &str) -> String {
    format!("{name}##d")
}

fn jvp_name(name: &str, mask: &[bool]) -> String {
    let bits: String = mask.iter().map(|b| if *b { '1' } else { '0' }).collect();
    format!("{name}##jvp.{bits}")
}

/// Adds `name##d` to the program. It takes the same parameters as `name`
/// and returns the tuple `(value, derivative)` with respect to parameter
/// `wrt`.
pub fn forward_diff(program: &IrProgram, name: &str, wrt: usize) -> Result<IrProgram, TransformError> {
    let diagnostics = purity_gate(program);
    if !diagnostics.is_empty() {
        return Err(TransformError::Rejected(diagnostics));
    }
    let f = program.function(name).ok_or_else(|| TransformError::UnknownFunction(name.to_string()))?;
    if wrt >= f.params.len() {
        return Err(TransformError::BadParameter { function: name.to_string(), index: wrt, count: f.params.len() });
    }
    let mut out = program.clone();
    let mut pending = VecDeque::new();
    let mut requested = HashSet::new();
    let mask: Vec<bool> = (0..f.params.len()).map(|i| i == wrt).collect();
    let d = derive(f, &mask, Mode::Seed(wrt), derivative_name(name), &mut pending)?;
    out.functions.insert(d.name.clone(), d);
    while let Some((g, mask)) = pending.pop_front() {
        let gname = jvp_name(&g, &mask);
        if !requested.insert(gname.clone()) {
            continue;
        }
        let gf = program.function(&g).ok_or_else(|| TransformError::UnknownFunction(g.clone()))?;
        let d = derive(gf, &mask, Mode::Jvp, gname, &mut pending)?;
        out.functions.insert(d.name.clone(), d);
    }
    let diagnostics = purity_gate(&out);
    if !diagnostics.is_empty() {
        return Err(TransformError::Rejected(diagnostics));
    }
    Ok(out)
}

#[derive(Clone, Copy)]
enum Mode {
    /// The tangent of this parameter is the constant 1.
    Seed(usize),
    /// Tangents of active parameters arrive as extra trailing parameters.
    Jvp,
}

fn is_arith(op: PrimOp) -> bool {
    matches!(op, PrimOp::Add | PrimOp::Sub | PrimOp::Mul | PrimOp::Div | PrimOp::Neg)
}

/// Values that may depend on the active parameters.
fn activity(f: &IrFunction, active_params: &[bool]) -> Vec<bool> {
    let mut active = vec![false; f.value_count()];
    for (p, a) in f.params.iter().zip(active_params) {
        active[p.value.index()] = *a;
    }
    let mut changed = true;
    while changed {
        changed = false;
        let mut mark = |v: ValueId, active: &mut Vec<bool>| {
            if !active[v.index()] {
                active[v.index()] = true;
                changed = true;
            }
        };
        for b in &f.blocks {
            for i in &b.instrs {
                let any = i.op.operands().iter().any(|o| active[o.index()]);
                let result = match &i.op {
                    Op::Prim(op, _) => is_arith(*op),
                    Op::Call { callee: Callee::Builtin(Builtin::Float), .. } => true,
                    Op::Call { callee: Callee::Function(_), .. } => true,
                    _ => false,
                };
                if any && result {
                    mark(i.dest, &mut active);
                }
            }
            for e in b.terminator.edges() {
                let target = f.block(e.target);
                for (a, p) in e.args.iter().zip(&target.params) {
                    if active[a.index()] {
                        mark(*p, &mut active);
                    }
                }
            }
        }
    }
    active
}

/// Rejects instructions that would need a tangent through an aggregate,
/// string or closure.
fn check_differentiable(f: &IrFunction, active: &[bool]) -> Result<(), TransformError> {
    let refuse = |block, what: String| {
        Err(TransformError::NonDifferentiableOp { function: f.name.clone(), block, op: what })
    };
    for b in &f.blocks {
        let block = b.id.to_string();
        for i in &b.instrs {
            let is_active = |v: &ValueId| active[v.index()];
            if !i.op.operands().iter().any(is_active) {
                continue;
            }
            match &i.op {
                Op::Prim(..) => {}
                Op::Call { callee: Callee::Builtin(b), .. } => match b {
                    Builtin::Float | Builtin::Int | Builtin::Print | Builtin::Len => {}
                    other => return refuse(block, other.name().to_string()),
                },
                Op::Call { callee: Callee::Function(g), args, swapped, .. } => {
                    if args.iter().zip(swapped).any(|(a, s)| *s && is_active(a)) {
                        return refuse(block, format!("swapped argument of {g}"));
                    }
                }
                Op::Call { callee: Callee::Value(_), .. } => return refuse(block, "closure call".into()),
                Op::MakeArray(_) => return refuse(block, "array".into()),
                Op::MakeTuple(_) => return refuse(block, "tuple".into()),
                Op::MakeRecord(_) => return refuse(block, "record".into()),
                Op::MakeClosure { .. } => return refuse(block, "closure".into()),
                Op::Const(_) => {}
            }
        }
        if let Terminator::Return { finals, .. } = &b.terminator {
            if finals.iter().any(|v| active[v.index()]) {
                return refuse(block, "swapped parameter".into());
            }
        }
    }
    Ok(())
}

struct Builder {
    names: Vec<Option<String>>,
    instrs: Vec<Instr>,
}

impl Builder {
    fn fresh(&mut self, name: Option<String>) -> ValueId {
        self.names.push(name);
        ValueId(self.names.len() as u32 - 1)
    }

    fn emit(&mut self, op: Op) -> ValueId {
        let dest = self.fresh(None);
        self.instrs.push(Instr { dest, op });
        dest
    }

    fn prim(&mut self, op: PrimOp, args: &[ValueId]) -> ValueId {
        self.emit(Op::Prim(op, args.to_vec()))
    }
}

fn derive(
    f: &IrFunction,
    active_params: &[bool],
    mode: Mode,
    name: String,
    pending: &mut VecDeque<(String, Vec<bool>)>,
) -> Result<IrFunction, TransformError> {
    let active = activity(f, active_params);
    check_differentiable(f, &active)?;
    if f.blocks.iter().any(|b| b.terminator.edges().iter().any(|e| e.target == f.entry)) {
        return Err(TransformError::Internal(format!("{}: the entry block has predecessors", f.name)));
    }
    let mut bld = Builder { names: f.value_names.clone(), instrs: Vec::new() };
    let tangent_name = |v: ValueId| f.value_name(v).map(|n| format!("d{n}"));
    let mut tan: Vec<Option<ValueId>> = vec![None; f.value_count()];

    // Constants shared by the whole function, defined first in the entry.
    let unit = bld.emit(Op::Const(Const::Unit));
    let zero = bld.emit(Op::Const(Const::Float(0.0)));
    let mut params = f.params.clone();
    let mut entry_params: Vec<ValueId> = f.params.iter().map(|p| p.value).collect();
    match mode {
        Mode::Seed(wrt) => {
            let one = bld.emit(Op::Const(Const::Float(1.0)));
            tan[f.params[wrt].value.index()] = Some(one);
        }
        Mode::Jvp => {
            for (p, a) in f.params.iter().zip(active_params) {
                if *a {
                    let dp = bld.fresh(tangent_name(p.value));
                    tan[p.value.index()] = Some(dp);
                    params.push(IrParam { value: dp, swapped: false });
                    entry_params.push(dp);
                }
            }
        }
    }
    let prologue = std::mem::take(&mut bld.instrs);

    // Doubled parameters of the other blocks.
    let mut block_params: Vec<Vec<ValueId>> = Vec::with_capacity(f.blocks.len());
    for b in &f.blocks {
        if b.id == f.entry {
            block_params.push(entry_params.clone());
            continue;
        }
        let mut ps = b.params.clone();
        for p in &b.params {
            let dp = bld.fresh(tangent_name(*p));
            tan[p.index()] = Some(dp);
            ps.push(dp);
        }
        block_params.push(ps);
    }

    let mut blocks = Vec::with_capacity(f.blocks.len());
    for b in &f.blocks {
        if b.id == f.entry {
            bld.instrs = prologue.clone();
        }
        for i in &b.instrs {
            let is_active = |v: ValueId| active[v.index()];
            let t = |v: ValueId, tan: &Vec<Option<ValueId>>| if is_active(v) { tan[v.index()].unwrap_or(zero) } else { zero };
            match &i.op {
                Op::Call { callee: Callee::Function(g), args, swapped, swap_dests } if is_active(i.dest) => {
                    let mask: Vec<bool> = args.iter().map(|a| is_active(*a)).collect();
                    let mut new_args = args.clone();
                    let mut new_swapped = swapped.clone();
                    for a in args.iter().filter(|a| is_active(**a)) {
                        new_args.push(t(*a, &tan));
                        new_swapped.push(false);
                    }
                    let pair = bld.fresh(None);
                    bld.instrs.push(Instr {
                        dest: pair,
                        op: Op::Call {
                            callee: Callee::Function(jvp_name(g, &mask)),
                            args: new_args,
                            swapped: new_swapped,
                            swap_dests: swap_dests.clone(),
                        },
                    });
                    pending.push_back((g.clone(), mask));
                    let k0 = bld.emit(Op::Const(Const::Int(0)));
                    let k1 = bld.emit(Op::Const(Const::Int(1)));
                    bld.instrs.push(Instr { dest: i.dest, op: get(pair, k0) });
                    let dt = bld.emit(get(pair, k1));
                    tan[i.dest.index()] = Some(dt);
                }
                op => {
                    bld.instrs.push(i.clone());
                    if !is_active(i.dest) {
                        continue;
                    }
                    let dt = match op {
                        Op::Prim(p, args) => {
                            let a = args[0];
                            let (ta, aa) = (t(a, &tan), is_active(a));
                            if *p == PrimOp::Neg {
                                bld.prim(PrimOp::Neg, &[ta])
                            } else {
                                let b = args[1];
                                let (tb, ab) = (t(b, &tan), is_active(b));
                                match (p, aa, ab) {
                                    (PrimOp::Add, true, true) => bld.prim(PrimOp::Add, &[ta, tb]),
                                    (PrimOp::Add | PrimOp::Sub, true, false) => ta,
                                    (PrimOp::Add, false, _) => tb,
                                    (PrimOp::Sub, true, true) => bld.prim(PrimOp::Sub, &[ta, tb]),
                                    (PrimOp::Sub, false, _) => bld.prim(PrimOp::Neg, &[tb]),
                                    (PrimOp::Mul, true, true) => {
                                        let x = bld.prim(PrimOp::Mul, &[a, tb]);
                                        let y = bld.prim(PrimOp::Mul, &[b, ta]);
                                        bld.prim(PrimOp::Add, &[x, y])
                                    }
                                    (PrimOp::Mul, true, false) => bld.prim(PrimOp::Mul, &[b, ta]),
                                    (PrimOp::Mul, false, _) => bld.prim(PrimOp::Mul, &[a, tb]),
                                    (PrimOp::Div, true, false) => bld.prim(PrimOp::Div, &[ta, b]),
                                    (PrimOp::Div, _, _) => {
                                        let x = bld.prim(PrimOp::Mul, &[ta, b]);
                                        let y = bld.prim(PrimOp::Mul, &[a, tb]);
                                        let num = bld.prim(PrimOp::Sub, &[x, y]);
                                        let den = bld.prim(PrimOp::Mul, &[b, b]);
                                        bld.prim(PrimOp::Div, &[num, den])
                                    }
                                    _ => return Err(TransformError::Internal(format!("no tangent rule for {}", p.name()))),
                                }
                            }
                        }
                        Op::Call { callee: Callee::Builtin(Builtin::Float), args, .. } => t(args[0], &tan),
                        _ => return Err(TransformError::Internal(format!("no tangent rule for {}", i.dest))),
                    };
                    tan[i.dest.index()] = Some(dt);
                }
            }
        }
        let double = |e: &Edge, tan: &Vec<Option<ValueId>>| {
            let target = f.block(e.target);
            let mut args = e.args.clone();
            for (a, p) in e.args.iter().zip(&target.params) {
                args.push(match (active[p.index()], active[a.index()]) {
                    (false, _) => unit,
                    (true, false) => zero,
                    (true, true) => tan[a.index()].unwrap_or(zero),
                });
            }
            Edge { target: e.target, args }
        };
        let terminator = match &b.terminator {
            Terminator::Jump(e) => Terminator::Jump(double(e, &tan)),
            Terminator::Branch { cond, then_edge, else_edge } => Terminator::Branch {
                cond: *cond,
                then_edge: double(then_edge, &tan),
                else_edge: double(else_edge, &tan),
            },
            Terminator::Return { value, finals } => {
                let dv = if active[value.index()] { tan[value.index()].unwrap_or(zero) } else { zero };
                let pair = bld.emit(Op::MakeTuple(vec![*value, dv]));
                Terminator::Return { value: pair, finals: finals.clone() }
            }
        };
        blocks.push(Block {
            id: b.id,
            params: block_params[b.id.index()].clone(),
            instrs: std::mem::take(&mut bld.instrs),
            terminator,
        });
    }

    let mut out = IrFunction { name, params, entry: f.entry, blocks, value_names: bld.names };
    out.renumber_values();
    Ok(out)
}

fn get(pair: ValueId, index: ValueId) -> Op {
    Op::Call { callee: Callee::Builtin(Builtin::Get), args: vec![pair, index], swapped: vec![false, false], swap_dests: Vec::new() }
}
