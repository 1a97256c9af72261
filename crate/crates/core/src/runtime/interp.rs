//! Evaluator for block-form programs.
//!
//! Before running, every function is annotated with liveness: an operand
//! whose value is not needed afterwards is moved out of the frame instead of
//! cloned. Results nobody reads are dropped at once. A jump or return drops
//! the values its target does not need. Reference counts therefore track
//! the holders that can still observe a value, so an update finds its cell
//! unique exactly when no one else can see the change.

use std::io::Write;
use std::rc::Rc;

use indexmap::IndexMap;

use super::error::{EvalError, RuntimeError, MAX_CALL_DEPTH};
use super::stats::{EvalConfig, ReuseStats};
use super::value::{alloc, make_mut, ClosureData, Value};
use crate::builtin::Builtin;
use crate::ssa::{Callee, Const, IrFunction, IrProgram, Op, PrimOp, Terminator, ValueId};

type EResult<T> = Result<T, EvalError>;


/// Outcome of [`call`].
#[derive(Debug, Clone)]
pub struct CallOutcome {
    pub result: Value,
    /// Final values of the swapped parameters, in parameter order.
    pub swapped: Vec<Value>,
    pub stats: ReuseStats,
    pub output: String,
}

/// Outcome of [`run_program`].
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub exit: Value,
    pub stats: ReuseStats,
    pub output: String,
}

/// Calls function `name` with `args`, capturing printed output.
pub fn call(program: &IrProgram, name: &str, args: Vec<Value>, config: EvalConfig) -> Result<CallOutcome, RuntimeError> {
    let mut buf = Vec::new();
    let mut interp = Interpreter::new(program, config, &mut buf);
    let (result, swapped) = interp.call(name, args)?;
    let stats = interp.stats();
    drop(interp);
    Ok(CallOutcome { result, swapped, stats, output: String::from_utf8_lossy(&buf).into_owned() })
}

/// Runs `main`, capturing printed output.
pub fn run_program(program: &IrProgram, config: EvalConfig) -> Result<RunOutcome, RuntimeError> {
    let mut buf = Vec::new();
    let mut interp = Interpreter::new(program, config, &mut buf);
    let exit = interp.run_main()?;
    let stats = interp.stats();
    drop(interp);
    Ok(RunOutcome { exit, stats, output: String::from_utf8_lossy(&buf).into_owned() })
}

/// Per-instruction plan: which operands to move and which results to keep.
struct InstrPlan {
    operands: Vec<ValueId>,
    moves: Vec<bool>,
    defs: Vec<ValueId>,
    keep: Vec<bool>,
}

struct EdgePlan {
    moves: Vec<bool>,
    drops: Vec<ValueId>,
}

struct BlockPlan {
    keep_params: Vec<bool>,
    instrs: Vec<InstrPlan>,
    edges: Vec<EdgePlan>,
    ret_moves: Vec<bool>,
}

struct Plan {
    blocks: Vec<BlockPlan>,
}

/// A small fixed-size bit set over value ids.
#[derive(Clone, PartialEq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn has(&self, v: ValueId) -> bool {
        self.0[v.index() / 64] >> (v.index() % 64) & 1 == 1
    }
    fn set(&mut self, v: ValueId) {
        self.0[v.index() / 64] |= 1 << (v.index() % 64);
    }
    fn unset(&mut self, v: ValueId) {
        self.0[v.index() / 64] &= !(1 << (v.index() % 64));
    }
    fn union(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
    fn iter(&self) -> impl Iterator<Item = ValueId> + '_ {
        self.0.iter().enumerate().flat_map(|(w, bits)| {
            (0..64).filter(move |i| bits >> i & 1 == 1).map(move |i| ValueId((w * 64 + i) as u32))
        })
    }
}

fn plan(f: &IrFunction) -> Plan {
    let n = f.value_count();
    let nb = f.blocks.len();
    // Upward-exposed uses and definitions per block.
    let mut uses = vec![Bits::new(n); nb];
    let mut defs = vec![Bits::new(n); nb];
    for (bi, b) in f.blocks.iter().enumerate() {
        for p in &b.params {
            defs[bi].set(*p);
        }
        for i in &b.instrs {
            for o in i.op.operands() {
                if !defs[bi].has(o) {
                    uses[bi].set(o);
                }
            }
            for d in i.defs() {
                defs[bi].set(d);
            }
        }
        for o in b.terminator.operands() {
            if !defs[bi].has(o) {
                uses[bi].set(o);
            }
        }
    }
    let mut live_in = uses.clone();
    let mut changed = true;
    while changed {
        changed = false;
        for bi in (0..nb).rev() {
            let mut out = Bits::new(n);
            for e in f.blocks[bi].terminator.edges() {
                out.union(&live_in[e.target.index()]);
            }
            let mut inn = uses[bi].clone();
            for v in out.iter() {
                if !defs[bi].has(v) {
                    inn.set(v);
                }
            }
            if inn != live_in[bi] {
                live_in[bi] = inn;
                changed = true;
            }
        }
    }

    let mut blocks = Vec::with_capacity(nb);
    for (bi, b) in f.blocks.iter().enumerate() {
        let mut live = Bits::new(n);
        for e in b.terminator.edges() {
            live.union(&live_in[e.target.index()]);
        }
        for o in b.terminator.operands() {
            live.set(o);
        }
        let mut edges = Vec::new();
        let mut ret_moves = Vec::new();
        match &b.terminator {
            Terminator::Return { value, finals } => {
                let mut all = vec![*value];
                all.extend(finals);
                ret_moves = (0..all.len()).map(|k| !all[k + 1..].contains(&all[k])).collect();
            }
            term => {
                for e in term.edges() {
                    let target = &live_in[e.target.index()];
                    let moves: Vec<bool> = (0..e.args.len())
                        .map(|k| !target.has(e.args[k]) && !e.args[k + 1..].contains(&e.args[k]))
                        .collect();
                    let drops = live.iter().filter(|v| !target.has(*v) && !e.args.contains(v)).collect();
                    edges.push(EdgePlan { moves, drops });
                }
            }
        }
        let mut instrs = Vec::with_capacity(b.instrs.len());
        for i in b.instrs.iter().rev() {
            let ds = i.defs();
            let keep: Vec<bool> = ds.iter().map(|d| live.has(*d)).collect();
            for d in &ds {
                live.unset(*d);
            }
            let ops = i.op.operands();
            let mut moves = vec![false; ops.len()];
            for k in (0..ops.len()).rev() {
                moves[k] = !live.has(ops[k]);
                live.set(ops[k]);
            }
            instrs.push(InstrPlan { operands: ops, moves, defs: ds, keep });
        }
        instrs.reverse();
        let keep_params = b.params.iter().map(|p| live.has(*p)).collect();
        debug_assert!(bi < nb);
        blocks.push(BlockPlan { keep_params, instrs, edges, ret_moves });
    }
    Plan { blocks }
}

struct Frame {
    slots: Vec<Value>,
    /// Block invocation in which each slot was last written.
    stamps: Vec<u64>,
    invocation: u64,
}

impl Frame {
    fn take(&mut self, v: ValueId, mv: bool) -> Value {
        if mv {
            std::mem::take(&mut self.slots[v.index()])
        } else {
            self.slots[v.index()].clone()
        }
    }

    fn write(&mut self, v: ValueId, value: Value) -> EResult<()> {
        let i = v.index();
        if self.stamps[i] == self.invocation {
            return Err(EvalError::Internal(format!("{v} written twice in one block invocation")));
        }
        self.stamps[i] = self.invocation;
        self.slots[i] = value;
        Ok(())
    }
}

pub struct Interpreter<'p, W: Write> {
    program: &'p IrProgram,
    plans: Rc<Vec<Plan>>,
    config: EvalConfig,
    stats: ReuseStats,
    steps: u64,
    depth: usize,
    out: W,
    trace: Option<Box<dyn Write + 'p>>,
}

impl<'p, W: Write> Interpreter<'p, W> {
    pub fn new(program: &'p IrProgram, config: EvalConfig, out: W) -> Self {
        let plans = Rc::new(program.functions.values().map(plan).collect());
        let trace: Option<Box<dyn Write + 'p>> =
            if config.trace { Some(Box::new(std::io::stderr())) } else { None };
        Interpreter { program, plans, config, stats: ReuseStats::default(), steps: 0, depth: 0, out, trace }
    }

    /// Sends trace lines to `sink` instead of standard error.
    pub fn with_trace_sink(mut self, sink: impl Write + 'p) -> Self {
        self.trace = Some(Box::new(sink));
        self
    }

    pub fn stats(&self) -> ReuseStats {
        self.stats
    }

    pub fn run_main(&mut self) -> Result<Value, RuntimeError> {
        match self.program.function("main") {
            Some(f) if f.params.is_empty() => Ok(self.call("main", Vec::new())?.0),
            _ => Err(EvalError::NoMain.into()),
        }
    }

    /// Calls a function by name. Returns its result and the final values of
    /// its swapped parameters.
    pub fn call(&mut self, name: &str, args: Vec<Value>) -> Result<(Value, Vec<Value>), RuntimeError> {
        let Some(index) = self.program.functions.get_index_of(name) else {
            return Err(EvalError::UnknownFunction(name.to_string()).into());
        };
        let f = &self.program.functions[index];
        if f.params.len() != args.len() {
            return Err(EvalError::ArityMismatch {
                name: name.to_string(),
                expected: f.params.len(),
                found: args.len(),
            }
            .into());
        }
        self.invoke(index, args)
    }

    fn tick(&mut self) -> EResult<()> {
        self.steps += 1;
        match self.config.max_steps {
            Some(max) if self.steps > max => Err(EvalError::StepBudgetExceeded(max)),
            _ => Ok(()),
        }
    }

    fn invoke(&mut self, index: usize, args: Vec<Value>) -> Result<(Value, Vec<Value>), RuntimeError> {
        if self.depth >= MAX_CALL_DEPTH {
            return Err(EvalError::CallDepthExceeded(MAX_CALL_DEPTH).into());
        }
        self.depth += 1;
        let result = stacker::maybe_grow(64 * 1024, 1024 * 1024, || self.invoke_inner(index, args));
        self.depth -= 1;
        result
    }

    fn invoke_inner(&mut self, index: usize, args: Vec<Value>) -> Result<(Value, Vec<Value>), RuntimeError> {
        let program = self.program;
        let f = &program.functions[index];
        let plans = Rc::clone(&self.plans);
        let n = f.value_count();
        let mut frame = Frame { slots: vec![Value::Unit; n], stamps: vec![0; n], invocation: 0 };
        let mut block = f.entry;
        let mut incoming = args;
        loop {
            frame.invocation += 1;
            let b = f.block(block);
            let bp = &plans[index].blocks[block.index()];
            let located = |e: EvalError| RuntimeError {
                kind: e,
                function: Some(f.name.clone()),
                block: Some(block.to_string()),
            };
            for ((p, v), keep) in b.params.iter().zip(incoming.drain(..)).zip(&bp.keep_params) {
                if *keep {
                    frame.write(*p, v).map_err(located)?;
                }
            }
            for (k, ins) in b.instrs.iter().enumerate() {
                self.tick().map_err(located)?;
                let ip = &plans[index].blocks[block.index()].instrs[k];
                let mut vals: Vec<Value> =
                    ip.operands.iter().zip(&ip.moves).map(|(o, mv)| frame.take(*o, *mv)).collect();
                if let Some(t) = self.trace.as_mut() {
                    let shown: Vec<String> = vals.iter().map(Value::render).collect();
                    let _ = writeln!(t, "{} {}: {} = {} [{}]", f.name, block, ins.dest, op_label(&ins.op), shown.join(", "));
                }
                let defs = match &ins.op {
                    Op::Const(c) => vec![const_value(c)],
                    Op::Prim(op, _) => vec![prim(*op, &mut vals).map_err(located)?],
                    Op::MakeArray(_) => vec![Value::Array(alloc(vals, &mut self.stats))],
                    Op::MakeTuple(_) => vec![Value::Tuple(alloc(vals, &mut self.stats))],
                    Op::MakeRecord(fields) => {
                        let map: IndexMap<String, Value> =
                            fields.iter().map(|(k, _)| k.clone()).zip(vals).collect();
                        vec![Value::Record(alloc(map, &mut self.stats))]
                    }
                    Op::MakeClosure { func, .. } => {
                        let data = ClosureData { func: Rc::from(func.as_str()), captured: vals };
                        vec![Value::Closure(alloc(data, &mut self.stats))]
                    }
                    Op::Call { callee, swapped, .. } => {
                        let (result, finals) = match callee {
                            Callee::Builtin(bi) => {
                                check_builtin(*bi, swapped).map_err(located)?;
                                self.builtin(*bi, vals).map_err(located)?
                            }
                            Callee::Function(name) => {
                                let Some(gi) = program.functions.get_index_of(name) else {
                                    return Err(located(EvalError::UnknownFunction(name.clone())));
                                };
                                let g = &program.functions[gi];
                                check_signature(&g.name, &g.swap_signature(), swapped).map_err(located)?;
                                self.invoke(gi, vals)?
                            }
                            Callee::Value(_) => {
                                let mut it = vals.into_iter();
                                let target = it.next().unwrap_or_default();
                                let Value::Closure(c) = target else {
                                    return Err(located(EvalError::type_error(format!(
                                        "cannot call {}",
                                        target.kind()
                                    ))));
                                };
                                let (func, captured) = match Rc::try_unwrap(c) {
                                    Ok(node) => {
                                        let d = node.into_inner();
                                        (d.func, d.captured)
                                    }
                                    Err(shared) => (shared.func.clone(), shared.captured.clone()),
                                };
                                let Some(gi) = program.functions.get_index_of(&*func) else {
                                    return Err(located(EvalError::UnknownFunction(func.to_string())));
                                };
                                let g = &program.functions[gi];
                                let sig = g.swap_signature();
                                let own = &sig[captured.len().min(sig.len())..];
                                let shown = if func.contains('$') { "<closure>" } else { &*func };
                                check_signature(shown, own, swapped).map_err(located)?;
                                let mut args = captured;
                                args.extend(it);
                                self.invoke(gi, args)?
                            }
                        };
                        let mut out = Vec::with_capacity(1 + finals.len());
                        out.push(result);
                        out.extend(finals);
                        out
                    }
                };
                for ((d, v), keep) in ip.defs.iter().zip(defs).zip(&ip.keep) {
                    if *keep {
                        frame.write(*d, v).map_err(located)?;
                    }
                }
            }
            self.tick().map_err(located)?;
            let (edge_index, edge) = match &b.terminator {
                Terminator::Return { value, finals } => {
                    let mut all = vec![*value];
                    all.extend(finals);
                    let mut vals = all.iter().zip(&bp.ret_moves).map(|(v, mv)| frame.take(*v, *mv));
                    let result = vals.next().unwrap_or_default();
                    let finals = vals.collect();
                    return Ok((result, finals));
                }
                Terminator::Jump(e) => (0, e),
                Terminator::Branch { cond, then_edge, else_edge } => match &frame.slots[cond.index()] {
                    Value::Bool(true) => (0, then_edge),
                    Value::Bool(false) => (1, else_edge),
                    other => {
                        return Err(located(EvalError::type_error(format!(
                            "condition must be bool, got {}",
                            other.kind()
                        ))))
                    }
                },
            };
            let ep = &plans[index].blocks[block.index()].edges[edge_index];
            incoming = edge.args.iter().zip(&ep.moves).map(|(v, mv)| frame.take(*v, *mv)).collect();
            for d in &ep.drops {
                frame.slots[d.index()] = Value::Unit;
            }
            block = edge.target;
        }
    }

    fn builtin(&mut self, b: Builtin, args: Vec<Value>) -> EResult<(Value, Vec<Value>)> {
        let reuse = self.config.reuse_enabled;
        let mut args = args.into_iter();
        let mut next = || args.next().unwrap_or_default();
        let none = Vec::new();
        Ok(match b {
            Builtin::Print => {
                let mut parts = Vec::new();
                for v in args.by_ref() {
                    parts.push(v.render());
                }
                writeln!(self.out, "{}", parts.join(" ")).map_err(|e| EvalError::Output(e.to_string()))?;
                (Value::Unit, none)
            }
            Builtin::Len => match next() {
                Value::Array(xs) | Value::Tuple(xs) => (Value::Int(xs.len() as i64), none),
                Value::Record(fs) => (Value::Int(fs.len() as i64), none),
                Value::Str(s) => (Value::Int(s.chars().count() as i64), none),
                other => return Err(EvalError::type_error(format!("len of {}", other.kind()))),
            },
            Builtin::Get => {
                let c = next();
                let k = next();
                (get(&c, &k)?, none)
            }
            Builtin::Append => match (next(), next()) {
                (Value::Array(mut cell), x) => {
                    let xs = make_mut(&mut cell, reuse, &mut self.stats);
                    if xs.len() == xs.capacity() {
                        self.stats.allocations += 1;
                    }
                    xs.push(x);
                    (Value::Unit, vec![Value::Array(cell)])
                }
                (other, _) => return Err(EvalError::type_error(format!("append to {}", other.kind()))),
            },
            Builtin::Pop => match next() {
                Value::Array(mut cell) => {
                    if cell.is_empty() {
                        return Err(EvalError::IndexOutOfBounds { index: -1, len: 0 });
                    }
                    let x = make_mut(&mut cell, reuse, &mut self.stats).pop().unwrap_or_default();
                    (x, vec![Value::Array(cell)])
                }
                other => return Err(EvalError::type_error(format!("pop from {}", other.kind()))),
            },
            Builtin::Set => {
                let c = next();
                let k = next();
                let v = next();
                let c = match (c, &k) {
                    (Value::Array(mut cell), _) => {
                        let i = index_of(&k, cell.len())?;
                        make_mut(&mut cell, reuse, &mut self.stats)[i] = v;
                        Value::Array(cell)
                    }
                    (Value::Record(mut cell), Value::Str(key)) => {
                        make_mut(&mut cell, reuse, &mut self.stats).insert(key.to_string(), v);
                        Value::Record(cell)
                    }
                    (c, k) => {
                        return Err(EvalError::type_error(format!("cannot update {} of {}", k.kind(), c.kind())))
                    }
                };
                (Value::Unit, vec![c])
            }
            Builtin::Extract => {
                let c = next();
                let k = next();
                let (component, c) = match (c, &k) {
                    (Value::Array(mut cell), _) => {
                        let i = index_of(&k, cell.len())?;
                        let x = std::mem::take(&mut make_mut(&mut cell, reuse, &mut self.stats)[i]);
                        (x, Value::Array(cell))
                    }
                    (Value::Record(mut cell), Value::Str(key)) => {
                        if !cell.contains_key(&**key) {
                            return Err(EvalError::UnknownField(key.to_string()));
                        }
                        let slot = make_mut(&mut cell, reuse, &mut self.stats)
                            .get_mut(&**key)
                            .expect("field checked above");
                        (std::mem::take(slot), Value::Record(cell))
                    }
                    (c, k) => {
                        return Err(EvalError::type_error(format!("cannot update {} of {}", k.kind(), c.kind())))
                    }
                };
                (component, vec![c])
            }
            Builtin::Str => (Value::str(&next().render()), none),
            Builtin::Float => match next() {
                Value::Int(n) => (Value::Float(n as f64), none),
                Value::Float(x) => (Value::Float(x), none),
                other => return Err(EvalError::type_error(format!("float of {}", other.kind()))),
            },
            Builtin::Int => match next() {
                Value::Int(n) => (Value::Int(n), none),
                Value::Float(x) => (Value::Int(x as i64), none),
                other => return Err(EvalError::type_error(format!("int of {}", other.kind()))),
            },
            Builtin::ExpectLen => {
                let v = next();
                let n = match next() {
                    Value::Int(n) => n,
                    other => return Err(EvalError::type_error(format!("length of {}", other.kind()))),
                };
                match &v {
                    Value::Array(xs) | Value::Tuple(xs) if xs.len() as i64 == n => (Value::Unit, none),
                    other => {
                        return Err(EvalError::type_error(format!(
                            "cannot destructure {} into {} names",
                            other.kind(),
                            n
                        )))
                    }
                }
            }
        })
    }
}

fn op_label(op: &Op) -> String {
    match op {
        Op::Const(c) => format!("const {}", const_value(c).render()),
        Op::Prim(p, _) => p.name().into(),
        Op::Call { callee: Callee::Builtin(b), .. } => format!("call {}", b.name()),
        Op::Call { callee: Callee::Function(f), .. } => format!("call @{f}"),
        Op::Call { .. } => "call closure".into(),
        Op::MakeArray(_) => "array".into(),
        Op::MakeTuple(_) => "tuple".into(),
        Op::MakeRecord(_) => "record".into(),
        Op::MakeClosure { func, .. } => format!("closure @{func}"),
    }
}

fn const_value(c: &Const) -> Value {
    match c {
        Const::Unit => Value::Unit,
        Const::Bool(b) => Value::Bool(*b),
        Const::Int(n) => Value::Int(*n),
        Const::Float(x) => Value::Float(*x),
        Const::Str(s) => Value::str(s),
    }
}

fn check_signature(name: &str, sig: &[bool], site: &[bool]) -> EResult<()> {
    if sig.len() != site.len() {
        return Err(EvalError::ArityMismatch { name: name.into(), expected: sig.len(), found: site.len() });
    }
    if sig != site {
        return Err(EvalError::SwapArityMismatch { name: name.into() });
    }
    Ok(())
}

fn check_builtin(b: Builtin, site: &[bool]) -> EResult<()> {
    if b == Builtin::ExpectLen {
        return Ok(());
    }
    match b.swap_signature() {
        Some(sig) => check_signature(b.name(), sig, site),
        None if b.accepts(site) => Ok(()),
        None => Err(EvalError::SwapArityMismatch { name: b.name().into() }),
    }
}

fn index_of(key: &Value, len: usize) -> EResult<usize> {
    match key {
        Value::Int(i) if *i >= 0 && (*i as usize) < len => Ok(*i as usize),
        Value::Int(i) => Err(EvalError::IndexOutOfBounds { index: *i, len }),
        other => Err(EvalError::type_error(format!("cannot index with {}", other.kind()))),
    }
}

fn get(container: &Value, key: &Value) -> EResult<Value> {
    match (container, key) {
        (Value::Array(xs) | Value::Tuple(xs), _) => Ok(xs[index_of(key, xs.len())?].clone()),
        (Value::Record(fields), Value::Str(k)) => {
            fields.get(&**k).cloned().ok_or_else(|| EvalError::UnknownField(k.to_string()))
        }
        (c, k) => Err(EvalError::type_error(format!("cannot read {} of {}", k.kind(), c.kind()))),
    }
}

fn as_f64(v: &Value) -> Option<f64> {
    match v {
        Value::Int(n) => Some(*n as f64),
        Value::Float(x) => Some(*x),
        _ => None,
    }
}

fn prim(op: PrimOp, vals: &mut [Value]) -> EResult<Value> {
    use Value::*;
    if op.arity() == 1 {
        return match (op, &vals[0]) {
            (PrimOp::Neg, Int(n)) => Ok(Int(n.wrapping_neg())),
            (PrimOp::Neg, Float(x)) => Ok(Float(-x)),
            (PrimOp::Not, Bool(b)) => Ok(Bool(!b)),
            (op, v) => Err(EvalError::type_error(format!("`{}` on {}", op.symbol(), v.kind()))),
        };
    }
    let (a, b) = (&vals[0], &vals[1]);
    let mismatch = || EvalError::type_error(format!("`{}` on {} and {}", op.symbol(), a.kind(), b.kind()));
    match op {
        PrimOp::Add | PrimOp::Sub | PrimOp::Mul | PrimOp::Div => {
            if let (Int(x), Int(y)) = (a, b) {
                return Ok(Int(match op {
                    PrimOp::Add => x.wrapping_add(*y),
                    PrimOp::Sub => x.wrapping_sub(*y),
                    PrimOp::Mul => x.wrapping_mul(*y),
                    _ => {
                        if *y == 0 {
                            return Err(EvalError::DivisionByZero);
                        }
                        x.wrapping_div(*y)
                    }
                }));
            }
            if let (PrimOp::Add, Str(x), Str(y)) = (op, a, b) {
                return Ok(Value::str(&format!("{x}{y}")));
            }
            let (x, y) = as_f64(a).zip(as_f64(b)).ok_or_else(mismatch)?;
            Ok(Float(match op {
                PrimOp::Add => x + y,
                PrimOp::Sub => x - y,
                PrimOp::Mul => x * y,
                _ => x / y,
            }))
        }
        PrimOp::Lt | PrimOp::Le | PrimOp::Gt | PrimOp::Ge => {
            let ord = match (a, b) {
                (Str(x), Str(y)) => x.partial_cmp(y),
                _ => {
                    let (x, y) = as_f64(a).zip(as_f64(b)).ok_or_else(mismatch)?;
                    x.partial_cmp(&y)
                }
            };
            use std::cmp::Ordering::*;
            Ok(Bool(match (op, ord) {
                (_, None) => false,
                (PrimOp::Lt, Some(o)) => o == Less,
                (PrimOp::Le, Some(o)) => o != Greater,
                (PrimOp::Gt, Some(o)) => o == Greater,
                (_, Some(o)) => o != Less,
            }))
        }
        PrimOp::Eq => Ok(Bool(a.deep_eq(b)?)),
        PrimOp::Ne => Ok(Bool(!a.deep_eq(b)?)),
        PrimOp::Neg | PrimOp::Not => unreachable!("unary handled above"),
    }
}
