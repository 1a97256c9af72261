//! Syntax-directed lowering of core programs to block form.
//!
//! Every block other than the entry takes as parameters the variables that
//! are assigned somewhere in the function, defined on every incoming path
//! and live at the block. Parameters that are never reassigned are read
//! directly, since their definition dominates every block.

use std::collections::HashSet;

use indexmap::{IndexMap, IndexSet};
use thiserror::Error;

use super::ir::*;
use crate::builtin::Builtin;
use crate::desugar::CoreProgram;
use crate::frontend::ast::{self, Arg, BinOp, Call, Closure, Expr, ExprKind, FnDecl, Literal, Param, Stmt, StmtKind, UnOp};
use crate::frontend::visit::{assigned_vars, closure_free_vars, count_returns, referenced_vars};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("internal lowering error in `{function}`: {message}")]
pub struct LoweringError {
    pub function: String,
    pub message: String,
}

type LResult<T> = Result<T, LoweringError>;

/// Lowers every function of `program`; lifted closures follow the function
/// that contains them.
pub fn lower_program(program: &CoreProgram) -> LResult<IrProgram> {
    let functions: HashSet<String> = program.functions.iter().map(|f| f.name.clone()).collect();
    let mut out = IrProgram::default();
    for f in &program.functions {
        let mut lifted = Vec::new();
        let func = lower_function_with(f, &functions, &mut lifted)?;
        out.functions.insert(func.name.clone(), func);
        for l in lifted {
            out.functions.insert(l.name.clone(), l);
        }
    }
    Ok(out)
}

/// Lowers one function. Closures inside it are lowered too but dropped;
/// use [`lower_program`] to keep them.
pub fn lower_function(f: &FnDecl, program: &CoreProgram) -> LResult<IrFunction> {
    let functions: HashSet<String> = program.functions.iter().map(|f| f.name.clone()).collect();
    lower_function_with(f, &functions, &mut Vec::new())
}

fn lower_function_with(f: &FnDecl, functions: &HashSet<String>, lifted: &mut Vec<IrFunction>) -> LResult<IrFunction> {
    let mut counter = 0;
    Lowerer::run(&f.name, &[], &f.params, &f.body, functions, lifted, &mut counter, &f.name)
}

type Env = IndexMap<String, ValueId>;

const PLACEHOLDER: BlockId = BlockId(u32::MAX);

/// An edge whose target block does not exist yet.
struct Pending {
    from: BlockId,
    edge: usize,
    env: Env,
    extras: Vec<ValueId>,
}

struct Building {
    params: Vec<ValueId>,
    instrs: Vec<Instr>,
    terminator: Option<Terminator>,
}

struct LoopCtx {
    header: BlockId,
    header_vars: Vec<String>,
    exits: Vec<Pending>,
}

struct Lowerer<'a> {
    name: String,
    functions: &'a HashSet<String>,
    lifted: &'a mut Vec<IrFunction>,
    closure_counter: &'a mut usize,
    top_name: &'a str,
    blocks: Vec<Building>,
    names: Vec<Option<String>>,
    cur: Option<BlockId>,
    env: Env,
    order: IndexSet<String>,
    mutable: HashSet<String>,
    swapped_params: Vec<String>,
    loops: Vec<LoopCtx>,
    /// Pending returns when the function needs a shared exit block.
    returns: Option<Vec<Pending>>,
}

impl<'a> Lowerer<'a> {
    #[allow(clippy::too_many_arguments)]
    fn run(
        name: &str,
        captured: &[String],
        params: &[Param],
        body: &ast::Block,
        functions: &'a HashSet<String>,
        lifted: &'a mut Vec<IrFunction>,
        closure_counter: &'a mut usize,
        top_name: &'a str,
    ) -> LResult<IrFunction> {
        let mut order: IndexSet<String> = captured.iter().cloned().collect();
        order.extend(params.iter().map(|p| p.name.clone()));
        order.extend(referenced_vars(body));
        let mutable: HashSet<String> = assigned_vars(body).into_iter().collect();
        let tail_return = matches!(body.last(), Some(Stmt { kind: StmtKind::Return(_), .. }));
        let shared_exit = count_returns(body) > 1 || (count_returns(body) == 1 && !tail_return);
        let mut lw = Lowerer {
            name: name.to_string(),
            functions,
            lifted,
            closure_counter,
            top_name,
            blocks: Vec::new(),
            names: Vec::new(),
            cur: None,
            env: Env::new(),
            order,
            mutable,
            swapped_params: params.iter().filter(|p| p.swapped).map(|p| p.name.clone()).collect(),
            loops: Vec::new(),
            returns: shared_exit.then(Vec::new),
        };
        let entry = lw.new_block();
        let mut ir_params = Vec::new();
        for c in captured {
            let v = lw.fresh(Some(c));
            lw.blocks[entry.index()].params.push(v);
            lw.env.insert(c.clone(), v);
            ir_params.push(IrParam { value: v, swapped: false });
        }
        for p in params {
            let v = lw.fresh(Some(&p.name));
            lw.blocks[entry.index()].params.push(v);
            lw.env.insert(p.name.clone(), v);
            ir_params.push(IrParam { value: v, swapped: p.swapped });
        }
        lw.cur = Some(entry);
        lw.block(body)?;
        if lw.cur.is_some() {
            let unit = lw.emit(Op::Const(Const::Unit))?;
            lw.ret(unit)?;
        }
        if let Some(pending) = lw.returns.take() {
            let extras = 1 + lw.swapped_params.len();
            if let Some((exit, params)) = lw.join(pending, extras, false) {
                lw.finish(exit, Terminator::Return { value: params[0], finals: params[1..].to_vec() });
            }
        }
        lw.build(ir_params, entry)
    }

    fn err<T>(&self, message: impl Into<String>) -> LResult<T> {
        Err(LoweringError { function: self.name.clone(), message: message.into() })
    }

    fn fresh(&mut self, name: Option<&str>) -> ValueId {
        let id = ValueId(self.names.len() as u32);
        self.names.push(name.map(str::to_string));
        id
    }

    fn new_block(&mut self) -> BlockId {
        let id = BlockId(self.blocks.len() as u32);
        self.blocks.push(Building { params: Vec::new(), instrs: Vec::new(), terminator: None });
        id
    }

    fn current(&self) -> LResult<BlockId> {
        match self.cur {
            Some(b) => Ok(b),
            None => self.err("statement in unreachable position"),
        }
    }

    fn emit(&mut self, op: Op) -> LResult<ValueId> {
        let dest = self.fresh(None);
        self.push(Instr { dest, op })?;
        Ok(dest)
    }

    fn push(&mut self, instr: Instr) -> LResult<()> {
        let b = self.current()?;
        self.blocks[b.index()].instrs.push(instr);
        Ok(())
    }

    fn finish(&mut self, b: BlockId, term: Terminator) {
        self.blocks[b.index()].terminator = Some(term);
        if self.cur == Some(b) {
            self.cur = None;
        }
    }

    fn lookup(&self, name: &str) -> LResult<ValueId> {
        match self.env.get(name) {
            Some(v) => Ok(*v),
            None => self.err(format!("variable `{name}` read before assignment")),
        }
    }

    fn bind(&mut self, name: &str, v: ValueId) {
        if self.names[v.index()].is_none() {
            self.names[v.index()] = Some(name.to_string());
        }
        self.env.insert(name.to_string(), v);
    }

    /// Ends the current block with a transfer whose targets are filled in
    /// later. Returns one pending edge per target.
    fn open_jump(&mut self, extras: Vec<ValueId>) -> LResult<Pending> {
        let from = self.current()?;
        let edge = Edge { target: PLACEHOLDER, args: Vec::new() };
        let env = self.env.clone();
        self.finish(from, Terminator::Jump(edge));
        Ok(Pending { from, edge: 0, env, extras })
    }

    fn open_branch(&mut self, cond: ValueId) -> LResult<(Pending, Pending)> {
        let from = self.current()?;
        let edge = Edge { target: PLACEHOLDER, args: Vec::new() };
        let env = self.env.clone();
        self.finish(from, Terminator::Branch { cond, then_edge: edge.clone(), else_edge: edge });
        Ok((
            Pending { from, edge: 0, env: env.clone(), extras: Vec::new() },
            Pending { from, edge: 1, env, extras: Vec::new() },
        ))
    }

    fn patch(&mut self, p: &Pending, target: BlockId, vars: &[String]) {
        let mut args: Vec<ValueId> = vars.iter().map(|v| p.env[v]).collect();
        args.extend(&p.extras);
        let term = self.blocks[p.from.index()].terminator.as_mut().expect("pending edge has a terminator");
        let edge = term.edges_mut().into_iter().nth(p.edge).expect("edge slot exists");
        edge.target = target;
        edge.args = args;
    }

    /// Mutable variables defined in every one of `envs`, in declaration order.
    fn common_vars(&self, envs: &[&Env]) -> Vec<String> {
        self.order
            .iter()
            .filter(|v| self.mutable.contains(*v) && envs.iter().all(|e| e.contains_key(*v)))
            .cloned()
            .collect()
    }

    /// Starts a block reached by `pending`, making it current. Returns the
    /// block and its `extras` trailing parameters.
    fn join(&mut self, pending: Vec<Pending>, extras: usize, with_vars: bool) -> Option<(BlockId, Vec<ValueId>)> {
        if pending.is_empty() {
            self.cur = None;
            return None;
        }
        let vars = if with_vars {
            self.common_vars(&pending.iter().map(|p| &p.env).collect::<Vec<_>>())
        } else {
            Vec::new()
        };
        let b = self.new_block();
        let mut env = Env::new();
        for (name, v) in &pending[0].env {
            if !self.mutable.contains(name) && pending.iter().all(|p| p.env.get(name) == Some(v)) {
                env.insert(name.clone(), *v);
            }
        }
        for name in &vars {
            let v = self.fresh(Some(name));
            self.blocks[b.index()].params.push(v);
            env.insert(name.clone(), v);
        }
        let mut extra_params = Vec::new();
        for _ in 0..extras {
            let v = self.fresh(None);
            self.blocks[b.index()].params.push(v);
            extra_params.push(v);
        }
        for p in &pending {
            self.patch(p, b, &vars);
        }
        self.env = env;
        self.cur = Some(b);
        Some((b, extra_params))
    }

    fn ret(&mut self, value: ValueId) -> LResult<()> {
        let finals = self.swapped_params.iter().map(|n| self.lookup(n)).collect::<LResult<Vec<_>>>()?;
        if self.returns.is_some() {
            let mut extras = vec![value];
            extras.extend(finals);
            let p = self.open_jump(extras)?;
            self.returns.as_mut().expect("shared exit").push(p);
        } else {
            let b = self.current()?;
            self.finish(b, Terminator::Return { value, finals });
        }
        Ok(())
    }

    fn block(&mut self, block: &ast::Block) -> LResult<()> {
        for stmt in block {
            if self.cur.is_none() {
                break;
            }
            self.stmt(stmt)?;
        }
        Ok(())
    }

    fn stmt(&mut self, stmt: &Stmt) -> LResult<()> {
        match &stmt.kind {
            StmtKind::Assign { target, value } => {
                if !target.is_plain() {
                    return self.err("assignment through a path survived desugaring");
                }
                let v = self.expr(value)?;
                self.bind(&target.root, v);
            }
            StmtKind::CompoundAssign { .. } => return self.err("compound assignment survived desugaring"),
            StmtKind::Destructure { names, value } => {
                let v = self.expr(value)?;
                let n = self.emit(Op::Const(Const::Int(names.len() as i64)))?;
                self.call_builtin(Builtin::ExpectLen, vec![v, n])?;
                for (i, name) in names.iter().enumerate() {
                    let k = self.emit(Op::Const(Const::Int(i as i64)))?;
                    let x = self.call_builtin(Builtin::Get, vec![v, k])?;
                    self.bind(name, x);
                }
            }
            StmtKind::Call(call) => {
                self.call(call)?;
            }
            StmtKind::While { cond, body } => self.while_loop(cond, body)?,
            StmtKind::If { cond, then_block, else_block } => {
                let c = self.expr(cond)?;
                let (t, e) = self.open_branch(c)?;
                let mut ends = Vec::new();
                self.join(vec![t], 0, true);
                self.block(then_block)?;
                if self.cur.is_some() {
                    ends.push(self.open_jump(Vec::new())?);
                }
                match else_block {
                    Some(b) => {
                        self.join(vec![e], 0, true);
                        self.block(b)?;
                        if self.cur.is_some() {
                            ends.push(self.open_jump(Vec::new())?);
                        }
                    }
                    None => ends.push(e),
                }
                self.join(ends, 0, true);
            }
            StmtKind::Return(value) => {
                let v = match value {
                    Some(e) => self.expr(e)?,
                    None => self.emit(Op::Const(Const::Unit))?,
                };
                self.ret(v)?;
            }
            StmtKind::Break => {
                let p = self.open_jump(Vec::new())?;
                match self.loops.last_mut() {
                    Some(l) => l.exits.push(p),
                    None => return self.err("break outside a loop"),
                }
            }
            StmtKind::Continue => self.back_edge()?,
        }
        Ok(())
    }

    fn while_loop(&mut self, cond: &Expr, body: &ast::Block) -> LResult<()> {
        let entry = self.open_jump(Vec::new())?;
        let header_vars = self.common_vars(&[&entry.env]);
        let Some((header, _)) = self.join(vec![entry], 0, true) else {
            return self.err("loop entry is unreachable");
        };
        let c = self.expr(cond)?;
        let (t, e) = self.open_branch(c)?;
        self.loops.push(LoopCtx { header, header_vars, exits: vec![e] });
        self.join(vec![t], 0, true);
        self.block(body)?;
        if self.cur.is_some() {
            self.back_edge()?;
        }
        let ctx = self.loops.pop().expect("loop context");
        self.join(ctx.exits, 0, true);
        Ok(())
    }

    fn back_edge(&mut self) -> LResult<()> {
        let Some(ctx) = self.loops.last() else {
            return self.err("continue outside a loop");
        };
        let (header, vars) = (ctx.header, ctx.header_vars.clone());
        let args = vars.iter().map(|v| self.lookup(v)).collect::<LResult<Vec<_>>>()?;
        let b = self.current()?;
        self.finish(b, Terminator::Jump(Edge { target: header, args }));
        Ok(())
    }

    fn call_builtin(&mut self, b: Builtin, args: Vec<ValueId>) -> LResult<ValueId> {
        let swapped = vec![false; args.len()];
        self.emit(Op::Call { callee: Callee::Builtin(b), args, swapped, swap_dests: Vec::new() })
    }

    fn call(&mut self, call: &Call) -> LResult<ValueId> {
        let callee = match &call.callee.kind {
            ExprKind::Var(name) if !self.env.contains_key(name) => {
                if self.functions.contains(name) {
                    Callee::Function(name.clone())
                } else if let Some(b) = Builtin::from_name(name) {
                    Callee::Builtin(b)
                } else {
                    return self.err(format!("unknown callee `{name}`"));
                }
            }
            _ => Callee::Value(self.expr(&call.callee)?),
        };
        let mut args = Vec::new();
        let mut swapped = Vec::new();
        let mut roots = Vec::new();
        for arg in &call.args {
            match arg {
                Arg::Plain(e) => {
                    args.push(self.expr(e)?);
                    swapped.push(false);
                }
                Arg::Swap(path) => {
                    if !path.is_plain() {
                        return self.err("swap through a path survived desugaring");
                    }
                    args.push(self.lookup(&path.root)?);
                    swapped.push(true);
                    roots.push(path.root.clone());
                }
            }
        }
        let dest = self.fresh(None);
        let swap_dests: Vec<ValueId> = roots.iter().map(|r| self.fresh(Some(r))).collect();
        self.push(Instr { dest, op: Op::Call { callee, args, swapped, swap_dests: swap_dests.clone() } })?;
        for (r, d) in roots.iter().zip(swap_dests) {
            self.env.insert(r.clone(), d);
        }
        Ok(dest)
    }

    fn expr(&mut self, e: &Expr) -> LResult<ValueId> {
        match &e.kind {
            ExprKind::Lit(lit) => self.emit(Op::Const(match lit {
                Literal::Int(n) => Const::Int(*n),
                Literal::Float(x) => Const::Float(*x),
                Literal::Bool(b) => Const::Bool(*b),
                Literal::Str(s) => Const::Str(s.clone()),
                Literal::Unit => Const::Unit,
            })),
            ExprKind::Var(name) => {
                if let Some(v) = self.env.get(name) {
                    Ok(*v)
                } else if self.functions.contains(name) {
                    self.emit(Op::MakeClosure { func: name.clone(), captured: Vec::new() })
                } else {
                    self.err(format!("variable `{name}` read before assignment"))
                }
            }
            ExprKind::Index(base, index) => {
                let b = self.expr(base)?;
                let i = self.expr(index)?;
                self.call_builtin(Builtin::Get, vec![b, i])
            }
            ExprKind::Field(base, name) => {
                let b = self.expr(base)?;
                let k = self.emit(Op::Const(Const::Str(name.clone())))?;
                self.call_builtin(Builtin::Get, vec![b, k])
            }
            ExprKind::Call(call) => self.call(call),
            ExprKind::Binary(op @ (BinOp::And | BinOp::Or), lhs, rhs) => self.short_circuit(*op, lhs, rhs),
            ExprKind::Binary(op, lhs, rhs) => {
                let a = self.expr(lhs)?;
                let b = self.expr(rhs)?;
                let prim = match op {
                    BinOp::Add => PrimOp::Add,
                    BinOp::Sub => PrimOp::Sub,
                    BinOp::Mul => PrimOp::Mul,
                    BinOp::Div => PrimOp::Div,
                    BinOp::Lt => PrimOp::Lt,
                    BinOp::Le => PrimOp::Le,
                    BinOp::Gt => PrimOp::Gt,
                    BinOp::Ge => PrimOp::Ge,
                    BinOp::Eq => PrimOp::Eq,
                    BinOp::Ne => PrimOp::Ne,
                    BinOp::And | BinOp::Or => unreachable!("handled above"),
                };
                self.emit(Op::Prim(prim, vec![a, b]))
            }
            ExprKind::Unary(op, operand) => {
                let a = self.expr(operand)?;
                let prim = match op {
                    UnOp::Neg => PrimOp::Neg,
                    UnOp::Not => PrimOp::Not,
                };
                self.emit(Op::Prim(prim, vec![a]))
            }
            ExprKind::Array(items) => {
                let vs = items.iter().map(|x| self.expr(x)).collect::<LResult<Vec<_>>>()?;
                self.emit(Op::MakeArray(vs))
            }
            ExprKind::Tuple(items) => {
                let vs = items.iter().map(|x| self.expr(x)).collect::<LResult<Vec<_>>>()?;
                self.emit(Op::MakeTuple(vs))
            }
            ExprKind::Record(fields) => {
                let mut vs = Vec::new();
                for (k, x) in fields {
                    vs.push((k.clone(), self.expr(x)?));
                }
                self.emit(Op::MakeRecord(vs))
            }
            ExprKind::Closure(closure) => self.closure(closure),
        }
    }

    /// `l and r`: branch on `l`; the right operand is evaluated only when it
    /// decides the result, and must itself be a boolean.
    fn short_circuit(&mut self, op: BinOp, lhs: &Expr, rhs: &Expr) -> LResult<ValueId> {
        let l = self.expr(lhs)?;
        let (t, e) = self.open_branch(l)?;
        let (eval, skip) = if op == BinOp::And { (t, e) } else { (e, t) };
        let mut skip = skip;
        skip.extras = vec![l];
        self.join(vec![eval], 0, true);
        let r = self.expr(rhs)?;
        let end = if is_boolean(rhs) {
            self.open_jump(vec![r])?
        } else {
            // Branching on the value checks that it is a boolean.
            let (mut a, mut b) = self.open_branch(r)?;
            a.extras = vec![r];
            b.extras = vec![r];
            let Some((_, params)) = self.join(vec![a, b], 1, true) else {
                return self.err("unreachable operand join");
            };
            self.open_jump(vec![params[0]])?
        };
        let Some((_, params)) = self.join(vec![skip, end], 1, true) else {
            return self.err("unreachable operand join");
        };
        Ok(params[0])
    }

    fn closure(&mut self, closure: &Closure) -> LResult<ValueId> {
        let captured: Vec<String> =
            closure_free_vars(closure).into_iter().filter(|n| self.env.contains_key(n)).collect();
        let values = captured.iter().map(|n| self.lookup(n)).collect::<LResult<Vec<_>>>()?;
        let name = format!("{}$closure{}", self.top_name, *self.closure_counter);
        *self.closure_counter += 1;
        let func = Lowerer::run(
            &name,
            &captured,
            &closure.params,
            &closure.body,
            self.functions,
            self.lifted,
            self.closure_counter,
            self.top_name,
        )?;
        self.lifted.push(func);
        self.emit(Op::MakeClosure { func: name, captured: values })
    }

    fn build(self, params: Vec<IrParam>, entry: BlockId) -> LResult<IrFunction> {
        let mut blocks = Vec::new();
        for (i, b) in self.blocks.into_iter().enumerate() {
            let Some(terminator) = b.terminator else {
                return Err(LoweringError {
                    function: self.name.clone(),
                    message: format!("block {} has no terminator", i + 1),
                });
            };
            blocks.push(Block { id: BlockId(i as u32), params: b.params, instrs: b.instrs, terminator });
        }
        let mut f = IrFunction { name: self.name, params, entry, blocks, value_names: self.names };
        prune_unreachable(&mut f);
        prune_dead_params(&mut f);
        f.renumber_values();
        Ok(f)
    }
}

fn is_boolean(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Lit(Literal::Bool(_)) => true,
        ExprKind::Unary(UnOp::Not, _) => true,
        ExprKind::Binary(op, _, _) => !matches!(op, BinOp::Add | BinOp::Sub | BinOp::Mul | BinOp::Div),
        _ => false,
    }
}

/// Drops blocks not reachable from the entry and renumbers the rest in
/// order.
fn prune_unreachable(f: &mut IrFunction) {
    let mut seen = vec![false; f.blocks.len()];
    let mut stack = vec![f.entry];
    while let Some(b) = stack.pop() {
        if std::mem::replace(&mut seen[b.index()], true) {
            continue;
        }
        for e in f.blocks[b.index()].terminator.edges() {
            stack.push(e.target);
        }
    }
    let mut map = vec![None; f.blocks.len()];
    let mut next = 0u32;
    for (i, keep) in seen.iter().enumerate() {
        if *keep {
            map[i] = Some(BlockId(next));
            next += 1;
        }
    }
    let old = std::mem::take(&mut f.blocks);
    for (i, mut b) in old.into_iter().enumerate() {
        let Some(id) = map[i] else { continue };
        b.id = id;
        for e in b.terminator.edges_mut() {
            e.target = map[e.target.index()].expect("reachable target");
        }
        f.blocks.push(b);
    }
    f.entry = map[f.entry.index()].expect("entry is reachable");
}

/// Removes block parameters whose value is never used, other than by being
/// passed on to another unused parameter.
fn prune_dead_params(f: &mut IrFunction) {
    let mut owner = vec![None; f.value_names.len()];
    for b in &f.blocks {
        if b.id == f.entry {
            continue;
        }
        for (i, p) in b.params.iter().enumerate() {
            owner[p.index()] = Some((b.id.index(), i));
        }
    }
    let mut live: Vec<Vec<bool>> = f.blocks.iter().map(|b| vec![false; b.params.len()]).collect();
    let mut work = Vec::new();
    let mark = |v: ValueId, live: &mut Vec<Vec<bool>>, work: &mut Vec<(usize, usize)>| {
        if let Some((b, i)) = owner[v.index()] {
            if !live[b][i] {
                live[b][i] = true;
                work.push((b, i));
            }
        }
    };
    // Forwarding uses: (target block, param index) -> values passed to it.
    let mut forwards: IndexMap<(usize, usize), Vec<ValueId>> = IndexMap::new();
    for b in &f.blocks {
        for ins in &b.instrs {
            for v in ins.op.operands() {
                mark(v, &mut live, &mut work);
            }
        }
        match &b.terminator {
            Terminator::Return { value, finals } => {
                mark(*value, &mut live, &mut work);
                for v in finals {
                    mark(*v, &mut live, &mut work);
                }
            }
            Terminator::Branch { cond, .. } => mark(*cond, &mut live, &mut work),
            Terminator::Jump(_) => {}
        }
        for e in b.terminator.edges() {
            for (j, a) in e.args.iter().enumerate() {
                forwards.entry((e.target.index(), j)).or_default().push(*a);
            }
        }
    }
    // The entry block's parameters are the function's; keep them.
    let entry = f.entry.index();
    for i in 0..live[entry].len() {
        live[entry][i] = true;
        work.push((entry, i));
    }
    while let Some(key) = work.pop() {
        if let Some(vals) = forwards.get(&key) {
            for v in vals.clone() {
                mark(v, &mut live, &mut work);
            }
        }
    }
    for b in &mut f.blocks {
        let keep = &live[b.id.index()];
        let mut i = 0;
        b.params.retain(|_| {
            i += 1;
            keep[i - 1]
        });
        for e in b.terminator.edges_mut() {
            let keep = &live[e.target.index()];
            let mut j = 0;
            e.args.retain(|_| {
                j += 1;
                keep[j - 1]
            });
        }
    }
}
