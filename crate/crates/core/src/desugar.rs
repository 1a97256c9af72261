//! Rewrites surface programs into the core subset.
//!
//! The core subset has no compound assignments, no assignments through
//! accessor paths and no swap arguments other than bare variables:
//!
//! * `r *= x` becomes `r = r * x`
//! * `A[i] = x` becomes `set(&A, i, x)`
//! * `append(&foo.xs, x)` becomes
//!   `$t0 = extract(&foo, "xs"); append(&$t0, x); set(&foo, "xs", $t0)`
//!
//! Rewriting moves some evaluation into earlier statements. Whenever that
//! happens, sibling expressions that must still be evaluated first are
//! bound to temporaries, so the left-to-right order of effects is kept.

use std::collections::{HashMap, HashSet};
use std::ops::Deref;

use indexmap::IndexSet;
use thiserror::Error;

use crate::builtin::Builtin;
use crate::frontend::ast::*;
use crate::frontend::visit::{declared_vars, referenced_vars};

/// A program in the core subset. See [`is_core`].
#[derive(Debug, Clone, PartialEq)]
pub struct CoreProgram(Program);

impl CoreProgram {
    pub fn program(&self) -> &Program {
        &self.0
    }

    pub fn into_program(self) -> Program {
        self.0
    }
}

impl Deref for CoreProgram {
    type Target = Program;

    fn deref(&self) -> &Program {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesugarError {
    #[error("{line}:{column}: `{name}` expects {expected} arguments, got {found}")]
    ArityMismatch { name: String, expected: usize, found: usize, line: u32, column: u32 },
    #[error("{line}:{column}: swap markers at the call site do not match the parameters of `{name}`")]
    SwapArityMismatch { name: String, line: u32, column: u32 },
}

/// Desugars a resolved program.
pub fn desugar(program: &Program) -> Result<CoreProgram, DesugarError> {
    Desugarer::new(program).desugar_program(program)
}

const TEMP_PREFIX: &str = "$t";

pub struct Desugarer {
    signatures: HashMap<String, Vec<bool>>,
    scopes: Vec<HashSet<String>>,
    next_temp: usize,
    errors: Vec<DesugarError>,
}

impl Desugarer {
    /// A desugarer that checks calls against the functions of `program`.
    pub fn new(program: &Program) -> Self {
        let signatures = program.functions.iter().map(|f| (f.name.clone(), f.swap_signature())).collect();
        Desugarer { signatures, scopes: Vec::new(), next_temp: 0, errors: Vec::new() }
    }

    pub fn desugar_program(&mut self, program: &Program) -> Result<CoreProgram, DesugarError> {
        let functions = program.functions.iter().map(|f| self.function(f)).collect();
        match self.errors.drain(..).next() {
            Some(e) => Err(e),
            None => Ok(CoreProgram(Program { functions })),
        }
    }

    /// Errors found by the `expand_*` methods so far.
    pub fn take_errors(&mut self) -> Vec<DesugarError> {
        std::mem::take(&mut self.errors)
    }

    fn function(&mut self, f: &FnDecl) -> FnDecl {
        self.next_temp = first_free_temp(&f.body);
        let mut scope: HashSet<String> = f.params.iter().map(|p| p.name.clone()).collect();
        scope.extend(declared_vars(&f.body));
        self.scopes.push(scope);
        let body = self.block(&f.body);
        self.scopes.pop();
        FnDecl { name: f.name.clone(), params: f.params.clone(), body, span: f.span }
    }

    fn block(&mut self, block: &Block) -> Block {
        block.iter().flat_map(|s| self.stmt(s)).collect()
    }

    fn stmt(&mut self, stmt: &Stmt) -> Vec<Stmt> {
        let span = stmt.span;
        let mut out = Vec::new();
        match &stmt.kind {
            StmtKind::Assign { target, value } if target.is_plain() => {
                let value = self.expr(value, &mut out);
                out.push(assign(&target.root, value, span));
            }
            StmtKind::Assign { .. } => return self.expand_assignment_path(stmt),
            StmtKind::CompoundAssign { .. } => return self.expand_compound_assign(stmt),
            StmtKind::Call(_) => return self.expand_swap_args(stmt),
            StmtKind::Destructure { names, value } => {
                let value = self.expr(value, &mut out);
                out.push(Stmt { kind: StmtKind::Destructure { names: names.clone(), value }, span });
            }
            StmtKind::While { cond, body } => {
                let mut pre = Vec::new();
                let cond = self.expr(cond, &mut pre);
                let mut body = self.block(body);
                let cond = if pre.is_empty() {
                    cond
                } else {
                    let exit = Stmt {
                        kind: StmtKind::If {
                            cond: Expr::new(ExprKind::Unary(UnOp::Not, Box::new(cond)), span),
                            then_block: vec![Stmt { kind: StmtKind::Break, span }],
                            else_block: None,
                        },
                        span,
                    };
                    pre.push(exit);
                    pre.append(&mut body);
                    body = pre;
                    Expr::lit(Literal::Bool(true), span)
                };
                out.push(Stmt { kind: StmtKind::While { cond, body }, span });
            }
            StmtKind::If { cond, then_block, else_block } => {
                let cond = self.expr(cond, &mut out);
                let then_block = self.block(then_block);
                let else_block = else_block.as_ref().map(|b| self.block(b));
                out.push(Stmt { kind: StmtKind::If { cond, then_block, else_block }, span });
            }
            StmtKind::Return(value) => {
                let value = value.as_ref().map(|e| self.expr(e, &mut out));
                out.push(Stmt { kind: StmtKind::Return(value), span });
            }
            StmtKind::Break | StmtKind::Continue => out.push(stmt.clone()),
        }
        out
    }

    /// `p op= v` becomes `p = p op v`, with non-trivial index expressions of
    /// `p` bound to temporaries first so they are evaluated once.
    pub fn expand_compound_assign(&mut self, stmt: &Stmt) -> Vec<Stmt> {
        let StmtKind::CompoundAssign { target, op, value } = &stmt.kind else {
            return self.stmt(stmt);
        };
        let span = stmt.span;
        let mut out = Vec::new();
        let mut roots = IndexSet::new();
        swap_roots_expr(value, &mut roots);
        let mut path = Path { root: target.root.clone(), accessors: Vec::new(), span: target.span };
        for acc in &target.accessors {
            let acc = match acc {
                Accessor::Field(name) => Accessor::Field(name.clone()),
                Accessor::Index(e) => {
                    let e = self.expr(e, &mut out);
                    let keep = is_literal(&e) || matches!(&e.kind, ExprKind::Var(v) if !roots.contains(v));
                    if keep {
                        Accessor::Index(e)
                    } else {
                        Accessor::Index(self.bind_temp(e, &mut out))
                    }
                }
            };
            path.accessors.push(acc);
        }
        let value = Expr::new(ExprKind::Binary(*op, Box::new(path.to_expr()), Box::new(value.clone())), span);
        let assign = Stmt { kind: StmtKind::Assign { target: path, value }, span };
        out.extend(self.stmt(&assign));
        out
    }

    /// `p.k = v` and `p[k] = v` become `set(&p, k, v)`. Deeper paths are
    /// then decomposed like any other nested swap argument.
    pub fn expand_assignment_path(&mut self, stmt: &Stmt) -> Vec<Stmt> {
        let StmtKind::Assign { target, value } = &stmt.kind else {
            return self.stmt(stmt);
        };
        let span = stmt.span;
        let Some((last, prefix)) = target.accessors.split_last() else {
            return self.stmt(stmt);
        };
        let key = match last {
            Accessor::Field(name) => Expr::lit(Literal::Str(name.clone()), span),
            Accessor::Index(e) => e.clone(),
        };
        let container = Path { root: target.root.clone(), accessors: prefix.to_vec(), span: target.span };
        let call = Call {
            callee: Box::new(Expr::var(Builtin::Set.name(), span)),
            args: vec![Arg::Swap(container), Arg::Plain(key), Arg::Plain(value.clone())],
        };
        self.expand_swap_args(&Stmt { kind: StmtKind::Call(call), span })
    }

    /// Replaces every swap argument that is not a bare variable by a
    /// temporary: the component is extracted before the call and stored
    /// back after it.
    pub fn expand_swap_args(&mut self, stmt: &Stmt) -> Vec<Stmt> {
        let StmtKind::Call(call) = &stmt.kind else {
            return self.stmt(stmt);
        };
        let span = stmt.span;
        let mut out = Vec::new();
        let (call, post) = self.call(call, span, &mut out);
        out.push(Stmt { kind: StmtKind::Call(call), span });
        out.extend(post);
        out
    }

    fn temp(&mut self) -> String {
        let name = format!("{TEMP_PREFIX}{}", self.next_temp);
        self.next_temp += 1;
        name
    }

    fn bind_temp(&mut self, value: Expr, out: &mut Vec<Stmt>) -> Expr {
        let span = value.span;
        let name = self.temp();
        out.push(assign(&name, value, span));
        Expr::var(name, span)
    }

    fn is_local(&self, name: &str) -> bool {
        self.scopes.last().is_some_and(|s| s.contains(name))
    }

    fn check_call(&mut self, call: &Call, span: Span) {
        let Some(name) = call.callee_name() else { return };
        if self.is_local(name) {
            return;
        }
        let site = call.swap_signature();
        let (line, column) = (span.line, span.column);
        if let Some(sig) = self.signatures.get(name) {
            if sig.len() != site.len() {
                self.errors.push(DesugarError::ArityMismatch {
                    name: name.to_string(),
                    expected: sig.len(),
                    found: site.len(),
                    line,
                    column,
                });
            } else if *sig != site {
                self.errors.push(DesugarError::SwapArityMismatch { name: name.to_string(), line, column });
            }
        } else if let Some(b) = Builtin::from_name(name) {
            if let Some(sig) = b.swap_signature() {
                if sig.len() != site.len() {
                    self.errors.push(DesugarError::ArityMismatch {
                        name: name.to_string(),
                        expected: sig.len(),
                        found: site.len(),
                        line,
                        column,
                    });
                    return;
                }
            }
            if !b.accepts(&site) {
                self.errors.push(DesugarError::SwapArityMismatch { name: name.to_string(), line, column });
            }
        }
    }

    /// Desugars a call. Statements that must run before it go to `pre`;
    /// the returned statements must run right after it.
    fn call(&mut self, call: &Call, span: Span, pre: &mut Vec<Stmt>) -> (Call, Vec<Stmt>) {
        self.check_call(call, span);
        let mut roots = IndexSet::new();
        swap_roots_call(call, &mut roots);
        let direct: Vec<&str> = call
            .args
            .iter()
            .filter_map(|a| match a {
                Arg::Swap(p) => Some(p.root.as_str()),
                Arg::Plain(_) => None,
            })
            .collect();
        let nested = call.args.iter().any(|a| matches!(a, Arg::Swap(p) if !p.is_plain()));

        // Components in evaluation order: callee, then each argument (for a
        // swap argument, its index expressions).
        let mut parts: Vec<(Vec<Stmt>, Expr)> = Vec::new();
        let mut sub = Vec::new();
        let callee = self.expr(&call.callee, &mut sub);
        parts.push((std::mem::take(&mut sub), callee));
        for arg in &call.args {
            match arg {
                Arg::Plain(e) => {
                    let e = self.expr(e, &mut sub);
                    parts.push((std::mem::take(&mut sub), e));
                }
                Arg::Swap(path) => {
                    for acc in &path.accessors {
                        if let Accessor::Index(e) = acc {
                            let e = self.expr(e, &mut sub);
                            parts.push((std::mem::take(&mut sub), e));
                        }
                    }
                }
            }
        }
        // A generated call such as `set(&a, k, f(&a))` must evaluate the
        // value before the container is read.
        let clobbers = parts.iter().any(|(_, e)| {
            let mut r = IndexSet::new();
            swap_roots_expr(e, &mut r);
            direct.iter().any(|d| r.contains(*d))
        });
        let force = nested || clobbers;
        let mut parts = self.sequence(parts, &roots, force, pre).into_iter();

        let callee = parts.next().expect("callee component");
        let mut args = Vec::new();
        let mut post = Vec::new();
        for arg in &call.args {
            match arg {
                Arg::Plain(_) => args.push(Arg::Plain(parts.next().expect("argument component"))),
                Arg::Swap(path) if path.is_plain() => args.push(arg.clone()),
                Arg::Swap(path) => {
                    let mut holder = Path::var(path.root.clone(), path.span);
                    let mut sets = Vec::new();
                    for acc in &path.accessors {
                        let key = match acc {
                            Accessor::Field(name) => Expr::lit(Literal::Str(name.clone()), path.span),
                            Accessor::Index(_) => {
                                let e = parts.next().expect("index component");
                                if is_literal(&e) || matches!(e.kind, ExprKind::Var(_)) {
                                    e
                                } else {
                                    self.bind_temp(e, pre)
                                }
                            }
                        };
                        let part = self.temp();
                        let extract = builtin_call(
                            Builtin::Extract,
                            vec![Arg::Swap(holder.clone()), Arg::Plain(key.clone())],
                            span,
                        );
                        pre.push(assign(&part, extract, span));
                        sets.push(Stmt {
                            kind: StmtKind::Call(Call {
                                callee: Box::new(Expr::var(Builtin::Set.name(), span)),
                                args: vec![
                                    Arg::Swap(holder.clone()),
                                    Arg::Plain(key),
                                    Arg::Plain(Expr::var(part.clone(), span)),
                                ],
                            }),
                            span,
                        });
                        holder = Path::var(part, path.span);
                    }
                    sets.reverse();
                    post.extend(sets);
                    args.push(Arg::Swap(holder));
                }
            }
        }
        (Call { callee: Box::new(callee), args }, post)
    }

    /// Emits the statements of each component in order. A component whose
    /// value could change, or whose evaluation has effects, is bound to a
    /// temporary when statements of later components (or, with `force`, the
    /// rewritten operation itself) would otherwise run before it.
    fn sequence(
        &mut self,
        parts: Vec<(Vec<Stmt>, Expr)>,
        roots: &IndexSet<String>,
        force: bool,
        pre: &mut Vec<Stmt>,
    ) -> Vec<Expr> {
        let mut later_pre = vec![force; parts.len()];
        let mut seen = force;
        for i in (0..parts.len()).rev() {
            later_pre[i] = seen;
            seen |= !parts[i].0.is_empty();
        }
        let mut out = Vec::with_capacity(parts.len());
        for (i, (stmts, e)) in parts.into_iter().enumerate() {
            pre.extend(stmts);
            if later_pre[i] && needs_binding(&e, roots) {
                out.push(self.bind_temp(e, pre));
            } else {
                out.push(e);
            }
        }
        out
    }

    fn expr(&mut self, expr: &Expr, pre: &mut Vec<Stmt>) -> Expr {
        let span = expr.span;
        let mut roots = IndexSet::new();
        swap_roots_expr(expr, &mut roots);
        let kind = match &expr.kind {
            ExprKind::Lit(_) | ExprKind::Var(_) => return expr.clone(),
            ExprKind::Index(a, b) => {
                let [a, b] = self.exprs([&**a, &**b], &roots, pre);
                ExprKind::Index(Box::new(a), Box::new(b))
            }
            ExprKind::Field(a, name) => ExprKind::Field(Box::new(self.expr(a, pre)), name.clone()),
            ExprKind::Unary(op, a) => ExprKind::Unary(*op, Box::new(self.expr(a, pre))),
            ExprKind::Binary(op @ (BinOp::And | BinOp::Or), lhs, rhs) => {
                let lhs = self.expr(lhs, pre);
                let mut rhs_pre = Vec::new();
                let rhs = self.expr(rhs, &mut rhs_pre);
                if rhs_pre.is_empty() {
                    ExprKind::Binary(*op, Box::new(lhs), Box::new(rhs))
                } else {
                    return self.short_circuit(*op, lhs, rhs_pre, rhs, span, pre);
                }
            }
            ExprKind::Binary(op, a, b) => {
                let [a, b] = self.exprs([&**a, &**b], &roots, pre);
                ExprKind::Binary(*op, Box::new(a), Box::new(b))
            }
            ExprKind::Array(items) => ExprKind::Array(self.expr_list(items.iter(), &roots, pre)),
            ExprKind::Tuple(items) => ExprKind::Tuple(self.expr_list(items.iter(), &roots, pre)),
            ExprKind::Record(fields) => {
                let values = self.expr_list(fields.iter().map(|(_, e)| e), &roots, pre);
                ExprKind::Record(fields.iter().map(|(k, _)| k.clone()).zip(values).collect())
            }
            ExprKind::Call(call) => {
                let (call, post) = self.call(call, span, pre);
                if post.is_empty() {
                    ExprKind::Call(call)
                } else {
                    let result = self.bind_temp(Expr::new(ExprKind::Call(call), span), pre);
                    pre.extend(post);
                    return result;
                }
            }
            ExprKind::Closure(closure) => ExprKind::Closure(self.closure(closure)),
        };
        Expr::new(kind, span)
    }

    fn exprs<const N: usize>(&mut self, items: [&Expr; N], roots: &IndexSet<String>, pre: &mut Vec<Stmt>) -> [Expr; N] {
        let v = self.expr_list(items.into_iter(), roots, pre);
        v.try_into().unwrap_or_else(|_| unreachable!("component count is fixed"))
    }

    fn expr_list<'e>(
        &mut self,
        items: impl Iterator<Item = &'e Expr>,
        roots: &IndexSet<String>,
        pre: &mut Vec<Stmt>,
    ) -> Vec<Expr> {
        let parts = items
            .map(|e| {
                let mut sub = Vec::new();
                let e = self.expr(e, &mut sub);
                (sub, e)
            })
            .collect();
        self.sequence(parts, roots, false, pre)
    }

    /// `l and r`, where evaluating `r` needs statements, becomes
    /// `$t = l; if $t { ...; $t = true and r }`.
    fn short_circuit(
        &mut self,
        op: BinOp,
        lhs: Expr,
        mut rhs_pre: Vec<Stmt>,
        rhs: Expr,
        span: Span,
        pre: &mut Vec<Stmt>,
    ) -> Expr {
        let name = self.temp();
        pre.push(assign(&name, lhs, span));
        let result = Expr::var(name.clone(), span);
        let neutral = op == BinOp::And;
        let cond = if neutral {
            result.clone()
        } else {
            Expr::new(ExprKind::Unary(UnOp::Not, Box::new(result.clone())), span)
        };
        let checked = Expr::new(
            ExprKind::Binary(op, Box::new(Expr::lit(Literal::Bool(neutral), span)), Box::new(rhs)),
            span,
        );
        rhs_pre.push(assign(&name, checked, span));
        pre.push(Stmt { kind: StmtKind::If { cond, then_block: rhs_pre, else_block: None }, span });
        result
    }

    fn closure(&mut self, closure: &Closure) -> Closure {
        let mut scope = self.scopes.last().cloned().unwrap_or_default();
        scope.extend(closure.params.iter().map(|p| p.name.clone()));
        scope.extend(declared_vars(&closure.body));
        self.scopes.push(scope);
        let body = self.block(&closure.body);
        self.scopes.pop();
        Closure { params: closure.params.clone(), body }
    }
}

fn assign(name: &str, value: Expr, span: Span) -> Stmt {
    Stmt { kind: StmtKind::Assign { target: Path::var(name, span), value }, span }
}

fn builtin_call(b: Builtin, args: Vec<Arg>, span: Span) -> Expr {
    Expr::new(ExprKind::Call(Call { callee: Box::new(Expr::var(b.name(), span)), args }), span)
}

fn is_literal(e: &Expr) -> bool {
    matches!(e.kind, ExprKind::Lit(_))
}

/// True when `e` may observe a change made by a later component, or has
/// effects of its own.
fn needs_binding(e: &Expr, roots: &IndexSet<String>) -> bool {
    match &e.kind {
        ExprKind::Lit(_) => false,
        ExprKind::Var(v) => roots.contains(v),
        _ => {
            let stmt = Stmt { kind: StmtKind::Return(Some(e.clone())), span: e.span };
            let refs = referenced_vars(&vec![stmt]);
            contains_call(e) || refs.iter().any(|r| roots.contains(r))
        }
    }
}

fn contains_call(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Lit(_) | ExprKind::Var(_) | ExprKind::Closure(_) => false,
        ExprKind::Call(_) => true,
        ExprKind::Index(a, b) | ExprKind::Binary(_, a, b) => contains_call(a) || contains_call(b),
        ExprKind::Field(a, _) | ExprKind::Unary(_, a) => contains_call(a),
        ExprKind::Array(xs) | ExprKind::Tuple(xs) => xs.iter().any(contains_call),
        ExprKind::Record(fs) => fs.iter().any(|(_, e)| contains_call(e)),
    }
}

fn swap_roots_call(call: &Call, out: &mut IndexSet<String>) {
    swap_roots_expr(&call.callee, out);
    for arg in &call.args {
        match arg {
            Arg::Plain(e) => swap_roots_expr(e, out),
            Arg::Swap(path) => {
                out.insert(path.root.clone());
                for acc in &path.accessors {
                    if let Accessor::Index(e) = acc {
                        swap_roots_expr(e, out);
                    }
                }
            }
        }
    }
}

fn swap_roots_expr(e: &Expr, out: &mut IndexSet<String>) {
    match &e.kind {
        ExprKind::Lit(_) | ExprKind::Var(_) | ExprKind::Closure(_) => {}
        ExprKind::Index(a, b) | ExprKind::Binary(_, a, b) => {
            swap_roots_expr(a, out);
            swap_roots_expr(b, out);
        }
        ExprKind::Field(a, _) | ExprKind::Unary(_, a) => swap_roots_expr(a, out),
        ExprKind::Call(c) => swap_roots_call(c, out),
        ExprKind::Array(xs) | ExprKind::Tuple(xs) => xs.iter().for_each(|x| swap_roots_expr(x, out)),
        ExprKind::Record(fs) => fs.iter().for_each(|(_, x)| swap_roots_expr(x, out)),
    }
}

/// Smallest temporary index not already used in `body`, so desugaring an
/// already desugared function cannot collide with its temporaries.
fn first_free_temp(body: &Block) -> usize {
    referenced_vars(body)
        .iter()
        .filter_map(|n| n.strip_prefix(TEMP_PREFIX)?.parse::<usize>().ok())
        .map(|n| n + 1)
        .max()
        .unwrap_or(0)
}

/// Checks that `program` uses only core constructs. Returns a description
/// of the first offending statement.
pub fn is_core(program: &Program) -> Result<(), String> {
    fn block(b: &Block) -> Result<(), String> {
        b.iter().try_for_each(stmt)
    }
    fn stmt(s: &Stmt) -> Result<(), String> {
        match &s.kind {
            StmtKind::Assign { target, value } => {
                if !target.is_plain() {
                    return Err(format!("{}: assignment through a path", s.span));
                }
                expr(value)
            }
            StmtKind::CompoundAssign { .. } => Err(format!("{}: compound assignment", s.span)),
            StmtKind::Destructure { value, .. } => expr(value),
            StmtKind::Call(c) => call(c, s.span),
            StmtKind::While { cond, body } => {
                expr(cond)?;
                block(body)
            }
            StmtKind::If { cond, then_block, else_block } => {
                expr(cond)?;
                block(then_block)?;
                else_block.as_ref().map_or(Ok(()), block)
            }
            StmtKind::Return(v) => v.as_ref().map_or(Ok(()), expr),
            StmtKind::Break | StmtKind::Continue => Ok(()),
        }
    }
    fn call(c: &Call, span: Span) -> Result<(), String> {
        expr(&c.callee)?;
        for arg in &c.args {
            match arg {
                Arg::Plain(e) => expr(e)?,
                Arg::Swap(p) if p.is_plain() => {}
                Arg::Swap(_) => return Err(format!("{span}: swap argument through a path")),
            }
        }
        Ok(())
    }
    fn expr(e: &Expr) -> Result<(), String> {
        match &e.kind {
            ExprKind::Lit(_) | ExprKind::Var(_) => Ok(()),
            ExprKind::Index(a, b) | ExprKind::Binary(_, a, b) => {
                expr(a)?;
                expr(b)
            }
            ExprKind::Field(a, _) | ExprKind::Unary(_, a) => expr(a),
            ExprKind::Call(c) => call(c, e.span),
            ExprKind::Array(xs) | ExprKind::Tuple(xs) => xs.iter().try_for_each(expr),
            ExprKind::Record(fs) => fs.iter().try_for_each(|(_, e)| expr(e)),
            ExprKind::Closure(c) => block(&c.body),
        }
    }
    program.functions.iter().try_for_each(|f| block(&f.body))
}
